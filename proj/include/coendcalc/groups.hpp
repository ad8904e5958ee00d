#pragma once

#include <string>
#include <vector>

#include "vcategory.hpp"

// Small finite groups as explicit multiplication tables, plus the standard
// example categories built from them: group algebras as one-object
// categories (with groupoid labels, so delta pairings apply) and the 2x2
// matrix algebra.

namespace coendcalc {

struct GroupTable {
    std::vector<std::string> names;
    std::vector<int> mult;  // mult[g*n + h] = g*h
    int identity = 0;

    int order() const { return static_cast<int>(names.size()); }
    int mul(int g, int h) const { return mult[g * order() + h]; }
    int inv(int g) const {
        for (int h = 0; h < order(); ++h)
            if (mul(g, h) == identity) return h;
        throw std::invalid_argument("GroupTable: no inverse for " + names[g]);
    }
    bool valid() const {
        const int n = order();
        if (static_cast<int>(mult.size()) != n * n) return false;
        for (int g = 0; g < n; ++g)
            if (mul(identity, g) != g || mul(g, identity) != g) return false;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (mul(a, b) < 0 || mul(a, b) >= n) return false;
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
            }
        for (int g = 0; g < n; ++g) {
            bool has = false;
            for (int h = 0; h < n; ++h)
                if (mul(g, h) == identity && mul(h, g) == identity) has = true;
            if (!has) return false;
        }
        return true;
    }
};

inline GroupTable cyclic_group(int m) {
    GroupTable g;
    for (int i = 0; i < m; ++i) g.names.push_back(m == 1 ? "e" : (i == 0 ? "e" : "g" + std::to_string(i)));
    g.mult.resize(m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) g.mult[a * m + b] = (a + b) % m;
    return g;
}

// Symmetric group on three letters, as permutations of {0,1,2}.
inline GroupTable symmetric3() {
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    GroupTable g;
    g.names = {"e", "r", "r2", "s", "sr", "sr2"};
    g.mult.resize(36);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int c[3];
            for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            for (int k = 0; k < 6; ++k)
                if (c[0] == perms[k][0] && c[1] == perms[k][1] && c[2] == perms[k][2]) g.mult[a * 6 + b] = k;
        }
    return g;
}

inline GroupTable product_group(const GroupTable& a, const GroupTable& b) {
    GroupTable g;
    const int na = a.order(), nb = b.order();
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) g.names.push_back("(" + a.names[i] + "," + b.names[j] + ")");
    g.mult.resize(na * nb * na * nb);
    for (int i = 0; i < na * nb; ++i)
        for (int j = 0; j < na * nb; ++j)
            g.mult[i * na * nb + j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
    g.identity = a.identity * nb + b.identity;
    return g;
}

// The group as a one-object groupoid.
inline GroupoidSpec group_as_groupoid(const GroupTable& g) {
    GroupoidSpec s;
    s.objects = {"*"};
    s.hom = {g.names};
    const int n = g.order();
    std::vector<int> comp(n * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) comp[j * n + i] = g.mul(j, i);  // j . i = "j after i"
    s.comp = {comp};
    s.ids = {g.identity};
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[i] = g.inv(i);
    s.inv = {inv};
    return s;
}

template <class F>
VCategory<F> group_algebra_category(const GroupTable& g, F field) {
    return linearize_groupoid(group_as_groupoid(g), field);
}

// A connected groupoid with the given vertex group on k objects: each
// hom(x,y) is a copy of the group, composition is the group product.
inline GroupoidSpec connected_groupoid(const GroupTable& g, int objects) {
    GroupoidSpec s;
    const int m = g.order();
    for (int i = 0; i < objects; ++i) s.objects.push_back("a" + std::to_string(i));
    s.hom.resize(objects * objects, g.names);
    s.comp.resize(objects * objects * objects);
    std::vector<int> comp(m * m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) comp[j * m + i] = g.mul(j, i);
    for (auto& c : s.comp) c = comp;
    s.ids.assign(objects, g.identity);
    std::vector<int> inv(m);
    for (int i = 0; i < m; ++i) inv[i] = g.inv(i);
    s.inv.assign(objects * objects, inv);
    return s;
}

// The 2x2 matrix algebra on the matrix-unit basis E11, E12, E21, E22
// (E_ab E_cd = delta_bc E_ad).
template <class F>
VCategory<F> matrix_algebra_2x2(F field) {
    auto eidx = [](int a, int b) { return a * 2 + b; };
    typename Mat<F>::Builder mb(field, 4, 16);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    if (b == c) mb.set(eidx(a, d), eidx(a, b) * 4 + eidx(c, d), field.one());
    typename Mat<F>::Builder ub(field, 4, 1);
    ub.set(eidx(0, 0), 0, field.one());
    ub.set(eidx(1, 1), 0, field.one());
    return algebra_as_one_object(4, mb.build(), ub.build(), field);
}

}  // namespace coendcalc
