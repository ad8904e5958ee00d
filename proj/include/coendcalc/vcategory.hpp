#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

// Finite Vect_k-enriched categories as explicit tensor data: an ordered
// object list, hom-space dimensions, composition tensors and identity
// vectors. Composition is stored in the fixed convention
//
//     comp(X,Y,Z) : A(Y,Z) (x) A(X,Y) -> A(X,Z),   g (x) f -> g . f
//
// (apply the right factor first), as a matrix whose columns follow the kron
// ordering with the A(Y,Z) index slowest. A one-object category is exactly a
// finite dimensional associative unital algebra.

namespace coendcalc {

struct Report {
    std::vector<std::string> structural;  // shape/dimension problems
    std::vector<std::string> violations;  // failed axiom instances

    bool ok() const { return structural.empty() && violations.empty(); }
    std::string summary() const {
        if (ok()) return "ok";
        std::string s;
        for (const auto& m : structural) s += "structural: " + m + "\n";
        for (const auto& m : violations) s += "violation: " + m + "\n";
        return s;
    }
};

// Morphism-level labels remembered by linearize_groupoid; delta pairings
// need the inverse table.
struct GroupoidLabels {
    // names[x*n + y] lists the morphism basis of hom(X,Y)
    std::vector<std::vector<std::string>> names;
    // inv[x*n + y][i] = index of the inverse inside hom(Y,X)
    std::vector<std::vector<int>> inv;
};

template <class F>
struct VCategory {
    F field;
    std::vector<std::string> objects;
    std::vector<int> homdim;      // [x*n + y] = dim A(X,Y)
    std::vector<Mat<F>> comp;     // [(x*n + y)*n + z]
    std::vector<Mat<F>> idvec;    // [x], homdim(x,x) x 1
    std::optional<GroupoidLabels> labels;

    int n() const { return static_cast<int>(objects.size()); }
    int hd(int x, int y) const { return homdim[x * n() + y]; }
    const Mat<F>& comp_mat(int x, int y, int z) const { return comp[(x * n() + y) * n() + z]; }
    const Mat<F>& id_of(int x) const { return idvec[x]; }

    int obj_index(const std::string& id) const {
        for (int i = 0; i < n(); ++i)
            if (objects[i] == id) return i;
        throw std::invalid_argument("VCategory: unknown object '" + id + "'");
    }

    // g . f for explicit vectors f in A(X,Y), g in A(Y,Z)
    Mat<F> compose(int x, int y, int z, const Mat<F>& g, const Mat<F>& f) const {
        return comp_mat(x, y, z) * Mat<F>::kron(g, f);
    }
    Mat<F> basis_vec(int x, int y, int i) const {
        typename Mat<F>::Builder b(field, hd(x, y), 1);
        b.set(i, 0, field.one());
        return b.build();
    }
};

template <class F>
using VCatPtr = std::shared_ptr<const VCategory<F>>;

template <class F>
std::string column_to_string(const F& f, const Mat<F>& m, int col) {
    std::string s = "(";
    for (int i = 0; i < m.rows(); ++i) s += (i ? ", " : "") + f.to_string(m.at(i, col));
    return s + ")";
}

template <class F>
Report validate_category(const VCategory<F>& a) {
    Report rep;
    const F& f = a.field;
    const int n = a.n();
    if (static_cast<int>(a.homdim.size()) != n * n) {
        rep.structural.push_back("homdim table has wrong size");
        return rep;
    }
    if (static_cast<int>(a.comp.size()) != n * n * n || static_cast<int>(a.idvec.size()) != n) {
        rep.structural.push_back("comp/id tables have wrong size");
        return rep;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const Mat<F>& c = a.comp_mat(x, y, z);
                if (c.rows() != a.hd(x, z) || c.cols() != a.hd(y, z) * a.hd(x, y))
                    rep.structural.push_back("comp(" + a.objects[x] + "," + a.objects[y] + "," + a.objects[z] +
                                             ") has shape " + c.shape());
            }
    for (int x = 0; x < n; ++x)
        if (a.id_of(x).rows() != a.hd(x, x) || a.id_of(x).cols() != 1)
            rep.structural.push_back("id(" + a.objects[x] + ") has shape " + a.id_of(x).shape());
    if (!rep.structural.empty()) return rep;

    // unit laws on every hom basis
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int d = a.hd(x, y);
            if (d == 0) continue;
            Mat<F> i_d = Mat<F>::identity(f, d);
            Mat<F> right = a.comp_mat(x, x, y) * Mat<F>::kron(i_d, a.id_of(x));
            if (right != i_d)
                rep.violations.push_back("right unit fails on A(" + a.objects[x] + "," + a.objects[y] + ")");
            Mat<F> left = a.comp_mat(x, y, y) * Mat<F>::kron(a.id_of(y), i_d);
            if (left != i_d)
                rep.violations.push_back("left unit fails on A(" + a.objects[x] + "," + a.objects[y] + ")");
        }

    // associativity on all basis triples: f : W -> X, g : X -> Y, h : Y -> Z
    for (int w = 0; w < n; ++w)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) {
                    int dwx = a.hd(w, x), dxy = a.hd(x, y), dyz = a.hd(y, z);
                    if (dwx == 0 || dxy == 0 || dyz == 0) continue;
                    // (h.g).f : A(Y,Z) (x) A(X,Y) (x) A(W,X) -> A(W,Z)
                    Mat<F> lhs = a.comp_mat(w, x, z) *
                                 Mat<F>::kron(a.comp_mat(x, y, z), Mat<F>::identity(f, dwx));
                    Mat<F> rhs = a.comp_mat(w, y, z) *
                                 Mat<F>::kron(Mat<F>::identity(f, dyz), a.comp_mat(w, x, y));
                    if (lhs != rhs) {
                        for (int hh = 0; hh < dyz && static_cast<int>(rep.violations.size()) < 64; ++hh)
                            for (int gg = 0; gg < dxy; ++gg)
                                for (int ff = 0; ff < dwx; ++ff) {
                                    int col = (hh * dxy + gg) * dwx + ff;
                                    if (lhs.col(col) != rhs.col(col)) {
                                        rep.violations.push_back(
                                            "associativity fails at (" + a.objects[w] + "->" + a.objects[x] + "->" +
                                            a.objects[y] + "->" + a.objects[z] + ") basis (" + std::to_string(ff) +
                                            "," + std::to_string(gg) + "," + std::to_string(hh) + "): (h.g).f = " +
                                            column_to_string(f, lhs, col) + " but h.(g.f) = " +
                                            column_to_string(f, rhs, col));
                                        gg = dxy; ff = dwx;  // one hit per (h) is enough detail
                                    }
                                }
                    }
                }
    return rep;
}

// ---------------------------------------------------------------------------
// Groupoids and their linearizations

struct GroupoidSpec {
    std::vector<std::string> objects;
    // hom[x*n + y]: names of the morphisms x -> y
    std::vector<std::vector<std::string>> hom;
    // comp[(x*n + y)*n + z][j*|hom(x,y)| + i] = index in hom(x,z) of (j in hom(y,z)) . (i in hom(x,y))
    std::vector<std::vector<int>> comp;
    // ids[x] = index of the identity inside hom(x,x)
    std::vector<int> ids;
    // inv[x*n + y][i] = index of the inverse inside hom(y,x)
    std::vector<std::vector<int>> inv;

    int n() const { return static_cast<int>(objects.size()); }
    int hsize(int x, int y) const { return static_cast<int>(hom[x * n() + y].size()); }
    int compose(int x, int y, int z, int i, int j) const {
        return comp[(x * n() + y) * n() + z][j * hsize(x, y) + i];
    }
};

inline Report validate_groupoid(const GroupoidSpec& g) {
    Report rep;
    const int n = g.n();
    if (static_cast<int>(g.hom.size()) != n * n || static_cast<int>(g.comp.size()) != n * n * n ||
        static_cast<int>(g.ids.size()) != n || static_cast<int>(g.inv.size()) != n * n) {
        rep.structural.push_back("groupoid tables have wrong size");
        return rep;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (static_cast<int>(g.comp[(x * n + y) * n + z].size()) != g.hsize(y, z) * g.hsize(x, y)) {
                    rep.structural.push_back("composition table size mismatch");
                    return rep;
                }
    for (int x = 0; x < n; ++x)
        if (g.ids[x] < 0 || g.ids[x] >= g.hsize(x, x)) {
            rep.structural.push_back("identity index out of range");
            return rep;
        }
    // units, inverses, associativity
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int i = 0; i < g.hsize(x, y); ++i) {
                if (g.compose(x, x, y, g.ids[x], i) != i || g.compose(x, y, y, i, g.ids[y]) != i)
                    rep.violations.push_back("unit law fails at hom(" + g.objects[x] + "," + g.objects[y] + ")[" +
                                             std::to_string(i) + "]");
                int j = g.inv[x * n + y][i];
                if (j < 0 || j >= g.hsize(y, x) || g.compose(x, y, x, i, j) != g.ids[x] ||
                    g.compose(y, x, y, j, i) != g.ids[y])
                    rep.violations.push_back("inverse law fails at hom(" + g.objects[x] + "," + g.objects[y] + ")[" +
                                             std::to_string(i) + "]");
            }
    for (int w = 0; w < n; ++w)
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    for (int i = 0; i < g.hsize(w, x); ++i)
                        for (int j = 0; j < g.hsize(x, y); ++j)
                            for (int k = 0; k < g.hsize(y, z); ++k)
                                if (g.compose(w, y, z, g.compose(w, x, y, i, j), k) !=
                                    g.compose(w, x, z, i, g.compose(x, y, z, j, k)))
                                    rep.violations.push_back("associativity fails in groupoid");
    return rep;
}

template <class F>
VCategory<F> linearize_groupoid(const GroupoidSpec& g, F field) {
    Report grep = validate_groupoid(g);
    if (!grep.ok()) throw std::invalid_argument("linearize_groupoid: invalid groupoid: " + grep.summary());
    const int n = g.n();
    VCategory<F> a;
    a.field = field;
    a.objects = g.objects;
    a.homdim.resize(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) a.homdim[x * n + y] = g.hsize(x, y);
    a.comp.reserve(n * n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                typename Mat<F>::Builder b(field, g.hsize(x, z), g.hsize(y, z) * g.hsize(x, y));
                for (int j = 0; j < g.hsize(y, z); ++j)
                    for (int i = 0; i < g.hsize(x, y); ++i)
                        b.set(g.compose(x, y, z, i, j), j * g.hsize(x, y) + i, field.one());
                a.comp.push_back(b.build());
            }
    for (int x = 0; x < n; ++x) {
        typename Mat<F>::Builder b(field, g.hsize(x, x), 1);
        b.set(g.ids[x], 0, field.one());
        a.idvec.push_back(b.build());
    }
    GroupoidLabels lab;
    lab.names = g.hom;
    lab.inv = g.inv;
    a.labels = std::move(lab);
    return a;
}

// A finite dimensional algebra as a one-object category. mult is the
// dim x dim^2 multiplication tensor in the same column convention as comp.
template <class F>
VCategory<F> algebra_as_one_object(int dim, Mat<F> mult, Mat<F> unit, F field) {
    VCategory<F> a;
    a.field = field;
    a.objects = {"*"};
    a.homdim = {dim};
    a.comp.push_back(std::move(mult));
    a.idvec.push_back(std::move(unit));
    return a;
}

inline std::string pair_object_id(const std::string& x, const std::string& y) {
    return "(" + x + "," + y + ")";
}

// Tensor product of categories: objects are pairs, homs are tensor products,
// composition is componentwise under the kron ordering.
template <class F>
VCategory<F> tensor_categories(const VCategory<F>& a, const VCategory<F>& b) {
    if (a.field != b.field) throw std::invalid_argument("tensor_categories: field mismatch");
    const F& f = a.field;
    const int na = a.n(), nb = b.n();
    VCategory<F> t;
    t.field = f;
    const int n = na * nb;
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nb; ++u) t.objects.push_back(pair_object_id(a.objects[x], b.objects[u]));
    t.homdim.resize(n * n);
    auto hd = [&](int xu, int yv) {
        return a.hd(xu / nb, yv / nb) * b.hd(xu % nb, yv % nb);
    };
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) t.homdim[p * n + q] = hd(p, q);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r) {
                int xa = p / nb, xb = p % nb, ya = q / nb, yb = q % nb, za = r / nb, zb = r % nb;
                int d_fg_a = a.hd(ya, za), d_fg_b = b.hd(yb, zb);
                int d_hk_a = a.hd(xa, ya), d_hk_b = b.hd(xb, yb);
                typename Mat<F>::Builder bl(f, t.homdim[p * n + r], d_fg_a * d_fg_b * d_hk_a * d_hk_b);
                const Mat<F>& ca = a.comp_mat(xa, ya, za);
                const Mat<F>& cb = b.comp_mat(xb, yb, zb);
                int out_b_dim = b.hd(xb, zb);
                ca.for_each_nonzero([&](int oa, int cola, const typename F::Elem& va) {
                    int g_a = cola / d_hk_a, f_a = cola % d_hk_a;
                    cb.for_each_nonzero([&](int ob, int colb, const typename F::Elem& vb) {
                        int g_b = colb / d_hk_b, f_b = colb % d_hk_b;
                        int col = ((g_a * d_fg_b + g_b) * d_hk_a + f_a) * d_hk_b + f_b;
                        bl.add(oa * out_b_dim + ob, col, f.mul(va, vb));
                    });
                });
                t.comp.push_back(bl.build());
            }
    for (int p = 0; p < n; ++p) t.idvec.push_back(Mat<F>::kron(a.id_of(p / nb), b.id_of(p % nb)));
    if (a.labels && b.labels) {
        GroupoidLabels lab;
        lab.names.resize(n * n);
        lab.inv.resize(n * n);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                int xa = p / nb, xb = p % nb, ya = q / nb, yb = q % nb;
                const auto& na_names = a.labels->names[xa * na + ya];
                const auto& nb_names = b.labels->names[xb * nb + yb];
                for (const auto& s : na_names)
                    for (const auto& u : nb_names) lab.names[p * n + q].push_back("(" + s + "," + u + ")");
                const auto& ia = a.labels->inv[xa * na + ya];
                const auto& ib = b.labels->inv[xb * nb + yb];
                int dy = b.hd(yb, xb);
                for (std::size_t i = 0; i < na_names.size(); ++i)
                    for (std::size_t j = 0; j < nb_names.size(); ++j)
                        lab.inv[p * n + q].push_back(ia[i] * dy + ib[j]);
            }
        t.labels = std::move(lab);
    }
    return t;
}

template <class F>
VCategory<F> opposite(const VCategory<F>& a) {
    const F& f = a.field;
    const int n = a.n();
    VCategory<F> o;
    o.field = f;
    o.objects = a.objects;
    o.homdim.resize(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) o.homdim[x * n + y] = a.hd(y, x);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                // comp_op(g (x) f) = f . g computed in a
                int dg = o.homdim[y * n + z], df = o.homdim[x * n + y];
                const Mat<F>& c = a.comp_mat(z, y, x);  // A(y,x) (x) A(z,y) -> A(z,x)
                o.comp.push_back(c * swap_factors(f, dg, df));
            }
    o.idvec = a.idvec;
    if (a.labels) {
        GroupoidLabels lab;
        lab.names.resize(n * n);
        lab.inv.resize(n * n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                lab.names[x * n + y] = a.labels->names[y * n + x];
                lab.inv[x * n + y] = a.labels->inv[y * n + x];
            }
        o.labels = std::move(lab);
    }
    return o;
}

// Full subcategory on the listed objects.
template <class F>
VCategory<F> full_subcategory(const VCategory<F>& a, const std::vector<std::string>& objs) {
    std::vector<int> ix;
    for (const auto& o : objs) ix.push_back(a.obj_index(o));
    const int n = static_cast<int>(ix.size());
    VCategory<F> s;
    s.field = a.field;
    s.objects = objs;
    s.homdim.resize(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) s.homdim[x * n + y] = a.hd(ix[x], ix[y]);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) s.comp.push_back(a.comp_mat(ix[x], ix[y], ix[z]));
    for (int x = 0; x < n; ++x) s.idvec.push_back(a.id_of(ix[x]));
    if (a.labels) {
        GroupoidLabels lab;
        lab.names.resize(n * n);
        lab.inv.resize(n * n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                lab.names[x * n + y] = a.labels->names[ix[x] * a.n() + ix[y]];
                lab.inv[x * n + y] = a.labels->inv[ix[x] * a.n() + ix[y]];
            }
        s.labels = std::move(lab);
    }
    return s;
}

// Categorical inverse of f in A(X,Y), if any: the unique g in A(Y,X) with
// f.g = id_Y and g.f = id_X.
template <class F>
Mat<F> categorical_inverse(const VCategory<F>& a, int x, int y, const Mat<F>& fvec) {
    const F& fld = a.field;
    int dyx = a.hd(y, x);
    // solve (f . g) = id_Y linearly in g
    Mat<F> m = a.comp_mat(y, x, y) * Mat<F>::kron(fvec, Mat<F>::identity(fld, dyx));
    Mat<F> rhs = a.id_of(y);
    Echelon<F> e = echelon(Mat<F>::hcat({m, rhs}, fld, m.rows()));
    // consistent iff no pivot in the last column
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols())
        throw std::invalid_argument("categorical_inverse: morphism is not invertible");
    typename Mat<F>::Builder gb(fld, dyx, 1);
    for (int i = 0; i < e.rank; ++i) gb.set(e.pivot_cols[i], 0, e.rref.at(i, m.cols()));
    Mat<F> g = gb.build();
    if (a.compose(y, x, y, fvec, g) != a.id_of(y) || a.compose(x, y, x, g, fvec) != a.id_of(x))
        throw std::invalid_argument("categorical_inverse: morphism is not two-sided invertible");
    return g;
}

}  // namespace coendcalc
