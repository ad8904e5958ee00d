#pragma once

#include <functional>
#include <string>
#include <vector>

#include "antipode.hpp"

// Strict commutative compact closed data and the trace promonoidal structure
// it induces on a full subcategory A: p(X,Y,Z) = C(X (x) Y, Z) and
// j(X) = C(I,X), with the antipode data assembled from the supplied pairing
// and currying families. The object tables are strict (associativity and
// unitality hold on the nose); all morphism-level data is explicit matrices
// over C's homs, including the monoidal product on homs and the dual functor
// on homs, since the promonoidal actions cannot be formed without them.

namespace coendcalc {

template <class F>
struct CompactClosedData {
    VCatPtr<F> base;                 // the ambient category C
    std::vector<int> tensor_table;   // [x*n + y] -> x (x) y
    int unit_obj = 0;
    std::vector<int> dual_table;     // objectwise dual, an involution
    std::vector<Mat<F>> tensor_hom;  // [((x*n+x2)*n+y)*n+y2] : C(x,x2) (x) C(y,y2) -> C(x(x)y, x2(x)y2)
    std::vector<Mat<F>> dual_hom;    // [x*n + y] : C(x,y) -> C(Sy, Sx)
    std::vector<Mat<F>> pair_iso;    // [(x*n+y)*n+z] : C(x(x)y, z) -> C(z, x(x)y)^*
    std::vector<Mat<F>> curry1;      // [(x*n+y)*n+z] : C(Sx(x)Sy, Sz) -> C(z, x(x)y)
    std::vector<Mat<F>> curry2a;     // [(x*n+y)*n+z] : C(x(x)y, Sz) -> C(x(x)y(x)z, I)
    std::vector<Mat<F>> curry2b;     // [(x*n+y)*n+z] : C(y(x)z, Sx) -> C(x(x)y(x)z, I)

    int n() const { return base->n(); }
    int ten(int x, int y) const { return tensor_table[x * n() + y]; }
    int dual(int x) const { return dual_table[x]; }
};

template <class F>
Report validate_compact_closed(const CompactClosedData<F>& cc) {
    Report rep;
    const VCategory<F>& c = *cc.base;
    const F& fl = c.field;
    const int n = cc.n();
    Report base_rep = validate_category(c);
    if (!base_rep.ok()) {
        rep.structural.push_back("base category invalid: " + base_rep.summary());
        return rep;
    }
    if (static_cast<int>(cc.tensor_table.size()) != n * n || static_cast<int>(cc.dual_table.size()) != n ||
        static_cast<int>(cc.tensor_hom.size()) != n * n * n * n ||
        static_cast<int>(cc.dual_hom.size()) != n * n || static_cast<int>(cc.pair_iso.size()) != n * n * n ||
        static_cast<int>(cc.curry1.size()) != n * n * n || static_cast<int>(cc.curry2a.size()) != n * n * n ||
        static_cast<int>(cc.curry2b.size()) != n * n * n) {
        rep.structural.push_back("table sizes do not match the object count");
        return rep;
    }
    for (int x = 0; x < n; ++x) {
        if (cc.ten(cc.unit_obj, x) != x || cc.ten(x, cc.unit_obj) != x)
            rep.violations.push_back("unit object is not strict at " + c.objects[x]);
        if (cc.dual(cc.dual(x)) != x) rep.violations.push_back("dual table is not an involution at " + c.objects[x]);
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (cc.ten(cc.ten(x, y), z) != cc.ten(x, cc.ten(y, z)))
                    rep.violations.push_back("tensor table is not associative");
    }
    if (!rep.ok()) return rep;

    // tensor_hom: identities and the interchange law on basis pairs
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Mat<F>& th = cc.tensor_hom[((x * n + x) * n + y) * n + y];
            if (th * Mat<F>::kron(c.id_of(x), c.id_of(y)) != c.id_of(cc.ten(x, y))) {
                rep.violations.push_back("tensor_hom does not preserve identities at (" + c.objects[x] + "," +
                                         c.objects[y] + ")");
                if (rep.violations.size() > 16) return rep;
            }
        }
    for (int x = 0; x < n && rep.violations.size() <= 16; ++x)
        for (int x2 = 0; x2 < n; ++x2)
            for (int x3 = 0; x3 < n; ++x3)
                for (int y = 0; y < n; ++y)
                    for (int y2 = 0; y2 < n; ++y2)
                        for (int y3 = 0; y3 < n; ++y3) {
                            int dfx = c.hd(x, x2), dgx = c.hd(x2, x3), dfy = c.hd(y, y2), dgy = c.hd(y2, y3);
                            if (dfx * dgx * dfy * dgy == 0) continue;
                            // (g (x) g') . (f (x) f') = (g.f) (x) (g'.f')
                            Mat<F> lhs =
                                c.comp_mat(cc.ten(x, y), cc.ten(x2, y2), cc.ten(x3, y3)) *
                                Mat<F>::kron(cc.tensor_hom[((x2 * n + x3) * n + y2) * n + y3],
                                             cc.tensor_hom[((x * n + x2) * n + y) * n + y2]);
                            // reorder ((g,g'),(f,f')) -> ((g,f),(g',f'))
                            std::vector<int> perm(dgx * dgy * dfx * dfy);
                            for (int gx = 0; gx < dgx; ++gx)
                                for (int gy = 0; gy < dgy; ++gy)
                                    for (int fx = 0; fx < dfx; ++fx)
                                        for (int fy = 0; fy < dfy; ++fy)
                                            perm[((gx * dgy + gy) * dfx + fx) * dfy + fy] =
                                                ((gx * dfx + fx) * dgy + gy) * dfy + fy;
                            Mat<F> rhs = cc.tensor_hom[((x * n + x3) * n + y) * n + y3] *
                                         Mat<F>::kron(c.comp_mat(x, x2, x3), c.comp_mat(y, y2, y3)) *
                                         Mat<F>::permutation(fl, perm);
                            if (lhs != rhs) {
                                rep.violations.push_back("tensor_hom interchange law fails at (" + c.objects[x] +
                                                         "->" + c.objects[x3] + ", " + c.objects[y] + "->" +
                                                         c.objects[y3] + ")");
                                if (rep.violations.size() > 16) return rep;
                            }
                        }

    for (int ix = 0; ix < n * n * n; ++ix) {
        if (!is_iso(cc.pair_iso[ix])) rep.violations.push_back("pair_iso component " + std::to_string(ix) + " is not invertible");
        if (!is_iso(cc.curry1[ix])) rep.violations.push_back("curry1 component " + std::to_string(ix) + " is not invertible");
        if (!is_iso(cc.curry2a[ix])) rep.violations.push_back("curry2a component " + std::to_string(ix) + " is not invertible");
        if (!is_iso(cc.curry2b[ix])) rep.violations.push_back("curry2b component " + std::to_string(ix) + " is not invertible");
        if (rep.violations.size() > 16) return rep;
    }
    return rep;
}

template <class F>
struct TracePromonoidal {
    Promonoidal<F> pm;
    AntipodeData<F> ad;
    Report report;  // validation of the assembled structures
};

// Build the trace promonoidal structure on the full subcategory spanned by
// a_objects. The unit object need not lie in a_objects; when it does not,
// the unit law cannot be an isomorphism and the report says so.
template <class F>
TracePromonoidal<F> trace_promonoidal(const CompactClosedData<F>& cc, const std::vector<std::string>& a_objects) {
    {
        Report base = validate_compact_closed(cc);
        if (!base.ok()) throw std::invalid_argument("trace_promonoidal: invalid compact closed data: " + base.summary());
    }
    const VCategory<F>& c = *cc.base;
    const F& fl = c.field;
    const int n = cc.n();

    std::vector<int> gi;  // global index of each chosen object
    for (const auto& o : a_objects) gi.push_back(c.obj_index(o));
    const int m = static_cast<int>(gi.size());
    for (int i = 0; i < m; ++i) {
        bool inside = false;
        for (int j = 0; j < m; ++j)
            if (cc.dual(gi[i]) == gi[j]) inside = true;
        if (!inside)
            throw std::invalid_argument("trace_promonoidal: dual of " + a_objects[i] + " leaves the chosen objects");
    }

    TracePromonoidal<F> out;
    auto sub = std::make_shared<const VCategory<F>>(full_subcategory(c, a_objects));
    out.pm.cat = sub;

    // helpers on global objects
    auto precompose = [&](int u2, int u, int z, const Mat<F>& mvec) {
        // C(u,z) -> C(u2,z), t |-> t . mvec for mvec in C(u2,u)
        return c.comp_mat(u2, u, z) * Mat<F>::kron(Mat<F>::identity(fl, c.hd(u, z)), mvec);
    };

    out.pm.p = make_functor<F>(
        sub, {Variance::Contra, Variance::Contra, Variance::Co},
        [&](const std::vector<int>& t) { return c.hd(cc.ten(gi[t[0]], gi[t[1]]), gi[t[2]]); },
        [&](int s, const std::vector<int>& t, int target) -> Mat<F> {
            int gx = gi[t[0]], gy = gi[t[1]], gz = gi[t[2]], gt = gi[target];
            int u = cc.ten(gx, gy);
            if (s == 2) return c.comp_mat(u, gz, gt);  // postcompose
            int hd = s == 0 ? c.hd(gt, gx) : c.hd(gt, gy);
            int u2 = s == 0 ? cc.ten(gt, gy) : cc.ten(gx, gt);
            int d_t = c.hd(u, gz);
            typename Mat<F>::Builder b(fl, c.hd(u2, gz), hd * d_t);
            for (int mm = 0; mm < hd; ++mm) {
                Mat<F> fv = s == 0 ? c.basis_vec(gt, gx, mm) : c.basis_vec(gt, gy, mm);
                Mat<F> fx1 = s == 0 ? cc.tensor_hom[((gt * n + gx) * n + gy) * n + gy] *
                                          Mat<F>::kron(fv, c.id_of(gy))
                                    : cc.tensor_hom[((gx * n + gx) * n + gt) * n + gy] *
                                          Mat<F>::kron(c.id_of(gx), fv);
                Mat<F> slice = precompose(u2, u, gz, fx1);
                slice.for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(i, mm * d_t + j, v); });
            }
            return b.build();
        });

    out.pm.j = make_functor<F>(
        sub, {Variance::Co}, [&](const std::vector<int>& t) { return c.hd(cc.unit_obj, gi[t[0]]); },
        [&](int, const std::vector<int>& t, int target) {
            return c.comp_mat(cc.unit_obj, gi[t[0]], gi[target]);
        });

    // unit law: class of e (x) t |-> t . (id_W (x) e)
    MultiCoend<F> dom = unit_law_domain(out.pm.p, out.pm.j);
    bool unit_ok = true;
    std::string unit_msg;
    try {
        out.pm.unit_iso = descend_unit_family<F>(dom, *sub, [&](int w, int x) {
            int gw = gi[w], gx = gi[x];
            std::vector<Mat<F>> cols;
            for (int y = 0; y < m; ++y) {
                int gy = gi[y];
                int dj = c.hd(cc.unit_obj, gy), dp = c.hd(cc.ten(gw, gy), gx);
                typename Mat<F>::Builder b(fl, c.hd(gw, gx), dj * dp);
                for (int e = 0; e < dj; ++e) {
                    Mat<F> wtimes_e = cc.tensor_hom[((gw * n + gw) * n + cc.unit_obj) * n + gy] *
                                      Mat<F>::kron(c.id_of(gw), c.basis_vec(cc.unit_obj, gy, e));
                    Mat<F> slice = precompose(gw, cc.ten(gw, gy), gx, wtimes_e);
                    slice.for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(i, e * dp + j, v); });
                }
                cols.push_back(b.build());
            }
            return Mat<F>::hcat(cols, fl, c.hd(gw, gx));
        });
    } catch (const consistency_error& e) {
        unit_ok = false;
        unit_msg = e.what();
        out.pm.unit_iso.assign(m * m, Mat<F>::zero(fl, 0, 0));
    }

    // the antipode data
    out.ad.s_obj.resize(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (cc.dual(gi[i]) == gi[j]) out.ad.s_obj[i] = j;
    out.ad.s_hom.reserve(m * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) out.ad.s_hom.push_back(cc.dual_hom[gi[x] * n + gi[y]]);
    out.ad.sigma.reserve(m);
    for (int x = 0; x < m; ++x) {
        if (cc.dual(cc.dual(gi[x])) != gi[x])
            throw std::invalid_argument("trace_promonoidal: strict duals must square to the identity");
        out.ad.sigma.push_back(sub->id_of(x));
    }
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z) {
                int t = (gi[x] * n + gi[y]) * n + gi[z];
                // d = curry1^{-1} . (pair_iso^T)^{-1} : p(X,Y,Z)^* -> p(SX,SY,SZ)
                out.ad.d.push_back(inverse(cc.curry1[t]) * inverse(dual_map(cc.pair_iso[t])));
                // c = curry2b^{-1} . curry2a : p(X,Y,SZ) -> p(Y,Z,SX)
                out.ad.c.push_back(inverse(cc.curry2b[t]) * cc.curry2a[t]);
            }

    out.report = validate_promonoidal(out.pm);
    if (!unit_ok) out.report.violations.push_back("unit law does not descend: " + unit_msg);
    Report ad_rep = validate_antipode(out.pm, out.ad);
    for (auto& s : ad_rep.structural) out.report.structural.push_back("antipode: " + s);
    for (auto& s : ad_rep.violations) out.report.violations.push_back("antipode: " + s);
    return out;
}

}  // namespace coendcalc
