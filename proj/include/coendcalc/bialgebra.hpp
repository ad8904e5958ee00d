#pragma once

#include <random>

#include "antipode.hpp"
#include "groups.hpp"

// The group-algebra promonoidal structure on the one-object category k[G]:
// p(*,*,*) = k[G] (x) k[G] with the two contravariant slots acting by right
// multiplication on the respective factor and the covariant slot by the
// diagonal g |-> g (x) g; j = k via the augmentation. The antipode is
// S(g) = g^{-1} with sigma the identity, d the identity matrix on group
// bases and c the permutation (g, k) |-> (g^{-1}k, g^{-1}).

namespace coendcalc {

template <class F>
struct BialgebraPromonoidal {
    Promonoidal<F> pm;
    AntipodeData<F> ad;
};

template <class F>
BialgebraPromonoidal<F> bialgebra_promonoidal(const GroupTable& g, F field) {
    if (!g.valid()) throw std::invalid_argument("bialgebra_promonoidal: not a group table");
    const int m = g.order();
    auto cat = std::make_shared<const VCategory<F>>(group_algebra_category(g, field));
    const F& fl = field;

    BialgebraPromonoidal<F> out;
    out.pm.cat = cat;

    auto pair_ix = [m](int a, int b) { return a * m + b; };
    out.pm.p = make_functor<F>(
        cat, {Variance::Contra, Variance::Contra, Variance::Co},
        [m](const std::vector<int>&) { return m * m; },
        [&, m](int s, const std::vector<int>&, int) {
            typename Mat<F>::Builder b(fl, m * m, m * m * m);
            for (int h = 0; h < m; ++h)
                for (int a = 0; a < m; ++a)
                    for (int bb = 0; bb < m; ++bb) {
                        int src = pair_ix(a, bb);
                        int dst = s == 0   ? pair_ix(g.mul(a, h), bb)   // right mult, factor 1
                                  : s == 1 ? pair_ix(a, g.mul(bb, h))   // right mult, factor 2
                                           : pair_ix(g.mul(h, a), g.mul(h, bb));  // diagonal
                        b.set(dst, h * m * m + src, fl.one());
                    }
            return b.build();
        });

    out.pm.j = make_functor<F>(
        cat, {Variance::Co}, [](const std::vector<int>&) { return 1; },
        [&, m](int, const std::vector<int>&, int) {
            typename Mat<F>::Builder b(fl, 1, m);
            for (int h = 0; h < m; ++h) b.set(0, h, fl.one());  // augmentation
            return b.build();
        });

    // unit law: class of c (x) a (x) b |-> c . eps(b) . a
    MultiCoend<F> dom = unit_law_domain(out.pm.p, out.pm.j);
    out.pm.unit_iso = descend_unit_family<F>(dom, *cat, [&](int, int) {
        typename Mat<F>::Builder b(fl, m, m * m);
        for (int a = 0; a < m; ++a)
            for (int bb = 0; bb < m; ++bb) b.set(a, pair_ix(a, bb), fl.one());
        return b.build();
    });

    out.ad.s_obj = {0};
    {
        typename Mat<F>::Builder b(fl, m, m);
        for (int h = 0; h < m; ++h) b.set(g.inv(h), h, fl.one());
        out.ad.s_hom = {b.build()};
    }
    out.ad.sigma = {cat->id_of(0)};
    out.ad.d = {Mat<F>::identity(fl, m * m)};
    {
        typename Mat<F>::Builder b(fl, m * m, m * m);
        for (int a = 0; a < m; ++a)
            for (int bb = 0; bb < m; ++bb)
                b.set(pair_ix(g.mul(g.inv(a), bb), g.inv(a)), pair_ix(a, bb), fl.one());
        out.ad.c = {b.build()};
    }
    return out;
}

// A k[G]-module (covariant functor on the one-object category) given by the
// representing matrices rho[h].
template <class F>
FunctorData<F> group_module(VCatPtr<F> cat, const std::vector<Mat<F>>& rho) {
    const F& fl = cat->field;
    const int m = cat->hd(0, 0);
    if (static_cast<int>(rho.size()) != m) throw std::invalid_argument("group_module: need one matrix per group element");
    const int d = rho.empty() ? 0 : rho[0].rows();
    std::vector<Mat<F>> r = rho;
    return make_functor<F>(
        cat, {Variance::Co}, [d](const std::vector<int>&) { return d; },
        [r, fl, m, d](int, const std::vector<int>&, int) {
            typename Mat<F>::Builder b(fl, d, m * d);
            for (int h = 0; h < m; ++h)
                r[h].for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(i, h * d + j, v); });
            return b.build();
        });
}

// Permutation-representation matrices for a subgroup-free standard choice:
// the regular representation, conjugated if desired by the caller.
template <class F>
std::vector<Mat<F>> regular_representation(const GroupTable& g, F field) {
    const int m = g.order();
    std::vector<Mat<F>> rho;
    rho.reserve(m);
    for (int h = 0; h < m; ++h) {
        std::vector<int> perm(m);
        for (int a = 0; a < m; ++a) perm[a] = g.mul(h, a);
        rho.push_back(Mat<F>::permutation(field, perm));
    }
    return rho;
}

// A random module of the given dimension: regular blocks padded with
// trivials, conjugated by a random unimodular change of basis.
template <class F>
FunctorData<F> random_group_module(VCatPtr<F> cat, const GroupTable& g, int dim, std::mt19937& rng) {
    const F& fl = cat->field;
    const int m = g.order();
    int reg_blocks = dim / m;
    auto reg = regular_representation(g, fl);
    std::vector<Mat<F>> rho;
    rho.reserve(m);
    for (int h = 0; h < m; ++h) {
        typename Mat<F>::Builder b(fl, dim, dim);
        for (int k = 0; k < reg_blocks; ++k)
            reg[h].for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(k * m + i, k * m + j, v); });
        for (int r = reg_blocks * m; r < dim; ++r) b.set(r, r, fl.one());
        rho.push_back(b.build());
    }
    // random unit-triangular conjugation
    typename Mat<F>::Builder lb(fl, dim, dim), ub(fl, dim, dim);
    for (int i = 0; i < dim; ++i) {
        lb.set(i, i, fl.one());
        ub.set(i, i, fl.one());
        for (int j = 0; j < i; ++j) {
            long lv = static_cast<long>(rng() % 3) - 1;
            long uv = static_cast<long>(rng() % 3) - 1;
            if (lv) lb.set(i, j, fl.from_int(lv));
            if (uv) ub.set(j, i, fl.from_int(uv));
        }
    }
    Mat<F> c = lb.build() * ub.build();
    Mat<F> ci = inverse(c);
    for (int h = 0; h < m; ++h) rho[h] = c * rho[h] * ci;
    return group_module(cat, rho);
}

}  // namespace coendcalc
