#pragma once

#include <array>
#include <string>
#include <vector>

#include "promonoidal.hpp"

// Antipodes and the star isomorphism they induce. An antipode is a functor
// S : A^op -> A with S^2 isomorphic to the identity via a V-natural family
// sigma, together with two hypothesis isomorphism families on p:
//
//     d : p(X,Y,Z)^*  ->  p(SX,SY,SZ)
//     c : p(X,Y,SZ)   ->  p(Y,Z,SX)
//
// star_from_antipode composes the six-step chain
//
//   \int^{XY} j(Y) (x) p(X,B,Y)^* (x) p(X,C,A)
//     -> \int^{XY} j(Y) (x) p(SX,SB,SY) (x) p(X,C,A)      (d)
//     -> \int^{XY} j(Y) (x) p(SB,Y,X)  (x) p(X,C,A)       (c, sigma)
//     -> \int^{X} A(SB,X) (x) p(X,C,A)                    (unit law)
//     -> p(SB,C,A)                                        (density)
//     -> p(SA,SB,SC)                                      (c, sigma)
//     -> p(A,B,C)^*                                       (d)
//
// into explicit matrices, each step asserted invertible by rank, and
// certifies the result as a natural family.

namespace coendcalc {

template <class F>
struct AntipodeData {
    std::vector<int> s_obj;        // object involution (up to sigma)
    std::vector<Mat<F>> s_hom;     // [x*n+y] : A(x,y) -> A(Sy,Sx)
    std::vector<Mat<F>> sigma;     // [x] : invertible element of A(S(Sx), x)
    std::vector<Mat<F>> d;         // [(x*n+y)*n+z] : p(x,y,z)^* -> p(Sx,Sy,Sz)
    std::vector<Mat<F>> c;         // [(x*n+y)*n+z] : p(x,y,Sz) -> p(y,z,Sx)
};

// p(SX,SY,SZ) as a functor of (X,Y,Z); variance (co, co, contra).
template <class F>
FunctorData<F> antipode_cube(const FunctorData<F>& p, const AntipodeData<F>& ad) {
    FunctorData<F> q = pullback_antipode_slot(p, 0, ad.s_obj, ad.s_hom);
    q = pullback_antipode_slot(q, 1, ad.s_obj, ad.s_hom);
    return pullback_antipode_slot(q, 2, ad.s_obj, ad.s_hom);
}

// p(X,Y,SZ) and p(Y,Z,SX) as functors of (X,Y,Z); both all-contravariant.
template <class F>
FunctorData<F> cycle_source(const FunctorData<F>& p, const AntipodeData<F>& ad) {
    return pullback_antipode_slot(p, 2, ad.s_obj, ad.s_hom);
}
template <class F>
FunctorData<F> cycle_target(const FunctorData<F>& p, const AntipodeData<F>& ad) {
    return permute_slots(pullback_antipode_slot(p, 2, ad.s_obj, ad.s_hom), {2, 0, 1});
}

template <class F>
Report validate_antipode(const Promonoidal<F>& pm, const AntipodeData<F>& ad) {
    Report rep;
    const VCategory<F>& a = *pm.cat;
    const F& fl = a.field;
    const int n = a.n();
    if (static_cast<int>(ad.s_obj.size()) != n || static_cast<int>(ad.s_hom.size()) != n * n) {
        rep.structural.push_back("S: object or hom table has wrong size");
        return rep;
    }
    if (static_cast<int>(ad.sigma.size()) != n) {
        rep.structural.push_back("sigma: table has wrong size");
        return rep;
    }
    if (static_cast<int>(ad.d.size()) != n * n * n || static_cast<int>(ad.c.size()) != n * n * n) {
        rep.structural.push_back("d or c table has wrong size");
        return rep;
    }
    auto S = [&](int x) { return ad.s_obj[x]; };

    // S is a functor A^op -> A
    for (int x = 0; x < n; ++x) {
        const Mat<F>& sh = ad.s_hom[x * n + x];
        if (sh.rows() != a.hd(S(x), S(x)) || sh.cols() != a.hd(x, x)) {
            rep.structural.push_back("S hom map at (" + a.objects[x] + "," + a.objects[x] + ") has wrong shape");
            return rep;
        }
        if (sh * a.id_of(x) != a.id_of(S(x)))
            rep.violations.push_back("S does not preserve the identity at " + a.objects[x]);
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                int dxy = a.hd(x, y), dyz = a.hd(y, z);
                if (dxy == 0 || dyz == 0) continue;
                // S(g.f) = S(f).S(g)
                Mat<F> lhs = ad.s_hom[x * n + z] * a.comp_mat(x, y, z);
                Mat<F> rhs = a.comp_mat(S(z), S(y), S(x)) *
                             Mat<F>::kron(ad.s_hom[x * n + y], ad.s_hom[y * n + z]) *
                             swap_factors(fl, dyz, dxy);
                if (lhs != rhs)
                    rep.violations.push_back("S is not functorial at (" + a.objects[x] + "," + a.objects[y] + "," +
                                             a.objects[z] + ")");
            }

    // sigma : S^2 => 1, invertible and V-natural
    for (int x = 0; x < n; ++x) {
        if (ad.sigma[x].rows() != a.hd(S(S(x)), x) || ad.sigma[x].cols() != 1) {
            rep.structural.push_back("sigma(" + a.objects[x] + ") has wrong shape");
            return rep;
        }
        try {
            (void)categorical_inverse(a, S(S(x)), x, ad.sigma[x]);
        } catch (const std::invalid_argument&) {
            rep.violations.push_back("sigma(" + a.objects[x] + ") is not invertible");
        }
    }
    for (int x = 0; x < n && rep.ok(); ++x)
        for (int y = 0; y < n; ++y) {
            int d_xy = a.hd(x, y);
            for (int m = 0; m < d_xy; ++m) {
                Mat<F> f = a.basis_vec(x, y, m);
                Mat<F> ssf = ad.s_hom[S(y) * n + S(x)] * (ad.s_hom[x * n + y] * f);
                Mat<F> lhs = a.compose(S(S(x)), x, y, f, ad.sigma[x]);
                Mat<F> rhs = a.compose(S(S(x)), S(S(y)), y, ad.sigma[y], ssf);
                if (lhs != rhs) {
                    rep.violations.push_back("sigma is not natural at A(" + a.objects[x] + "," + a.objects[y] + ")");
                    break;
                }
            }
        }
    if (!rep.ok()) return rep;

    // d : p^* => p(S-,S-,S-), natural and componentwise invertible
    FunctorData<F> pdual = pointwise_dual(pm.p);
    FunctorData<F> ps = antipode_cube(pm.p, ad);
    for (int ix = 0; ix < n * n * n; ++ix)
        if (!is_iso(ad.d[ix])) {
            rep.violations.push_back("d component " + std::to_string(ix) + " is not invertible");
            return rep;
        }
    std::string why;
    if (!check_natural(pdual, ps, ad.d, &why)) {
        rep.violations.push_back("d is not natural: " + why);
        return rep;
    }

    // c : p(-,-,S-) => p(-,-,S-) cycled, natural and componentwise invertible
    FunctorData<F> csrc = cycle_source(pm.p, ad);
    FunctorData<F> ctgt = cycle_target(pm.p, ad);
    for (int ix = 0; ix < n * n * n; ++ix)
        if (!is_iso(ad.c[ix])) {
            rep.violations.push_back("c component " + std::to_string(ix) + " is not invertible");
            return rep;
        }
    if (!check_natural(csrc, ctgt, ad.c, &why)) rep.violations.push_back("c is not natural: " + why);
    return rep;
}

// ---------------------------------------------------------------------------
// The star isomorphism data and its canonical domain

template <class F>
struct StarIso {
    std::vector<Mat<F>> s;  // [(a*n+b)*n+c] : star_domain pres -> p(a,b,c)^*
};

// K(A,B,C) = \int^{XY} j(Y) (x) p(X,B,Y)^* (x) p(X,C,A) with slot order
// [Av, Bv, Cc, Xc, Xv, Yc, Yv], bound pairs (Xc,Xv), (Yc,Yv).
template <class F>
MultiCoend<F> star_domain(const Promonoidal<F>& pm) {
    FunctorData<F> pdual = pointwise_dual(pm.p);
    FunctorData<F> integrand =
        combine<F>(pm.cat, {{&pm.j, {6}}, {&pdual, {4, 1, 5}}, {&pm.p, {3, 2, 0}}}, 7);
    return multi_coend(integrand, {{3, 4}, {5, 6}});
}

template <class F>
Report validate_star(const Promonoidal<F>& pm, const StarIso<F>& star, const MultiCoend<F>* dom = nullptr) {
    Report rep;
    const int n = pm.cat->n();
    if (static_cast<int>(star.s.size()) != n * n * n) {
        rep.structural.push_back("star table has wrong size");
        return rep;
    }
    MultiCoend<F> local;
    if (!dom) {
        local = star_domain(pm);
        dom = &local;
    }
    FunctorData<F> pdual = pointwise_dual(pm.p);
    for (int ix = 0; ix < n * n * n; ++ix) {
        if (star.s[ix].rows() != pdual.dims[ix] || star.s[ix].cols() != dom->rest.dims[ix]) {
            rep.structural.push_back("star component " + std::to_string(ix) + " has shape " + star.s[ix].shape());
            return rep;
        }
        if (!is_iso(star.s[ix])) rep.violations.push_back("star component " + std::to_string(ix) + " is not invertible");
    }
    if (!rep.ok()) return rep;
    std::string why;
    if (!check_natural(dom->rest, pdual, star.s, &why)) rep.violations.push_back("star is not natural: " + why);
    return rep;
}

template <class F>
struct StarConstruction {
    StarIso<F> star;
    MultiCoend<F> domain;                        // canonical K presentations
    std::vector<std::array<Mat<F>, 6>> factors;  // per (a,b,c): the six chain steps
};

struct star_step_error : std::runtime_error {
    std::string step;
    explicit star_step_error(const std::string& step_, const std::string& what)
        : std::runtime_error("star_from_antipode rejected at step '" + step_ + "': " + what), step(step_) {}
};

template <class F>
StarConstruction<F> star_from_antipode(const Promonoidal<F>& pm, const AntipodeData<F>& ad) {
    {
        Report rep = validate_promonoidal(pm);
        if (!rep.ok()) throw star_step_error("promonoidal-data", rep.summary());
        rep = validate_antipode(pm, ad);
        if (!rep.ok()) throw star_step_error("antipode-data", rep.summary());
    }
    const VCategory<F>& a = *pm.cat;
    const F& fl = a.field;
    const int n = a.n();
    auto S = [&](int x) { return ad.s_obj[x]; };

    StarConstruction<F> out;
    out.domain = star_domain(pm);

    // step 2 integrand: j(Y) (x) p(SX,SB,SY) (x) p(X,C,A)
    FunctorData<F> ps = antipode_cube(pm.p, ad);
    FunctorData<F> w2 = combine<F>(pm.cat, {{&pm.j, {6}}, {&ps, {4, 1, 5}}, {&pm.p, {3, 2, 0}}}, 7);
    MultiCoend<F> k2 = multi_coend(w2, {{3, 4}, {5, 6}});
    // step 3 integrand: j(Y) (x) p(SB,Y,X) (x) p(X,C,A)
    FunctorData<F> psb = pullback_antipode_slot(pm.p, 0, ad.s_obj, ad.s_hom);  // (B,Y,X) -> p(SB,Y,X)
    FunctorData<F> w3 = combine<F>(pm.cat, {{&pm.j, {6}}, {&psb, {1, 5, 4}}, {&pm.p, {3, 2, 0}}}, 7);
    MultiCoend<F> k3 = multi_coend(w3, {{3, 4}, {5, 6}});
    // step 4: \int^X A(SB,X) (x) p(X,C,A), slots [Av, Bv, Cc, Xc, Xv]
    FunctorData<F> hom = hom_bifunctor(pm.cat);
    FunctorData<F> hom_s = pullback_antipode_slot(hom, 0, ad.s_obj, ad.s_hom);  // A(S-, -), (co, co)
    FunctorData<F> w4 = combine<F>(pm.cat, {{&hom_s, {1, 4}}, {&pm.p, {3, 2, 0}}}, 5);
    MultiCoend<F> k4 = multi_coend(w4, {{3, 4}});
    MultiCoend<F> unit_dom = unit_law_domain(pm.p, pm.j);

    out.star.s.resize(n * n * n);
    out.factors.resize(n * n * n);
    for (int av = 0; av < n; ++av)
        for (int bv = 0; bv < n; ++bv)
            for (int cv = 0; cv < n; ++cv) {
                int ix = (av * n + bv) * n + cv;
                const CoendPres<F>& p1 = out.domain.pres[ix];
                const CoendPres<F>& p2 = k2.pres[ix];
                const CoendPres<F>& p3 = k3.pres[ix];
                const CoendPres<F>& p4 = k4.pres[ix];

                auto blockmap = [&](const Layout& from, const Layout& to,
                                    const std::function<Mat<F>(int, int)>& comp_fn) {
                    typename Mat<F>::Builder b(fl, to.total, from.total);
                    for (int e = 0; e < from.count(); ++e) {
                        Mat<F> m = comp_fn(e / n, e % n);  // diag tuple (x, y)
                        m.for_each_nonzero([&](int i, int j, const typename F::Elem& v) {
                            b.set(to.offsets[e] + i, from.offsets[e] + j, v);
                        });
                    }
                    return b.build();
                };

                // step 1: apply d inside the coend
                Mat<F> m1;
                try {
                    Mat<F> sigma1 = blockmap(p1.total, p2.total, [&](int x, int y) {
                        return Mat<F>::kron(Mat<F>::kron(Mat<F>::identity(fl, pm.j.dims[y]),
                                                         ad.d[(x * n + bv) * n + y]),
                                            Mat<F>::identity(fl, pm.p.dim({x, cv, av})));
                    });
                    m1 = descend(p1.q, p2.q, sigma1, "star step dual-transport");
                } catch (const consistency_error& e) {
                    throw star_step_error("dual-transport", e.what());
                }
                if (!is_iso(m1)) throw star_step_error("dual-transport", "induced map is not invertible");

                // step 2: c and sigma inside the coend
                Mat<F> m2;
                try {
                    Mat<F> sigma2 = blockmap(p2.total, p3.total, [&](int x, int y) {
                        // p(SX,SB,SY) -> p(SB,Y,SSX) -> p(SB,Y,X)
                        Mat<F> cc = ad.c[(S(x) * n + S(bv)) * n + y];
                        Mat<F> fold = act_with_vector(pm.p, 2, {S(bv), y, S(S(x))}, x, ad.sigma[x]);
                        return Mat<F>::kron(Mat<F>::kron(Mat<F>::identity(fl, pm.j.dims[y]), fold * cc),
                                            Mat<F>::identity(fl, pm.p.dim({x, cv, av})));
                    });
                    m2 = descend(p2.q, p3.q, sigma2, "star step cycle");
                } catch (const consistency_error& e) {
                    throw star_step_error("cycle", e.what());
                }
                if (!is_iso(m2)) throw star_step_error("cycle", "induced map is not invertible");

                // step 3: collapse the Y coend with the unit law
                Mat<F> m3;
                try {
                    typename Mat<F>::Builder sb(fl, p4.total.total, p3.total.total);
                    for (int e = 0; e < p3.total.count(); ++e) {
                        int x = e / n, y = e % n;
                        const CoendPres<F>& jp = unit_dom.pres[S(bv) * n + x];
                        Mat<F> u_part = pm.unit_iso[S(bv) * n + x] * jp.inject(y);
                        Mat<F> block = Mat<F>::kron(u_part, Mat<F>::identity(fl, pm.p.dim({x, cv, av})));
                        block.for_each_nonzero([&](int i, int j, const typename F::Elem& v) {
                            sb.set(p4.total.offsets[x] + i, p3.total.offsets[e] + j, v);
                        });
                    }
                    m3 = descend(p3.q, p4.q, sb.build(), "star step unit-law");
                } catch (const consistency_error& e) {
                    throw star_step_error("unit-law", e.what());
                }
                if (!is_iso(m3)) throw star_step_error("unit-law", "induced map is not invertible");

                // step 4: density
                Mat<F> m4;
                try {
                    FunctorData<F> mslice = restrict_slots(pm.p, {{1, cv}, {2, av}});
                    CoyonedaReduction<F> coyo = coyoneda_reduce(mslice, S(bv));
                    Mat<F> bridge = descend(p4.q, coyo.pres.q, Mat<F>::identity(fl, p4.total.total),
                                            "star step yoneda bridge");
                    m4 = coyo.iso * bridge;
                } catch (const consistency_error& e) {
                    throw star_step_error("yoneda", e.what());
                }
                if (!is_iso(m4)) throw star_step_error("yoneda", "induced map is not invertible");

                // step 5: c and sigma again: p(SB,C,A) -> p(SB,C,SSA) -> p(SA,SB,SC)
                Mat<F> m5;
                {
                    Mat<F> sigma_inv = categorical_inverse(a, S(S(av)), av, ad.sigma[av]);
                    Mat<F> unfold = act_with_vector(pm.p, 2, {S(bv), cv, av}, S(S(av)), sigma_inv);
                    const Mat<F>& cc = ad.c[(S(av) * n + S(bv)) * n + cv];
                    if (!is_iso(cc)) throw star_step_error("cycle-back", "c component is not invertible");
                    m5 = inverse(cc) * unfold;
                }
                if (!is_iso(m5)) throw star_step_error("cycle-back", "induced map is not invertible");

                // step 6: d back
                const Mat<F>& dd = ad.d[(av * n + bv) * n + cv];
                if (!is_iso(dd)) throw star_step_error("dual-back", "d component is not invertible");
                Mat<F> m6 = inverse(dd);

                out.factors[ix] = {m1, m2, m3, m4, m5, m6};
                out.star.s[ix] = m6 * m5 * m4 * m3 * m2 * m1;
            }

    Report rep = validate_star(pm, out.star, &out.domain);
    if (!rep.ok()) throw star_step_error("naturality", rep.summary());
    return out;
}

}  // namespace coendcalc
