#pragma once

#include <functional>
#include <string>
#include <vector>

#include "colimits.hpp"

// Promonoidal structures (p, j) on a finite Vect-category and the Day
// convolution operations they induce on covariant functors:
//
//   (F (x) G)(A) = \int^{X,C} FX (x) GC (x) p(X,C,A)
//   [G,H](A)     = \int_{B,C} [GB (x) p(A,B,C), HC]
//   G^*(X)       = \int^B (GB)^* (x) \int^Y j(Y) (x) p(X,B,Y)^*
//
// The only law the engine demands of (p, j) is the unit law actually used
// downstream, in the orientation \int^Y j(Y) (x) p(W,Y,X) = A(W,X): supplied
// as an invertible natural family against the engine's canonical coend
// presentation of the left hand side. Symmetry data is optional metadata and
// never consumed.

namespace coendcalc {

template <class F>
struct Promonoidal {
    VCatPtr<F> cat;
    FunctorData<F> p;              // (contra, contra, co)
    FunctorData<F> j;              // (co)
    std::vector<Mat<F>> unit_iso;  // [w*n + x] : unit_domain pres -> A(W,X)
    std::string symmetry_note;     // recorded, unchecked
};

// Canonical presentation of (W,X) |-> \int^Y j(Y) (x) p(W,Y,X): bound pair
// slots are (Yc, Yv) of the integrand j(Y) (x) p(W,Y,X) with slot order
// [Wc, Xv, Yc, Yv].
template <class F>
MultiCoend<F> unit_law_domain(const FunctorData<F>& p, const FunctorData<F>& j) {
    FunctorData<F> integrand = combine<F>(p.cat, {{&j, {3}}, {&p, {0, 2, 1}}}, 4);
    return multi_coend(integrand, {{2, 3}});
}

// Components of a family out of the unit-law coend from its value on
// generators: glue_fn(w, x) must give a map (direct sum of j(Y) (x) p(W,Y,X))
// -> A(W,X) that kills the relations; this is re-verified exactly.
template <class F>
std::vector<Mat<F>> descend_unit_family(const MultiCoend<F>& dom, const VCategory<F>& a,
                                        const std::function<Mat<F>(int, int)>& glue_fn) {
    const int n = a.n();
    std::vector<Mat<F>> comps;
    comps.reserve(n * n);
    for (int w = 0; w < n; ++w)
        for (int x = 0; x < n; ++x) {
            const CoendPres<F>& pres = dom.pres[w * n + x];
            Mat<F> glue = glue_fn(w, x);
            Mat<F> u = glue * pres.q.section;
            if (glue != u * pres.q.proj)
                throw consistency_error("unit family: generator map does not kill the coend relations");
            comps.push_back(std::move(u));
        }
    return comps;
}

template <class F>
Report validate_promonoidal(const Promonoidal<F>& pm) {
    Report rep;
    if (pm.p.arity() != 3 || pm.p.var[0] != Variance::Contra || pm.p.var[1] != Variance::Contra ||
        pm.p.var[2] != Variance::Co)
        rep.structural.push_back("p must have variance (contra, contra, co)");
    if (pm.j.arity() != 1 || pm.j.var[0] != Variance::Co) rep.structural.push_back("j must be covariant of arity 1");
    if (!rep.structural.empty()) return rep;

    Report pr = validate_functor(pm.p);
    for (auto& m : pr.structural) rep.structural.push_back("p: " + m);
    for (auto& m : pr.violations) rep.violations.push_back("p: " + m);
    Report jr = validate_functor(pm.j);
    for (auto& m : jr.structural) rep.structural.push_back("j: " + m);
    for (auto& m : jr.violations) rep.violations.push_back("j: " + m);
    if (!rep.ok()) return rep;

    const VCategory<F>& a = *pm.cat;
    const int n = a.n();
    if (static_cast<int>(pm.unit_iso.size()) != n * n) {
        rep.structural.push_back("unit_iso table has wrong size");
        return rep;
    }
    MultiCoend<F> dom = unit_law_domain(pm.p, pm.j);
    for (int w = 0; w < n; ++w)
        for (int x = 0; x < n; ++x) {
            const Mat<F>& u = pm.unit_iso[w * n + x];
            if (u.rows() != a.hd(w, x) || u.cols() != dom.pres[w * n + x].dim()) {
                rep.structural.push_back("unit_iso(" + a.objects[w] + "," + a.objects[x] + ") has shape " + u.shape());
                continue;
            }
            if (!is_iso(u))
                rep.violations.push_back("unit_iso(" + a.objects[w] + "," + a.objects[x] + ") is not invertible");
        }
    if (!rep.ok()) return rep;

    std::string why;
    if (!check_natural(dom.rest, hom_bifunctor(pm.cat), pm.unit_iso, &why))
        rep.violations.push_back("unit_iso is not natural: " + why);
    return rep;
}

// ---------------------------------------------------------------------------
// Day convolution tensor

template <class F>
struct DayTensor {
    FunctorData<F> result;           // covariant functor A -> V
    std::vector<CoendPres<F>> pres;  // [a]
};

template <class F>
DayTensor<F> day_tensor(const FunctorData<F>& f, const FunctorData<F>& g, const Promonoidal<F>& pm) {
    if (f.arity() != 1 || f.var[0] != Variance::Co || g.arity() != 1 || g.var[0] != Variance::Co)
        throw std::invalid_argument("day_tensor: expected covariant functors of arity 1");
    // slots [Av, Xc, Xv, Cc, Cv]; tensor order F (x) G (x) p
    FunctorData<F> integrand = combine<F>(pm.cat, {{&f, {2}}, {&g, {4}}, {&pm.p, {1, 3, 0}}}, 5);
    MultiCoend<F> mc = multi_coend(integrand, {{1, 2}, {3, 4}});
    return {std::move(mc.rest), std::move(mc.pres)};
}

// ---------------------------------------------------------------------------
// Day convolution internal hom

template <class F>
struct DayHom {
    FunctorData<F> result;
    std::vector<EndPres<F>> pres;    // [a]
    FunctorData<F> integrand;        // slots [Av, Bc, Bv, Cc, Cv]
};

// [G(b) (x) p(a,b',c), H(c')] with hom-space transport of all five actions.
template <class F>
FunctorData<F> day_hom_integrand(const FunctorData<F>& g, const FunctorData<F>& h, const FunctorData<F>& p) {
    const F& fl = p.cat->field;
    FunctorData<F> gc = g, hc = h, pc = p;
    auto u_dim = [gc, pc](const std::vector<int>& t) { return gc.dims[t[1]] * pc.dim({t[0], t[2], t[3]}); };
    auto dim_fn = [u_dim, hc](const std::vector<int>& t) { return u_dim(t) * hc.dims[t[4]]; };
    auto act_fn = [gc, hc, pc, u_dim, fl](int s, const std::vector<int>& t, int target) {
        std::vector<int> t2 = t;
        t2[s] = target;
        const int dW = hc.dims[t[4]];
        const int dG = gc.dims[t[1]];
        auto precompose = [&](const Mat<F>& u_map /* U' -> U */) {
            return Mat<F>::kron(Mat<F>::identity(fl, dW), u_map.transpose());
        };
        int hom = 0;
        switch (s) {
            case 0: hom = pc.cat->hd(t[0], target); break;           // Av, co
            case 1: hom = pc.cat->hd(target, t[1]); break;           // Bc, contra
            case 2: hom = pc.cat->hd(t[2], target); break;           // Bv, co
            case 3: hom = pc.cat->hd(target, t[3]); break;           // Cc, contra
            case 4: hom = pc.cat->hd(t[4], target); break;           // Cv, co
        }
        int d_t = u_dim(t) * dW, d_t2 = u_dim(t2) * hc.dims[t2[4]];
        typename Mat<F>::Builder b(fl, d_t2, hom * d_t);
        for (int m = 0; m < hom; ++m) {
            Mat<F> slice;
            switch (s) {
                case 0:  // p(f,1,1) : p(a',b',c) -> p(a,b',c), precompose
                    slice = precompose(Mat<F>::kron(Mat<F>::identity(fl, dG),
                                                    pc.action(0, {target, t[2], t[3]}, t[0], m)));
                    break;
                case 1:  // G(f) : G(b1) -> G(b), precompose
                    slice = precompose(Mat<F>::kron(gc.action(0, {target}, t[1], m),
                                                    Mat<F>::identity(fl, pc.dim({t[0], t[2], t[3]}))));
                    break;
                case 2:  // p(1,f,1) : p(a,b1',c) -> p(a,b',c), precompose
                    slice = precompose(Mat<F>::kron(Mat<F>::identity(fl, dG),
                                                    pc.action(1, {t[0], target, t[3]}, t[2], m)));
                    break;
                case 3:  // p(1,1,f) : p(a,b',c1) -> p(a,b',c), precompose
                    slice = precompose(Mat<F>::kron(Mat<F>::identity(fl, dG),
                                                    pc.action(2, {t[0], t[2], target}, t[3], m)));
                    break;
                case 4:  // H(f), postcompose
                    slice = Mat<F>::kron(hc.action(0, {t[4]}, target, m), Mat<F>::identity(fl, u_dim(t)));
                    break;
            }
            slice.for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(i, m * d_t + j, v); });
        }
        return b.build();
    };
    return make_functor<F>(p.cat, {Variance::Co, Variance::Contra, Variance::Co, Variance::Contra, Variance::Co},
                           dim_fn, act_fn);
}

template <class F>
DayHom<F> day_hom(const FunctorData<F>& g, const FunctorData<F>& h, const Promonoidal<F>& pm) {
    if (g.arity() != 1 || g.var[0] != Variance::Co || h.arity() != 1 || h.var[0] != Variance::Co)
        throw std::invalid_argument("day_hom: expected covariant functors of arity 1");
    FunctorData<F> d = day_hom_integrand(g, h, pm.p);
    MultiEnd<F> me = multi_end(d, {{1, 2}, {3, 4}});
    return {std::move(me.rest), std::move(me.pres), std::move(d)};
}

// ---------------------------------------------------------------------------
// Day dual

template <class F>
struct DayDual {
    FunctorData<F> result;     // G^*, covariant
    MultiCoend<F> jp;          // (X,B) |-> \int^Y j(Y) (x) p(X,B,Y)^*, rest slots (Xv, Bv)
    MultiCoend<F> outer;       // X |-> \int^B (GB)^* (x) jp(X,B)
};

template <class F>
DayDual<F> day_dual(const FunctorData<F>& g, const Promonoidal<F>& pm) {
    if (g.arity() != 1 || g.var[0] != Variance::Co)
        throw std::invalid_argument("day_dual: expected a covariant functor of arity 1");
    FunctorData<F> pdual = pointwise_dual(pm.p);  // (co, co, contra)
    // slots [Xv, Bv, Yc, Yv]; tensor order j (x) p^*
    FunctorData<F> inner = combine<F>(pm.cat, {{&pm.j, {3}}, {&pdual, {0, 1, 2}}}, 4);
    DayDual<F> out;
    out.jp = multi_coend(inner, {{2, 3}});
    FunctorData<F> gdual = pointwise_dual(g);  // contravariant
    // slots [Xv, Bc, Bv]; tensor order (GB)^* (x) JP(X,B)
    FunctorData<F> outer_int = combine<F>(pm.cat, {{&gdual, {1}}, {&out.jp.rest, {0, 2}}}, 3);
    out.outer = multi_coend(outer_int, {{1, 2}});
    out.result = out.outer.rest;
    return out;
}

}  // namespace coendcalc
