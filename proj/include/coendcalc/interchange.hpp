#pragma once

#include <string>
#include <vector>

#include "colimits.hpp"

// The canonical interchange map
//
//   \int^X \int_Y A(Y,X) (x) T(X,Y)  ->  \int_Y \int^X A(Y,X) (x) T(X,Y)
//
// and the induced isomorphism coend(T) -> end(T) obtained from a self-duality
// pairing. Both constructions assert their own well-definedness exactly: the
// image families must satisfy the end constraints and the assignments must
// kill the coend relations. A failed assertion is an engine bug, not a
// mathematical outcome, and surfaces as consistency_error.

namespace coendcalc {

template <class F>
struct InterchangeResult {
    Mat<F> map;       // domain presentation -> codomain presentation
    bool iso = false;
    int domain_dim = 0;
    int codomain_dim = 0;
};

// The four-variable functor W(X1-, X2+, Y1-, Y2+) = A(Y1, X2) (x) T(X1, Y2).
template <class F>
FunctorData<F> interchange_integrand(const FunctorData<F>& t) {
    FunctorData<F> hom = hom_bifunctor(t.cat);
    return combine<F>(t.cat, {{&hom, {2, 1}}, {&t, {0, 3}}}, 4);
}

template <class F>
InterchangeResult<F> interchange(const FunctorData<F>& t) {
    if (t.arity() != 2 || t.var[0] != Variance::Contra || t.var[1] != Variance::Co)
        throw std::invalid_argument("interchange: expected a (contra, co) bifunctor");
    const F& fl = t.cat->field;
    const int n = t.n();
    FunctorData<F> w = interchange_integrand(t);

    // domain: end over (Y1, Y2) first, then the coend of the induced bifunctor
    MultiEnd<F> inner_end = multi_end(w, {{2, 3}});
    CoendPres<F> dom = coend(inner_end.rest);
    // codomain: coend over (X1, X2) first, then the end
    MultiCoend<F> inner_coend = multi_coend(w, {{0, 1}});
    EndPres<F> cod = end(inner_coend.rest);

    auto idx2 = [n](int a, int b) { return a * n + b; };

    // per X: V(X,X) -> direct sum over Y of C(Y,Y)
    std::vector<Mat<F>> glue_cols;
    for (int x = 0; x < n; ++x) {
        const EndPres<F>& vx = inner_end.pres[idx2(x, x)];
        std::vector<Mat<F>> rows;
        for (int y = 0; y < n; ++y) {
            const CoendPres<F>& cy = inner_coend.pres[idx2(y, y)];
            // component of the end at diagonal Y, then inject at X into the coend
            rows.push_back(cy.inject(x) * vx.project(y));
        }
        glue_cols.push_back(Mat<F>::vcat(rows, fl, vx.dim()));
    }
    Mat<F> glue = Mat<F>::hcat(glue_cols, fl, cod.total.total);

    // (i) every image family lies in the outer end
    if (!(cod.constraints * glue).is_zero())
        throw consistency_error("interchange: image family violates the end constraints");
    // (ii) the assignment kills the coend relations
    if (!(glue * dom.relations).is_zero())
        throw consistency_error("interchange: assignment does not kill the coend relations");

    InterchangeResult<F> out;
    out.map = cod.k.retraction() * glue * dom.q.section;
    if (cod.k.basis * out.map * dom.q.proj != glue)
        throw consistency_error("interchange: descended map disagrees with its construction");
    out.domain_dim = dom.dim();
    out.codomain_dim = cod.dim();
    out.iso = is_iso(out.map);
    return out;
}

template <class F>
struct LemmaAlphaResult {
    std::vector<std::vector<Mat<F>>> alpha;  // [x][y] : T(x,x) -> T(y,y)
    Mat<F> induced;                          // coend(T) -> end(T)
    bool iso = false;
    bool dinatural = false;
    int coend_dim = 0;
    int end_dim = 0;
    CoendPres<F> coend_pres;
    EndPres<F> end_pres;
};

// The dinatural composite: T(X,X) -> [A(X,Y), T(X,Y)] -> A(X,Y)^* (x) T(X,Y)
// -> A(Y,X) (x) T(X,Y) -> T(Y,Y), per component (X,Y).
template <class F>
std::vector<std::vector<Mat<F>>> lemma_alpha_components(const VCategory<F>& a, const FunctorData<F>& t,
                                                        const PairingIso<F>& phi) {
    const F& fl = a.field;
    const int n = a.n();
    std::vector<std::vector<Mat<F>>> alpha(n, std::vector<Mat<F>>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int dxy = a.hd(x, y);
            int dtxx = t.dim({x, x}), dtxy = t.dim({x, y});
            // can1 : T(X,X) -> [A(X,Y), T(X,Y)], t |-> (f |-> T(1,f)(t)),
            // flattened row major: row (w * dxy + f)
            const Mat<F>& ract = t.action_tensor(1, t.tuple_index({x, x}), y);
            typename Mat<F>::Builder can1(fl, dxy * dtxy, dtxx);
            ract.for_each_nonzero([&](int w, int col, const typename F::Elem& v) {
                int f = col / dtxx, tt = col % dtxx;
                can1.set(w * dxy + f, tt, v);
            });
            // hom_iso^{-1} : [A(X,Y), T(X,Y)] -> A(X,Y)^* (x) T(X,Y)
            Mat<F> h_inv = hom_iso(fl, dxy, dtxy).transpose();
            // phi^{-1} (x) id : A(X,Y)^* (x) T(X,Y) -> A(Y,X) (x) T(X,Y)
            Mat<F> phi_inv = inverse(phi.at(x, y, n));
            Mat<F> mid = Mat<F>::kron(phi_inv, Mat<F>::identity(fl, dtxy));
            // can2 : A(Y,X) (x) T(X,Y) -> T(Y,Y) is the contravariant action
            // tensor of T at (X -> Y)
            const Mat<F>& can2 = t.action_tensor(0, t.tuple_index({x, y}), y);
            alpha[x][y] = can2 * mid * h_inv * can1.build();
        }
    return alpha;
}

template <class F>
LemmaAlphaResult<F> lemma_alpha(const VCategory<F>& a, const FunctorData<F>& t, const PairingIso<F>& phi) {
    Report prep = validate_pairing(a, phi);
    if (!prep.ok()) throw std::invalid_argument("lemma_alpha: invalid pairing: " + prep.summary());
    const F& fl = a.field;
    const int n = a.n();

    LemmaAlphaResult<F> out;
    out.alpha = lemma_alpha_components(a, t, phi);
    out.dinatural = check_dinatural(t, out.alpha);

    out.coend_pres = coend(t);
    out.end_pres = end(t);
    const CoendPres<F>& ce = out.coend_pres;
    const EndPres<F>& en = out.end_pres;
    out.coend_dim = ce.dim();
    out.end_dim = en.dim();

    std::vector<Mat<F>> cols;
    for (int x = 0; x < n; ++x) cols.push_back(Mat<F>::vcat(out.alpha[x], fl, t.dim({x, x})));
    Mat<F> glue = Mat<F>::hcat(cols, fl, en.total.total);
    if (!(en.constraints * glue).is_zero())
        throw consistency_error("lemma_alpha: image family violates the end constraints");
    if (!(glue * ce.relations).is_zero())
        throw consistency_error("lemma_alpha: assignment does not kill the coend relations");
    out.induced = en.k.retraction() * glue * ce.q.section;
    if (en.k.basis * out.induced * ce.q.proj != glue)
        throw consistency_error("lemma_alpha: descended map disagrees with its construction");
    // the stated compatibility: project_Y . induced . inject_X = alpha[X][Y]
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (en.project(y) * out.induced * ce.inject(x) != out.alpha[x][y])
                throw consistency_error("lemma_alpha: induced map has wrong components");
    out.iso = is_iso(out.induced);
    return out;
}

}  // namespace coendcalc
