#pragma once

#include "linalg.hpp"

// Independent brute-force checks for one-object categories (algebras),
// deliberately bypassing the (co)end machinery: the dimension of H/[H,H] by
// spanning commutators and the dimension of the center by solving at = ta.

namespace coendcalc {

// mult: dim x dim^2 multiplication tensor, columns (a*dim + b) |-> a.b
template <class F>
int oracle_hh0(const Mat<F>& mult, int dim) {
    const F& f = mult.field();
    typename Mat<F>::Builder span(f, dim, dim * dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            int col = a * dim + b;
            for (int k = 0; k < dim; ++k) {
                typename F::Elem v = f.sub(mult.at(k, a * dim + b), mult.at(k, b * dim + a));
                if (!f.is_zero(v)) span.set(k, col, v);
            }
        }
    return dim - rank(span.build());
}

template <class F>
int oracle_center(const Mat<F>& mult, int dim) {
    const F& f = mult.field();
    // rows: for each basis a, the condition e_a . t - t . e_a = 0
    typename Mat<F>::Builder sys(f, dim * dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int t = 0; t < dim; ++t)
            for (int k = 0; k < dim; ++k) {
                typename F::Elem v = f.sub(mult.at(k, a * dim + t), mult.at(k, t * dim + a));
                if (!f.is_zero(v)) sys.add(a * dim + k, t, v);
            }
    return kernel(sys.build()).dim();
}

}  // namespace coendcalc
