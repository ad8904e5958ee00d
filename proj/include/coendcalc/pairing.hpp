#pragma once

#include <vector>

#include "vcategory.hpp"

// A chosen self-duality pairing on the homs of a category: invertible maps
// phi(X,Y) : A(Y,X) -> A(X,Y)^* whose associated bilinear forms
//
//     beta_{X,Y}(a, b) = phi(a)(b) = phi(X,Y)[b, a]
//
// satisfy the two balance laws
//
//     B1:  beta_{X,Y'}(a.h, b) = beta_{X,Y}(a, h.b)
//     B2:  beta_{X',Y}(u.a, b) = beta_{X,Y}(a, b.u)
//
// on all bases. Balance plus invertibility is exactly naturality of phi in
// the form that is directly testable on basis morphisms.

namespace coendcalc {

template <class F>
struct PairingIso {
    std::vector<Mat<F>> phi;  // [x*n + y] : A(Y,X) -> A(X,Y)^*

    const Mat<F>& at(int x, int y, int n) const { return phi[x * n + y]; }
};

template <class F>
typename F::Elem pairing_beta(const VCategory<F>& a, const PairingIso<F>& p, int x, int y, int ai, int bi) {
    return p.at(x, y, a.n()).at(bi, ai);
}

template <class F>
Report validate_pairing(const VCategory<F>& a, const PairingIso<F>& p) {
    Report rep;
    const int n = a.n();
    if (static_cast<int>(p.phi.size()) != n * n) {
        rep.structural.push_back("phi table has wrong size");
        return rep;
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Mat<F>& m = p.at(x, y, n);
            if (m.rows() != a.hd(x, y) || m.cols() != a.hd(y, x)) {
                rep.structural.push_back("phi(" + a.objects[x] + "," + a.objects[y] + ") has shape " + m.shape());
                continue;
            }
            if (!is_iso(m))
                rep.violations.push_back("phi(" + a.objects[x] + "," + a.objects[y] + ") is not invertible");
        }
    if (!rep.ok()) return rep;

    const F& f = a.field;
    // B1: a in A(Y,X), h in A(Y',Y), b in A(X,Y')
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int yp = 0; yp < n; ++yp) {
                int da = a.hd(y, x), dh = a.hd(yp, y), db = a.hd(x, yp);
                for (int ai = 0; ai < da; ++ai)
                    for (int hi = 0; hi < dh; ++hi)
                        for (int bi = 0; bi < db; ++bi) {
                            Mat<F> ah = a.compose(yp, y, x, a.basis_vec(y, x, ai), a.basis_vec(yp, y, hi));
                            typename F::Elem lhs = f.zero();
                            ah.for_each_nonzero([&](int c, int, const typename F::Elem& v) {
                                lhs = f.add(lhs, f.mul(v, pairing_beta(a, p, x, yp, c, bi)));
                            });
                            Mat<F> hb = a.compose(x, yp, y, a.basis_vec(yp, y, hi), a.basis_vec(x, yp, bi));
                            typename F::Elem rhs = f.zero();
                            hb.for_each_nonzero([&](int d, int, const typename F::Elem& v) {
                                rhs = f.add(rhs, f.mul(v, pairing_beta(a, p, x, y, ai, d)));
                            });
                            if (!f.eq(lhs, rhs)) {
                                rep.violations.push_back("balance B1 fails at (" + a.objects[x] + "," + a.objects[y] +
                                                         "," + a.objects[yp] + ") basis (" + std::to_string(ai) + "," +
                                                         std::to_string(hi) + "," + std::to_string(bi) + ")");
                                if (rep.violations.size() > 64) return rep;
                            }
                        }
            }
    // B2: a in A(Y,X), u in A(X,X'), b in A(X',Y)
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int xp = 0; xp < n; ++xp) {
                int da = a.hd(y, x), du = a.hd(x, xp), db = a.hd(xp, y);
                for (int ai = 0; ai < da; ++ai)
                    for (int ui = 0; ui < du; ++ui)
                        for (int bi = 0; bi < db; ++bi) {
                            Mat<F> ua = a.compose(y, x, xp, a.basis_vec(x, xp, ui), a.basis_vec(y, x, ai));
                            typename F::Elem lhs = f.zero();
                            ua.for_each_nonzero([&](int c, int, const typename F::Elem& v) {
                                lhs = f.add(lhs, f.mul(v, pairing_beta(a, p, xp, y, c, bi)));
                            });
                            Mat<F> bu = a.compose(x, xp, y, a.basis_vec(xp, y, bi), a.basis_vec(x, xp, ui));
                            typename F::Elem rhs = f.zero();
                            bu.for_each_nonzero([&](int d, int, const typename F::Elem& v) {
                                rhs = f.add(rhs, f.mul(v, pairing_beta(a, p, x, y, ai, d)));
                            });
                            if (!f.eq(lhs, rhs)) {
                                rep.violations.push_back("balance B2 fails at (" + a.objects[x] + "," + a.objects[y] +
                                                         "," + a.objects[xp] + ") basis (" + std::to_string(ai) + "," +
                                                         std::to_string(ui) + "," + std::to_string(bi) + ")");
                                if (rep.violations.size() > 64) return rep;
                            }
                        }
            }
    return rep;
}

// The delta pairing of a linearized groupoid: beta(g, h) = 1 iff h is the
// inverse morphism of g.
template <class F>
PairingIso<F> delta_pairing(const VCategory<F>& a) {
    if (!a.labels) throw std::invalid_argument("delta_pairing: category carries no groupoid labeling");
    const int n = a.n();
    PairingIso<F> p;
    p.phi.reserve(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            // phi(X,Y)[b, a] = beta(a in A(Y,X), b in A(X,Y)) = [b == a^{-1}]
            typename Mat<F>::Builder b(a.field, a.hd(x, y), a.hd(y, x));
            const auto& inv_yx = a.labels->inv[y * n + x];
            for (int ai = 0; ai < a.hd(y, x); ++ai) b.set(inv_yx[ai], ai, a.field.one());
            p.phi.push_back(b.build());
        }
    return p;
}

// Pairing on a tensor product category, factorwise.
template <class F>
PairingIso<F> pairing_on_tensor(const VCategory<F>& a, const PairingIso<F>& pa, const VCategory<F>& b,
                                const PairingIso<F>& pb) {
    if (a.field != b.field) throw std::invalid_argument("pairing_on_tensor: field mismatch");
    const int na = a.n(), nb = b.n(), n = na * nb;
    PairingIso<F> p;
    p.phi.reserve(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            p.phi.push_back(Mat<F>::kron(pa.at(x / nb, y / nb, na), pb.at(x % nb, y % nb, nb)));
    return p;
}

}  // namespace coendcalc
