#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pairing.hpp"
#include "vcategory.hpp"

// V-functors of arbitrary arity into Vect, stored slotwise: per slot a
// declared variance and, for every object tuple and replacement object, the
// action tensor
//
//     contra slot s:  A(T, X_s) (x) F(..X_s..) -> F(..T..)
//     co     slot s:  A(X_s, T) (x) F(..X_s..) -> F(..T..)
//
// as a matrix whose columns put the morphism index slowest. Linearity in the
// morphism argument is by construction, so validation only has to check unit
// laws, composition laws per slot, and pairwise commutation of slots.
// CoFunctor / Bifunctor / TriFunctor are the arities (co), (contra, co) and
// (contra, contra, co) of this one carrier.

namespace coendcalc {

enum class Variance { Co, Contra };

template <class F>
struct FunctorData {
    VCatPtr<F> cat;
    std::vector<Variance> var;
    std::vector<int> dims;                // [tuple_index]
    std::vector<std::vector<Mat<F>>> act; // [slot][tuple_index * n + target]

    int arity() const { return static_cast<int>(var.size()); }
    int n() const { return cat->n(); }

    int tuple_count() const {
        int t = 1;
        for (int i = 0; i < arity(); ++i) t *= n();
        return t;
    }
    int tuple_index(const std::vector<int>& t) const {
        int ix = 0;
        for (int v : t) ix = ix * n() + v;
        return ix;
    }
    std::vector<int> tuple_of(int ix) const {
        std::vector<int> t(arity());
        for (int i = arity() - 1; i >= 0; --i) {
            t[i] = ix % n();
            ix /= n();
        }
        return t;
    }
    int dim(const std::vector<int>& t) const { return dims[tuple_index(t)]; }

    // dimension of the hom space the action of slot s at tuple t with the
    // given target consumes
    int action_hom_dim(int s, const std::vector<int>& t, int target) const {
        return var[s] == Variance::Contra ? cat->hd(target, t[s]) : cat->hd(t[s], target);
    }
    const Mat<F>& action_tensor(int s, int tuple_ix, int target) const {
        return act[s][static_cast<std::size_t>(tuple_ix) * n() + target];
    }
    // the single morphism slice F(m) : F(t) -> F(t[s -> target])
    Mat<F> action(int s, const std::vector<int>& t, int target, int m) const {
        const Mat<F>& tens = action_tensor(s, tuple_index(t), target);
        int d = dims[tuple_index(t)];
        std::vector<int> cols(d);
        for (int i = 0; i < d; ++i) cols[i] = m * d + i;
        return tens.select_cols(cols);
    }
};

// Build a functor from callables. dim_fn(tuple) -> int;
// act_fn(slot, tuple, target) -> Mat of shape dim(tuple[s->target]) x (hom * dim(tuple)).
template <class F, class DimFn, class ActFn>
FunctorData<F> make_functor(VCatPtr<F> cat, std::vector<Variance> var, DimFn&& dim_fn, ActFn&& act_fn) {
    FunctorData<F> fd;
    fd.cat = std::move(cat);
    fd.var = std::move(var);
    const int n = fd.n(), k = fd.arity();
    int tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= n;
    fd.dims.resize(tuples);
    std::vector<int> t(k, 0);
    for (int ix = 0; ix < tuples; ++ix) {
        fd.dims[ix] = dim_fn(std::as_const(t));
        int i = k - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
    }
    fd.act.assign(k, {});
    for (int s = 0; s < k; ++s) {
        fd.act[s].reserve(static_cast<std::size_t>(tuples) * n);
        std::vector<int> u(k, 0);
        for (int ix = 0; ix < tuples; ++ix) {
            for (int target = 0; target < n; ++target) fd.act[s].push_back(act_fn(s, std::as_const(u), target));
            int i = k - 1;
            while (i >= 0 && ++u[i] == n) u[i--] = 0;
        }
    }
    return fd;
}

template <class F>
Report validate_functor(const FunctorData<F>& fd) {
    Report rep;
    const F& fl = fd.cat->field;
    const int n = fd.n(), k = fd.arity();
    const int tuples = fd.tuple_count();

    auto tuple_name = [&](const std::vector<int>& t) {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + fd.cat->objects[t[i]];
        return s + ")";
    };

    // shapes
    for (int s = 0; s < k; ++s)
        for (int ix = 0; ix < tuples; ++ix) {
            std::vector<int> t = fd.tuple_of(ix);
            for (int target = 0; target < n; ++target) {
                const Mat<F>& m = fd.action_tensor(s, ix, target);
                std::vector<int> t2 = t;
                t2[s] = target;
                int want_rows = fd.dims[fd.tuple_index(t2)];
                int want_cols = fd.action_hom_dim(s, t, target) * fd.dims[ix];
                if (m.rows() != want_rows || m.cols() != want_cols) {
                    rep.structural.push_back("action tensor slot " + std::to_string(s) + " at " + tuple_name(t) +
                                             " target " + fd.cat->objects[target] + " has shape " + m.shape() +
                                             ", want " + std::to_string(want_rows) + "x" + std::to_string(want_cols));
                    if (rep.structural.size() > 16) return rep;
                }
            }
        }
    if (!rep.structural.empty()) return rep;

    auto check_limit = [&]() { return rep.violations.size() > 64; };

    // unit law per slot
    for (int s = 0; s < k && !check_limit(); ++s)
        for (int ix = 0; ix < tuples; ++ix) {
            std::vector<int> t = fd.tuple_of(ix);
            int d = fd.dims[ix];
            if (d == 0) continue;
            Mat<F> u = fd.action_tensor(s, ix, t[s]) * Mat<F>::kron(fd.cat->id_of(t[s]), Mat<F>::identity(fl, d));
            if (u != Mat<F>::identity(fl, d))
                rep.violations.push_back("identity does not act as identity: slot " + std::to_string(s) + " at " +
                                         tuple_name(t));
        }

    // composition per slot
    for (int s = 0; s < k && !check_limit(); ++s)
        for (int ix = 0; ix < tuples; ++ix) {
            std::vector<int> t = fd.tuple_of(ix);
            int d = fd.dims[ix];
            if (d == 0) continue;
            int o1 = t[s];
            for (int o2 = 0; o2 < n; ++o2)
                for (int o3 = 0; o3 < n; ++o3) {
                    std::vector<int> t2 = t; t2[s] = o2;
                    if (fd.var[s] == Variance::Co) {
                        // F(g.f) = F(g) F(f) for f : o1 -> o2, g : o2 -> o3
                        int df = fd.cat->hd(o1, o2), dg = fd.cat->hd(o2, o3);
                        if (df == 0 || dg == 0) continue;
                        Mat<F> lhs = fd.action_tensor(s, ix, o3) *
                                     Mat<F>::kron(fd.cat->comp_mat(o1, o2, o3), Mat<F>::identity(fl, d));
                        Mat<F> rhs = fd.action_tensor(s, fd.tuple_index(t2), o3) *
                                     Mat<F>::kron(Mat<F>::identity(fl, dg), fd.action_tensor(s, ix, o2));
                        if (lhs != rhs) {
                            rep.violations.push_back("covariant composition fails: slot " + std::to_string(s) +
                                                     " at " + tuple_name(t) + " via " + fd.cat->objects[o2] + "," +
                                                     fd.cat->objects[o3]);
                            if (check_limit()) return rep;
                        }
                    } else {
                        // F(f.g) = F(g) F(f) for f in A(o2,o1), g in A(o3,o2)
                        int df = fd.cat->hd(o2, o1), dg = fd.cat->hd(o3, o2);
                        if (df == 0 || dg == 0) continue;
                        Mat<F> lhs = fd.action_tensor(s, ix, o3) *
                                     Mat<F>::kron(fd.cat->comp_mat(o3, o2, o1), Mat<F>::identity(fl, d));
                        Mat<F> rhs = fd.action_tensor(s, fd.tuple_index(t2), o3) *
                                     Mat<F>::kron(Mat<F>::identity(fl, dg), fd.action_tensor(s, ix, o2)) *
                                     Mat<F>::kron(swap_factors(fl, df, dg), Mat<F>::identity(fl, d));
                        if (lhs != rhs) {
                            rep.violations.push_back("contravariant composition fails: slot " + std::to_string(s) +
                                                     " at " + tuple_name(t) + " via " + fd.cat->objects[o2] + "," +
                                                     fd.cat->objects[o3]);
                            if (check_limit()) return rep;
                        }
                    }
                }
        }

    // pairwise commutation of slots
    for (int s = 0; s < k && !check_limit(); ++s)
        for (int s2 = s + 1; s2 < k; ++s2)
            for (int ix = 0; ix < tuples; ++ix) {
                std::vector<int> t = fd.tuple_of(ix);
                if (fd.dims[ix] == 0) continue;
                for (int os = 0; os < n; ++os)
                    for (int os2 = 0; os2 < n; ++os2) {
                        int dhs = fd.action_hom_dim(s, t, os), dhs2 = fd.action_hom_dim(s2, t, os2);
                        if (dhs == 0 || dhs2 == 0) continue;
                        std::vector<int> ts = t, ts2 = t;
                        ts[s] = os;
                        ts2[s2] = os2;
                        for (int m1 = 0; m1 < dhs; ++m1)
                            for (int m2 = 0; m2 < dhs2; ++m2) {
                                Mat<F> ab = fd.action(s, ts2, os, m1) * fd.action(s2, t, os2, m2);
                                Mat<F> ba = fd.action(s2, ts, os2, m2) * fd.action(s, t, os, m1);
                                if (ab != ba) {
                                    rep.violations.push_back("slot actions do not commute: slots " +
                                                             std::to_string(s) + "," + std::to_string(s2) + " at " +
                                                             tuple_name(t));
                                    m1 = dhs; break;
                                }
                            }
                    }
            }
    return rep;
}

// The hom bifunctor A(-,-) : precomposition in the contravariant slot,
// postcomposition in the covariant one.
template <class F>
FunctorData<F> hom_bifunctor(VCatPtr<F> cat) {
    const VCategory<F>& a = *cat;
    const F& fl = a.field;
    return make_functor<F>(
        cat, {Variance::Contra, Variance::Co},
        [&](const std::vector<int>& t) { return a.hd(t[0], t[1]); },
        [&](int s, const std::vector<int>& t, int target) -> Mat<F> {
            if (s == 0)  // A(x', x) (x) A(x, y) -> A(x', y)
                return a.comp_mat(target, t[0], t[1]) * swap_factors(fl, a.hd(target, t[0]), a.hd(t[0], t[1]));
            return a.comp_mat(t[0], t[1], target);  // A(y, y') (x) A(x, y) -> A(x, y')
        });
}

// Pointwise dual: dims kept, variances flipped, actions transposed.
template <class F>
FunctorData<F> pointwise_dual(const FunctorData<F>& fd) {
    const F& fl = fd.cat->field;
    std::vector<Variance> var;
    for (Variance v : fd.var) var.push_back(v == Variance::Co ? Variance::Contra : Variance::Co);
    FunctorData<F> src = fd;  // capture by value for the lambda's lifetime
    return make_functor<F>(
        fd.cat, var, [src](const std::vector<int>& t) { return src.dims[src.tuple_index(t)]; },
        [src, fl](int s, const std::vector<int>& t, int target) -> Mat<F> {
            std::vector<int> t2 = t;
            t2[s] = target;
            int d_t = src.dims[src.tuple_index(t)];
            int d_t2 = src.dims[src.tuple_index(t2)];
            // dual action of m is the transpose of the source action of m in
            // the opposite direction
            int hd = src.action_hom_dim(s, t2, t[s]);
            typename Mat<F>::Builder b(fl, d_t2, hd * d_t);
            for (int m = 0; m < hd; ++m) {
                Mat<F> slice = src.action(s, t2, t[s], m).transpose();
                slice.for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(i, m * d_t + j, v); });
            }
            return b.build();
        });
}

// Fix some slots at objects; remaining slots keep their relative order.
template <class F>
FunctorData<F> restrict_slots(const FunctorData<F>& fd, const std::vector<std::pair<int, int>>& fixed) {
    std::vector<int> fixed_at(fd.arity(), -1);
    for (auto [s, o] : fixed) fixed_at[s] = o;
    std::vector<int> keep;
    std::vector<Variance> var;
    for (int s = 0; s < fd.arity(); ++s)
        if (fixed_at[s] < 0) {
            keep.push_back(s);
            var.push_back(fd.var[s]);
        }
    FunctorData<F> src = fd;
    std::vector<int> fx = fixed_at;
    auto lift = [src, fx, keep](const std::vector<int>& t) {
        std::vector<int> full(fx.size());
        for (std::size_t s = 0; s < fx.size(); ++s) full[s] = fx[s];
        for (std::size_t i = 0; i < keep.size(); ++i) full[keep[i]] = t[i];
        return full;
    };
    return make_functor<F>(
        fd.cat, var,
        [src, lift](const std::vector<int>& t) { return src.dims[src.tuple_index(lift(t))]; },
        [src, lift, keep](int s, const std::vector<int>& t, int target) {
            return src.action_tensor(keep[s], src.tuple_index(lift(t)), target);
        });
}

// Factor assignment for combine: factor slot i feeds output slot assign[i].
template <class F>
struct FactorSpec {
    const FunctorData<F>* fd;
    std::vector<int> assign;
};

// Tensor product of functors along an assignment of their slots to output
// slots (a bijection overall). The tensor factor order is the factor list
// order, with each factor's value space kept together.
template <class F>
FunctorData<F> combine(VCatPtr<F> cat, const std::vector<FactorSpec<F>>& factors, int out_arity) {
    const F& fl = cat->field;
    std::vector<Variance> var(out_arity, Variance::Co);
    std::vector<int> owner(out_arity, -1), owner_slot(out_arity, -1);
    for (int fi = 0; fi < static_cast<int>(factors.size()); ++fi) {
        const FactorSpec<F>& fs = factors[fi];
        if (static_cast<int>(fs.assign.size()) != fs.fd->arity())
            throw std::invalid_argument("combine: assignment size mismatch");
        for (int s = 0; s < fs.fd->arity(); ++s) {
            int out = fs.assign[s];
            if (owner[out] != -1) throw std::invalid_argument("combine: output slot assigned twice");
            owner[out] = fi;
            owner_slot[out] = s;
            var[out] = fs.fd->var[s];
        }
    }
    for (int s = 0; s < out_arity; ++s)
        if (owner[s] < 0) throw std::invalid_argument("combine: output slot unassigned");

    // local copies so the returned functor does not reference caller storage
    std::vector<FunctorData<F>> fds;
    std::vector<std::vector<int>> assigns;
    for (const auto& fs : factors) {
        fds.push_back(*fs.fd);
        assigns.push_back(fs.assign);
    }
    auto sub_tuple = [assigns](int fi, const std::vector<int>& t) {
        std::vector<int> sub(assigns[fi].size());
        for (std::size_t s = 0; s < assigns[fi].size(); ++s) sub[s] = t[assigns[fi][s]];
        return sub;
    };
    auto dim_fn = [fds, sub_tuple](const std::vector<int>& t) {
        int d = 1;
        for (std::size_t fi = 0; fi < fds.size(); ++fi) d *= fds[fi].dim(sub_tuple(fi, t));
        return d;
    };
    std::vector<int> own = owner, own_slot = owner_slot;
    auto act_fn = [fds, sub_tuple, own, own_slot, dim_fn, fl](int s, const std::vector<int>& t, int target) {
        int fi = own[s], fslot = own_slot[s];
        std::vector<int> sub = sub_tuple(fi, t);
        int hd = fds[fi].action_hom_dim(fslot, sub, target);
        int d_t = dim_fn(t);
        std::vector<int> t2 = t;
        t2[s] = target;
        int d_t2 = dim_fn(t2);
        typename Mat<F>::Builder b(fl, d_t2, hd * d_t);
        for (int m = 0; m < hd; ++m) {
            Mat<F> slice;
            bool first = true;
            for (std::size_t fj = 0; fj < fds.size(); ++fj) {
                Mat<F> part = (static_cast<int>(fj) == fi)
                                  ? fds[fj].action(fslot, sub, target, m)
                                  : Mat<F>::identity(fl, fds[fj].dim(sub_tuple(fj, t)));
                slice = first ? part : Mat<F>::kron(slice, part);
                first = false;
            }
            slice.for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(i, m * d_t + j, v); });
        }
        return b.build();
    };
    return make_functor<F>(cat, var, dim_fn, act_fn);
}

// Reorder slots: the new slot i reads the old slot src_of_new[i].
template <class F>
FunctorData<F> permute_slots(const FunctorData<F>& fd, const std::vector<int>& src_of_new) {
    std::vector<Variance> var;
    for (int j : src_of_new) var.push_back(fd.var[j]);
    FunctorData<F> src = fd;
    std::vector<int> perm = src_of_new;
    auto lift = [src, perm](const std::vector<int>& t) {
        std::vector<int> u(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) u[perm[i]] = t[i];
        return u;
    };
    return make_functor<F>(
        fd.cat, var, [src, lift](const std::vector<int>& t) { return src.dim(lift(t)); },
        [src, lift, perm](int s, const std::vector<int>& t, int target) {
            return src.action_tensor(perm[s], src.tuple_index(lift(t)), target);
        });
}

// Precompose one slot with an antipode-style functor S : A^op -> A given by
// an object involution s_obj and hom maps s_hom[x*n+y] : A(x,y) -> A(Sy,Sx).
// The slot's variance flips; the action contracts through s_hom.
template <class F>
FunctorData<F> pullback_antipode_slot(const FunctorData<F>& fd, int slot, const std::vector<int>& s_obj,
                                      const std::vector<Mat<F>>& s_hom) {
    const F& fl = fd.cat->field;
    const int n = fd.n();
    std::vector<Variance> var = fd.var;
    var[slot] = var[slot] == Variance::Co ? Variance::Contra : Variance::Co;
    FunctorData<F> src = fd;
    std::vector<int> sobj = s_obj;
    std::vector<Mat<F>> shom = s_hom;
    auto lift = [sobj, slot](const std::vector<int>& t) {
        std::vector<int> u = t;
        u[slot] = sobj[t[slot]];
        return u;
    };
    return make_functor<F>(
        fd.cat, var, [src, lift](const std::vector<int>& t) { return src.dim(lift(t)); },
        [src, lift, sobj, shom, slot, n, fl](int s, const std::vector<int>& t, int target) -> Mat<F> {
            std::vector<int> u = lift(t);
            if (s != slot) return src.action_tensor(s, src.tuple_index(u), target);
            // morphism m in A(t[s], o) (old contra) or A(o, t[s]) (old co)
            bool old_contra = src.var[s] == Variance::Contra;
            int hom_pair = old_contra ? t[s] * n + target : target * n + t[s];
            const Mat<F>& sm = shom[hom_pair];
            int hd = sm.cols();
            int d_t = src.dim(u);
            std::vector<int> u2 = u;
            u2[slot] = sobj[target];
            int d_t2 = src.dim(u2);
            typename Mat<F>::Builder b(fl, d_t2, hd * d_t);
            for (int m = 0; m < hd; ++m) {
                // S(m) = sum_k sm[k, m] basis_k
                for (int k = 0; k < sm.rows(); ++k) {
                    typename F::Elem cf = sm.at(k, m);
                    if (fl.is_zero(cf)) continue;
                    Mat<F> slice = src.action(s, u, sobj[target], k);
                    slice.for_each_nonzero([&](int i, int j, const typename F::Elem& v) {
                        b.add(i, m * d_t + j, fl.mul(cf, v));
                    });
                }
            }
            return b.build();
        });
}

// Contract an action tensor with a fixed morphism vector: the linear map
// F(vec @ slot) : F(t) -> F(t[slot -> target]).
template <class F>
Mat<F> act_with_vector(const FunctorData<F>& fd, int slot, const std::vector<int>& t, int target,
                       const Mat<F>& vec) {
    const F& fl = fd.cat->field;
    return fd.action_tensor(slot, fd.tuple_index(t), target) *
           Mat<F>::kron(vec, Mat<F>::identity(fl, fd.dim(t)));
}

// Direct sum of functors with equal variance profiles.
template <class F>
FunctorData<F> direct_sum_functors(const FunctorData<F>& a, const FunctorData<F>& b) {
    if (a.var != b.var) throw std::invalid_argument("direct_sum_functors: variance mismatch");
    const F& fl = a.cat->field;
    FunctorData<F> ca = a, cb = b;
    return make_functor<F>(
        a.cat, a.var,
        [ca, cb](const std::vector<int>& t) { return ca.dim(t) + cb.dim(t); },
        [ca, cb, fl](int s, const std::vector<int>& t, int target) {
            int hd = ca.action_hom_dim(s, t, target);
            std::vector<int> t2 = t;
            t2[s] = target;
            int da = ca.dim(t), db = cb.dim(t), da2 = ca.dim(t2), db2 = cb.dim(t2);
            typename Mat<F>::Builder bl(fl, da2 + db2, hd * (da + db));
            for (int m = 0; m < hd; ++m) {
                ca.action(s, t, target, m).for_each_nonzero([&](int i, int j, const typename F::Elem& v) {
                    bl.set(i, m * (da + db) + j, v);
                });
                cb.action(s, t, target, m).for_each_nonzero([&](int i, int j, const typename F::Elem& v) {
                    bl.set(da2 + i, m * (da + db) + da + j, v);
                });
            }
            return bl.build();
        });
}

// T(X,Y) = A(X,P) (x) A(Q,Y): always a valid (contra, co) bifunctor.
template <class F>
FunctorData<F> double_representable(VCatPtr<F> cat, int p, int q) {
    FunctorData<F> hom = hom_bifunctor(cat);
    FunctorData<F> left = restrict_slots(hom, {{1, p}});   // A(-, P), contra
    FunctorData<F> right = restrict_slots(hom, {{0, q}});  // A(Q, -), co
    return combine<F>(cat, {{&left, {0}}, {&right, {1}}}, 2);
}

// Conjugate a functor by a family of invertible changes of basis, one per
// tuple. Preserves validity and makes the action matrices dense.
template <class F>
FunctorData<F> twist_functor(const FunctorData<F>& fd, const std::vector<Mat<F>>& g,
                             const std::vector<Mat<F>>& ginv) {
    FunctorData<F> src = fd;
    const F& fl = fd.cat->field;
    std::vector<Mat<F>> cg = g, cgi = ginv;
    return make_functor<F>(
        fd.cat, fd.var, [src](const std::vector<int>& t) { return src.dim(t); },
        [src, cg, cgi, fl](int s, const std::vector<int>& t, int target) {
            std::vector<int> t2 = t;
            t2[s] = target;
            int ix = src.tuple_index(t), ix2 = src.tuple_index(t2);
            int hd = src.action_hom_dim(s, t, target);
            return cg[ix2] * src.action_tensor(s, ix, target) *
                   Mat<F>::kron(Mat<F>::identity(fl, hd), cgi[ix]);
        });
}

// ---------------------------------------------------------------------------
// Natural and dinatural families

template <class F>
bool check_natural(const FunctorData<F>& src, const FunctorData<F>& dst, const std::vector<Mat<F>>& comps,
                   std::string* why = nullptr) {
    if (src.arity() != dst.arity() || src.var != dst.var) {
        if (why) *why = "variance profiles differ";
        return false;
    }
    const int n = src.n(), tuples = src.tuple_count();
    if (static_cast<int>(comps.size()) != tuples) {
        if (why) *why = "component table has wrong size";
        return false;
    }
    for (int ix = 0; ix < tuples; ++ix) {
        std::vector<int> t = src.tuple_of(ix);
        if (comps[ix].rows() != dst.dims[ix] || comps[ix].cols() != src.dims[ix]) {
            if (why) *why = "component at tuple " + std::to_string(ix) + " has shape " + comps[ix].shape();
            return false;
        }
    }
    for (int s = 0; s < src.arity(); ++s)
        for (int ix = 0; ix < tuples; ++ix) {
            std::vector<int> t = src.tuple_of(ix);
            for (int target = 0; target < n; ++target) {
                int hd = src.action_hom_dim(s, t, target);
                std::vector<int> t2 = t;
                t2[s] = target;
                int ix2 = src.tuple_index(t2);
                for (int m = 0; m < hd; ++m) {
                    if (dst.action(s, t, target, m) * comps[ix] != comps[ix2] * src.action(s, t, target, m)) {
                        if (why)
                            *why = "naturality square fails at slot " + std::to_string(s) + ", tuple " +
                                   std::to_string(ix) + ", morphism " + std::to_string(m);
                        return false;
                    }
                }
            }
        }
    return true;
}

// Two-index dinaturality of a family alpha[x][y] : T(x,x) -> T(y,y) over a
// bifunctor T: the cowedge condition in the first index and the wedge
// condition in the second, each checked with the other index fixed.
template <class F>
bool check_dinatural(const FunctorData<F>& t, const std::vector<std::vector<Mat<F>>>& alpha,
                     std::string* why = nullptr) {
    if (t.arity() != 2 || t.var[0] != Variance::Contra || t.var[1] != Variance::Co) {
        if (why) *why = "dinaturality needs a (contra, co) bifunctor";
        return false;
    }
    const int n = t.n();
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            for (int xp = 0; xp < n; ++xp) {
                // f : x -> xp, alpha[x][y] T(f,1) = alpha[xp][y] T(1,f) on T(xp,x)
                int hd = t.cat->hd(x, xp);
                for (int m = 0; m < hd; ++m) {
                    Mat<F> lhs = alpha[x][y] * t.action(0, {xp, x}, x, m);
                    Mat<F> rhs = alpha[xp][y] * t.action(1, {xp, x}, xp, m);
                    if (lhs != rhs) {
                        if (why)
                            *why = "cowedge condition fails at x=" + t.cat->objects[x] + " x'=" + t.cat->objects[xp] +
                                   " y=" + t.cat->objects[y] + " morphism " + std::to_string(m);
                        return false;
                    }
                }
            }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int yp = 0; yp < n; ++yp) {
                // g : y -> yp, T(1,g) alpha[x][y] = T(g,1) alpha[x][yp] into T(y,yp)
                int hd = t.cat->hd(y, yp);
                for (int m = 0; m < hd; ++m) {
                    Mat<F> lhs = t.action(1, {y, y}, yp, m) * alpha[x][y];
                    Mat<F> rhs = t.action(0, {yp, yp}, y, m) * alpha[x][yp];
                    if (lhs != rhs) {
                        if (why)
                            *why = "wedge condition fails at x=" + t.cat->objects[x] + " y=" + t.cat->objects[y] +
                                   " y'=" + t.cat->objects[yp] + " morphism " + std::to_string(m);
                        return false;
                    }
                }
            }
    return true;
}

}  // namespace coendcalc
