#pragma once

#include <string>
#include <utility>
#include <vector>

#include "functors.hpp"

// Ends and coends of functor data, presented exactly:
//
//   * a coend over the pairs (c_i, v_i) is the cokernel of the relation map
//     whose column at (g : Y -> X, t) is  W(g@c)(t) placed at Y  minus
//     W(g@v)(t) placed at X, all other bound variables on the diagonal;
//   * an end is the kernel of the constraint map whose row block at (X, Y)
//     lives in A(X,Y)^* (x) W(X,Y) and takes t to
//     (f |-> W(f@v)(t_X)) - (f |-> W(f@c)(t_Y)).
//
// Both depend only on the span of the relations/constraints, so presentations
// assembled by different (mathematically equal) routes coincide; whenever two
// routes are composed anyway, the descend/corestrict primitives re-verify
// compatibility exactly instead of assuming it.

namespace coendcalc {

template <class F>
struct CoendPres {
    Layout total;           // one block per bound diagonal tuple
    Mat<F> relations;       // total.total x n_relations
    QuotientProjection<F> q;

    int dim() const { return q.dim(); }
    // component injection composed with the projection
    Mat<F> inject(int diag_ix) const {
        const F& f = q.proj.field();
        typename Mat<F>::Builder b(f, total.total, total.dims[diag_ix]);
        for (int i = 0; i < total.dims[diag_ix]; ++i) b.set(total.offsets[diag_ix] + i, i, f.one());
        return q.proj * b.build();
    }
};

template <class F>
struct EndPres {
    Layout total;
    Mat<F> constraints;     // n_constraints x total.total
    SubspaceInclusion<F> k;

    int dim() const { return k.dim(); }
    // projection of the end onto one diagonal component
    Mat<F> project(int diag_ix) const {
        std::vector<int> rows(total.dims[diag_ix]);
        for (int i = 0; i < total.dims[diag_ix]; ++i) rows[i] = total.offsets[diag_ix] + i;
        return k.basis.select_rows(rows);
    }
};

namespace detail {

// Bookkeeping shared by multi_coend / multi_end: bound slot pairs, remaining
// slots, and the diagonal tuple enumeration.
template <class F>
struct BoundShape {
    const FunctorData<F>* w;
    std::vector<std::pair<int, int>> pairs;  // (contra slot, co slot)
    std::vector<int> rest;                   // remaining slots, ascending
    int n;

    BoundShape(const FunctorData<F>& fd, const std::vector<std::pair<int, int>>& prs) : w(&fd), pairs(prs), n(fd.n()) {
        std::vector<bool> bound(fd.arity(), false);
        for (auto [c, v] : pairs) {
            if (fd.var[c] != Variance::Contra || fd.var[v] != Variance::Co)
                throw std::invalid_argument("coend/end: bound pair must be (contra, co)");
            bound[c] = bound[v] = true;
        }
        for (int s = 0; s < fd.arity(); ++s)
            if (!bound[s]) rest.push_back(s);
    }
    int m() const { return static_cast<int>(pairs.size()); }
    int diag_count() const {
        int c = 1;
        for (int i = 0; i < m(); ++i) c *= n;
        return c;
    }
    std::vector<int> diag_of(int ix) const {
        std::vector<int> d(m());
        for (int i = m() - 1; i >= 0; --i) {
            d[i] = ix % n;
            ix /= n;
        }
        return d;
    }
    int rest_count() const {
        int c = 1;
        for (std::size_t i = 0; i < rest.size(); ++i) c *= n;
        return c;
    }
    std::vector<int> rest_of(int ix) const {
        std::vector<int> r(rest.size());
        for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
            r[i] = ix % n;
            ix /= n;
        }
        return r;
    }
    // full tuple from rest values and per-pair (c, v) values
    std::vector<int> full(const std::vector<int>& r, const std::vector<int>& cvals,
                          const std::vector<int>& vvals) const {
        std::vector<int> t(w->arity());
        for (std::size_t i = 0; i < rest.size(); ++i) t[rest[i]] = r[i];
        for (int i = 0; i < m(); ++i) {
            t[pairs[i].first] = cvals[i];
            t[pairs[i].second] = vvals[i];
        }
        return t;
    }
    std::vector<int> full_diag(const std::vector<int>& r, const std::vector<int>& d) const { return full(r, d, d); }

    Layout layout(const std::vector<int>& r) const {
        std::vector<int> dims(diag_count());
        for (int ix = 0; ix < diag_count(); ++ix) dims[ix] = w->dim(full_diag(r, diag_of(ix)));
        return Layout(dims);
    }
};

}  // namespace detail

template <class F>
struct MultiCoend {
    FunctorData<F> rest;          // induced functor on the remaining slots
    std::vector<CoendPres<F>> pres;  // [rest tuple index]
};

template <class F>
struct MultiEnd {
    FunctorData<F> rest;
    std::vector<EndPres<F>> pres;
};

template <class F>
CoendPres<F> coend_presentation(const detail::BoundShape<F>& sh, const std::vector<int>& r) {
    const FunctorData<F>& w = *sh.w;
    const F& fl = w.cat->field;
    CoendPres<F> out;
    out.total = sh.layout(r);

    typename Mat<F>::Builder rel(fl, out.total.total,
                                 [&] {
                                     // count columns first
                                     long cols = 0;
                                     for (int i = 0; i < sh.m(); ++i)
                                         for (int e = 0; e < sh.diag_count(); ++e) {
                                             std::vector<int> d = sh.diag_of(e);
                                             int x = d[i];
                                             for (int y = 0; y < sh.n; ++y) {
                                                 std::vector<int> cv = d, vv = d;
                                                 vv[i] = y;
                                                 cols += static_cast<long>(w.cat->hd(y, x)) *
                                                         w.dim(sh.full(r, cv, vv));
                                             }
                                         }
                                     return static_cast<int>(cols);
                                 }());
    int col = 0;
    for (int i = 0; i < sh.m(); ++i)
        for (int e = 0; e < sh.diag_count(); ++e) {
            std::vector<int> d = sh.diag_of(e);
            int x = d[i];
            for (int y = 0; y < sh.n; ++y) {
                // g in A(Y, X), t in W(.., c_i = X, v_i = Y, ..)
                std::vector<int> cv = d, vv = d;
                vv[i] = y;
                std::vector<int> t_mixed = sh.full(r, cv, vv);
                int dt = w.dim(t_mixed);
                int dg = w.cat->hd(y, x);
                if (dt == 0 || dg == 0) continue;
                std::vector<int> dy = d;
                dy[i] = y;
                int diag_y = 0;
                for (int q2 : dy) diag_y = diag_y * sh.n + q2;
                int off_y = out.total.offsets[diag_y];
                int off_x = out.total.offsets[e];
                const Mat<F>& to_y = w.action_tensor(sh.pairs[i].first, w.tuple_index(t_mixed), y);
                const Mat<F>& to_x = w.action_tensor(sh.pairs[i].second, w.tuple_index(t_mixed), x);
                to_y.for_each_nonzero([&](int row, int cc, const typename F::Elem& v) {
                    rel.add(off_y + row, col + cc, v);
                });
                to_x.for_each_nonzero([&](int row, int cc, const typename F::Elem& v) {
                    rel.add(off_x + row, col + cc, fl.neg(v));
                });
                col += dg * dt;
            }
        }
    out.relations = rel.build();
    out.q = cokernel(out.relations);
    return out;
}

template <class F>
EndPres<F> end_presentation(const detail::BoundShape<F>& sh, const std::vector<int>& r) {
    const FunctorData<F>& w = *sh.w;
    const F& fl = w.cat->field;
    EndPres<F> out;
    out.total = sh.layout(r);

    long rows = 0;
    for (int i = 0; i < sh.m(); ++i)
        for (int e = 0; e < sh.diag_count(); ++e) {
            std::vector<int> d = sh.diag_of(e);
            int x = d[i];
            for (int y = 0; y < sh.n; ++y) {
                std::vector<int> cv = d, vv = d;
                cv[i] = x; vv[i] = y;
                rows += static_cast<long>(w.cat->hd(x, y)) * w.dim(sh.full(r, cv, vv));
            }
        }
    typename Mat<F>::Builder con(fl, static_cast<int>(rows), out.total.total);
    int row = 0;
    for (int i = 0; i < sh.m(); ++i)
        for (int e = 0; e < sh.diag_count(); ++e) {
            std::vector<int> d = sh.diag_of(e);
            int x = d[i];
            for (int y = 0; y < sh.n; ++y) {
                // f in A(X, Y); component in A(X,Y)^* (x) W(c=X, v=Y)
                std::vector<int> cv = d, vv = d;
                vv[i] = y;
                std::vector<int> t_mixed = sh.full(r, cv, vv);
                int dw = w.dim(t_mixed);
                int df = w.cat->hd(x, y);
                if (dw == 0 || df == 0) continue;
                std::vector<int> dy = d;
                dy[i] = y;
                int diag_y = 0;
                for (int q2 : dy) diag_y = diag_y * sh.n + q2;
                int off_x = out.total.offsets[e];
                int off_y = out.total.offsets[diag_y];
                // from the X diagonal: t |-> W(f@v)(t), target Y
                const Mat<F>& mv = w.action_tensor(sh.pairs[i].second, w.tuple_index(sh.full_diag(r, d)), y);
                // from the Y diagonal: t |-> W(f@c)(t), target X
                const Mat<F>& mc = w.action_tensor(sh.pairs[i].first, w.tuple_index(sh.full_diag(r, dy)), x);
                int dim_x = w.dim(sh.full_diag(r, d)), dim_y = w.dim(sh.full_diag(r, dy));
                mv.for_each_nonzero([&](int rr, int cc, const typename F::Elem& v) {
                    con.add(row + (cc / dim_x) * dw + rr, off_x + cc % dim_x, v);
                });
                mc.for_each_nonzero([&](int rr, int cc, const typename F::Elem& v) {
                    con.add(row + (cc / dim_y) * dw + rr, off_y + cc % dim_y, fl.neg(v));
                });
                row += df * dw;
            }
        }
    out.constraints = con.build();
    out.k = kernel(out.constraints);
    return out;
}

// Block-diagonal lift of a remaining-slot action over all diagonal tuples.
template <class F>
Mat<F> diagonal_action(const detail::BoundShape<F>& sh, const std::vector<int>& r, int rest_pos, int target, int m) {
    const FunctorData<F>& w = *sh.w;
    const F& fl = w.cat->field;
    std::vector<Mat<F>> blocks;
    for (int e = 0; e < sh.diag_count(); ++e)
        blocks.push_back(w.action(sh.rest[rest_pos], sh.full_diag(r, sh.diag_of(e)), target, m));
    return Mat<F>::block_diag(blocks, fl);
}

template <class F>
MultiCoend<F> multi_coend(const FunctorData<F>& w, const std::vector<std::pair<int, int>>& pairs) {
    detail::BoundShape<F> sh(w, pairs);
    const F& fl = w.cat->field;
    MultiCoend<F> out;
    out.pres.reserve(sh.rest_count());
    for (int ix = 0; ix < sh.rest_count(); ++ix) out.pres.push_back(coend_presentation(sh, sh.rest_of(ix)));

    std::vector<Variance> var;
    for (int s : sh.rest) var.push_back(w.var[s]);
    std::vector<CoendPres<F>>* pres = &out.pres;
    // rest tuple indexing matches BoundShape::rest_of
    auto rest_index = [n = sh.n](const std::vector<int>& t) {
        int ix = 0;
        for (int v : t) ix = ix * n + v;
        return ix;
    };
    out.rest = make_functor<F>(
        w.cat, var,
        [pres, rest_index](const std::vector<int>& t) { return (*pres)[rest_index(t)].dim(); },
        [&w, &sh, pres, rest_index, fl](int s, const std::vector<int>& t, int target) {
            std::vector<int> t2 = t;
            t2[s] = target;
            const CoendPres<F>& src = (*pres)[rest_index(t)];
            const CoendPres<F>& dst = (*pres)[rest_index(t2)];
            int hd = w.action_hom_dim(sh.rest[s], sh.full_diag(t, sh.diag_of(0)), target);
            typename Mat<F>::Builder b(fl, dst.dim(), hd * src.dim());
            for (int m = 0; m < hd; ++m) {
                Mat<F> ind = descend(src.q, dst.q, diagonal_action(sh, t, s, target, m), "coend action");
                ind.for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(i, m * src.dim() + j, v); });
            }
            return b.build();
        });
    return out;
}

template <class F>
MultiEnd<F> multi_end(const FunctorData<F>& w, const std::vector<std::pair<int, int>>& pairs) {
    detail::BoundShape<F> sh(w, pairs);
    const F& fl = w.cat->field;
    MultiEnd<F> out;
    out.pres.reserve(sh.rest_count());
    for (int ix = 0; ix < sh.rest_count(); ++ix) out.pres.push_back(end_presentation(sh, sh.rest_of(ix)));

    std::vector<Variance> var;
    for (int s : sh.rest) var.push_back(w.var[s]);
    std::vector<EndPres<F>>* pres = &out.pres;
    auto rest_index = [n = sh.n](const std::vector<int>& t) {
        int ix = 0;
        for (int v : t) ix = ix * n + v;
        return ix;
    };
    out.rest = make_functor<F>(
        w.cat, var,
        [pres, rest_index](const std::vector<int>& t) { return (*pres)[rest_index(t)].dim(); },
        [&w, &sh, pres, rest_index, fl](int s, const std::vector<int>& t, int target) {
            std::vector<int> t2 = t;
            t2[s] = target;
            const EndPres<F>& src = (*pres)[rest_index(t)];
            const EndPres<F>& dst = (*pres)[rest_index(t2)];
            int hd = w.action_hom_dim(sh.rest[s], sh.full_diag(t, sh.diag_of(0)), target);
            typename Mat<F>::Builder b(fl, dst.dim(), hd * src.dim());
            for (int m = 0; m < hd; ++m) {
                Mat<F> ind = corestrict(src.k, dst.k, diagonal_action(sh, t, s, target, m), "end action");
                ind.for_each_nonzero([&](int i, int j, const typename F::Elem& v) { b.set(i, m * src.dim() + j, v); });
            }
            return b.build();
        });
    return out;
}

// The two basic single-variable forms.
template <class F>
CoendPres<F> coend(const FunctorData<F>& t) {
    if (t.arity() != 2 || t.var[0] != Variance::Contra || t.var[1] != Variance::Co)
        throw std::invalid_argument("coend: expected a (contra, co) bifunctor");
    detail::BoundShape<F> sh(t, {{0, 1}});
    return coend_presentation(sh, {});
}

template <class F>
EndPres<F> end(const FunctorData<F>& t) {
    if (t.arity() != 2 || t.var[0] != Variance::Contra || t.var[1] != Variance::Co)
        throw std::invalid_argument("end: expected a (contra, co) bifunctor");
    detail::BoundShape<F> sh(t, {{0, 1}});
    return end_presentation(sh, {});
}

// Arity-0 functor holding a fixed space; usable as a constant tensor factor.
template <class F>
FunctorData<F> constant_space(VCatPtr<F> cat, int dim) {
    return make_functor<F>(
        cat, {}, [dim](const std::vector<int>&) { return dim; },
        [](int, const std::vector<int>&, int) -> Mat<F> {
            throw std::logic_error("constant_space: no slots to act on");
        });
}

// ---------------------------------------------------------------------------
// coyoneda_reduce: the density isomorphism  \int^X A(W,X) (x) M(X) = M(W)
// for contravariant M, with explicit mutually inverse matrices.

template <class F>
struct CoyonedaReduction {
    CoendPres<F> pres;  // canonical presentation of the coend
    Mat<F> iso;         // pres -> M(W), class of a (x) m |-> M(a)(m)
    Mat<F> inverse;     // M(W) -> pres, m |-> class of id_W (x) m
};

template <class F>
CoyonedaReduction<F> coyoneda_reduce(const FunctorData<F>& m, int w) {
    if (m.arity() != 1 || m.var[0] != Variance::Contra)
        throw std::invalid_argument("coyoneda_reduce: expected a contravariant functor");
    const F& fl = m.cat->field;
    FunctorData<F> hom = hom_bifunctor(m.cat);
    FunctorData<F> hom_w = restrict_slots(hom, {{0, w}});  // A(W,-), covariant
    FunctorData<F> integrand = combine<F>(m.cat, {{&hom_w, {1}}, {&m, {0}}}, 2);

    CoyonedaReduction<F> out;
    out.pres = coend(integrand);

    const int n = m.n();
    std::vector<Mat<F>> glue_parts;
    for (int x = 0; x < n; ++x)
        // A(W,X) (x) M(X) -> M(W) is exactly M's contravariant action tensor
        glue_parts.push_back(m.action_tensor(0, x, w));
    Mat<F> glue = Mat<F>::hcat(glue_parts, fl, m.dims[w]);
    out.iso = glue * out.pres.q.section;
    if (glue != out.iso * out.pres.q.proj)
        throw consistency_error("coyoneda_reduce: evaluation does not kill the relations");
    out.inverse = out.pres.inject(w) * Mat<F>::kron(m.cat->id_of(w), Mat<F>::identity(fl, m.dims[w]));
    if (out.iso * out.inverse != Mat<F>::identity(fl, m.dims[w]))
        throw consistency_error("coyoneda_reduce: iso . inverse is not the identity");
    if (out.inverse * out.iso != Mat<F>::identity(fl, out.pres.dim()))
        throw consistency_error("coyoneda_reduce: inverse . iso is not the identity");
    return out;
}

// ---------------------------------------------------------------------------
// coend_fubini: joint two-pair coend vs iterated coends, both directions,
// with exact round trips.

template <class F>
std::vector<int> inner_rest_slots(const FunctorData<F>& w, std::pair<int, int> p2) {
    std::vector<int> rest;
    for (int s = 0; s < w.arity(); ++s)
        if (s != p2.first && s != p2.second) rest.push_back(s);
    return rest;
}

template <class F>
struct FubiniIso {
    CoendPres<F> joint;
    Mat<F> to_iterated;
    Mat<F> from_iterated;
    int iterated_dim = 0;
};

template <class F>
FubiniIso<F> coend_fubini(const FunctorData<F>& w, std::pair<int, int> p1, std::pair<int, int> p2,
                          const std::vector<int>& rest_tuple = {}) {
    const F& fl = w.cat->field;
    const int n = w.n();
    detail::BoundShape<F> joint_sh(w, {p1, p2});
    FubiniIso<F> out;
    out.joint = coend_presentation(joint_sh, rest_tuple);

    MultiCoend<F> inner = multi_coend(w, {p2});
    // position of p1's slots and the rest slots inside inner.rest
    auto pos_in_rest = [&](int orig) {
        int p = 0;
        for (int s : inner_rest_slots(w, p2)) {
            if (s == orig) return p;
            ++p;
        }
        throw std::logic_error("coend_fubini: slot lookup");
    };
    std::pair<int, int> p1_inner{pos_in_rest(p1.first), pos_in_rest(p1.second)};
    detail::BoundShape<F> outer_sh(inner.rest, {p1_inner});

    // rest values of the inner functor for a given d1 diagonal
    detail::BoundShape<F> inner_sh(w, {p2});
    auto inner_rest_tuple = [&](int d1c, int d1v) {
        std::vector<int> t;
        for (int s : inner_sh.rest) {
            if (s == p1.first) t.push_back(d1c);
            else if (s == p1.second) t.push_back(d1v);
            else {
                // slot position among joint rest slots
                int rp = 0;
                for (int rs : joint_sh.rest) {
                    if (rs == s) break;
                    ++rp;
                }
                t.push_back(rest_tuple[rp]);
            }
        }
        return t;
    };
    auto outer_rest_tuple = [&]() {
        std::vector<int> t;
        for (int s : outer_sh.rest) {
            int orig = inner_sh.rest[s];
            int rp = 0;
            for (int rs : joint_sh.rest) {
                if (rs == orig) break;
                ++rp;
            }
            t.push_back(rest_tuple[rp]);
        }
        return t;
    }();
    CoendPres<F> outer = coend_presentation(outer_sh, outer_rest_tuple);
    out.iterated_dim = outer.dim();

    auto inner_rest_index = [&](const std::vector<int>& t) {
        int ix = 0;
        for (int v : t) ix = ix * n + v;
        return ix;
    };

    // joint total component (d1, d2) -> inner coend at d1 -> outer coend
    std::vector<Mat<F>> cols;
    for (int e = 0; e < joint_sh.diag_count(); ++e) {
        std::vector<int> d = joint_sh.diag_of(e);
        int d1 = d[0], d2 = d[1];
        const CoendPres<F>& ip = inner.pres[inner_rest_index(inner_rest_tuple(d1, d1))];
        cols.push_back(outer.inject(d1) * ip.inject(d2));
    }
    Mat<F> glue = Mat<F>::hcat(cols, fl, outer.dim());
    out.to_iterated = glue * out.joint.q.section;
    if (glue != out.to_iterated * out.joint.q.proj)
        throw consistency_error("coend_fubini: joint->iterated does not respect the relations");

    // back: outer section, then per-d1 inner sections into the joint total
    std::vector<Mat<F>> secs;
    for (int d1 = 0; d1 < n; ++d1)
        secs.push_back(inner.pres[inner_rest_index(inner_rest_tuple(d1, d1))].q.section);
    Mat<F> back = out.joint.q.proj * Mat<F>::block_diag(secs, fl) * outer.q.section;
    out.from_iterated = back;
    if (out.from_iterated * out.to_iterated != Mat<F>::identity(fl, out.joint.dim()))
        throw consistency_error("coend_fubini: round trip on the joint side is not the identity");
    if (out.to_iterated * out.from_iterated != Mat<F>::identity(fl, out.iterated_dim))
        throw consistency_error("coend_fubini: round trip on the iterated side is not the identity");
    return out;
}

// ---------------------------------------------------------------------------
// tensor_distribute: V (x) \int^X F  =  \int^X (V (x) F), both directions.

template <class F>
struct DistributeIso {
    CoendPres<F> scaled;  // canonical presentation of \int^X (V (x) F)
    Mat<F> to_scaled;     // V (x) coend(F) -> coend(V (x) F)
    Mat<F> from_scaled;
};

template <class F>
DistributeIso<F> tensor_distribute(int v_dim, const FunctorData<F>& fd) {
    if (fd.arity() != 2) throw std::invalid_argument("tensor_distribute: expected a bifunctor");
    const F& fl = fd.cat->field;
    CoendPres<F> base = coend(fd);

    FunctorData<F> cv = constant_space(fd.cat, v_dim);
    FunctorData<F> scaled_fd = combine<F>(fd.cat, {{&cv, {}}, {&fd, {0, 1}}}, 2);
    DistributeIso<F> out;
    out.scaled = coend(scaled_fd);

    // sigma : V (x) (direct sum) -> direct sum of (V (x) component)
    typename Mat<F>::Builder sb(fl, out.scaled.total.total, v_dim * base.total.total);
    for (int i = 0; i < v_dim; ++i)
        for (int x = 0; x < base.total.count(); ++x)
            for (int t = 0; t < base.total.dims[x]; ++t)
                sb.set(out.scaled.total.offsets[x] + i * base.total.dims[x] + t,
                       i * base.total.total + base.total.offsets[x] + t, fl.one());
    Mat<F> sigma = sb.build();

    QuotientProjection<F> lhs{v_dim * base.total.total,
                              Mat<F>::kron(Mat<F>::identity(fl, v_dim), base.q.proj),
                              Mat<F>::kron(Mat<F>::identity(fl, v_dim), base.q.section)};
    out.to_scaled = descend(lhs, out.scaled.q, sigma, "tensor_distribute");
    out.from_scaled = descend(out.scaled.q, lhs, sigma.transpose(), "tensor_distribute back");
    if (out.from_scaled * out.to_scaled != Mat<F>::identity(fl, lhs.dim()) ||
        out.to_scaled * out.from_scaled != Mat<F>::identity(fl, out.scaled.dim()))
        throw consistency_error("tensor_distribute: round trips are not identities");
    return out;
}

}  // namespace coendcalc
