#pragma once

#include "compact.hpp"

// Group-graded gallery instances: the skeleton of G-graded lines as a strict
// compact closed category (hom(x,y) = k iff x = y, tensor = group product,
// dual = inverse, every structural family the 1x1 identity), and graded
// vector-space functors on its trace promonoidal structure.

namespace coendcalc {

// The G-graded skeleton as a groupoid-labeled category: objects are group
// elements, homs are spanned by identities only.
template <class F>
VCategory<F> graded_skeleton_category(const GroupTable& g, F field) {
    GroupoidSpec s;
    const int m = g.order();
    s.objects = g.names;
    s.hom.resize(m * m);
    s.comp.resize(m * m * m);
    s.inv.resize(m * m);
    for (int x = 0; x < m; ++x) {
        s.hom[x * m + x] = {"id" + g.names[x]};
        s.inv[x * m + x] = {0};
    }
    for (int x = 0; x < m; ++x) s.comp[(x * m + x) * m + x] = {0};
    s.ids.assign(m, 0);
    return linearize_groupoid(s, field);
}

template <class F>
CompactClosedData<F> graded_skeleton(const GroupTable& g, F field) {
    const int m = g.order();
    CompactClosedData<F> cc;
    cc.base = std::make_shared<const VCategory<F>>(graded_skeleton_category(g, field));
    const VCategory<F>& c = *cc.base;
    cc.tensor_table = g.mult;
    cc.unit_obj = g.identity;
    cc.dual_table.resize(m);
    for (int x = 0; x < m; ++x) cc.dual_table[x] = g.inv(x);

    auto line = [&](bool nonzero) {
        return nonzero ? Mat<F>::identity(field, 1) : Mat<F>::zero(field, 0, 0);
    };
    cc.tensor_hom.reserve(m * m * m * m);
    for (int x = 0; x < m; ++x)
        for (int x2 = 0; x2 < m; ++x2)
            for (int y = 0; y < m; ++y)
                for (int y2 = 0; y2 < m; ++y2) {
                    int rows = c.hd(g.mul(x, y), g.mul(x2, y2));
                    int cols = c.hd(x, x2) * c.hd(y, y2);
                    typename Mat<F>::Builder b(field, rows, cols);
                    if (rows == 1 && cols == 1) b.set(0, 0, field.one());
                    cc.tensor_hom.push_back(b.build());
                }
    cc.dual_hom.reserve(m * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) cc.dual_hom.push_back(line(x == y));
    cc.pair_iso.reserve(m * m * m);
    cc.curry1.reserve(m * m * m);
    cc.curry2a.reserve(m * m * m);
    cc.curry2b.reserve(m * m * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z) {
                int xy = g.mul(x, y);
                cc.pair_iso.push_back(line(xy == z));
                // C(Sx (x) Sy, Sz) -> C(z, x (x) y)
                cc.curry1.push_back(line(g.mul(g.inv(x), g.inv(y)) == g.inv(z)));
                // C(x (x) y, Sz) -> C(x (x) y (x) z, I)
                cc.curry2a.push_back(line(xy == g.inv(z)));
                // C(y (x) z, Sx) -> C(x (x) y (x) z, I)
                cc.curry2b.push_back(line(g.mul(y, z) == g.inv(x)));
            }
    return cc;
}

// The delta promonoidal data written out directly: p(x,y,z) = k iff xy = z,
// j(x) = k iff x = e. Used to cross-check trace_promonoidal.
template <class F>
Promonoidal<F> delta_promonoidal(const GroupTable& g, VCatPtr<F> skeleton) {
    Promonoidal<F> pm;
    pm.cat = skeleton;
    const F& fl = skeleton->field;
    const int m = g.order();
    pm.p = make_functor<F>(
        skeleton, {Variance::Contra, Variance::Contra, Variance::Co},
        [&](const std::vector<int>& t) { return g.mul(t[0], t[1]) == t[2] ? 1 : 0; },
        [&](int s, const std::vector<int>& t, int target) -> Mat<F> {
            std::vector<int> t2 = t;
            t2[s] = target;
            int d1 = g.mul(t[0], t[1]) == t[2] ? 1 : 0;
            int d2 = g.mul(t2[0], t2[1]) == t2[2] ? 1 : 0;
            int hd = (s == 2 ? skeleton->hd(t[2], target) : skeleton->hd(target, t[s]));
            typename Mat<F>::Builder b(fl, d2, hd * d1);
            if (d1 == 1 && d2 == 1 && hd == 1) b.set(0, 0, fl.one());
            return b.build();
        });
    pm.j = make_functor<F>(
        skeleton, {Variance::Co}, [&](const std::vector<int>& t) { return t[0] == g.identity ? 1 : 0; },
        [&](int, const std::vector<int>& t, int target) -> Mat<F> {
            int d1 = t[0] == g.identity ? 1 : 0;
            int d2 = target == g.identity ? 1 : 0;
            typename Mat<F>::Builder b(fl, d2, skeleton->hd(t[0], target) * d1);
            if (d1 == 1 && d2 == 1 && skeleton->hd(t[0], target) == 1) b.set(0, 0, fl.one());
            return b.build();
        });
    MultiCoend<F> dom = unit_law_domain(pm.p, pm.j);
    pm.unit_iso = descend_unit_family<F>(dom, *skeleton, [&](int w, int x) {
        // single generator at y = e when w = x carries the identity
        const CoendPres<F>& pres = dom.pres[w * m + x];
        typename Mat<F>::Builder b(fl, skeleton->hd(w, x), pres.total.total);
        if (w == x) b.set(0, pres.total.offsets[g.identity], fl.one());
        return b.build();
    });
    return pm;
}

// A graded functor on the skeleton: prescribed dimension per object, the
// identity action of each identity morphism.
template <class F>
FunctorData<F> graded_functor(VCatPtr<F> skeleton, const std::vector<int>& dims) {
    const F& fl = skeleton->field;
    std::vector<int> d = dims;
    return make_functor<F>(
        skeleton, {Variance::Co}, [d](const std::vector<int>& t) { return d[t[0]]; },
        [skeleton, d, fl](int, const std::vector<int>& t, int target) {
            int hd = skeleton->hd(t[0], target);
            return hd == 0 ? Mat<F>::zero(fl, d[target], 0) : Mat<F>::identity(fl, d[t[0]]);
        });
}

}  // namespace coendcalc
