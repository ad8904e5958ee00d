#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "interchange.hpp"
#include "groups.hpp"

// Randomized confirmation of the interchange hypothesis and the lemma on
// generated instances. Random categories are linearized groupoids (connected
// components with a common vertex group, composition tables scrambled by
// per-hom label bijections), which guarantees validity and a canonical delta
// pairing; random bifunctors are sums of double representables conjugated by
// random unimodular changes of basis. Vertex group orders are drawn coprime
// to the field characteristic so that iso verdicts agree across the listed
// fields; modular instances are constructible by hand and report honestly.

namespace coendcalc {

struct FuzzBounds {
    int max_objects = 3;
    int max_hom = 3;
    int max_summands = 2;
};

template <class F>
struct FuzzInstance {
    VCatPtr<F> cat;
    FunctorData<F> t;
    PairingIso<F> phi;
};

template <class F>
struct FuzzViolation {
    std::string kind;       // which expectation failed
    int instance_index = 0;
    FuzzInstance<F> shrunk; // minimal failing sub-instance
};

struct FuzzInstanceRecord {
    int objects = 0;
    int group_order = 0;
    int t_dim_total = 0;
    bool interchange_iso = false;
    bool alpha_iso = false;
    bool alpha_dinatural = false;
    bool corruption_detected = false;
    std::string corruption_detector;  // "validator" or "dinaturality"
};

template <class F>
struct FuzzReport {
    std::uint64_t seed = 0;
    int count = 0;
    FuzzBounds bounds;
    std::string field;
    std::vector<FuzzInstanceRecord> instances;
    std::vector<FuzzViolation<F>> violations;

    bool clean() const { return violations.empty(); }
};

namespace fuzzdetail {

inline int draw(std::mt19937& rng, int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

// group orders allowed for the vertex groups: within the hom bound and
// coprime to the characteristic
template <class F>
std::vector<int> allowed_orders(const F& f, int max_hom);

template <>
inline std::vector<int> allowed_orders<Rationals>(const Rationals&, int max_hom) {
    std::vector<int> v;
    for (int i = 1; i <= max_hom; ++i) v.push_back(i);
    return v;
}
template <>
inline std::vector<int> allowed_orders<PrimeField>(const PrimeField& f, int max_hom) {
    std::vector<int> v;
    for (int i = 1; i <= max_hom; ++i)
        if (i % f.modulus() != 0) v.push_back(i);
    return v;
}

// connected-component groupoid with scrambled labels
inline GroupoidSpec random_groupoid(std::mt19937& rng, const std::vector<int>& orders, int max_objects) {
    const int n = 1 + draw(rng, max_objects);
    std::vector<int> comp_of(n);
    int n_comps = 1 + draw(rng, n);
    for (int i = 0; i < n; ++i) comp_of[i] = draw(rng, n_comps);
    // group per component
    std::vector<GroupTable> groups;
    for (int c = 0; c < n_comps; ++c) groups.push_back(cyclic_group(orders[draw(rng, static_cast<int>(orders.size()))]));

    GroupoidSpec s;
    for (int i = 0; i < n; ++i) s.objects.push_back("a" + std::to_string(i));
    s.hom.resize(n * n);
    s.comp.resize(n * n * n);
    s.inv.resize(n * n);
    s.ids.resize(n);

    // per-hom label scrambles pi[x*n+y] : label -> group element
    std::vector<std::vector<int>> pi(n * n), pinv(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (comp_of[x] != comp_of[y]) continue;
            int m = groups[comp_of[x]].order();
            std::vector<int> p(m);
            for (int i = 0; i < m; ++i) p[i] = i;
            for (int i = m - 1; i > 0; --i) std::swap(p[i], p[draw(rng, i + 1)]);
            pi[x * n + y] = p;
            std::vector<int> q(m);
            for (int i = 0; i < m; ++i) q[p[i]] = i;
            pinv[x * n + y] = q;
            for (int i = 0; i < m; ++i) s.hom[x * n + y].push_back("m" + std::to_string(i));
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (comp_of[x] != comp_of[y]) continue;
            const GroupTable& g = groups[comp_of[x]];
            const int m = g.order();
            for (int z = 0; z < n; ++z) {
                if (comp_of[z] != comp_of[x]) continue;
                std::vector<int> table(m * m);
                for (int j = 0; j < m; ++j)
                    for (int i = 0; i < m; ++i)
                        table[j * m + i] = pinv[x * n + z][g.mul(pi[y * n + z][j], pi[x * n + y][i])];
                s.comp[(x * n + y) * n + z] = table;
            }
            std::vector<int> inv(m);
            for (int i = 0; i < m; ++i) inv[i] = pinv[y * n + x][g.inv(pi[x * n + y][i])];
            s.inv[x * n + y] = inv;
        }
    for (int x = 0; x < n; ++x) s.ids[x] = pinv[x * n + x][groups[comp_of[x]].identity];
    return s;
}

template <class F>
std::pair<Mat<F>, Mat<F>> random_unimodular(F f, int n, std::mt19937& rng) {
    typename Mat<F>::Builder lb(f, n, n), ub(f, n, n);
    for (int i = 0; i < n; ++i) {
        lb.set(i, i, f.one());
        ub.set(i, i, f.one());
        for (int j = 0; j < i; ++j) {
            long lv = static_cast<long>(draw(rng, 3)) - 1;
            long uv = static_cast<long>(draw(rng, 3)) - 1;
            if (lv) lb.set(i, j, f.from_int(lv));
            if (uv) ub.set(j, i, f.from_int(uv));
        }
    }
    Mat<F> m = lb.build() * ub.build();
    return {m, inverse(m)};
}

}  // namespace fuzzdetail

// A validated random bifunctor: sum of double representables, conjugated.
// diag_budget caps the total diagonal dimension so generated instances stay
// at desk scale.
template <class F>
FunctorData<F> random_bifunctor(VCatPtr<F> cat, std::mt19937& rng, int summands, int diag_budget = 12) {
    const int n = cat->n();
    auto diag_total = [&](const FunctorData<F>& fd) {
        int d = 0;
        for (int x = 0; x < n; ++x) d += fd.dim({x, x});
        return d;
    };
    FunctorData<F> t = double_representable(cat, fuzzdetail::draw(rng, n), fuzzdetail::draw(rng, n));
    for (int i = 1; i < summands; ++i) {
        FunctorData<F> extra =
            double_representable(cat, fuzzdetail::draw(rng, n), fuzzdetail::draw(rng, n));
        if (diag_total(t) + diag_total(extra) > diag_budget) break;
        t = direct_sum_functors(t, extra);
    }
    std::vector<Mat<F>> g, gi;
    for (int ix = 0; ix < t.tuple_count(); ++ix) {
        auto [m, mi] = fuzzdetail::random_unimodular(cat->field, t.dims[ix], rng);
        g.push_back(m);
        gi.push_back(mi);
    }
    return twist_functor(t, g, gi);
}

// Restrict a bifunctor along a full subcategory (kept object indices).
template <class F>
FunctorData<F> restrict_bifunctor(const FunctorData<F>& t, VCatPtr<F> sub, const std::vector<int>& kept) {
    FunctorData<F> src = t;
    std::vector<int> k = kept;
    return make_functor<F>(
        sub, src.var,
        [src, k](const std::vector<int>& tup) {
            std::vector<int> lifted(tup.size());
            for (std::size_t i = 0; i < tup.size(); ++i) lifted[i] = k[tup[i]];
            return src.dim(lifted);
        },
        [src, k](int s, const std::vector<int>& tup, int target) {
            std::vector<int> lifted(tup.size());
            for (std::size_t i = 0; i < tup.size(); ++i) lifted[i] = k[tup[i]];
            return src.action_tensor(s, src.tuple_index(lifted), k[target]);
        });
}

template <class F>
PairingIso<F> restrict_pairing(const PairingIso<F>& p, int full_n, const std::vector<int>& kept) {
    PairingIso<F> out;
    for (int x : kept)
        for (int y : kept) out.phi.push_back(p.phi[x * full_n + y]);
    return out;
}

// Greedy object-dropping shrinker: remove objects one at a time while the
// failure predicate stays true.
template <class F>
FuzzInstance<F> shrink_instance(const FuzzInstance<F>& inst,
                                const std::function<bool(const FuzzInstance<F>&)>& fails) {
    FuzzInstance<F> cur = inst;
    std::vector<int> kept(cur.cat->n());
    for (int i = 0; i < cur.cat->n(); ++i) kept[i] = i;
    bool progress = true;
    while (progress && cur.cat->n() > 1) {
        progress = false;
        for (int drop = 0; drop < cur.cat->n(); ++drop) {
            std::vector<std::string> objs;
            std::vector<int> sub_kept;
            for (int i = 0; i < cur.cat->n(); ++i)
                if (i != drop) {
                    objs.push_back(cur.cat->objects[i]);
                    sub_kept.push_back(i);
                }
            FuzzInstance<F> cand;
            cand.cat = std::make_shared<const VCategory<F>>(full_subcategory(*cur.cat, objs));
            cand.t = restrict_bifunctor(cur.t, cand.cat, sub_kept);
            cand.phi = restrict_pairing(cur.phi, cur.cat->n(), sub_kept);
            if (fails(cand)) {
                cur = std::move(cand);
                progress = true;
                break;
            }
        }
    }
    return cur;
}

// Zero out one nonzero entry of one pairing component, chosen by the rng.
template <class F>
PairingIso<F> corrupt_pairing(const PairingIso<F>& p, const VCategory<F>& a, std::mt19937& rng) {
    PairingIso<F> out = p;
    const int n = a.n();
    std::vector<int> nonempty;
    for (int ix = 0; ix < n * n; ++ix)
        if (out.phi[ix].nonzero_count() > 0) nonempty.push_back(ix);
    if (nonempty.empty()) return out;
    int ix = nonempty[fuzzdetail::draw(rng, static_cast<int>(nonempty.size()))];
    int pick = fuzzdetail::draw(rng, static_cast<int>(out.phi[ix].nonzero_count()));
    typename Mat<F>::Builder b(a.field, out.phi[ix].rows(), out.phi[ix].cols());
    int seen = 0;
    out.phi[ix].for_each_nonzero([&](int i, int j, const typename F::Elem& v) {
        if (seen++ != pick) b.set(i, j, v);
    });
    out.phi[ix] = b.build();
    return out;
}

template <class F>
FuzzReport<F> fuzz(std::uint64_t seed, int count, const FuzzBounds& bounds, F field) {
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    FuzzReport<F> report;
    report.seed = seed;
    report.count = count;
    report.bounds = bounds;
    report.field = field.name();
    std::vector<int> orders = fuzzdetail::allowed_orders<F>(field, bounds.max_hom);

    for (int it = 0; it < count; ++it) {
        GroupoidSpec gs = fuzzdetail::random_groupoid(rng, orders, bounds.max_objects);
        FuzzInstance<F> inst;
        inst.cat = std::make_shared<const VCategory<F>>(linearize_groupoid(gs, field));
        inst.t = random_bifunctor(inst.cat, rng, 1 + fuzzdetail::draw(rng, bounds.max_summands));
        inst.phi = delta_pairing(*inst.cat);

        FuzzInstanceRecord rec;
        rec.objects = inst.cat->n();
        rec.group_order = inst.cat->hd(0, 0);
        for (int x = 0; x < inst.cat->n(); ++x) rec.t_dim_total += inst.t.dim({x, x});

        if (!validate_category(*inst.cat).ok() || !validate_functor(inst.t).ok() ||
            !validate_pairing(*inst.cat, inst.phi).ok()) {
            FuzzViolation<F> v;
            v.kind = "generated instance failed validation";
            v.instance_index = it;
            v.shrunk = inst;
            report.violations.push_back(std::move(v));
            report.instances.push_back(rec);
            continue;
        }

        InterchangeResult<F> ic = interchange(inst.t);
        rec.interchange_iso = ic.iso;
        LemmaAlphaResult<F> la = lemma_alpha(*inst.cat, inst.t, inst.phi);
        rec.alpha_iso = la.iso;
        rec.alpha_dinatural = la.dinatural;

        if (!ic.iso || !la.dinatural || (ic.iso && !la.iso)) {
            FuzzViolation<F> v;
            v.kind = !ic.iso ? "interchange hypothesis failed" : (!la.dinatural ? "alpha not dinatural" : "lemma conclusion failed under true hypothesis");
            v.instance_index = it;
            v.shrunk = shrink_instance<F>(inst, [&](const FuzzInstance<F>& c) {
                if (!validate_pairing(*c.cat, c.phi).ok()) return false;
                InterchangeResult<F> ic2 = interchange(c.t);
                if (!ic2.iso) return !ic.iso;
                LemmaAlphaResult<F> la2 = lemma_alpha(*c.cat, c.t, c.phi);
                return !la2.dinatural ? !la.dinatural : !la2.iso;
            });
            report.violations.push_back(std::move(v));
        }

        // negative control: a corrupted pairing must be caught
        PairingIso<F> bad = corrupt_pairing(inst.phi, *inst.cat, rng);
        Report vrep = validate_pairing(*inst.cat, bad);
        if (!vrep.ok()) {
            rec.corruption_detected = true;
            rec.corruption_detector = "validator";
        } else {
            auto alpha = lemma_alpha_components(*inst.cat, inst.t, bad);
            if (!check_dinatural(inst.t, alpha)) {
                rec.corruption_detected = true;
                rec.corruption_detector = "dinaturality";
            }
        }
        if (!rec.corruption_detected) {
            FuzzViolation<F> v;
            v.kind = "pairing corruption went undetected";
            v.instance_index = it;
            v.shrunk = inst;
            report.violations.push_back(std::move(v));
        }
        report.instances.push_back(rec);
    }
    return report;
}

}  // namespace coendcalc
