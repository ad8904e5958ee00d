#include "doctest.h"

#include <random>

#include "coendcalc/interchange.hpp"
#include "coendcalc/groups.hpp"
#include "coendcalc/oracles.hpp"

using namespace coendcalc;

namespace {
Rationals Q;

template <class F>
VCatPtr<F> ptr(VCategory<F> c) {
    return std::make_shared<const VCategory<F>>(std::move(c));
}

// constant bifunctor k^n over the unit category
template <class F>
FunctorData<F> constant_bifunctor_unit(VCatPtr<F> cat, int n) {
    const F fl = cat->field;
    return make_functor<F>(
        cat, {Variance::Contra, Variance::Co}, [n](const std::vector<int>&) { return n; },
        [fl, n](int, const std::vector<int>&, int) {
            return Mat<F>::identity(fl, n);  // hom dim 1, morphism acts as scalar
        });
}
}  // namespace

TEST_CASE("coend and end of the unit category constants") {
    auto c = ptr(group_algebra_category(cyclic_group(1), Q));
    auto t = constant_bifunctor_unit(c, 4);
    REQUIRE(validate_functor(t).ok());
    CHECK(coend(t).dim() == 4);
    CHECK(end(t).dim() == 4);
}

TEST_CASE("oracle dims for the stock algebras") {
    auto z2 = group_algebra_category(cyclic_group(2), Q);
    CHECK(oracle_hh0(z2.comp_mat(0, 0, 0), 2) == 2);
    CHECK(oracle_center(z2.comp_mat(0, 0, 0), 2) == 2);
    auto z3 = group_algebra_category(cyclic_group(3), Q);
    CHECK(oracle_hh0(z3.comp_mat(0, 0, 0), 3) == 3);
    CHECK(oracle_center(z3.comp_mat(0, 0, 0), 3) == 3);
    auto s3 = group_algebra_category(symmetric3(), Q);
    CHECK(oracle_hh0(s3.comp_mat(0, 0, 0), 6) == 3);
    CHECK(oracle_center(s3.comp_mat(0, 0, 0), 6) == 3);
    auto m2 = matrix_algebra_2x2(Q);
    CHECK(oracle_hh0(m2.comp_mat(0, 0, 0), 4) == 1);
    CHECK(oracle_center(m2.comp_mat(0, 0, 0), 4) == 1);
}

TEST_CASE("coend and end of hom bifunctors match the oracles") {
    SUBCASE("k[S3]: conjugacy classes and the center") {
        auto c = ptr(group_algebra_category(symmetric3(), Q));
        auto hom = hom_bifunctor(c);
        CHECK(coend(hom).dim() == 3);
        CHECK(end(hom).dim() == 3);
    }
    SUBCASE("k[Z/2]: commutative, relations vanish") {
        auto c = ptr(group_algebra_category(cyclic_group(2), Q));
        auto hom = hom_bifunctor(c);
        CHECK(coend(hom).dim() == 2);
        CHECK(end(hom).dim() == 2);
    }
    SUBCASE("2x2 matrix algebra: scalars only") {
        auto c = ptr(matrix_algebra_2x2(Q));
        auto hom = hom_bifunctor(c);
        CHECK(coend(hom).dim() == 1);
        CHECK(end(hom).dim() == 1);
    }
    SUBCASE("connected groupoid: same as its vertex group algebra") {
        auto c = ptr(linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q));
        auto hom = hom_bifunctor(c);
        CHECK(coend(hom).dim() == 2);
        CHECK(end(hom).dim() == 2);
    }
    SUBCASE("prime fields agree on the stock instances") {
        PrimeField f5(5);
        auto c = ptr(group_algebra_category(symmetric3(), f5));
        auto hom = hom_bifunctor(c);
        CHECK(coend(hom).dim() == 3);
        CHECK(end(hom).dim() == 3);
    }
}

TEST_CASE("presentation invariants") {
    auto c = ptr(group_algebra_category(symmetric3(), Q));
    auto hom = hom_bifunctor(c);
    auto ce = coend(hom);
    CHECK((ce.q.proj * ce.relations).is_zero());
    CHECK(ce.q.proj * ce.q.section == Mat<Rationals>::identity(Q, ce.dim()));
    CHECK(ce.dim() == ce.total.total - rank(ce.relations));
    auto en = end(hom);
    CHECK((en.constraints * en.k.basis).is_zero());
    CHECK(en.k.retraction() * en.k.basis == Mat<Rationals>::identity(Q, en.dim()));
}

TEST_CASE("coyoneda reduction") {
    SUBCASE("unit category, M = k^3") {
        auto c = ptr(group_algebra_category(cyclic_group(1), Q));
        auto m = make_functor<Rationals>(
            c, {Variance::Contra}, [](const std::vector<int>&) { return 3; },
            [&](int, const std::vector<int>&, int) { return Mat<Rationals>::identity(Q, 3); });
        auto r = coyoneda_reduce(m, 0);
        CHECK(r.pres.dim() == 3);
        CHECK(r.iso * r.inverse == Mat<Rationals>::identity(Q, 3));
    }
    SUBCASE("k[Z/2], A(-,*) as a right module") {
        auto c = ptr(group_algebra_category(cyclic_group(2), Q));
        auto hom = hom_bifunctor(c);
        auto m = restrict_slots(hom, {{1, 0}});  // A(-, *), contravariant
        auto r = coyoneda_reduce(m, 0);
        CHECK(r.pres.dim() == 2);
    }
    SUBCASE("random contravariant functors over a two-object groupoid") {
        std::mt19937 rng(5);
        auto c = ptr(linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q));
        auto hom = hom_bifunctor(c);
        for (int t = 0; t < 5; ++t) {
            auto m = restrict_slots(hom, {{1, static_cast<int>(rng() % 2)}});
            int w = static_cast<int>(rng() % 2);
            // round-trip identities are asserted inside coyoneda_reduce
            auto r = coyoneda_reduce(m, w);
            CHECK(r.iso.rows() == m.dims[w]);
            CHECK(r.pres.dim() == m.dims[w]);
        }
    }
}

TEST_CASE("coend fubini") {
    SUBCASE("two pair slots over k[Z/2]") {
        auto c = ptr(group_algebra_category(cyclic_group(2), Q));
        auto hom = hom_bifunctor(c);
        auto w = combine<Rationals>(c, {{&hom, {0, 1}}, {&hom, {2, 3}}}, 4);
        auto fub = coend_fubini(w, {0, 1}, {2, 3});
        CHECK(fub.joint.dim() == fub.iterated_dim);
        CHECK(fub.joint.dim() == 4);  // HH0(k[Z/2]) (x) HH0(k[Z/2])
    }
    SUBCASE("two-object groupoid") {
        auto c = ptr(linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q));
        auto hom = hom_bifunctor(c);
        auto w = combine<Rationals>(c, {{&hom, {0, 1}}, {&hom, {2, 3}}}, 4);
        auto fub = coend_fubini(w, {0, 1}, {2, 3});
        CHECK(fub.joint.dim() == fub.iterated_dim);
        CHECK(fub.joint.dim() == 4);
    }
}

TEST_CASE("tensor distribute") {
    auto c = ptr(group_algebra_category(symmetric3(), Q));
    auto hom = hom_bifunctor(c);
    auto d = tensor_distribute(3, hom);
    CHECK(d.scaled.dim() == 3 * coend(hom).dim());
    CHECK(is_iso(d.to_scaled));
}

TEST_CASE("interchange") {
    SUBCASE("unit category") {
        auto c = ptr(group_algebra_category(cyclic_group(1), Q));
        auto t = constant_bifunctor_unit(c, 3);
        auto r = interchange(t);
        CHECK(r.iso);
        CHECK(r.domain_dim == r.codomain_dim);
        CHECK(r.domain_dim == 3);
    }
    SUBCASE("k[S3] hom bifunctor") {
        auto c = ptr(group_algebra_category(symmetric3(), Q));
        auto r = interchange(hom_bifunctor(c));
        CHECK(r.iso);
    }
    SUBCASE("two-object groupoid, double representable") {
        auto c = ptr(linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q));
        auto t = double_representable(c, 0, 1);
        auto r = interchange(t);
        CHECK(r.iso);
    }
    SUBCASE("over F5, group order coprime to the characteristic") {
        PrimeField f5(5);
        auto c = ptr(group_algebra_category(cyclic_group(2), f5));
        auto r = interchange(hom_bifunctor(c));
        CHECK(r.iso);
    }
    SUBCASE("modular failure: k[Z/2] over F2 is not separable") {
        // The canonical map multiplies by |G| here, so it vanishes when the
        // characteristic divides the group order. Both sides still have
        // dimension 2; the verdict is an honest rank fact.
        PrimeField f2(2);
        auto c = ptr(group_algebra_category(cyclic_group(2), f2));
        auto r = interchange(hom_bifunctor(c));
        CHECK(r.domain_dim == 2);
        CHECK(r.codomain_dim == 2);
        CHECK_FALSE(r.iso);
        CHECK(r.map.is_zero());
    }
}

TEST_CASE("lemma alpha") {
    SUBCASE("unit category, T = k^n, phi = [[1]]") {
        auto c = ptr(group_algebra_category(cyclic_group(1), Q));
        auto t = constant_bifunctor_unit(c, 4);
        auto r = lemma_alpha(*c, t, delta_pairing(*c));
        CHECK(r.dinatural);
        CHECK(r.iso);
        CHECK(r.induced == Mat<Rationals>::identity(Q, 4));
    }
    SUBCASE("k[S3]: certified iso H/[H,H] -> Z(H), dims 3 and 3") {
        auto c = ptr(group_algebra_category(symmetric3(), Q));
        auto r = lemma_alpha(*c, hom_bifunctor(c), delta_pairing(*c));
        CHECK(r.coend_dim == 3);
        CHECK(r.end_dim == 3);
        CHECK(r.dinatural);
        CHECK(r.iso);
        CHECK(rank(r.induced) == 3);
    }
    SUBCASE("k[Z/2] over F5: coprime characteristic works") {
        PrimeField f5(5);
        auto c = ptr(group_algebra_category(cyclic_group(2), f5));
        auto r = lemma_alpha(*c, hom_bifunctor(c), delta_pairing(*c));
        CHECK(r.dinatural);
        CHECK(r.iso);
    }
    SUBCASE("k[Z/2] over F2: alpha is the trace map and vanishes") {
        // alpha(t) = sum_g g t g^{-1} = |G| t on a commutative group algebra;
        // over F2 this is zero, matching the failed interchange hypothesis.
        PrimeField f2(2);
        auto c = ptr(group_algebra_category(cyclic_group(2), f2));
        auto r = lemma_alpha(*c, hom_bifunctor(c), delta_pairing(*c));
        CHECK(r.dinatural);           // alpha is still a dinatural family
        CHECK(r.coend_dim == 2);
        CHECK(r.end_dim == 2);
        CHECK_FALSE(r.iso);           // but not invertible: hypothesis fails too
        CHECK_FALSE(interchange(hom_bifunctor(c)).iso);
    }
    SUBCASE("corrupted pairing is rejected by the validator") {
        auto c = ptr(group_algebra_category(cyclic_group(2), Q));
        auto phi = delta_pairing(*c);
        typename Mat<Rationals>::Builder b(Q, 2, 2);
        b.set(0, 0, Q.one());  // drop the (g, g) pairing entry
        phi.phi[0] = b.build();
        CHECK_THROWS_AS(lemma_alpha(*c, hom_bifunctor(c), phi), std::invalid_argument);
    }
    SUBCASE("alpha from an invalid pairing fails dinaturality") {
        auto c = ptr(group_algebra_category(symmetric3(), Q));
        auto phi = delta_pairing(*c);
        // swap two columns: still invertible, no longer balanced
        std::vector<int> perm{1, 0, 2, 3, 4, 5};
        phi.phi[0] = phi.phi[0] * Mat<Rationals>::permutation(Q, perm);
        CHECK_FALSE(validate_pairing(*c, phi).ok());
        auto alpha = lemma_alpha_components(*c, hom_bifunctor(c), phi);
        CHECK_FALSE(check_dinatural(hom_bifunctor(c), alpha));
    }
}
