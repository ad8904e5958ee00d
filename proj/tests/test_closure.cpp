#include "doctest.h"

#include <random>

#include "coendcalc/bialgebra.hpp"
#include "coendcalc/closure.hpp"
#include "coendcalc/graded.hpp"

using namespace coendcalc;

namespace {
Rationals Q;
}  // namespace

TEST_CASE("closure witness on the unit promonoidal") {
    auto b = bialgebra_promonoidal(cyclic_group(1), Q);
    auto g2 = group_module(b.pm.cat, {Mat<Rationals>::identity(Q, 2)});
    auto st = star_from_antipode(b.pm, b.ad);
    auto phi = delta_pairing(*b.pm.cat);
    auto rep = closure_witness(g2, g2, b.pm, st.star, phi);
    CHECK(rep.verdict == "compact-closure-certified");
    CHECK(rep.iso);
    CHECK(rep.natural);
    CHECK(rep.lhs_dims == std::vector<int>{4});
    CHECK(rep.rhs_dims == std::vector<int>{4});
}

TEST_CASE("closure witness on the Z/2-graded instance, dims (14,11)") {
    auto cc = graded_skeleton(cyclic_group(2), Q);
    auto tr = trace_promonoidal(cc, cc.base->objects);
    REQUIRE(tr.report.ok());
    auto f = graded_functor(tr.pm.cat, {2, 3});
    auto h = graded_functor(tr.pm.cat, {1, 4});
    auto st = star_from_antipode(tr.pm, tr.ad);
    auto phi = delta_pairing(*tr.pm.cat);
    auto rep = closure_witness(f, h, tr.pm, st.star, phi);
    CHECK(rep.verdict == "compact-closure-certified");
    CHECK(rep.iso);
    CHECK(rep.natural);
    CHECK(rep.interchange_ok);
    CHECK(rep.lhs_dims == std::vector<int>{14, 11});
    CHECK(rep.rhs_dims == std::vector<int>{14, 11});
}

TEST_CASE("closure witness on the Z/3-graded instance, dims (1,2,3)/(2,1,1)") {
    auto cc = graded_skeleton(cyclic_group(3), Q);
    auto tr = trace_promonoidal(cc, cc.base->objects);
    REQUIRE(tr.report.ok());
    auto f = graded_functor(tr.pm.cat, {1, 2, 3});
    auto h = graded_functor(tr.pm.cat, {2, 1, 1});
    auto st = star_from_antipode(tr.pm, tr.ad);
    auto phi = delta_pairing(*tr.pm.cat);
    auto rep = closure_witness(f, h, tr.pm, st.star, phi);
    CHECK(rep.verdict == "compact-closure-certified");
    CHECK(rep.iso);
    CHECK(rep.natural);
}

TEST_CASE("closure witness on bialgebra promonoidals with modules") {
    SUBCASE("k[Z/2] with the regular module over Q") {
        auto b = bialgebra_promonoidal(cyclic_group(2), Q);
        auto reg = group_module(b.pm.cat, regular_representation(cyclic_group(2), Q));
        auto st = star_from_antipode(b.pm, b.ad);
        auto phi = delta_pairing(*b.pm.cat);
        auto rep = closure_witness(reg, reg, b.pm, st.star, phi);
        CHECK(rep.verdict == "compact-closure-certified");
        CHECK(rep.lhs_dims[0] == rep.rhs_dims[0]);
    }
    SUBCASE("k[Z/3] over F5 with random modules") {
        PrimeField f5(5);
        std::mt19937 rng(99);
        auto b = bialgebra_promonoidal(cyclic_group(3), f5);
        auto st = star_from_antipode(b.pm, b.ad);
        auto phi = delta_pairing(*b.pm.cat);
        auto gm = random_group_module(b.pm.cat, cyclic_group(3), 4, rng);
        auto hm = random_group_module(b.pm.cat, cyclic_group(3), 3, rng);
        REQUIRE(validate_functor(gm).ok());
        REQUIRE(validate_functor(hm).ok());
        auto rep = closure_witness(gm, hm, b.pm, st.star, phi);
        CHECK(rep.verdict == "compact-closure-certified");
    }
}

TEST_CASE("closure integrand diagonal dims follow the product formula") {
    auto cc = graded_skeleton(cyclic_group(2), Q);
    auto tr = trace_promonoidal(cc, cc.base->objects);
    auto g = graded_functor(tr.pm.cat, {2, 3});
    auto h = graded_functor(tr.pm.cat, {1, 4});
    auto at2 = std::make_shared<const VCategory<Rationals>>(tensor_categories(*tr.pm.cat, *tr.pm.cat));
    const int n = tr.pm.cat->n();
    for (int a = 0; a < n; ++a) {
        auto u = build_closure_integrand(g, h, tr.pm.p, a, at2);
        REQUIRE(validate_functor(u).ok());
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                int bc = b * n + c;
                CHECK(u.dim({bc, bc}) == g.dims[b] * tr.pm.p.dim({a, b, c}) * h.dims[c]);
            }
    }
    // at A = e, the (B,C) pairs with BC = e contribute 2*1 and 3*4
    auto u0 = build_closure_integrand(g, h, tr.pm.p, 0, at2);
    CHECK(u0.dim({0, 0}) == 2 * 1);
    CHECK(u0.dim({3, 3}) == 3 * 4);
}

TEST_CASE("degenerate inputs are legal and vacuously certified") {
    // a functor with some zero-dimensional values
    auto cc = graded_skeleton(cyclic_group(2), Q);
    auto tr = trace_promonoidal(cc, cc.base->objects);
    auto zero = graded_functor(tr.pm.cat, {0, 0});
    auto half = graded_functor(tr.pm.cat, {2, 0});
    auto st = star_from_antipode(tr.pm, tr.ad);
    auto phi = delta_pairing(*tr.pm.cat);
    auto rep = closure_witness(zero, half, tr.pm, st.star, phi);
    CHECK(rep.verdict == "compact-closure-certified");
    CHECK(rep.lhs_dims == std::vector<int>{0, 0});
    // interchange on a zero bifunctor is vacuously an isomorphism
    auto zero_bif = make_functor<Rationals>(
        tr.pm.cat, {Variance::Contra, Variance::Co}, [](const std::vector<int>&) { return 0; },
        [&](int, const std::vector<int>&, int) { return Mat<Rationals>::zero(Q, 0, 0); });
    auto ic = interchange(zero_bif);
    CHECK(ic.iso);
    CHECK(ic.domain_dim == 0);
    CHECK(coend(zero_bif).dim() == 0);
    CHECK(end(zero_bif).dim() == 0);
}

TEST_CASE("dense and sparse representations give identical verdicts") {
    auto run = [] {
        auto cat = std::make_shared<const VCategory<Rationals>>(group_algebra_category(symmetric3(), Q));
        auto hom = hom_bifunctor(cat);
        auto la = lemma_alpha(*cat, hom, delta_pairing(*cat));
        return std::tuple{la.coend_dim, la.end_dim, la.iso, interchange(hom).iso};
    };
    std::size_t saved = detail::sparse_cutoff().load();
    detail::sparse_cutoff().store(0);  // force sparse everywhere
    auto sparse_result = run();
    detail::sparse_cutoff().store(1 << 30);  // force dense everywhere
    auto dense_result = run();
    detail::sparse_cutoff().store(saved);
    CHECK(sparse_result == dense_result);
    CHECK(std::get<2>(sparse_result));
}
