#include "doctest.h"

#include "coendcalc/fuzz.hpp"

using namespace coendcalc;

TEST_CASE("fuzz sweep is clean and deterministic") {
    FuzzBounds bounds;
    auto r1 = fuzz<Rationals>(1, 12, bounds, Rationals{});
    CHECK(r1.clean());
    CHECK(static_cast<int>(r1.instances.size()) == 12);
    for (const auto& rec : r1.instances) {
        CHECK(rec.interchange_iso);
        CHECK(rec.alpha_iso);
        CHECK(rec.alpha_dinatural);
        CHECK(rec.corruption_detected);
    }
    auto r2 = fuzz<Rationals>(1, 12, bounds, Rationals{});
    REQUIRE(r1.instances.size() == r2.instances.size());
    for (std::size_t i = 0; i < r1.instances.size(); ++i) {
        CHECK(r1.instances[i].objects == r2.instances[i].objects);
        CHECK(r1.instances[i].t_dim_total == r2.instances[i].t_dim_total);
        CHECK(r1.instances[i].corruption_detector == r2.instances[i].corruption_detector);
    }
}

TEST_CASE("fuzz over prime fields draws coprime vertex groups") {
    FuzzBounds bounds;
    auto r2 = fuzz<PrimeField>(7, 10, bounds, PrimeField{2});
    CHECK(r2.clean());
    for (const auto& rec : r2.instances) CHECK(rec.group_order % 2 != 0);
    auto r5 = fuzz<PrimeField>(7, 10, bounds, PrimeField{5});
    CHECK(r5.clean());
}

TEST_CASE("shrinker finds a minimal failing instance") {
    // synthetic predicate: "fails" iff the category still has an object whose
    // endomorphism algebra has dimension >= 2
    std::mt19937 rng(3);
    GroupoidSpec spec = fuzzdetail::random_groupoid(rng, {2, 3}, 4);
    FuzzInstance<Rationals> inst;
    inst.cat = std::make_shared<const VCategory<Rationals>>(linearize_groupoid(spec, Rationals{}));
    inst.t = random_bifunctor(inst.cat, rng, 1);
    inst.phi = delta_pairing(*inst.cat);
    auto fails = [](const FuzzInstance<Rationals>& c) {
        for (int x = 0; x < c.cat->n(); ++x)
            if (c.cat->hd(x, x) >= 2) return true;
        return false;
    };
    if (fails(inst)) {
        auto shrunk = shrink_instance<Rationals>(inst, fails);
        CHECK(shrunk.cat->n() == 1);
        CHECK(fails(shrunk));
        CHECK(validate_category(*shrunk.cat).ok());
        CHECK(validate_functor(shrunk.t).ok());
    }
}

TEST_CASE("corrupt_pairing zeroes exactly one entry") {
    std::mt19937 rng(11);
    auto cat = std::make_shared<const VCategory<Rationals>>(
        linearize_groupoid(connected_groupoid(cyclic_group(3), 2), Rationals{}));
    auto phi = delta_pairing(*cat);
    auto bad = corrupt_pairing(phi, *cat, rng);
    std::size_t before = 0, after = 0;
    for (const auto& m : phi.phi) before += m.nonzero_count();
    for (const auto& m : bad.phi) after += m.nonzero_count();
    CHECK(after == before - 1);
    CHECK_FALSE(validate_pairing(*cat, bad).ok());
}
