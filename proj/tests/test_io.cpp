#include "doctest.h"

#include "coendcalc/gallery.hpp"

using namespace coendcalc;

namespace {
Rationals Q;

template <class F>
bool same_category(const VCategory<F>& a, const VCategory<F>& b) {
    if (a.objects != b.objects || a.homdim != b.homdim) return false;
    for (std::size_t i = 0; i < a.comp.size(); ++i)
        if (a.comp[i] != b.comp[i]) return false;
    for (std::size_t i = 0; i < a.idvec.size(); ++i)
        if (a.idvec[i] != b.idvec[i]) return false;
    if (a.labels.has_value() != b.labels.has_value()) return false;
    if (a.labels && (a.labels->names != b.labels->names || a.labels->inv != b.labels->inv)) return false;
    return true;
}
}  // namespace

TEST_CASE("matrix serialization round trip") {
    auto m = hom_iso(Q, 2, 3);
    auto j = mat_to_json(m);
    CHECK(mat_from_json(Q, j) == m);
    PrimeField f5(5);
    auto k = Mat<PrimeField>::identity(f5, 3).scaled(3);
    CHECK(mat_from_json(f5, mat_to_json(k)) == k);
    // rationals serialize canonically as n/d strings
    auto one_half = Mat<Rationals>::scalar(Q, Q.parse("2/4"));
    CHECK(mat_to_json(one_half)["entries"][0][2] == "1/2");
}

TEST_CASE("category and groupoid round trips") {
    auto g = connected_groupoid(cyclic_group(2), 2);
    auto jg = groupoid_to_json(g);
    auto g2 = groupoid_from_json(jg);
    CHECK(validate_groupoid(g2).ok());
    CHECK(groupoid_to_json(g2) == jg);

    auto cat = linearize_groupoid(g, Q);
    auto jc = vcategory_to_json(cat);
    auto cat2 = vcategory_from_json(Q, jc);
    CHECK(same_category(cat, cat2));
    CHECK(vcategory_to_json(cat2) == jc);

    PrimeField f5(5);
    auto s3 = group_algebra_category(symmetric3(), f5);
    CHECK(same_category(s3, vcategory_from_json(f5, vcategory_to_json(s3))));
}

TEST_CASE("pairing and functor round trips") {
    auto cat = std::make_shared<const VCategory<Rationals>>(
        linearize_groupoid(connected_groupoid(cyclic_group(3), 2), Q));
    auto phi = delta_pairing(*cat);
    auto phi2 = pairing_from_json(*cat, pairing_to_json(*cat, phi));
    for (std::size_t i = 0; i < phi.phi.size(); ++i) CHECK(phi.phi[i] == phi2.phi[i]);

    auto hom = hom_bifunctor(cat);
    auto hom2 = functor_from_json(cat, functor_to_json(hom));
    CHECK(hom2.var == hom.var);
    CHECK(hom2.dims == hom.dims);
    for (int s = 0; s < 2; ++s)
        for (std::size_t i = 0; i < hom.act[s].size(); ++i) CHECK(hom.act[s][i] == hom2.act[s][i]);
    CHECK(validate_functor(hom2).ok());

    auto t = double_representable(cat, 0, 1);
    auto t2 = functor_from_json(cat, functor_to_json(t));
    CHECK(t2.dims == t.dims);
    CHECK(validate_functor(t2).ok());
}

TEST_CASE("promonoidal, star and antipode round trips") {
    auto b = bialgebra_promonoidal(cyclic_group(2), Q);
    auto jpm = promonoidal_to_json(b.pm);
    auto pm2 = promonoidal_from_json(Q, jpm);
    CHECK(validate_promonoidal(pm2).ok());
    CHECK(promonoidal_to_json(pm2) == jpm);

    auto jad = antipode_to_json(*b.pm.cat, b.ad);
    auto ad2 = antipode_from_json(*b.pm.cat, jad);
    CHECK(validate_antipode(pm2, ad2).ok());

    auto st = star_from_antipode(b.pm, b.ad);
    auto jst = star_to_json(*b.pm.cat, st.star);
    auto st2 = star_from_json(*b.pm.cat, jst);
    CHECK(validate_star(pm2, st2).ok());
    CHECK(star_to_json(*b.pm.cat, st2) == jst);
}

TEST_CASE("serialized reports are deterministic") {
    auto r1 = fuzz<Rationals>(5, 4, FuzzBounds{}, Rationals{});
    auto r2 = fuzz<Rationals>(5, 4, FuzzBounds{}, Rationals{});
    CHECK(fuzz_report_to_json(r1, false).dump(2) == fuzz_report_to_json(r2, false).dump(2));
}

TEST_CASE("gallery scenarios all pass") {
    for (const Scenario& s : gallery()) {
        ScenarioOutcome o = run_scenario(s);
        INFO(s.name);
        for (const auto& m : o.mismatches) { INFO(m); }
        CHECK(o.pass);
    }
}
