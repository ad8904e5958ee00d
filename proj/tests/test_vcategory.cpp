#include "doctest.h"

#include "coendcalc/groups.hpp"
#include "coendcalc/pairing.hpp"

using namespace coendcalc;

namespace {
Rationals Q;

template <class F>
bool same_tensor_data(const VCategory<F>& a, const VCategory<F>& b) {
    if (a.homdim != b.homdim) return false;
    if (a.comp.size() != b.comp.size() || a.idvec.size() != b.idvec.size()) return false;
    for (std::size_t i = 0; i < a.comp.size(); ++i)
        if (a.comp[i] != b.comp[i]) return false;
    for (std::size_t i = 0; i < a.idvec.size(); ++i)
        if (a.idvec[i] != b.idvec[i]) return false;
    return true;
}
}  // namespace

TEST_CASE("group tables") {
    CHECK(cyclic_group(1).valid());
    CHECK(cyclic_group(2).valid());
    CHECK(cyclic_group(3).valid());
    CHECK(symmetric3().valid());
    CHECK(product_group(cyclic_group(2), cyclic_group(2)).valid());
    auto s3 = symmetric3();
    CHECK(s3.mul(3, 3) == 0);          // s^2 = e
    CHECK(s3.mul(1, 1) == 2);          // r^2
    CHECK(s3.mul(s3.inv(4), 4) == 0);
}

TEST_CASE("unit category and group algebras validate") {
    auto unit = group_algebra_category(cyclic_group(1), Q);
    CHECK(validate_category(unit).ok());
    CHECK(unit.hd(0, 0) == 1);

    auto z2 = group_algebra_category(cyclic_group(2), Q);
    CHECK(validate_category(z2).ok());
    CHECK(z2.hd(0, 0) == 2);

    auto s3 = group_algebra_category(symmetric3(), Q);
    CHECK(validate_category(s3).ok());

    auto m2 = matrix_algebra_2x2(Q);
    CHECK(validate_category(m2).ok());

    PrimeField f2(2);
    CHECK(validate_category(group_algebra_category(cyclic_group(2), f2)).ok());
}

TEST_CASE("corrupting composition is reported") {
    SUBCASE("k[Z/3]: reroute g.g to g, associativity breaks") {
        auto z3 = group_algebra_category(cyclic_group(3), Q);
        typename Mat<Rationals>::Builder b(Q, 3, 9);
        z3.comp_mat(0, 0, 0).for_each_nonzero([&](int i, int j, const mpq_class& v) {
            if (j == 1 * 3 + 1) return;  // drop the (g,g) -> g^2 entry
            b.set(i, j, v);
        });
        b.set(1, 1 * 3 + 1, Q.one());  // (g,g) -> g
        VCategory<Rationals> bad = z3;
        bad.comp[0] = b.build();
        auto rep = validate_category(bad);
        CHECK_FALSE(rep.ok());
        CHECK(rep.structural.empty());
        CHECK(!rep.violations.empty());
        CHECK(rep.violations.front().find("associativity") != std::string::npos);
    }
    SUBCASE("k[Z/2]: reroute g.e to e, unit law breaks") {
        auto z2 = group_algebra_category(cyclic_group(2), Q);
        typename Mat<Rationals>::Builder b(Q, 2, 4);
        z2.comp_mat(0, 0, 0).for_each_nonzero([&](int i, int j, const mpq_class& v) {
            if (j == 1 * 2 + 0) return;  // drop the (g,e) -> g entry
            b.set(i, j, v);
        });
        b.set(0, 1 * 2 + 0, Q.one());  // g.e -> e
        VCategory<Rationals> bad = z2;
        bad.comp[0] = b.build();
        auto rep = validate_category(bad);
        CHECK_FALSE(rep.ok());
        CHECK(!rep.violations.empty());
    }
    SUBCASE("k[Z/2]: rerouting g.g to g stays valid (idempotent monoid algebra)") {
        // A genuine non-example: the perturbed table is the associative
        // unital algebra k[{1, p : p^2 = p}], so the validator accepts it.
        auto z2 = group_algebra_category(cyclic_group(2), Q);
        typename Mat<Rationals>::Builder b(Q, 2, 4);
        z2.comp_mat(0, 0, 0).for_each_nonzero([&](int i, int j, const mpq_class& v) {
            if (j == 1 * 2 + 1) return;
            b.set(i, j, v);
        });
        b.set(1, 1 * 2 + 1, Q.one());
        VCategory<Rationals> monoid = z2;
        monoid.comp[0] = b.build();
        CHECK(validate_category(monoid).ok());
    }
}

TEST_CASE("structural errors are distinct from axiom failures") {
    auto z2 = group_algebra_category(cyclic_group(2), Q);
    VCategory<Rationals> bad = z2;
    bad.comp[0] = Mat<Rationals>::zero(Q, 2, 3);  // wrong shape
    auto rep = validate_category(bad);
    CHECK_FALSE(rep.ok());
    CHECK(!rep.structural.empty());
}

TEST_CASE("linearize_groupoid examples") {
    SUBCASE("two objects, one iso, trivial automorphisms") {
        auto g = connected_groupoid(cyclic_group(1), 2);
        CHECK(validate_groupoid(g).ok());
        auto a = linearize_groupoid(g, Q);
        CHECK(validate_category(a).ok());
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) CHECK(a.hd(x, y) == 1);
    }
    SUBCASE("connected groupoid over Z/2 with 3 objects") {
        auto a = linearize_groupoid(connected_groupoid(cyclic_group(2), 3), Q);
        CHECK(validate_category(a).ok());
        CHECK(a.hd(0, 2) == 2);
    }
    SUBCASE("malformed table is rejected") {
        auto g = connected_groupoid(cyclic_group(2), 1);
        g.comp[0][0] = 1;  // break the unit law
        CHECK_THROWS_AS(linearize_groupoid(g, Q), std::invalid_argument);
    }
}

TEST_CASE("tensor_categories") {
    auto unit = group_algebra_category(cyclic_group(1), Q);
    auto z2 = group_algebra_category(cyclic_group(2), Q);

    SUBCASE("unit tensor a is a copy of a") {
        auto t = tensor_categories(unit, z2);
        CHECK(validate_category(t).ok());
        CHECK(same_tensor_data(t, z2));
    }
    SUBCASE("z2 tensor z2 is the group algebra of Z/2 x Z/2") {
        auto t = tensor_categories(z2, z2);
        CHECK(validate_category(t).ok());
        CHECK(t.hd(0, 0) == 4);
        auto v4 = group_algebra_category(product_group(cyclic_group(2), cyclic_group(2)), Q);
        CHECK(same_tensor_data(t, v4));
        // labels propagate: delta pairing of the product equals the kron
        auto pt = pairing_on_tensor(z2, delta_pairing(z2), z2, delta_pairing(z2));
        auto pd = delta_pairing(t);
        CHECK(pt.phi[0] == pd.phi[0]);
    }
    SUBCASE("hom dims multiply") {
        auto g2 = linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q);
        auto g3 = linearize_groupoid(connected_groupoid(cyclic_group(3), 1), Q);
        auto t = tensor_categories(g2, g3);
        CHECK(t.hd(0, 1 * 1 + 0) == 2 * 3);
        CHECK(validate_category(t).ok());
    }
    SUBCASE("associative up to relabeling") {
        auto g2 = linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q);
        auto l = tensor_categories(tensor_categories(z2, g2), unit);
        auto r = tensor_categories(z2, tensor_categories(g2, unit));
        CHECK(same_tensor_data(l, r));
    }
}

TEST_CASE("opposite") {
    auto z2 = group_algebra_category(cyclic_group(2), Q);
    SUBCASE("commutative algebra is unchanged") {
        CHECK(same_tensor_data(opposite(z2), z2));
    }
    SUBCASE("s3 reverses multiplication") {
        auto s3 = group_algebra_category(symmetric3(), Q);
        auto op = opposite(s3);
        CHECK(validate_category(op).ok());
        auto tbl = symmetric3();
        // in the opposite, r . s equals the original s . r = sr
        Mat<Rationals> v = op.compose(0, 0, 0, op.basis_vec(0, 0, 1), op.basis_vec(0, 0, 3));
        CHECK(Q.eq(v.at(tbl.mul(3, 1), 0), Q.one()));
    }
    SUBCASE("involution on the nose") {
        auto g = linearize_groupoid(connected_groupoid(cyclic_group(3), 2), Q);
        auto gg = opposite(opposite(g));
        CHECK(same_tensor_data(gg, g));
        CHECK(gg.labels->names == g.labels->names);
        CHECK(gg.labels->inv == g.labels->inv);
    }
    SUBCASE("preserves validation verdicts, including failures") {
        auto z3 = group_algebra_category(cyclic_group(3), Q);
        typename Mat<Rationals>::Builder b(Q, 3, 9);
        z3.comp_mat(0, 0, 0).for_each_nonzero([&](int i, int j, const mpq_class& v) {
            if (j == 1 * 3 + 1) return;
            b.set(i, j, v);
        });
        b.set(1, 1 * 3 + 1, Q.one());
        VCategory<Rationals> bad = z3;
        bad.comp[0] = b.build();
        CHECK_FALSE(validate_category(bad).ok());
        CHECK_FALSE(validate_category(opposite(bad)).ok());
    }
}

TEST_CASE("full subcategory") {
    auto g = linearize_groupoid(connected_groupoid(cyclic_group(2), 3), Q);
    auto s = full_subcategory(g, {"a0", "a2"});
    CHECK(s.n() == 2);
    CHECK(validate_category(s).ok());
    CHECK(s.hd(0, 1) == 2);
}

TEST_CASE("delta pairing") {
    SUBCASE("unit category") {
        auto unit = group_algebra_category(cyclic_group(1), Q);
        auto p = delta_pairing(unit);
        CHECK(p.phi[0] == Mat<Rationals>::identity(Q, 1));
        CHECK(validate_pairing(unit, p).ok());
    }
    SUBCASE("k[Z/2]") {
        auto z2 = group_algebra_category(cyclic_group(2), Q);
        auto p = delta_pairing(z2);
        CHECK(Q.eq(pairing_beta(z2, p, 0, 0, 0, 0), Q.one()));
        CHECK(Q.eq(pairing_beta(z2, p, 0, 0, 1, 1), Q.one()));
        CHECK(Q.eq(pairing_beta(z2, p, 0, 0, 0, 1), Q.zero()));
        CHECK(validate_pairing(z2, p).ok());
    }
    SUBCASE("k[S3], exhaustive balance") {
        auto s3 = group_algebra_category(symmetric3(), Q);
        CHECK(validate_pairing(s3, delta_pairing(s3)).ok());
    }
    SUBCASE("two-object groupoid over F5") {
        PrimeField f5(5);
        auto g = linearize_groupoid(connected_groupoid(cyclic_group(3), 2), f5);
        CHECK(validate_pairing(g, delta_pairing(g)).ok());
    }
    SUBCASE("category without labels is rejected") {
        CHECK_THROWS_AS(delta_pairing(matrix_algebra_2x2(Q)), std::invalid_argument);
    }
}

TEST_CASE("pairing corruption is detected") {
    auto s3 = group_algebra_category(symmetric3(), Q);
    auto p = delta_pairing(s3);
    SUBCASE("zeroing an entry breaks balance or invertibility") {
        typename Mat<Rationals>::Builder b(Q, 6, 6);
        p.phi[0].for_each_nonzero([&](int i, int j, const mpq_class& v) {
            if (i == p.phi[0].at(0, 1) * 0 + 3 && j == 3) return;  // drop one unit entry
            b.set(i, j, v);
        });
        PairingIso<Rationals> bad;
        bad.phi = {b.build()};
        CHECK_FALSE(validate_pairing(s3, bad).ok());
    }
    SUBCASE("adding an off-pattern entry breaks balance") {
        auto m = p.phi[0];
        typename Mat<Rationals>::Builder b(Q, 6, 6);
        m.for_each_nonzero([&](int i, int j, const mpq_class& v) { b.set(i, j, v); });
        b.add(0, 1, Q.one());
        PairingIso<Rationals> bad;
        bad.phi = {b.build()};
        CHECK_FALSE(validate_pairing(s3, bad).ok());
    }
}

TEST_CASE("pairing on tensor categories") {
    auto z2 = group_algebra_category(cyclic_group(2), Q);
    auto z3 = group_algebra_category(cyclic_group(3), Q);
    auto t = tensor_categories(z2, z3);
    auto p = pairing_on_tensor(z2, delta_pairing(z2), z3, delta_pairing(z3));
    CHECK(validate_pairing(t, p).ok());
    CHECK(p.phi[0] == Mat<Rationals>::kron(delta_pairing(z2).phi[0], delta_pairing(z3).phi[0]));
}

TEST_CASE("categorical inverse") {
    auto z3 = group_algebra_category(cyclic_group(3), Q);
    auto g = z3.basis_vec(0, 0, 1);
    auto gi = categorical_inverse(z3, 0, 0, g);
    CHECK(Q.eq(gi.at(2, 0), Q.one()));
    // e + g is not invertible in k[Z/3]? It is (units are dense); check a genuinely singular one: 1 + g + g^2
    typename Mat<Rationals>::Builder b(Q, 3, 1);
    b.set(0, 0, Q.one());
    b.set(1, 0, Q.one());
    b.set(2, 0, Q.one());
    CHECK_THROWS_AS(categorical_inverse(z3, 0, 0, b.build()), std::invalid_argument);
}
