#include "doctest.h"

#include <random>

#include "coendcalc/linalg.hpp"

using namespace coendcalc;

namespace {

template <class F>
Mat<F> from_ints(F f, int rows, int cols, std::initializer_list<long> vals) {
    typename Mat<F>::Builder b(f, rows, cols);
    auto it = vals.begin();
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) b.set(i, j, f.from_int(*it++));
    return b.build();
}

template <class F>
Mat<F> random_mat(F f, int rows, int cols, std::mt19937& rng, Rep rep = Rep::Auto) {
    typename Mat<F>::Builder b(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) b.set(i, j, f.from_int(static_cast<long>(rng() % 7) - 3));
    return b.build(rep);
}

}  // namespace

TEST_CASE("rational scalars are canonical") {
    Rationals q;
    CHECK(q.to_string(q.parse("4/6")) == "2/3");
    CHECK(q.to_string(q.parse("-4/6")) == "-2/3");
    CHECK(q.to_string(q.parse("3")) == "3/1");
    CHECK(q.eq(q.add(q.parse("1/3"), q.parse("1/6")), q.parse("1/2")));
    CHECK_THROWS_AS((void)q.inv(q.zero()), std::invalid_argument);
}

TEST_CASE("prime field arithmetic") {
    PrimeField f5(5);
    CHECK(f5.from_int(-3) == 2);
    CHECK(f5.mul(f5.inv(3), 3) == 1);
    CHECK(f5.add(4, 4) == 3);
    CHECK_THROWS_AS(PrimeField(6), std::invalid_argument);
    for (std::int64_t p : {2, 3, 5, 7, 11}) {
        PrimeField f(p);
        for (std::int64_t a = 1; a < p; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    }
}

TEST_CASE("field spec round trip") {
    CHECK(FieldSpec::parse("Q").to_string() == "Q");
    CHECK(FieldSpec::parse("F5").to_string() == "F5");
    CHECK_THROWS_AS(FieldSpec::parse("F4"), std::invalid_argument);
    with_field(FieldSpec::parse("F7"), [](auto f) { CHECK(f.name() == "F7"); });
}

TEST_CASE("kernel examples") {
    Rationals q;
    SUBCASE("rank one 2x2") {
        auto m = from_ints(q, 2, 2, {1, 2, 2, 4});
        auto k = kernel(m);
        REQUIRE(k.dim() == 1);
        CHECK(q.eq(k.basis.at(0, 0), q.from_int(-2)));
        CHECK(q.eq(k.basis.at(1, 0), q.from_int(1)));
        CHECK((m * k.basis).is_zero());
    }
    SUBCASE("zero map has full kernel") {
        auto k = kernel(Mat<Rationals>::zero(q, 4, 4));
        CHECK(k.dim() == 4);
        CHECK(k.basis == Mat<Rationals>::identity(q, 4));
    }
    SUBCASE("identity has trivial kernel") {
        CHECK(kernel(Mat<Rationals>::identity(q, 3)).dim() == 0);
    }
    SUBCASE("zero-row matrix") {
        CHECK(kernel(Mat<Rationals>::zero(q, 0, 3)).dim() == 3);
    }
}

TEST_CASE("cokernel examples") {
    Rationals q;
    SUBCASE("identity is epi") {
        CHECK(cokernel(Mat<Rationals>::identity(q, 3)).dim() == 0);
    }
    SUBCASE("zero map") {
        auto c = cokernel(Mat<Rationals>::zero(q, 3, 2));
        CHECK(c.dim() == 3);
        CHECK(c.proj == Mat<Rationals>::identity(q, 3));
    }
    SUBCASE("diagonal inclusion") {
        auto m = from_ints(q, 2, 1, {1, 1});
        auto c = cokernel(m);
        REQUIRE(c.dim() == 1);
        CHECK((c.proj * m).is_zero());
        CHECK(c.proj * c.section == Mat<Rationals>::identity(q, 1));
    }
}

TEST_CASE("kron examples and conventions") {
    Rationals q;
    SUBCASE("identities") {
        auto i2 = Mat<Rationals>::identity(q, 2);
        auto i3 = Mat<Rationals>::identity(q, 3);
        CHECK(Mat<Rationals>::kron(i2, i3) == Mat<Rationals>::identity(q, 6));
    }
    SUBCASE("scalar factor") {
        auto two = Mat<Rationals>::scalar(q, q.from_int(2));
        auto m = from_ints(q, 2, 2, {1, 2, 3, 4});
        CHECK(Mat<Rationals>::kron(two, m) == m + m);
    }
    SUBCASE("swap times column, left index slowest") {
        auto a = from_ints(q, 2, 2, {0, 1, 1, 0});
        auto b = from_ints(q, 2, 1, {1, 0});
        auto k = Mat<Rationals>::kron(a, b);
        REQUIRE(k.rows() == 4);
        REQUIRE(k.cols() == 2);
        // basis v_i (x) w_j with i slowest: nonzeros at (0,1) and (2,0)
        CHECK(q.eq(k.at(0, 1), q.one()));
        CHECK(q.eq(k.at(2, 0), q.one()));
        CHECK(k.nonzero_count() == 2);
    }
}

TEST_CASE("dual_map examples") {
    Rationals q;
    CHECK(dual_map(Mat<Rationals>::identity(q, 4)) == Mat<Rationals>::identity(q, 4));
    auto m = from_ints(q, 2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(dual_map(m).rows() == 3);
    CHECK(q.eq(dual_map(m).at(2, 1), q.from_int(6)));
    std::mt19937 rng(7);
    for (int t = 0; t < 8; ++t) {
        auto a = random_mat(q, 3, 3, rng);
        auto b = random_mat(q, 3, 3, rng);
        CHECK(dual_map(a * b) == dual_map(b) * dual_map(a));
        CHECK(dual_map(dual_map(a)) == a);
    }
}

TEST_CASE("hom_iso examples") {
    Rationals q;
    CHECK(hom_iso(q, 1, 1) == Mat<Rationals>::identity(q, 1));
    CHECK(hom_iso(q, 2, 1) == Mat<Rationals>::identity(q, 2));
    SUBCASE("composite with evaluation equals application, all basis pairs") {
        int v = 2, w = 3;
        auto h = hom_iso(q, v, w);
        REQUIRE(is_iso(h));
        // app : [V,W] (x) V -> W applies the flattened matrix to the vector
        typename Mat<Rationals>::Builder app(q, w, v * w * v);
        for (int r = 0; r < w; ++r)
            for (int c = 0; c < v; ++c) app.set(r, (r * v + c) * v + c, q.one());
        // direct route: e_i^* (x) f_j (x) v_k -> delta_ik f_j
        typename Mat<Rationals>::Builder dir(q, w, v * w * v);
        for (int i = 0; i < v; ++i)
            for (int j = 0; j < w; ++j) dir.set(j, (i * w + j) * v + i, q.one());
        auto lhs = app.build() * Mat<Rationals>::kron(h, Mat<Rationals>::identity(q, v));
        CHECK(lhs == dir.build());
    }
}

TEST_CASE("is_iso examples") {
    Rationals q;
    CHECK(is_iso(Mat<Rationals>::identity(q, 3)));
    CHECK_FALSE(is_iso(from_ints(q, 2, 2, {1, 2, 2, 4})));
    CHECK_FALSE(is_iso(Mat<Rationals>::zero(q, 2, 3)));
    CHECK(is_iso(Mat<Rationals>::zero(q, 0, 0)));
}

TEST_CASE("inverse") {
    Rationals q;
    auto m = from_ints(q, 2, 2, {1, 2, 3, 4});
    CHECK(m * inverse(m) == Mat<Rationals>::identity(q, 2));
    CHECK(inverse(m) * m == Mat<Rationals>::identity(q, 2));
    CHECK_THROWS_AS(inverse(from_ints(q, 2, 2, {1, 2, 2, 4})), std::invalid_argument);
}

TEST_CASE("rank-nullity and section laws over both fields") {
    std::mt19937 rng(11);
    auto run = [&](auto f) {
        using F = decltype(f);
        for (int t = 0; t < 20; ++t) {
            int rows = 1 + static_cast<int>(rng() % 5);
            int cols = 1 + static_cast<int>(rng() % 5);
            auto m = random_mat(f, rows, cols, rng);
            auto k = kernel(m);
            CHECK(k.dim() + rank(m) == cols);
            CHECK((m * k.basis).is_zero());
            CHECK(k.retraction() * k.basis == Mat<F>::identity(f, k.dim()));
            auto c = cokernel(m);
            CHECK((c.proj * m).is_zero());
            CHECK(c.proj * c.section == Mat<F>::identity(f, c.dim()));
            CHECK(c.dim() == rows - rank(m));
        }
    };
    run(Rationals{});
    run(PrimeField{5});
    run(PrimeField{2});
}

TEST_CASE("kron is bifunctorial") {
    std::mt19937 rng(13);
    Rationals q;
    for (int t = 0; t < 6; ++t) {
        auto a = random_mat(q, 2, 3, rng);
        auto a2 = random_mat(q, 3, 2, rng);
        auto b = random_mat(q, 2, 2, rng);
        auto b2 = random_mat(q, 2, 3, rng);
        CHECK(Mat<Rationals>::kron(a * a2, b * b2) ==
              Mat<Rationals>::kron(a, b) * Mat<Rationals>::kron(a2, b2));
    }
    auto a = random_mat(q, 2, 2, rng);
    auto b = random_mat(q, 3, 1, rng);
    auto c = random_mat(q, 2, 3, rng);
    CHECK(Mat<Rationals>::kron(Mat<Rationals>::kron(a, b), c) ==
          Mat<Rationals>::kron(a, Mat<Rationals>::kron(b, c)));
}

TEST_CASE("dense and sparse representations agree") {
    std::mt19937 rng(17);
    Rationals q;
    auto md = random_mat(q, 6, 6, rng, Rep::Dense);
    typename Mat<Rationals>::Builder sb(q, 6, 6);
    md.for_each_nonzero([&](int i, int j, const mpq_class& v) { sb.set(i, j, v); });
    auto ms = sb.build(Rep::Sparse);
    REQUIRE(md.is_dense());
    REQUIRE(!ms.is_dense());
    CHECK(md == ms);
    CHECK(rank(md) == rank(ms));
    CHECK(kernel(md).basis == kernel(ms).basis);
    CHECK(cokernel(md).proj == cokernel(ms).proj);
    CHECK(md * ms == ms * md * Mat<Rationals>::identity(q, 6));
    CHECK(Mat<Rationals>::kron(md, ms) == Mat<Rationals>::kron(ms, md * Mat<Rationals>::identity(q, 6)));
}

TEST_CASE("fraction-free rational echelon matches the generic path") {
    std::mt19937 rng(41);
    Rationals q;
    for (int t = 0; t < 40; ++t) {
        int rows = 1 + static_cast<int>(rng() % 8);
        int cols = 1 + static_cast<int>(rng() % 8);
        typename Mat<Rationals>::Builder b(q, rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (rng() % 3) {
                    long num = static_cast<long>(rng() % 9) - 4;
                    long den = 1 + static_cast<long>(rng() % 4);
                    mpq_class v(num, den);
                    v.canonicalize();
                    b.set(i, j, v);
                }
        auto m = b.build();
        auto fast = echelon(m);             // fraction-free overload
        auto slow = echelon<Rationals>(m);  // generic template
        CHECK(fast.rank == slow.rank);
        CHECK(fast.pivot_cols == slow.pivot_cols);
        CHECK(fast.rref == slow.rref);
    }
}

TEST_CASE("descend and corestrict certify compatibility") {
    Rationals q;
    // quotient of k^2 by the diagonal, twice; sigma = identity descends
    auto m = from_ints(q, 2, 1, {1, 1});
    auto qa = cokernel(m);
    auto ind = descend(qa, qa, Mat<Rationals>::identity(q, 2), "self");
    CHECK(ind == Mat<Rationals>::identity(q, 1));
    // a sigma that does not preserve the relations must be rejected
    auto bad = from_ints(q, 2, 2, {1, 0, 0, 2});
    CHECK_THROWS_AS(descend(qa, qa, bad, "bad"), consistency_error);

    auto k = kernel(from_ints(q, 1, 2, {1, -1}));
    auto cor = corestrict(k, k, Mat<Rationals>::identity(q, 2), "self");
    CHECK(cor == Mat<Rationals>::identity(q, 1));
    CHECK_THROWS_AS(corestrict(k, k, bad, "bad"), consistency_error);
}
