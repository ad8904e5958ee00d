#include "doctest.h"

#include <random>

#include "coendcalc/functors.hpp"
#include "coendcalc/groups.hpp"

using namespace coendcalc;

namespace {
Rationals Q;

template <class F>
VCatPtr<F> ptr(VCategory<F> c) {
    return std::make_shared<const VCategory<F>>(std::move(c));
}

// random invertible matrix with small integer entries: unit lower times unit
// upper triangular
template <class F>
std::pair<Mat<F>, Mat<F>> random_unimodular(F f, int n, std::mt19937& rng) {
    typename Mat<F>::Builder lb(f, n, n), ub(f, n, n);
    for (int i = 0; i < n; ++i) {
        lb.set(i, i, f.one());
        ub.set(i, i, f.one());
        for (int j = 0; j < i; ++j) {
            long lv = static_cast<long>(rng() % 3) - 1;
            long uv = static_cast<long>(rng() % 3) - 1;
            if (lv) lb.set(i, j, f.from_int(lv));
            if (uv) ub.set(j, i, f.from_int(uv));
        }
    }
    Mat<F> m = lb.build() * ub.build();
    return {m, inverse(m)};
}

// a validated random bifunctor: sum of double representables, conjugated
template <class F>
FunctorData<F> random_bifunctor(VCatPtr<F> cat, std::mt19937& rng, int summands) {
    FunctorData<F> t = double_representable(cat, static_cast<int>(rng() % cat->n()),
                                            static_cast<int>(rng() % cat->n()));
    for (int i = 1; i < summands; ++i)
        t = direct_sum_functors(t, double_representable(cat, static_cast<int>(rng() % cat->n()),
                                                        static_cast<int>(rng() % cat->n())));
    std::vector<Mat<F>> g, gi;
    for (int ix = 0; ix < t.tuple_count(); ++ix) {
        auto [m, mi] = random_unimodular(cat->field, t.dims[ix], rng);
        g.push_back(m);
        gi.push_back(mi);
    }
    return twist_functor(t, g, gi);
}
}  // namespace

TEST_CASE("hom bifunctor validates") {
    for (auto cat : {group_algebra_category(cyclic_group(2), Q), group_algebra_category(symmetric3(), Q),
                     matrix_algebra_2x2(Q), linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q)}) {
        auto c = ptr(cat);
        auto hom = hom_bifunctor(c);
        CHECK(validate_functor(hom).ok());
    }
    PrimeField f5(5);
    CHECK(validate_functor(hom_bifunctor(ptr(group_algebra_category(symmetric3(), f5)))).ok());
}

TEST_CASE("hom bifunctor of the unit category is the constant line") {
    auto c = ptr(group_algebra_category(cyclic_group(1), Q));
    auto hom = hom_bifunctor(c);
    CHECK(hom.dims == std::vector<int>{1});
    CHECK(validate_functor(hom).ok());
}

TEST_CASE("corrupting an action entry is reported") {
    auto c = ptr(group_algebra_category(cyclic_group(2), Q));
    auto hom = hom_bifunctor(c);
    // reroute the covariant action of g on basis e
    typename Mat<Rationals>::Builder b(Q, 2, 4);
    hom.action_tensor(1, 0, 0).for_each_nonzero([&](int i, int j, const mpq_class& v) {
        if (j == 1 * 2 + 0) return;
        b.set(i, j, v);
    });
    b.set(0, 1 * 2 + 0, Q.one());
    FunctorData<Rationals> bad = hom;
    bad.act[1][0] = b.build();
    auto rep = validate_functor(bad);
    CHECK_FALSE(rep.ok());
    CHECK(!rep.violations.empty());
}

TEST_CASE("pointwise dual is an involution and preserves validity") {
    auto c = ptr(group_algebra_category(cyclic_group(2), Q));
    auto hom = hom_bifunctor(c);
    auto dual = pointwise_dual(hom);
    CHECK(validate_functor(dual).ok());
    CHECK(dual.var[0] == Variance::Co);
    CHECK(dual.var[1] == Variance::Contra);
    auto dd = pointwise_dual(dual);
    CHECK(dd.var == hom.var);
    CHECK(dd.dims == hom.dims);
    for (int s = 0; s < 2; ++s)
        for (std::size_t i = 0; i < hom.act[s].size(); ++i) CHECK(dd.act[s][i] == hom.act[s][i]);
}

TEST_CASE("restriction gives representables") {
    auto c = ptr(linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q));
    auto hom = hom_bifunctor(c);
    auto rep = restrict_slots(hom, {{0, 1}});  // A(a1, -)
    CHECK(rep.arity() == 1);
    CHECK(rep.var[0] == Variance::Co);
    CHECK(rep.dims[0] == c->hd(1, 0));
    CHECK(validate_functor(rep).ok());
}

TEST_CASE("combine builds valid product functors") {
    auto c = ptr(linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q));
    auto t = double_representable(c, 0, 1);
    CHECK(t.arity() == 2);
    CHECK(t.var[0] == Variance::Contra);
    CHECK(t.var[1] == Variance::Co);
    CHECK(t.dim({0, 0}) == c->hd(0, 0) * c->hd(1, 0));
    CHECK(validate_functor(t).ok());
}

TEST_CASE("direct sums and twists stay valid") {
    std::mt19937 rng(23);
    auto c = ptr(linearize_groupoid(connected_groupoid(cyclic_group(2), 2), Q));
    auto t = random_bifunctor(c, rng, 2);
    CHECK(validate_functor(t).ok());
    PrimeField f5(5);
    auto c5 = ptr(linearize_groupoid(connected_groupoid(cyclic_group(3), 2), f5));
    auto t5 = random_bifunctor(c5, rng, 2);
    CHECK(validate_functor(t5).ok());
}

TEST_CASE("check_natural accepts identities and rejects junk") {
    auto c = ptr(group_algebra_category(cyclic_group(2), Q));
    auto hom = hom_bifunctor(c);
    std::vector<Mat<Rationals>> id_fam{Mat<Rationals>::identity(Q, 2)};
    CHECK(check_natural(hom, hom, id_fam));
    std::vector<Mat<Rationals>> bad{Mat<Rationals>::scalar(Q, Q.one())};
    CHECK_FALSE(check_natural(hom, hom, bad));
    // a non-natural family of correct shape: diag(1, 2) does not commute with
    // the swap action of g on k[Z/2]
    typename Mat<Rationals>::Builder b(Q, 2, 2);
    b.set(0, 0, Q.one());
    b.set(1, 1, Q.from_int(2));
    std::vector<Mat<Rationals>> nn{b.build()};
    std::string why;
    CHECK_FALSE(check_natural(hom, hom, nn, &why));
    CHECK(why.find("naturality square") != std::string::npos);
}

TEST_CASE("check_dinatural on identity families") {
    auto c = ptr(group_algebra_category(cyclic_group(2), Q));
    auto hom = hom_bifunctor(c);
    // alpha[x][y] must be T(x,x) -> T(y,y); for the one-object case the
    // identity family is dinatural iff the algebra is commutative
    std::vector<std::vector<Mat<Rationals>>> alpha{{Mat<Rationals>::identity(Q, 2)}};
    CHECK(check_dinatural(hom, alpha));
    auto s3 = ptr(group_algebra_category(symmetric3(), Q));
    auto hom3 = hom_bifunctor(s3);
    std::vector<std::vector<Mat<Rationals>>> alpha3{{Mat<Rationals>::identity(Q, 6)}};
    std::string why;
    CHECK_FALSE(check_dinatural(hom3, alpha3, &why));
}
