#include "zarank/bounds.hpp"
#include "zarank/suites.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace zarank;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

PowerProduct constant(const Rational& c) {
    PowerProduct p;
    p.coeff = c;
    return p;
}

std::vector<Rational> alphas(std::vector<int> d) { return exponents(DimProfile(std::move(d))).alphas; }

} // namespace

TEST(Exponents, TwoByTwo) { EXPECT_EQ(alphas({2, 2}), (std::vector<Rational>{q(2, 3), q(2, 3)})); }

TEST(Exponents, SingleCoordinateIsZero) {
    for (int d = 1; d <= 7; ++d) EXPECT_EQ(alphas({d}), std::vector<Rational>{q(0)});
}

TEST(Exponents, ThreePlanarParts) { EXPECT_EQ(alphas({2, 2, 2}), (std::vector<Rational>(3, q(4, 5)))); }

TEST(Exponents, MixedTwoThree) { EXPECT_EQ(alphas({2, 3}), (std::vector<Rational>{q(3, 5), q(4, 5)})); }

TEST(Exponents, OneDimensionalPartKillsItsExponent) {
    EXPECT_EQ(alphas({1, 5}), (std::vector<Rational>{q(0), q(1)}));
    EXPECT_EQ(alphas({4, 1, 3}), (std::vector<Rational>{q(1), q(0), q(1)}));
}

TEST(Exponents, SeveralOnesTakeTheSymmetricLimit) {
    EXPECT_EQ(alphas({1, 1}), (std::vector<Rational>{q(1, 2), q(1, 2)}));
    EXPECT_EQ(alphas({1, 1, 1, 4}), (std::vector<Rational>{q(2, 3), q(2, 3), q(2, 3), q(1)}));
    EXPECT_TRUE(check_matrix_identity(DimProfile({1, 1, 1, 4})).ok);
}

TEST(Exponents, StayInUnitInterval) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        const DimProfile d = detail::random_dims(rng, 1, 6, 1, 9);
        for (const auto& a : exponents(d).alphas) {
            EXPECT_GE(a, 0);
            EXPECT_LE(a, 1);
        }
    }
}

TEST(Exponents, InvalidProfilesThrow) {
    EXPECT_THROW(DimProfile(std::vector<int>{}), std::invalid_argument);
    EXPECT_THROW(DimProfile({2, 0}), std::invalid_argument);
}

TEST(EvalE, EqualPlanarSizes) {
    const auto e = eval_E(DimProfile({2, 2}), SizeProfile::of({8, 8}));
    ASSERT_EQ(e.terms.size(), 1u);
    EXPECT_TRUE(exactly_equal(e.terms[0], constant(16)));
    EXPECT_DOUBLE_EQ(e.approx, 16.0);
}

TEST(EvalE, ThreePartsOfThirtyTwo) {
    const auto e = eval_E(DimProfile({2, 2, 2}), SizeProfile::of({32, 32, 32}));
    EXPECT_TRUE(exactly_equal(e.terms[0], constant(4096)));
}

TEST(EvalE, MixedExponentsPerBase) {
    const auto e = eval_E(DimProfile({2, 3}), SizeProfile::of({7, 11}));
    ASSERT_EQ(e.terms[0].factors.size(), 2u);
    EXPECT_EQ(e.terms[0].factors[0], std::make_pair(q(7), q(3, 5)));
    EXPECT_EQ(e.terms[0].factors[1], std::make_pair(q(11), q(4, 5)));
}

TEST(EvalF, TwoPlanarParts) {
    const auto f = eval_F(DimProfile({2, 2}), SizeProfile::of({8, 8}), 0);
    EXPECT_NEAR(static_cast<double>(f.evaluate()), 32.0, 1e-12);
    EXPECT_EQ(f.terms.size(), 3u);
}

TEST(EvalF, SingleCoordinateIsTrailingTermOnly) {
    // (1/n) * n with no |I| >= 2 subsets
    const auto f = eval_F(DimProfile({3}), SizeProfile::of({1000}), q(1, 10));
    EXPECT_NEAR(static_cast<double>(f.evaluate()), 1.0, 1e-15);
}

TEST(EvalF, TermCountIsSubsetsPlusTrailing) {
    for (int k = 1; k <= 6; ++k) {
        const DimProfile d(std::vector<int>(static_cast<std::size_t>(k), 2));
        SizeProfile n;
        n.sizes.assign(static_cast<std::size_t>(k), q(5));
        const std::size_t subsets = (std::size_t{1} << k) - static_cast<std::size_t>(k) - 1;
        EXPECT_EQ(eval_F(d, n, 0).terms.size(), subsets + static_cast<std::size_t>(k));
    }
}

TEST(EvalF, ThreePartGrowthShape) {
    // leading n^{12/5}, pair terms n * n^{4/3}, trailing n^2
    const auto f = eval_F(DimProfile({2, 2, 2}), SizeProfile::of({10, 10, 10}), 0);
    std::vector<Rational> totals;
    for (const auto& t : f.terms) totals.push_back(t.total_exponent());
    std::sort(totals.begin(), totals.end());
    EXPECT_EQ(totals, (std::vector<Rational>{q(2), q(2), q(2), q(7, 3), q(7, 3), q(7, 3), q(12, 5)}));
    EXPECT_EQ(f.growth_exponent(), q(12, 5));
}

TEST(EvalF, TwoPartsMatchClosedForm) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dd(1, 8);
    std::uniform_int_distribution<long> nn(1, 100000);
    for (int t = 0; t < 200; ++t) {
        const int d1 = dd(rng);
        const int d2 = dd(rng);
        if (d1 * d2 == 1) continue;
        const Rational m = nn(rng), n = nn(rng), eps = q(t % 4, 20);
        const auto f = eval_F(DimProfile({d1, d2}), SizeProfile({m, n}), eps);
        ASSERT_EQ(f.terms.size(), 3u);
        PowerProduct lead;
        lead.factors = {{m, Rational(d1 * d2 - d2, d1 * d2 - 1) + eps}, {n, Rational(d1 * d2 - d1, d1 * d2 - 1) + eps}};
        PowerProduct tail_m;
        tail_m.factors = {{m, q(1)}};
        PowerProduct tail_n;
        tail_n.factors = {{n, q(1)}};
        EXPECT_TRUE(exactly_equal(f.terms[0], lead));
        // the trailing terms are n (drop m) and m (drop n), in either order
        const bool order1 = exactly_equal(f.terms[1], tail_n) && exactly_equal(f.terms[2], tail_m);
        const bool order2 = exactly_equal(f.terms[1], tail_m) && exactly_equal(f.terms[2], tail_n);
        EXPECT_TRUE(order1 || order2);
    }
}

TEST(EvalF, DominatesE) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> nn(1, 1000000);
    for (int t = 0; t < 300; ++t) {
        const DimProfile d = detail::random_dims(rng, 1, 5, 1, 7);
        SizeProfile n;
        for (std::size_t i = 0; i < d.k(); ++i) n.sizes.emplace_back(nn(rng));
        EXPECT_GE(eval_F(d, n, 0).evaluate(), eval_E(d, n).evaluate()) << t;
    }
}

TEST(EvalF, MonotoneInEverySize) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> nn(1, 100000);
    std::uniform_int_distribution<long> bump(1, 1000);
    for (int t = 0; t < 300; ++t) {
        const DimProfile d = detail::random_dims(rng, 1, 5, 1, 7);
        SizeProfile n;
        for (std::size_t i = 0; i < d.k(); ++i) n.sizes.emplace_back(nn(rng));
        const Rational eps = detail::random_epsilon(rng);
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, d.k() - 1)(rng);
        SizeProfile larger = n;
        larger.sizes[i] += bump(rng);
        EXPECT_LE(eval_F(d, n, eps).evaluate(), eval_F(d, larger, eps).evaluate());
    }
}

TEST(BoundValue, ApproximationIsCorrectlyRounded) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> nn(1, 1000000);
    for (int t = 0; t < 100; ++t) {
        const DimProfile d = detail::random_dims(rng, 1, 4, 1, 6);
        SizeProfile n;
        for (std::size_t i = 0; i < d.k(); ++i) n.sizes.emplace_back(nn(rng));
        const auto f = eval_F(d, n, q(1, 7));
        const double exact = static_cast<double>(f.evaluate());
        EXPECT_LE(std::abs(f.approx - exact), std::abs(exact) * 2.3e-16);
    }
}

TEST(ExactlyEqual, PowerProductEquality) {
    PowerProduct a;
    a.factors = {{q(2), q(1, 2)}, {q(3), q(1, 2)}};
    PowerProduct b;
    b.factors = {{q(6), q(1, 2)}};
    EXPECT_TRUE(exactly_equal(a, b));
    PowerProduct c;
    c.factors = {{q(3), q(1, 2)}};
    PowerProduct d;
    d.factors = {{q(2), q(1, 2)}};
    EXPECT_FALSE(exactly_equal(c, d));
    PowerProduct e;
    e.factors = {{q(4), q(1, 2)}};
    EXPECT_TRUE(exactly_equal(e, constant(2)));
    PowerProduct f;
    f.coeff = q(2, 3);
    f.factors = {{q(12), q(1)}};
    EXPECT_TRUE(exactly_equal(f, constant(8)));
    PowerProduct g;
    g.factors = {{q(8, 27), q(1, 3)}};
    EXPECT_TRUE(exactly_equal(g, constant(q(2, 3))));
}

TEST(MatrixIdentity, Examples) {
    for (auto d : {std::vector<int>{2, 3}, std::vector<int>{2, 2}, std::vector<int>{5}}) {
        const auto rep = check_matrix_identity(DimProfile(d));
        EXPECT_TRUE(rep.ok);
        for (const auto& r : rep.residuals) EXPECT_EQ(r, 0);
    }
}

TEST(MatrixIdentity, RandomProfilesExact) {
    const auto r = suite_matrix_identity(101, 1000);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.checked, 1000u);
}

TEST(ScalingIdentity, WorkedExample) {
    const auto rep = check_scaling_identity(DimProfile({2, 2}), SizeProfile::of({64, 8}), q(8), 1);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.r_exponent, 0);
    EXPECT_NEAR(static_cast<double>(rep.lhs.evaluate()), 64.0, 1e-9);
}

TEST(ScalingIdentity, UnitRadiusIsIdentity) {
    const auto rep = check_scaling_identity(DimProfile({3, 2, 4}), SizeProfile::of({5, 7, 9}), q(1), 2);
    EXPECT_TRUE(rep.ok);
}

TEST(ScalingIdentity, RandomDrawsEveryIndex) {
    const auto r = suite_scaling(202, 100);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_GE(r.checked, 100u);
}

TEST(ScalingIdentity, WrongExponentIsDetected) {
    // perturbing one exponent breaks the exact comparison
    auto rep = check_scaling_identity(DimProfile({2, 3}), SizeProfile::of({10, 20}), q(3), 0);
    ASSERT_TRUE(rep.ok);
    rep.lhs.factors.back().second += q(1, 1000);
    EXPECT_FALSE(exactly_equal(rep.lhs, rep.rhs));
}

TEST(Monotonicity, WorkedExample) {
    const auto rep = check_monotonicity(DimProfile({3, 2}), SizeProfile::of({100, 100}), 0, 0);
    EXPECT_TRUE(rep.hypothesis_met);
    EXPECT_TRUE(rep.holds);
    EXPECT_LE(rep.lower, rep.upper);
}

TEST(Monotonicity, AllOnesSizes) {
    const auto rep = check_monotonicity(DimProfile({2, 4, 3}), SizeProfile::of({1, 1, 1}), 1, 0);
    EXPECT_TRUE(rep.hypothesis_met);
    EXPECT_TRUE(rep.holds);
}

TEST(Monotonicity, HypothesisFailureIsReported) {
    const auto rep = check_monotonicity(DimProfile({2, 2}), SizeProfile::of({2, 1000}), 0, 0);
    EXPECT_FALSE(rep.hypothesis_met);
}

TEST(Monotonicity, NeedsDimensionTwo) {
    EXPECT_THROW(check_monotonicity(DimProfile({1, 2}), SizeProfile::of({5, 5}), 0, 0), std::invalid_argument);
}

TEST(Monotonicity, RandomDrawsMeetingHypothesis) {
    const auto r = suite_monotonicity(303, 100);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.checked, 100u);
}

TEST(Dominance, LargeBalancedPair) {
    const auto rep = check_dominance(DimProfile({2, 2}), SizeProfile::of({1000000, 1000000}), 0);
    EXPECT_TRUE(rep.applicable);
    EXPECT_TRUE(rep.hypothesis_met);
    EXPECT_TRUE(rep.holds);
    EXPECT_GE(rep.ratio, 1.0 / 8.0);
    EXPECT_EQ(rep.constant, q(1, 8));
}

TEST(Dominance, UnitSizesFailHypothesis) {
    const auto rep = check_dominance(DimProfile({2, 3, 2}), SizeProfile::of({1, 1, 1}), 0);
    EXPECT_FALSE(rep.hypothesis_met);
}

TEST(Dominance, SingleCoordinateNotApplicable) {
    EXPECT_FALSE(check_dominance(DimProfile({3}), SizeProfile::of({50}), 0).applicable);
}

TEST(Dominance, RandomDrawsMeetingHypothesis) {
    const auto r = suite_dominance(404, 100);
    EXPECT_EQ(r.failures, 0u);
    EXPECT_EQ(r.checked, 100u);
}

TEST(ErdosBound, LeadingExponents) {
    EXPECT_EQ(erdos_bound({2, 2}, SizeProfile::of({10, 10})).growth_exponent(), q(3, 2));
    EXPECT_EQ(erdos_bound({2, 2, 2}, SizeProfile::of({10, 10, 10})).growth_exponent(), q(11, 4));
}

TEST(ErdosBound, SinglePartConvention) {
    const auto b = erdos_bound({3}, SizeProfile::of({17}));
    EXPECT_NEAR(b.approx, 17.0, 1e-12);
}

TEST(ErdosBound, RejectsMismatchedLengths) {
    EXPECT_THROW(erdos_bound({2, 2}, SizeProfile::of({3})), std::invalid_argument);
    EXPECT_THROW(erdos_bound({0, 2}, SizeProfile::of({3, 3})), std::invalid_argument);
}

TEST(PredictedExponent, KnownShapes) {
    EXPECT_EQ(predicted_exponent(DimProfile({2, 2}), 0), q(4, 3));
    EXPECT_EQ(predicted_exponent(DimProfile({3, 3}), 0), q(3, 2));
    EXPECT_EQ(predicted_exponent(DimProfile({4, 4, 4}), 0), q(8, 3));
    EXPECT_EQ(predicted_exponent(DimProfile({2, 2, 2}), q(1, 10)), q(12, 5) + q(3, 10));
}
