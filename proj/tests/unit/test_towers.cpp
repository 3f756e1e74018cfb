#include <gtest/gtest.h>

#include "dyext/errors.hpp"
#include "dyext/metrics.hpp"
#include "dyext/towers.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dyext;

namespace {

CellPermutation four_cycle_rank_two() {
    return lift(IntervalPermutation(2, {1, 2, 3, 0}), GridGeometry::square(2));
}

}  // namespace

TEST(PeriodicBase, LevelsAreDisjointAndCover) {
    Rng rng(1);
    for (std::uint32_t n : {1u, 2u, 4u}) {
        const auto t = gen::random_periodic_extension(2, n, rng.next());
        const auto tower = periodic_base(t, n);
        EXPECT_EQ(tower.coverage, 1);
        EXPECT_TRUE(tower.residual.empty());
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j) EXPECT_TRUE((tower.levels[i] & tower.levels[j]).empty());
        for (std::uint32_t i = 0; i + 1 < n; ++i) EXPECT_EQ(t.apply(tower.levels[i]), tower.levels[i + 1]);
    }
    EXPECT_THROW(periodic_base(four_cycle_rank_two(), 3), PreconditionError);
}

TEST(Rokhlin, FourCycleWithHeightThree) {
    const auto t = four_cycle_rank_two();
    EXPECT_EQ(best_coverage(t, 3), Rational(3, 4));
    EXPECT_THROW(rokhlin_base(t, 3, Rational(1, 4)), CoverageInfeasible);
    const auto tower = rokhlin_base(t, 3, Rational(1, 3));
    EXPECT_EQ(tower.coverage, Rational(3, 4));
    EXPECT_EQ(tower.residual.measure(), Rational(1, 4));
    try {
        (void)rokhlin_base(t, 3, Rational(1, 8));
        FAIL() << "expected CoverageInfeasible";
    } catch (const CoverageInfeasible& e) {
        EXPECT_EQ(e.best_coverage(), Rational(3, 4));
    }
}

TEST(Uate, PeriodicOutput) {
    Rng rng(2);
    for (int i = 0; i < 30; ++i) {
        const std::uint32_t n = std::uint32_t{1} << (1 + rng.below(3));
        const auto t = gen::random_periodic_extension(3, n, rng.next());
        const Rational eps(1, 16);
        const auto r = uate(t, n, eps);
        EXPECT_TRUE(power(r, n).is_identity());
        EXPECT_TRUE(power(project_to_base(r), n) == IntervalPermutation::identity(3));
        EXPECT_LE(oracle::dprime(r, t), Rational(1, n) + eps);
    }
}

TEST(Uate, PartialCoverage) {
    const auto t = four_cycle_rank_two();
    const auto r = uate(t, 3, Rational(1, 2));
    EXPECT_TRUE(power(r, 3).is_identity());
    EXPECT_LE(metric_dprime(r, t), Rational(1, 3) + Rational(1, 2));
}

TEST(Conjugacy, IdentityAndNeighborhood) {
    Rng rng(3);
    for (int i = 0; i < 8; ++i) {
        const auto target = random_column_preserving(GridGeometry::square(1 + rng.below(2)), rng.next());
        const auto t0 = gen::random_cyclic_extension(3, rng.next());
        const Rational eps(1, 2);
        const auto res = conjugacy(target, t0, 2, eps);
        EXPECT_TRUE(res.identity_verified);
        EXPECT_EQ(compose(inverse(res.s), compose(res.r, res.s)), res.q);
        EXPECT_EQ(res.conjugate, compose(inverse(res.s), compose(t0.refined(res.working_rank), res.s)));
        const auto rep = neighborhood_contains({target, dyadic_squares(target.geometry(), 2), eps}, res.conjugate);
        EXPECT_TRUE(rep.contains);
        EXPECT_EQ(rep.deviations, res.deviations);
        for (std::size_t j = 0; j < res.deviations.size(); ++j) EXPECT_LE(res.deviations[j], res.bounds[j]);
        EXPECT_NE(res.trace.str().find("Q = S^-1 R S verified"), std::string::npos);
    }
}

TEST(Conjugacy, SeededPairingIsDeterministic) {
    const auto target = random_column_preserving(GridGeometry::square(1), 5);
    const auto t0 = gen::random_cyclic_extension(3, 6);
    const auto a = conjugacy(target, t0, 1, Rational(1, 2), 9);
    const auto b = conjugacy(target, t0, 1, Rational(1, 2), 9);
    EXPECT_EQ(a.s, b.s);
    EXPECT_TRUE(a.identity_verified);
}

TEST(Conjugacy, Errors) {
    const auto g = GridGeometry::square(1);
    EXPECT_THROW(conjugacy(gen::swap_cells(g, 0, 1), CellPermutation::identity(g), 1, Rational(1, 2)),
                 PreconditionError);
    ScopedRankCap cap(3);
    EXPECT_THROW(conjugacy(CellPermutation::identity(g), CellPermutation::identity(g), 1, Rational(1, 1000)),
                 RankError);
}
