#include <gtest/gtest.h>

#include "dyext/approx.hpp"
#include "dyext/errors.hpp"
#include "dyext/metrics.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dyext;

namespace {

Rational max_of(const std::vector<Rational>& v) {
    Rational m = 0;
    for (const auto& x : v) m = std::max(m, x);
    return m;
}

void expect_deviations_match_oracle(const CellPermutation& t, const CellPermutation& q, unsigned rank,
                                    const std::vector<Rational>& deviations) {
    const auto squares = dyadic_squares(t.geometry(), rank);
    ASSERT_EQ(squares.size(), deviations.size());
    for (std::size_t i = 0; i < squares.size(); ++i)
        EXPECT_EQ(deviations[i], oracle::image_deviation(t, q, squares[i]));
}

}  // namespace

TEST(Approx, ColumnPreservingInputWithinEpsilon) {
    Rng rng(1);
    for (int i = 0; i < 40; ++i) {
        const unsigned rank = 1 + static_cast<unsigned>(rng.below(3));
        const unsigned nbhd = static_cast<unsigned>(rng.below(rank + 1));
        const Rational eps(1, 1 + static_cast<long>(rng.below(8)));
        const auto t = random_column_preserving(GridGeometry::square(rank), rng.next());
        const auto res = approximate_by_column_permutation(t, nbhd, eps);
        EXPECT_TRUE(is_column_preserving(res.q));
        EXPECT_LT(max_of(res.deviations), eps);
        expect_deviations_match_oracle(t, res.q, nbhd, res.deviations);
    }
}

TEST(Approx, DiscreteGrid) {
    Rng rng(2);
    const auto g = GridGeometry::discrete_uniform(2, 3);
    for (int i = 0; i < 20; ++i) {
        const auto t = random_column_preserving(g, rng.next());
        const auto res = approximate_by_column_permutation(t, 1, Rational(1, 2));
        EXPECT_TRUE(is_column_preserving(res.q));
        EXPECT_LT(max_of(res.deviations), Rational(1, 2));
    }
}

TEST(Approx, TraceRecordsWorkingRank) {
    const auto res = approximate_by_column_permutation(gen::example_p(), 1, Rational(1, 4));
    EXPECT_EQ(res.working_rank, 2u);
    EXPECT_FALSE(res.trace.str().empty());
}

TEST(Approx, Preconditions) {
    const auto g = GridGeometry::square(1);
    EXPECT_THROW(approximate_by_column_permutation(gen::swap_cells(g, 0, 1), 1, Rational(1, 2)), PreconditionError);
    ScopedRankCap cap(2);
    EXPECT_THROW(approximate_by_column_permutation(CellPermutation::identity(g), 3, Rational(1, 2)), RankError);
}

TEST(Wate, WorkedExample) {
    const auto res = wate(gen::example_p(), Rational(1));
    EXPECT_EQ(res.k, 3u);
    EXPECT_EQ(res.base_cycles, 3u);
    EXPECT_EQ(res.bound, Rational(3, 4));
    const auto base = project_to_base(res.q);
    EXPECT_EQ(base.cycles().count(), 1u);
    EXPECT_EQ(base.cycles().cycles.front().size(), 8u);
    const auto lengths = oracle::cycle_lengths(res.q.image());
    EXPECT_EQ(lengths, std::multiset<std::size_t>(std::initializer_list<std::size_t>{8, 8, 8, 8, 8, 8, 8, 8}));
    EXPECT_LE(max_of(res.deviations), Rational(3, 4));
    expect_deviations_match_oracle(gen::example_p().refined(3), res.q, 2, res.deviations);
}

TEST(Wate, IdentityAtRankZeroUsesK0) {
    const auto id = CellPermutation::identity(GridGeometry::square(0));
    const auto res = wate(id, Rational(1), 2);
    EXPECT_EQ(res.k, 2u);
    EXPECT_EQ(project_to_base(res.q).cycles().count(), 1u);
    EXPECT_THROW(wate(id, Rational(1), 0), PreconditionError);
}

TEST(Wate, CyclicVariantIsOneCycle) {
    const auto res = wate(gen::example_p(), Rational(1), 1, true);
    EXPECT_EQ(res.q.cycles().count(), 1u);
    EXPECT_EQ(project_to_base(res.q).cycles().count(), 1u);
    EXPECT_LE(max_of(res.deviations), res.bound);
}

TEST(Wate, RandomRankTwoInputs) {
    Rng rng(3);
    for (int i = 0; i < 30; ++i) {
        const auto p = random_column_preserving(GridGeometry::square(2), rng.next());
        const auto res = wate(p, Rational(1, 2));
        const std::size_t k_cycles = project_to_base(p).cycles().count();
        EXPECT_EQ(res.base_cycles, k_cycles);
        EXPECT_LT(Rational(2 * k_cycles, 1) / (mpz_class(1) << res.k), Rational(1, 2));
        EXPECT_EQ(project_to_base(res.q).cycles().count(), 1u);
        for (auto len : oracle::cycle_lengths(res.q.image())) EXPECT_EQ(len, std::size_t{1} << res.k);
        EXPECT_LE(max_of(res.deviations), res.bound);
        expect_deviations_match_oracle(p.refined(res.k), res.q, 2, res.deviations);
    }
}

TEST(Wate, Errors) {
    EXPECT_THROW(wate(CellPermutation::identity(GridGeometry::discrete_uniform(1, 2)), Rational(1)), PreconditionError);
    ScopedRankCap cap(3);
    EXPECT_THROW(wate(gen::example_p(), Rational(1, 4)), RankError);
}
