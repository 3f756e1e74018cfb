#include <gtest/gtest.h>

#include "dyext/errors.hpp"
#include "dyext/io.hpp"
#include "generators.hpp"

using namespace dyext;

TEST(Header, RoundTrip) {
    for (const auto& g : {GridGeometry::square(0), GridGeometry::square(3),
                          GridGeometry::discrete(2, {Rational(1, 2), Rational(1, 3), Rational(1, 6)})})
        EXPECT_EQ(parse_header(format_header(g)), g);
    EXPECT_EQ(parse_header("rank=1 rows=3 kind=discrete"), GridGeometry::discrete_uniform(1, 3));
}

TEST(Header, Errors) {
    EXPECT_THROW(parse_header("rank=2 rows=3 kind=square"), ParseError);
    EXPECT_THROW(parse_header("rank=2"), ParseError);
    EXPECT_THROW(parse_header("rank=1 rows=2 kind=torus"), ParseError);
    EXPECT_THROW(parse_header("rank=1 rows=2 weights=1/2,1/4"), ParseError);
    EXPECT_THROW(parse_header("rank=1 rows=2 colour=red"), ParseError);
}

TEST(Permutation, WorkedExampleCycles) {
    const auto p = gen::example_p();
    EXPECT_EQ(p(0u), 10u);
    EXPECT_EQ(p(10u), 4u);
    EXPECT_EQ(p(15u), 11u);
    EXPECT_EQ(p.cycles().count(), 6u);  // label 10 is fixed
    EXPECT_EQ(p(9u), 9u);
    EXPECT_EQ(parse_permutation(format_permutation(p)), p);
    EXPECT_EQ(parse_permutation(format_permutation(p, PermutationStyle::explicit_map)), p);
}

TEST(Permutation, RandomRoundTrips) {
    Rng rng(1);
    for (int i = 0; i < 30; ++i) {
        const auto g = rng.below(2) ? GridGeometry::square(rng.below(3))
                                    : GridGeometry::discrete(1, {Rational(1, 4), Rational(1, 4), Rational(1, 2)});
        const auto p = random_permutation(g, rng.next());
        EXPECT_EQ(parse_permutation(format_permutation(p)), p);
        EXPECT_EQ(parse_permutation(format_permutation(p, PermutationStyle::explicit_map)), p);
    }
}

TEST(Permutation, CommentsAndExplicitLines) {
    const auto p = parse_permutation("# two cells\nrank=1 rows=2 kind=square\n0,0 -> 1,0  # swap\n1,0 -> 0,0\n");
    EXPECT_EQ(p, gen::swap_cells(GridGeometry::square(1), 0, 1));
}

TEST(Permutation, Errors) {
    EXPECT_THROW(parse_permutation("rank=1 rows=2\n(1 2)(2 3)\n"), ParseError);
    EXPECT_THROW(parse_permutation("rank=1 rows=2\n(1 5)\n"), ParseError);
    EXPECT_THROW(parse_permutation("rank=1 rows=2\n(1 2\n"), ParseError);
    EXPECT_THROW(parse_permutation("rank=1 rows=2\n0,0 -> 1,0\n"), ParseError);
    EXPECT_THROW(parse_permutation("rank=1 rows=2\n0,0 -> 2,0\n"), ParseError);
    EXPECT_THROW(parse_permutation(""), ParseError);
}

TEST(DyadicSetIo, RoundTrip) {
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
        const auto s = gen::random_set(GridGeometry::square(rng.below(3)), rng);
        EXPECT_EQ(parse_dyadic_set(format_dyadic_set(s)), s);
    }
}

TEST(GridFunctionIo, RoundTrip) {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto f = gen::random_function(GridGeometry::discrete_uniform(rng.below(3), 3), rng);
        EXPECT_EQ(parse_grid_function(format_grid_function(f)), f);
    }
    EXPECT_THROW(parse_grid_function("rank=0 rows=2 kind=discrete\n1\n"), ParseError);
    EXPECT_THROW(parse_grid_function("rank=0 rows=1 kind=discrete\nx\n"), ParseError);
}

TEST(Files, MissingFileIsParseError) { EXPECT_THROW(read_text_file("/nonexistent/dyext.perm"), ParseError); }
