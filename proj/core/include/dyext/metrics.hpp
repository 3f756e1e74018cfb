#pragma once

#include <cstddef>
#include <vector>

#include "dyext/dyadic_set.hpp"
#include "dyext/permutation.hpp"

namespace dyext {

/// Measure of the cells on which s and t disagree.
Rational metric_dprime(const CellPermutation& s, const CellPermutation& t);

/// Largest cell count metric_d_bruteforce accepts.
inline constexpr std::size_t kBruteForceCellLimit = 20;

/// max over every union E of cells (at the common rank) of μ(sE △ tE).
/// Throws TooLarge above kBruteForceCellLimit cells.
Rational metric_d_bruteforce(const CellPermutation& s, const CellPermutation& t);

struct MetricBounds {
    Rational lower;  // greedy union of cells
    Rational upper;  // d′
};

MetricBounds metric_d_bounds(const CellPermutation& s, const CellPermutation& t);

struct Neighborhood {
    CellPermutation center;
    std::vector<DyadicSet> sets;
    Rational epsilon;
};

struct NeighborhoodReport {
    bool contains = false;
    std::vector<Rational> deviations;  // μ(center E_i △ s E_i), one per set
};

/// Strict membership: every deviation must be below epsilon.
NeighborhoodReport neighborhood_contains(const Neighborhood& nbhd, const CellPermutation& s);

/// All dyadic squares of the given rank of `family` (cells of `family` refined
/// or used at that rank), in cell index order.
std::vector<DyadicSet> dyadic_squares(const GridGeometry& family, unsigned rank);

/// μ(aD △ bD) for every rank-`rank` square D.
std::vector<Rational> square_deviations(const CellPermutation& a, const CellPermutation& b, unsigned rank);

/// Swaps the images of two cells of one level lying in different columns,
/// at the coarsest rank where the pair has measure below epsilon. The result
/// agrees with t off those two cells and is never column-preserving.
///
/// Throws PreconditionError when t is not column-preserving or the grid has
/// a single level, RankError when no rank up to the cap is fine enough.
CellPermutation perturb_off_extension(const CellPermutation& t, const Rational& epsilon);

}  // namespace dyext
