#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dyext/dyadic_set.hpp"
#include "dyext/geometry.hpp"

namespace dyext {

/// Disjoint cycles covering the domain. Each cycle lists successive images
/// starting from its smallest element; cycles are ordered by that element.
/// Fixed points appear as cycles of length one.
struct CycleDecomposition {
    std::vector<std::vector<std::uint32_t>> cycles;

    std::size_t count() const noexcept { return cycles.size(); }
    /// lcm of the cycle lengths.
    std::uint64_t period() const;
};

/// Bijection of the 2^rank dyadic intervals of the unit line.
class IntervalPermutation {
public:
    IntervalPermutation(unsigned rank, std::vector<std::uint32_t> image);
    static IntervalPermutation identity(unsigned rank);

    unsigned rank() const noexcept { return rank_; }
    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(image_.size()); }
    std::uint32_t operator()(std::uint32_t x) const { return image_[x]; }
    std::span<const std::uint32_t> image() const noexcept { return image_; }

    /// Translates each interval's sub-intervals along with it.
    IntervalPermutation refined(unsigned target_rank) const;
    CycleDecomposition cycles() const;

    friend bool operator==(const IntervalPermutation&, const IntervalPermutation&) = default;

private:
    unsigned rank_;
    std::vector<std::uint32_t> image_;
};

IntervalPermutation compose(const IntervalPermutation& a, const IntervalPermutation& b);
IntervalPermutation inverse(const IntervalPermutation& a);
IntervalPermutation power(const IntervalPermutation& a, std::int64_t n);

/// Bijection of the cells of a grid that preserves level weights
/// (automatic on the square). Cells map by translation when refined.
class CellPermutation {
public:
    /// Throws PreconditionError when `image` is not a weight-preserving bijection.
    CellPermutation(GridGeometry geometry, std::vector<std::uint32_t> image);
    static CellPermutation identity(GridGeometry geometry);

    const GridGeometry& geometry() const noexcept { return geometry_; }
    std::uint32_t operator()(std::uint32_t index) const { return image_[index]; }
    Cell operator()(Cell c) const { return geometry_.cell(image_[geometry_.index(c)]); }
    std::span<const std::uint32_t> image() const noexcept { return image_; }

    CellPermutation refined(unsigned target_rank) const;
    CycleDecomposition cycles() const;
    bool is_identity() const;

    /// Image of a set (refined to the common rank first).
    DyadicSet apply(const DyadicSet& set) const;

    friend bool operator==(const CellPermutation&, const CellPermutation&) = default;

private:
    GridGeometry geometry_;
    std::vector<std::uint32_t> image_;
};

/// a ∘ b: apply b, then a. Square grids are refined to a common rank.
CellPermutation compose(const CellPermutation& a, const CellPermutation& b);
CellPermutation inverse(const CellPermutation& a);
/// Negative exponents go through the inverse; cost is linear in the cell count.
CellPermutation power(const CellPermutation& a, std::int64_t n);

/// Base permutation q' with column(q(c)) = q'(column(c)). Throws
/// NotColumnPreserving with a witness pair otherwise.
IntervalPermutation project_to_base(const CellPermutation& q);
bool is_column_preserving(const CellPermutation& q);

/// base × identity on the fibers of `geometry` (refining `base` when coarser).
CellPermutation lift(const IntervalPermutation& base, const GridGeometry& geometry);

/// Row permutation σ with t^n(column, j) = ((t')^n column, σ(j)).
std::vector<std::uint32_t> fiber_action(const CellPermutation& t, std::int64_t n, std::uint32_t column);

/// Uniform base permutation of the columns composed with independent uniform
/// row permutations (within equal-weight levels) for each column. The same
/// seed always yields the same permutation.
CellPermutation random_column_preserving(const GridGeometry& geometry, std::uint64_t seed);

/// Random extension of a fixed base permutation.
CellPermutation random_extension(const IntervalPermutation& base, const GridGeometry& geometry, std::uint64_t seed);

/// Uniform weight-preserving permutation of all cells (not column-preserving in general).
CellPermutation random_permutation(const GridGeometry& geometry, std::uint64_t seed);

/// Uniformly random permutation of 2^rank intervals forming a single cycle.
IntervalPermutation random_cyclic(unsigned rank, std::uint64_t seed);

}  // namespace dyext
