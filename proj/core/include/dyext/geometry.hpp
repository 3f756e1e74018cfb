#pragma once

#include <cstdint>
#include <vector>

#include "dyext/rational.hpp"

namespace dyext {

/// Largest rank any operation will build. Defaults to 12.
unsigned rank_cap() noexcept;
void set_rank_cap(unsigned cap) noexcept;

/// Restores the previous cap on scope exit.
class ScopedRankCap {
public:
    explicit ScopedRankCap(unsigned cap) : previous_(rank_cap()) { set_rank_cap(cap); }
    ~ScopedRankCap() { set_rank_cap(previous_); }
    ScopedRankCap(const ScopedRankCap&) = delete;
    ScopedRankCap& operator=(const ScopedRankCap&) = delete;

private:
    unsigned previous_;
};

/// Throws RankError when `rank` exceeds the cap.
void check_rank(unsigned rank);

enum class GridKind { square, discrete };

struct Cell {
    std::uint32_t column = 0;
    std::uint32_t row = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Grid of 2^rank columns over either 2^rank rows of equal weight (the unit
/// square) or a fixed number of levels with arbitrary positive weights (the
/// space X x {1..L}). Cells are indexed row-major: index = row * columns + column.
/// Row r of a square grid covers heights [r/2^k, (r+1)/2^k).
class GridGeometry {
public:
    static GridGeometry square(unsigned rank);
    /// Weights must be positive and sum to exactly one.
    static GridGeometry discrete(unsigned rank, std::vector<Rational> weights);
    static GridGeometry discrete_uniform(unsigned rank, unsigned levels);

    GridKind kind() const noexcept { return kind_; }
    bool is_square() const noexcept { return kind_ == GridKind::square; }
    unsigned rank() const noexcept { return rank_; }
    std::uint32_t columns() const noexcept { return std::uint32_t{1} << rank_; }
    std::uint32_t rows() const noexcept { return static_cast<std::uint32_t>(weights_.size()); }
    std::uint32_t cell_count() const noexcept { return columns() * rows(); }
    const std::vector<Rational>& weights() const noexcept { return weights_; }
    const Rational& weight(std::uint32_t row) const { return weights_[row]; }
    bool uniform_weights() const;

    /// Measure of one cell in the given row: weight(row) / columns.
    Rational cell_measure(std::uint32_t row) const;
    Rational column_measure() const;

    std::uint32_t index(Cell c) const noexcept { return c.row * columns() + c.column; }
    Cell cell(std::uint32_t index) const noexcept { return {index % columns(), index / columns()}; }

    /// Same geometry at a finer rank. Square grids subdivide rows as well as
    /// columns; discrete grids subdivide columns only.
    GridGeometry refined(unsigned target_rank) const;

    /// Number of finer rows covering one row after refining by `levels` ranks.
    std::uint32_t row_factor(unsigned levels) const noexcept {
        return is_square() ? (std::uint32_t{1} << levels) : 1;
    }

    /// True when both belong to one family (square, or discrete with equal weights).
    bool compatible(const GridGeometry& other) const;

    friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

private:
    GridGeometry(GridKind kind, unsigned rank, std::vector<Rational> weights)
        : kind_(kind), rank_(rank), weights_(std::move(weights)) {}

    GridKind kind_ = GridKind::square;
    unsigned rank_ = 0;
    std::vector<Rational> weights_;
};

/// Rank both geometries refine to; throws GeometryError for incompatible families.
unsigned common_rank(const GridGeometry& a, const GridGeometry& b);

/// Index of the cell containing the given cell after coarsening to `coarse`
/// (which must be a coarser member of the same family).
std::uint32_t coarsen_index(const GridGeometry& fine, std::uint32_t index, const GridGeometry& coarse);

}  // namespace dyext
