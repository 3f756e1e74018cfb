#pragma once

#include <cstdint>
#include <vector>

#include "dyext/geometry.hpp"
#include "dyext/rational.hpp"

namespace dyext {

/// Finite union of cells of one grid, stored as a membership bitmap.
/// Binary operations first refine both operands to their common rank.
class DyadicSet {
public:
    explicit DyadicSet(GridGeometry geometry);
    DyadicSet(GridGeometry geometry, const std::vector<std::uint32_t>& cells);

    static DyadicSet full(GridGeometry geometry);
    /// Cylinder over the given columns of `geometry`.
    static DyadicSet cylinder(GridGeometry geometry, const std::vector<std::uint32_t>& columns);

    const GridGeometry& geometry() const noexcept { return geometry_; }
    bool contains(std::uint32_t index) const { return bits_[index]; }
    bool contains(Cell c) const { return bits_[geometry_.index(c)]; }
    void insert(std::uint32_t index) { bits_[index] = true; }
    void erase(std::uint32_t index) { bits_[index] = false; }

    std::size_t size() const;
    bool empty() const { return size() == 0; }
    std::vector<std::uint32_t> cells() const;

    Rational measure() const;
    /// Measure of the part lying over one column.
    Rational column_measure(std::uint32_t column) const;

    /// Same region at a finer rank; throws RankError when `target_rank` is lower.
    DyadicSet refined(unsigned target_rank) const;

    /// True when the set is a union of full columns.
    bool is_cylinder() const;

    DyadicSet complement() const;

    friend DyadicSet operator|(const DyadicSet& a, const DyadicSet& b);
    friend DyadicSet operator&(const DyadicSet& a, const DyadicSet& b);
    friend DyadicSet operator-(const DyadicSet& a, const DyadicSet& b);
    friend DyadicSet operator^(const DyadicSet& a, const DyadicSet& b);

    /// Region equality (after refinement to the common rank).
    friend bool operator==(const DyadicSet& a, const DyadicSet& b);

private:
    GridGeometry geometry_;
    std::vector<bool> bits_;
};

/// Exact measure of a △ b.
Rational symmetric_difference_measure(const DyadicSet& a, const DyadicSet& b);

/// Every cell of `geometry` as a singleton set, in index order.
std::vector<DyadicSet> all_cells(const GridGeometry& geometry);

}  // namespace dyext
