#pragma once

#include <span>
#include <vector>

#include "dyext/dyadic_rational.hpp"
#include "dyext/dyadic_set.hpp"

namespace dyext {

/// Pairwise disjoint dyadic sets covering the grid, all at one geometry.
class Partition {
public:
    /// Refines every block to the largest rank among them and validates
    /// disjointness and cover; throws PreconditionError otherwise.
    explicit Partition(std::vector<DyadicSet> blocks);

    const GridGeometry& geometry() const noexcept { return blocks_.front().geometry(); }
    const std::vector<DyadicSet>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    const DyadicSet& operator[](std::size_t i) const { return blocks_[i]; }

    Partition refined(unsigned target_rank) const;

private:
    std::vector<DyadicSet> blocks_;
};

/// Greedy dyadic partition matching: returns blocks F_i with measure exactly targets[i] and m(E_i △ F_i) < 2·delta.
///
/// Works at the smallest rank (at or above the partition's) where every
/// target is a whole number of cells. Over-full blocks release their
/// highest-index cells to a pool; under-full blocks take the lowest-index
/// cells from it. Requires equal level weights.
///
/// Throws PreconditionError when the targets do not sum to one or some
/// |m(E_i) − r_i| ≥ delta, and RankError when no rank up to the cap
/// represents the targets.
Partition partition_match(const Partition& blocks, std::span<const DyadicRational> targets, const Rational& delta);

/// Column-local matching on the unit square.
///
/// `approx` is a dyadic partition of rank K with m(E_i △ approx_i) < epsilon.
/// `column_targets[i][j]` gives the exact mass block i must have over rank-K
/// column j. Each column is resolved independently: over-full blocks release
/// strips (column × one dyadic row) from the top, under-full blocks absorb
/// them from the bottom of the released pool. The result satisfies
/// m(F_i ∩ column j) = column_targets[i][j] and m(E_i △ F_i) < 3·epsilon.
///
/// Throws PreconditionError when a column's targets do not sum to its mass
/// or the closeness hypotheses fail.
Partition column_partition_match(const Partition& blocks, const Partition& approx,
                                 const std::vector<std::vector<DyadicRational>>& column_targets,
                                 const Rational& epsilon);

}  // namespace dyext
