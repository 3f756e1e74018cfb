#pragma once

#include <vector>

#include "dyext/permutation.hpp"
#include "dyext/trace.hpp"

namespace dyext {

struct ApproxResult {
    CellPermutation q;
    unsigned working_rank = 0;
    std::size_t block_count = 0;         // nonempty blocks D_ij
    std::vector<Rational> deviations;    // μ(tD △ qD) per rank-N square D
    Trace trace;
};

/// Column-preserving dyadic permutation Q with μ(tD △ QD) < epsilon for
/// every dyadic square D of rank `nbhd_rank`.
///
/// The factor is split off first (t̃ = lift(t′)⁻¹ ∘ t extends the identity),
/// the blocks D_ij = D_i ∩ t̃D_j are matched per column by
/// partition_match and column_partition_match, and Q̃ carries
/// t̃⁻¹D_ij ∩ C_k onto D_ij ∩ C_k pairing cells in row-major order inside
/// each level class. Q = lift(t′) ∘ Q̃.
///
/// Throws PreconditionError for input that is not column-preserving and
/// RankError when the working rank exceeds the cap.
ApproxResult approximate_by_column_permutation(const CellPermutation& t, unsigned nbhd_rank, const Rational& epsilon);

struct WateResult {
    CellPermutation q;
    unsigned k = 0;
    std::size_t base_cycles = 0;          // K
    Rational bound;                       // K / 2^(k-1)
    std::vector<Rational> deviations;     // μ(pD △ qD) per rank-M square D
    std::vector<std::uint32_t> column_order;  // snake order of the rank-k columns
    Trace trace;
};

/// Weak approximation by a permutation whose factor is one 2^k-cycle.
///
/// k is the least rank ≥ max(M, k0) with K/2^(k-1) < epsilon, where M is the
/// rank of p and K the number of cycles of its factor. Throws RankError when
/// k exceeds the cap and PreconditionError when p is not column-preserving
/// or lives on a discrete grid.
WateResult wate(const CellPermutation& p, const Rational& epsilon, unsigned k0 = 1, bool cyclic = false);

/// The snake construction at a fixed rank k ≥ rank(p). With `cyclic` the
/// passes are chained so that q is a single cycle through every cell.
WateResult wate_at_rank(const CellPermutation& p, unsigned k, bool cyclic = false);

}  // namespace dyext
