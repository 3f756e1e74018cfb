#pragma once

#include <optional>
#include <vector>

#include "dyext/permutation.hpp"
#include "dyext/trace.hpp"

namespace dyext {

/// Column tower of an extension: level i = t^i(base).
struct Tower {
    DyadicSet base;
    std::uint32_t height = 0;
    std::vector<DyadicSet> levels;
    DyadicSet residual;
    std::vector<std::uint32_t> base_columns;
    Rational coverage;  // measure of the union of levels
};

/// Base of one interval per factor cycle when every cycle has length exactly n.
/// Throws PreconditionError otherwise.
Tower periodic_base(const CellPermutation& t, std::uint32_t n);

/// Largest union of n disjoint iterates of a cylinder base: Σ_c (q_c − q_c mod n) / 2^k
/// over the factor's cycle lengths q_c.
Rational best_coverage(const CellPermutation& t, std::uint32_t n);

/// Along each factor cycle (started at its smallest interval) the base takes
/// the intervals at positions 0, n, 2n, ... while a full run of n fits.
/// Throws CoverageInfeasible carrying best_coverage when it is not above 1 − epsilon.
Tower rokhlin_base(const CellPermutation& t, std::uint32_t n, const Rational& epsilon);

/// Periodic approximation R: t below the top level, t^-(n-1) on the top level,
/// and a rotation of the residual columns in consecutive blocks of n (a final
/// block shorter than n is left fixed). R^n is the identity and
/// d′(R, t) ≤ 1/n + epsilon.
CellPermutation uate(const CellPermutation& t, std::uint32_t n, const Rational& epsilon);

struct ConjugacyResult {
    CellPermutation s;
    CellPermutation conjugate;  // s⁻¹ ∘ t0 ∘ s
    CellPermutation q;          // cyclic-factor approximation of the target
    CellPermutation r;          // periodic approximation of t0
    unsigned k = 0;             // q has factor period 2^k
    unsigned working_rank = 0;
    bool identity_verified = false;  // s⁻¹ r s == q
    std::vector<Rational> deviations;  // μ(target D △ conjugate D) per square D
    std::vector<Rational> bounds;      // certified bound per square
    Trace trace;
};

/// S with S⁻¹ t0 S within epsilon of the target on every dyadic square of
/// rank `nbhd_rank`. With a seed, the map E_0 → F_0 is a seeded random
/// column and row pairing instead of the order-preserving one.
///
/// Throws RankError when no rank up to the cap certifies the bound and
/// PreconditionError for inputs that are not column-preserving square grids.
ConjugacyResult conjugacy(const CellPermutation& target, const CellPermutation& t0, unsigned nbhd_rank,
                          const Rational& epsilon, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace dyext
