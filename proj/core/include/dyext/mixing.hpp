#pragma once

#include <cstdint>
#include <vector>

#include "dyext/permutation.hpp"

namespace dyext {

/// Rational value per cell, row-major.
class GridFunction {
public:
    GridFunction(GridGeometry geometry, std::vector<Rational> values);
    static GridFunction constant(GridGeometry geometry, const Rational& c);
    static GridFunction indicator(const DyadicSet& set);

    const GridGeometry& geometry() const noexcept { return geometry_; }
    const std::vector<Rational>& values() const noexcept { return values_; }
    const Rational& operator[](std::uint32_t index) const { return values_[index]; }
    const Rational& at(Cell c) const { return values_[geometry_.index(c)]; }

    GridFunction refined(unsigned target_rank) const;

    friend bool operator==(const GridFunction&, const GridFunction&) = default;

private:
    GridGeometry geometry_;
    std::vector<Rational> values_;
};

/// Rational value per column of a grid.
struct FiberVector {
    std::vector<Rational> values;

    /// Squared L²(X) norm: Σ_x v(x)² / columns.
    Rational norm_sq() const;
    friend bool operator==(const FiberVector&, const FiberVector&) = default;
};

/// E(f|X)(x) = Σ_i w_i f(x, i).
FiberVector conditional_expectation(const GridFunction& f);

/// E(f²|X), the square of the relative norm.
FiberVector relative_norm_sq(const GridFunction& f);

/// Pointwise product after refinement to the common rank.
GridFunction product(const GridFunction& f, const GridFunction& g);

/// ∫ f² dμ.
Rational l2_norm_sq(const GridFunction& f);

struct CauchySchwarzReport {
    std::vector<Rational> column_margins;  // E(f²|X)E(g²|X) − E(fg|X)², per column
    Rational module_margin;                // sup_x E(f²|X) · ‖g‖² − ‖E(fg|X)‖²
    Rational fubini_lhs;                   // ‖E(g²|X)^{1/2}‖²_{L²(X)}
    Rational fubini_rhs;                   // ‖g‖²_{L²(Z)}
    bool holds = false;                    // all margins ≥ 0 and the two Fubini sides agree
};

CauchySchwarzReport cauchy_schwarz_check(const GridFunction& f, const GridFunction& g);

/// How T^n acts on functions. `push_forward`: (T^n f)(z) = f(t^{-n} z) and
/// the factor acts by v ∘ (T′)^{-n}. `pull_back`: f ∘ t^n and v ∘ (T′)^n.
enum class KoopmanConvention { push_forward, pull_back };

/// ‖E(T^n f · g | X) − (T′)^n E(f|X) · E(g|X)‖²_{L²(X)}, exactly.
/// Throws PreconditionError when t is not column-preserving.
Rational mixing_deviation_sq(const CellPermutation& t, const GridFunction& f, const GridFunction& g, std::int64_t n,
                             KoopmanConvention convention = KoopmanConvention::push_forward);

struct DeviationSequence {
    std::vector<Rational> terms_sq;  // exact squared terms, n = 0..N-1
    std::vector<double> terms;
    std::vector<double> cesaro;      // cesaro[i] = mean of terms[0..i]
    Rational min_term_sq;
};

DeviationSequence cesaro_sequence(const CellPermutation& t, const GridFunction& f, const GridFunction& g,
                                  std::uint32_t count,
                                  KoopmanConvention convention = KoopmanConvention::push_forward);

/// Level function with f(level 0) = −Σ_{i≥1} w_i / w_0 and 1 elsewhere, on a
/// rank-0 discrete grid. Throws PreconditionError for fewer than two levels.
GridFunction weak_mixing_witness(const std::vector<Rational>& weights);

/// Same witness laid out on `geometry`, one value per row.
GridFunction weak_mixing_witness(const GridGeometry& geometry);

/// Largest level count witness_lower_bound enumerates.
inline constexpr std::size_t kWitnessLevelLimit = 8;

/// min over all level permutations σ of |Σ_j w_j f(j) f(σ(j))|.
Rational witness_lower_bound(const std::vector<Rational>& weights);

/// χ_A for A the lower half of the square (rows below half the row count).
/// Throws PreconditionError at rank 0.
GridFunction half_square_indicator(unsigned rank);

/// mixing_deviation_sq(t, χ_A, χ_A, k); exactly 1/16 whenever t^k is the identity.
Rational strong_mixing_statistic_sq(const CellPermutation& t, std::int64_t k,
                                    KoopmanConvention convention = KoopmanConvention::push_forward);

}  // namespace dyext
