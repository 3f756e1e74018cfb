#include "dyext/mixing.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "dyext/errors.hpp"

namespace dyext {

GridFunction::GridFunction(GridGeometry geometry, std::vector<Rational> values)
    : geometry_(std::move(geometry)), values_(std::move(values)) {
    if (values_.size() != geometry_.cell_count())
        throw PreconditionError("grid function has " + std::to_string(values_.size()) + " values for " +
                                std::to_string(geometry_.cell_count()) + " cells");
}

GridFunction GridFunction::constant(GridGeometry geometry, const Rational& c) {
    const auto n = geometry.cell_count();
    return GridFunction(std::move(geometry), std::vector<Rational>(n, c));
}

GridFunction GridFunction::indicator(const DyadicSet& set) {
    std::vector<Rational> v(set.geometry().cell_count(), 0);
    for (auto c : set.cells()) v[c] = 1;
    return GridFunction(set.geometry(), std::move(v));
}

GridFunction GridFunction::refined(unsigned target_rank) const {
    if (target_rank == geometry_.rank()) return *this;
    const GridGeometry fine = geometry_.refined(target_rank);
    std::vector<Rational> v(fine.cell_count());
    for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = values_[coarsen_index(fine, i, geometry_)];
    return GridFunction(fine, std::move(v));
}

Rational FiberVector::norm_sq() const {
    Rational total = 0;
    for (const auto& x : values) total += x * x;
    if (!values.empty()) total /= static_cast<unsigned long>(values.size());
    return total;
}

FiberVector conditional_expectation(const GridFunction& f) {
    const auto& g = f.geometry();
    FiberVector out{std::vector<Rational>(g.columns(), 0)};
    for (std::uint32_t r = 0; r < g.rows(); ++r)
        for (std::uint32_t c = 0; c < g.columns(); ++c) out.values[c] += g.weight(r) * f.at({c, r});
    return out;
}

GridFunction product(const GridFunction& f, const GridFunction& g) {
    const unsigned r = common_rank(f.geometry(), g.geometry());
    const GridFunction a = f.refined(r), b = g.refined(r);
    std::vector<Rational> v(a.values().size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
    return GridFunction(a.geometry(), std::move(v));
}

FiberVector relative_norm_sq(const GridFunction& f) { return conditional_expectation(product(f, f)); }

Rational l2_norm_sq(const GridFunction& f) {
    const auto& g = f.geometry();
    Rational total = 0;
    for (std::uint32_t i = 0; i < g.cell_count(); ++i) total += g.cell_measure(g.cell(i).row) * f[i] * f[i];
    return total;
}

CauchySchwarzReport cauchy_schwarz_check(const GridFunction& f, const GridFunction& g) {
    const unsigned rank = common_rank(f.geometry(), g.geometry());
    const GridFunction a = f.refined(rank), b = g.refined(rank);
    const FiberVector ff = relative_norm_sq(a), gg = relative_norm_sq(b);
    const FiberVector fg = conditional_expectation(product(a, b));

    CauchySchwarzReport report;
    report.holds = true;
    for (std::size_t x = 0; x < ff.values.size(); ++x) {
        report.column_margins.push_back(ff.values[x] * gg.values[x] - fg.values[x] * fg.values[x]);
        if (report.column_margins.back() < 0) report.holds = false;
    }
    const Rational sup_f = *std::max_element(ff.values.begin(), ff.values.end());
    report.module_margin = sup_f * l2_norm_sq(b) - fg.norm_sq();
    if (report.module_margin < 0) report.holds = false;

    // ‖E(g²|X)^{1/2}‖² = Σ_x E(g²|X)(x) / columns, without taking roots.
    report.fubini_lhs = 0;
    for (const auto& v : gg.values) report.fubini_lhs += v;
    report.fubini_lhs /= static_cast<unsigned long>(gg.values.size());
    report.fubini_rhs = l2_norm_sq(b);
    if (report.fubini_lhs != report.fubini_rhs) report.holds = false;
    return report;
}

namespace {

struct Aligned {
    CellPermutation t;
    GridFunction f;
    GridFunction g;
};

Aligned align(const CellPermutation& t, const GridFunction& f, const GridFunction& g) {
    const unsigned r = std::max(common_rank(t.geometry(), f.geometry()), common_rank(t.geometry(), g.geometry()));
    return {t.refined(r), f.refined(r), g.refined(r)};
}

// Deviation for a precomputed power tn = t^n (push-forward) or t^-n (pull-back);
// in both cases the function moves as f ∘ tn⁻¹ and the factor as v ∘ tn′⁻¹.
Rational deviation_for(const CellPermutation& mover, const GridFunction& f, const GridFunction& g,
                       const FiberVector& ef, const FiberVector& eg) {
    const auto& geo = f.geometry();
    const CellPermutation back = inverse(mover);
    const IntervalPermutation back_base = project_to_base(back);
    std::vector<Rational> moved(geo.cell_count());
    for (std::uint32_t z = 0; z < geo.cell_count(); ++z) moved[z] = f[back(z)] * g[z];
    const FiberVector e = conditional_expectation(GridFunction(geo, std::move(moved)));
    FiberVector diff{std::vector<Rational>(geo.columns())};
    for (std::uint32_t x = 0; x < geo.columns(); ++x) diff.values[x] = e.values[x] - ef.values[back_base(x)] * eg.values[x];
    return diff.norm_sq();
}

void require_extension(const CellPermutation& t) {
    if (!is_column_preserving(t)) throw PreconditionError("mixing statistics need a column-preserving permutation");
}

}  // namespace

Rational mixing_deviation_sq(const CellPermutation& t, const GridFunction& f, const GridFunction& g, std::int64_t n,
                             KoopmanConvention convention) {
    require_extension(t);
    const Aligned a = align(t, f, g);
    const std::int64_t e = convention == KoopmanConvention::push_forward ? n : -n;
    return deviation_for(power(a.t, e), a.f, a.g, conditional_expectation(a.f), conditional_expectation(a.g));
}

DeviationSequence cesaro_sequence(const CellPermutation& t, const GridFunction& f, const GridFunction& g,
                                  std::uint32_t count, KoopmanConvention convention) {
    require_extension(t);
    const Aligned a = align(t, f, g);
    const FiberVector ef = conditional_expectation(a.f), eg = conditional_expectation(a.g);
    const CellPermutation step = convention == KoopmanConvention::push_forward ? a.t : inverse(a.t);

    DeviationSequence seq;
    CellPermutation mover = CellPermutation::identity(a.t.geometry());
    double running = 0;
    for (std::uint32_t n = 0; n < count; ++n) {
        Rational term = deviation_for(mover, a.f, a.g, ef, eg);
        seq.terms.push_back(sqrt_to_double(term));
        running += seq.terms.back();
        seq.cesaro.push_back(running / (n + 1));
        if (n == 0 || term < seq.min_term_sq) seq.min_term_sq = term;
        seq.terms_sq.push_back(std::move(term));
        mover = compose(step, mover);
    }
    return seq;
}

GridFunction weak_mixing_witness(const std::vector<Rational>& weights) {
    if (weights.size() < 2) throw PreconditionError("the witness needs at least two levels");
    return weak_mixing_witness(GridGeometry::discrete(0, weights));
}

GridFunction weak_mixing_witness(const GridGeometry& geometry) {
    if (geometry.rows() < 2) throw PreconditionError("the witness needs at least two levels");
    Rational rest = 0;
    for (std::uint32_t i = 1; i < geometry.rows(); ++i) rest += geometry.weight(i);
    const Rational bottom = -rest / geometry.weight(0);
    std::vector<Rational> v(geometry.cell_count(), 1);
    for (std::uint32_t c = 0; c < geometry.columns(); ++c) v[geometry.index({c, 0})] = bottom;
    return GridFunction(geometry, std::move(v));
}

Rational witness_lower_bound(const std::vector<Rational>& weights) {
    if (weights.size() > kWitnessLevelLimit)
        throw TooLarge("witness_lower_bound enumerates at most " + std::to_string(kWitnessLevelLimit) + " levels");
    const GridFunction f = weak_mixing_witness(weights);
    const auto& v = f.values();
    std::vector<std::size_t> sigma(weights.size());
    std::iota(sigma.begin(), sigma.end(), 0);
    bool first = true;
    Rational best;
    do {
        Rational s = 0;
        for (std::size_t j = 0; j < sigma.size(); ++j) s += weights[j] * v[j] * v[sigma[j]];
        s = abs(s);
        if (first || s < best) best = s;
        first = false;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best;
}

GridFunction half_square_indicator(unsigned rank) {
    if (rank == 0) throw PreconditionError("the lower half is not a union of rank-0 cells");
    const GridGeometry g = GridGeometry::square(rank);
    std::vector<Rational> v(g.cell_count(), 0);
    for (std::uint32_t r = 0; r < g.rows() / 2; ++r)
        for (std::uint32_t c = 0; c < g.columns(); ++c) v[g.index({c, r})] = 1;
    return GridFunction(g, std::move(v));
}

Rational strong_mixing_statistic_sq(const CellPermutation& t, std::int64_t k, KoopmanConvention convention) {
    if (!t.geometry().is_square()) throw PreconditionError("the strong mixing statistic needs a square grid");
    if (t.geometry().rank() == 0) throw PreconditionError("the lower half is not a union of rank-0 cells");
    const GridFunction chi = half_square_indicator(t.geometry().rank());
    return mixing_deviation_sq(t, chi, chi, k, convention);
}

}  // namespace dyext
