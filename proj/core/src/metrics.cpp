#include "dyext/metrics.hpp"

#include <bit>
#include <string>

#include "dyext/errors.hpp"

namespace dyext {

namespace {

std::pair<CellPermutation, CellPermutation> at_common_rank(const CellPermutation& s, const CellPermutation& t) {
    const unsigned r = common_rank(s.geometry(), t.geometry());
    return {s.refined(r), t.refined(r)};
}

}  // namespace

Rational metric_dprime(const CellPermutation& s, const CellPermutation& t) {
    const auto [a, b] = at_common_rank(s, t);
    const auto& g = a.geometry();
    Rational total = 0;
    for (std::uint32_t r = 0; r < g.rows(); ++r) {
        std::uint32_t count = 0;
        for (std::uint32_t c = 0; c < g.columns(); ++c) count += a(g.index({c, r})) != b(g.index({c, r}));
        if (count) total += g.cell_measure(r) * count;
    }
    return total;
}

Rational metric_d_bruteforce(const CellPermutation& s, const CellPermutation& t) {
    const auto [a, b] = at_common_rank(s, t);
    const auto& g = a.geometry();
    const std::uint32_t n = g.cell_count();
    if (n > kBruteForceCellLimit)
        throw TooLarge("brute-force d needs at most " + std::to_string(kBruteForceCellLimit) + " cells, got " +
                       std::to_string(n));

    // Integer cell measures over a common denominator.
    mpz_class den = 1;
    for (std::uint32_t r = 0; r < g.rows(); ++r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g.cell_measure(r).get_den_mpz_t());
    std::vector<std::uint32_t> row_mask(g.rows(), 0);
    std::vector<std::uint64_t> row_num(g.rows());
    for (std::uint32_t r = 0; r < g.rows(); ++r) {
        const Rational scaled = g.cell_measure(r) * den;
        row_num[r] = scaled.get_num().get_ui();
        for (std::uint32_t c = 0; c < g.columns(); ++c) row_mask[r] |= std::uint32_t{1} << g.index({c, r});
    }

    std::uint32_t s_mask = 0, t_mask = 0;
    std::uint64_t best = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t i = 1; i < subsets; ++i) {
        // Gray-code step: toggle one cell of E.
        const unsigned bit = static_cast<unsigned>(std::countr_zero(i));
        s_mask ^= std::uint32_t{1} << a(bit);
        t_mask ^= std::uint32_t{1} << b(bit);
        const std::uint32_t diff = s_mask ^ t_mask;
        std::uint64_t m = 0;
        for (std::uint32_t r = 0; r < g.rows(); ++r) m += row_num[r] * std::popcount(diff & row_mask[r]);
        best = std::max(best, m);
    }
    Rational d(mpz_class(static_cast<unsigned long>(best)), den);
    d.canonicalize();
    return d;
}

MetricBounds metric_d_bounds(const CellPermutation& s, const CellPermutation& t) {
    const auto [a, b] = at_common_rank(s, t);
    const auto& g = a.geometry();
    // Disagreement cells whose images avoid each other's images: then
    // aE and bE are disjoint and μ(aE △ bE) = 2μ(E).
    std::vector<bool> in_a(g.cell_count(), false), in_b(g.cell_count(), false);
    DyadicSet chosen(g);
    for (std::uint32_t z = 0; z < g.cell_count(); ++z) {
        if (a(z) == b(z) || in_b[a(z)] || in_a[b(z)]) continue;
        in_a[a(z)] = true;
        in_b[b(z)] = true;
        chosen.insert(z);
    }
    return {symmetric_difference_measure(a.apply(chosen), b.apply(chosen)), metric_dprime(a, b)};
}

NeighborhoodReport neighborhood_contains(const Neighborhood& nbhd, const CellPermutation& s) {
    if (nbhd.epsilon <= 0) throw PreconditionError("neighborhood epsilon must be positive");
    if (nbhd.sets.empty()) throw PreconditionError("neighborhood needs at least one set");
    NeighborhoodReport report;
    report.contains = true;
    for (const auto& e : nbhd.sets) {
        Rational dev = symmetric_difference_measure(nbhd.center.apply(e), s.apply(e));
        if (dev >= nbhd.epsilon) report.contains = false;
        report.deviations.push_back(std::move(dev));
    }
    return report;
}

std::vector<DyadicSet> dyadic_squares(const GridGeometry& family, unsigned rank) {
    const GridGeometry g = family.is_square() ? GridGeometry::square(rank) : GridGeometry::discrete(rank, family.weights());
    return all_cells(g);
}

std::vector<Rational> square_deviations(const CellPermutation& a, const CellPermutation& b, unsigned rank) {
    const auto [x, y] = at_common_rank(a, b);
    std::vector<Rational> out;
    for (const auto& d : dyadic_squares(x.geometry(), rank)) out.push_back(symmetric_difference_measure(x.apply(d), y.apply(d)));
    return out;
}

CellPermutation perturb_off_extension(const CellPermutation& t, const Rational& epsilon) {
    if (epsilon <= 0) throw PreconditionError("perturb_off_extension: epsilon must be positive");
    if (!is_column_preserving(t)) throw PreconditionError("perturb_off_extension: input is not column-preserving");
    if (t.geometry().rows() < 2 && !t.geometry().is_square())
        throw PreconditionError("perturb_off_extension: a single-level grid has no non-cylinder sets");

    std::uint32_t row = 0;
    const auto& w = t.geometry().weights();
    if (!t.geometry().is_square())
        for (std::uint32_t r = 1; r < w.size(); ++r)
            if (w[r] < w[row]) row = r;

    unsigned rank = std::max(t.geometry().rank(), 1u);
    for (;; ++rank) {
        if (rank > rank_cap()) throw RankError("perturb_off_extension: epsilon too small for the rank cap");
        const GridGeometry g = t.geometry().refined(rank);
        if (2 * g.cell_measure(row) < epsilon) break;
    }
    const CellPermutation fine = t.refined(rank);
    const auto& g = fine.geometry();
    std::vector<std::uint32_t> image(fine.image().begin(), fine.image().end());
    const std::uint32_t c1 = g.index({0, row}), c2 = g.index({1, row});
    std::swap(image[c1], image[c2]);
    return CellPermutation(g, std::move(image));
}

}  // namespace dyext
