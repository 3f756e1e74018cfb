#include "dyext/approx.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "dyext/errors.hpp"
#include "dyext/metrics.hpp"
#include "dyext/partition.hpp"

namespace dyext {

namespace {

IntervalPermutation base_or_throw(const CellPermutation& t, const char* who) {
    try {
        return project_to_base(t);
    } catch (const NotColumnPreserving& e) {
        throw PreconditionError(std::string(who) + ": input is not column-preserving (" + e.what() + ")");
    }
}

GridGeometry family_at(const GridGeometry& g, unsigned rank) {
    return g.is_square() ? GridGeometry::square(rank) : GridGeometry::discrete(rank, g.weights());
}

std::string cycles_text(const CycleDecomposition& d) {
    std::string out;
    for (const auto& c : d.cycles) {
        out += "(";
        for (std::size_t i = 0; i < c.size(); ++i) out += (i ? " " : "") + std::to_string(c[i] + 1);
        out += ")";
    }
    return out;
}

Rational max_of(const std::vector<Rational>& v) {
    Rational m = 0;
    for (const auto& x : v) m = std::max(m, x);
    return m;
}

// Cells of `set` over one column, ordered by level weight and then index, so
// that paired cells always have equal measure.
std::vector<std::uint32_t> column_cells(const DyadicSet& set, std::uint32_t column) {
    const auto& g = set.geometry();
    std::vector<std::uint32_t> out;
    for (std::uint32_t r = 0; r < g.rows(); ++r)
        if (set.contains(Cell{column, r})) out.push_back(g.index({column, r}));
    std::stable_sort(out.begin(), out.end(), [&](std::uint32_t a, std::uint32_t b) {
        return g.weight(g.cell(a).row) < g.weight(g.cell(b).row);
    });
    return out;
}

}  // namespace

ApproxResult approximate_by_column_permutation(const CellPermutation& t, unsigned nbhd_rank, const Rational& epsilon) {
    if (epsilon <= 0) throw PreconditionError("approximate: epsilon must be positive");
    (void)base_or_throw(t, "approximate");

    const unsigned w = std::max(t.geometry().rank(), nbhd_rank);
    check_rank(w);
    const CellPermutation tw = t.refined(w);
    const GridGeometry& g = tw.geometry();
    const GridGeometry coarse = family_at(g, nbhd_rank);

    const IntervalPermutation base = project_to_base(tw);
    const CellPermutation lifted = lift(base, g);
    const CellPermutation fiber = compose(inverse(lifted), tw);  // extends the identity
    const CellPermutation fiber_inv = inverse(fiber);

    // D_ij = D_i ∩ t̃ D_j, keyed by (i, j).
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> cells_of;
    for (std::uint32_t z = 0; z < g.cell_count(); ++z) {
        const std::uint32_t i = coarsen_index(g, z, coarse);
        const std::uint32_t j = coarsen_index(g, fiber_inv(z), coarse);
        cells_of[{i, j}].push_back(z);
    }
    std::vector<DyadicSet> d_blocks, pre_blocks;
    for (const auto& [key, cells] : cells_of) {
        DyadicSet d(g, cells);
        pre_blocks.push_back(fiber_inv.apply(d));
        d_blocks.push_back(std::move(d));
    }
    Partition targets_side(d_blocks), source_side(pre_blocks);
    const std::size_t n = targets_side.size();

    if (g.uniform_weights() && is_dyadic(g.cell_measure(0))) {
        std::vector<DyadicRational> measures;
        for (const auto& b : targets_side.blocks()) measures.push_back(DyadicRational::from_rational(b.measure()));
        targets_side = partition_match(targets_side, measures, epsilon);
        source_side = partition_match(source_side, measures, epsilon);
    }
    if (g.is_square()) {
        std::vector<std::vector<DyadicRational>> column_targets(n, std::vector<DyadicRational>(g.columns()));
        for (std::size_t b = 0; b < n; ++b)
            for (std::uint32_t k = 0; k < g.columns(); ++k)
                column_targets[b][k] = DyadicRational::from_rational(targets_side[b].column_measure(k));
        targets_side = column_partition_match(targets_side, targets_side, column_targets, epsilon);
        source_side = column_partition_match(source_side, source_side, column_targets, epsilon);
    }
    if (targets_side.geometry() != g || source_side.geometry() != g)
        throw std::logic_error("approximate: matching changed the working rank");

    std::vector<std::uint32_t> image(g.cell_count(), g.cell_count());
    for (std::size_t b = 0; b < n; ++b)
        for (std::uint32_t k = 0; k < g.columns(); ++k) {
            const auto from = column_cells(source_side[b], k);
            const auto to = column_cells(targets_side[b], k);
            if (from.size() != to.size()) throw std::logic_error("approximate: column masses differ");
            for (std::size_t i = 0; i < from.size(); ++i) image[from[i]] = to[i];
        }
    const CellPermutation q_fiber(g, std::move(image));
    CellPermutation q = compose(lifted, q_fiber);

    ApproxResult result{q, w, n, square_deviations(t, q, nbhd_rank), {}};
    for (const auto& d : result.deviations)
        if (d >= epsilon) throw std::logic_error("approximate: deviation not below epsilon");

    result.trace.add("construction", "approx");
    result.trace.add("input_rank", t.geometry().rank());
    result.trace.add("nbhd_rank", nbhd_rank);
    result.trace.add("epsilon", epsilon);
    result.trace.add("working_rank", w);
    result.trace.add("base", cycles_text(base.cycles()));
    result.trace.add("blocks", n);
    result.trace.add("squares", result.deviations.size());
    result.trace.add("max_deviation", max_of(result.deviations));
    result.trace.add("column_preserving", is_column_preserving(q) ? "yes" : "no");
    return result;
}

WateResult wate_at_rank(const CellPermutation& p, unsigned k, bool cyclic) {
    if (!p.geometry().is_square()) throw PreconditionError("wate works on the unit square");
    const IntervalPermutation base = base_or_throw(p, "wate");
    const unsigned m = p.geometry().rank();
    if (k < m) throw RankError("wate: rank " + std::to_string(k) + " is below the input rank");
    check_rank(k);

    const unsigned s = k - m;
    const std::uint32_t sub = std::uint32_t{1} << s;
    const GridGeometry g = GridGeometry::square(k);
    const GridGeometry& gm = p.geometry();
    const CycleDecomposition cycles = base.cycles();

    std::vector<std::uint32_t> column_order;
    for (const auto& c : cycles.cycles)
        for (std::uint32_t a = 0; a < sub; ++a)
            for (auto x : c) column_order.push_back(x * sub + a);

    std::vector<std::uint32_t> image(g.cell_count(), g.cell_count());
    std::vector<std::uint32_t> pass_start(g.rows());
    std::vector<std::uint32_t> pass_end(g.rows());
    std::vector<std::uint32_t> pass;
    for (std::uint32_t row = 0; row < g.rows(); ++row) {
        const std::uint32_t e = row >> s;
        const std::uint32_t b = row & (sub - 1);
        pass.clear();
        for (const auto& c : cycles.cycles) {
            Cell at{c.front(), e};
            for (std::uint32_t a = 0; a < sub; ++a)
                for (std::size_t i = 0; i < c.size(); ++i) {
                    pass.push_back(g.index({at.column * sub + a, at.row * sub + b}));
                    at = gm.cell(p(gm.index(at)));
                }
        }
        for (std::size_t i = 0; i + 1 < pass.size(); ++i) image[pass[i]] = pass[i + 1];
        pass_start[row] = pass.front();
        pass_end[row] = pass.back();
    }
    for (std::uint32_t row = 0; row < g.rows(); ++row)
        image[pass_end[row]] = cyclic ? pass_start[(row + 1) % g.rows()] : pass_start[row];

    CellPermutation q(g, std::move(image));
    WateResult result{q, k, cycles.count(), Rational(2 * cycles.count(), 1) / (mpz_class(1) << k), {}, column_order, {}};
    result.bound.canonicalize();
    result.deviations = square_deviations(p, q, m);
    for (const auto& d : result.deviations)
        if (d > result.bound) throw std::logic_error("wate: deviation exceeds K/2^(k-1)");

    result.trace.add("construction", cyclic ? "wate-cyclic" : "wate");
    result.trace.add("input_rank", m);
    result.trace.add("k", k);
    result.trace.add("K", cycles.count());
    result.trace.add("cycle_order", cycles_text(cycles));
    result.trace.add("bound", result.bound);
    result.trace.add("max_deviation", max_of(result.deviations));
    for (std::size_t i = 0; i < result.deviations.size(); ++i)
        result.trace.add("deviation[" + std::to_string(i + 1) + "]", result.deviations[i]);
    return result;
}

WateResult wate(const CellPermutation& p, const Rational& epsilon, unsigned k0, bool cyclic) {
    if (epsilon <= 0) throw PreconditionError("wate: epsilon must be positive");
    if (k0 < 1) throw PreconditionError("wate: k0 must be at least 1");
    const std::size_t big_k = base_or_throw(p, "wate").cycles().count();
    for (unsigned k = std::max(p.geometry().rank(), k0);; ++k) {
        if (k > rank_cap())
            throw RankError("wate: K/2^(k-1) < epsilon needs a rank above the cap " + std::to_string(rank_cap()));
        const Rational bound = Rational(2 * big_k, 1) / (mpz_class(1) << k);
        if (bound < epsilon) {
            WateResult r = wate_at_rank(p, k, cyclic);
            r.trace.add("epsilon", epsilon);
            return r;
        }
    }
}

}  // namespace dyext
