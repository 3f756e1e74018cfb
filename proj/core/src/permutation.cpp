#include "dyext/permutation.hpp"

#include <map>
#include <numeric>
#include <string>

#include "dyext/errors.hpp"
#include "dyext/random.hpp"

namespace dyext {

namespace {

void require_bijection(const std::vector<std::uint32_t>& image, const char* what) {
    std::vector<bool> seen(image.size(), false);
    for (auto y : image) {
        if (y >= image.size() || seen[y]) throw PreconditionError(std::string(what) + ": image is not a bijection");
        seen[y] = true;
    }
}

CycleDecomposition cycles_of(std::span<const std::uint32_t> image) {
    CycleDecomposition out;
    std::vector<bool> seen(image.size(), false);
    for (std::uint32_t start = 0; start < image.size(); ++start) {
        if (seen[start]) continue;
        std::vector<std::uint32_t> cycle;
        for (std::uint32_t x = start; !seen[x]; x = image[x]) {
            seen[x] = true;
            cycle.push_back(x);
        }
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

std::vector<std::uint32_t> inverse_of(std::span<const std::uint32_t> image) {
    std::vector<std::uint32_t> inv(image.size());
    for (std::uint32_t i = 0; i < image.size(); ++i) inv[image[i]] = i;
    return inv;
}

std::vector<std::uint32_t> power_of(std::span<const std::uint32_t> image, std::int64_t n) {
    std::vector<std::uint32_t> out(image.size());
    for (const auto& cycle : cycles_of(image).cycles) {
        const auto len = static_cast<std::int64_t>(cycle.size());
        const std::int64_t shift = ((n % len) + len) % len;
        for (std::int64_t i = 0; i < len; ++i) out[cycle[i]] = cycle[(i + shift) % len];
    }
    return out;
}

}  // namespace

std::uint64_t CycleDecomposition::period() const {
    std::uint64_t p = 1;
    for (const auto& c : cycles) p = std::lcm(p, static_cast<std::uint64_t>(c.size()));
    return p;
}

// --- IntervalPermutation -----------------------------------------------------

IntervalPermutation::IntervalPermutation(unsigned rank, std::vector<std::uint32_t> image)
    : rank_(rank), image_(std::move(image)) {
    check_rank(rank);
    if (image_.size() != (std::size_t{1} << rank)) throw PreconditionError("interval permutation has wrong length");
    require_bijection(image_, "interval permutation");
}

IntervalPermutation IntervalPermutation::identity(unsigned rank) {
    check_rank(rank);
    std::vector<std::uint32_t> image(std::size_t{1} << rank);
    std::iota(image.begin(), image.end(), 0u);
    return IntervalPermutation(rank, std::move(image));
}

IntervalPermutation IntervalPermutation::refined(unsigned target_rank) const {
    if (target_rank < rank_) throw RankError("cannot refine an interval permutation to a lower rank");
    check_rank(target_rank);
    const unsigned d = target_rank - rank_;
    std::vector<std::uint32_t> image(std::size_t{1} << target_rank);
    for (std::uint32_t x = 0; x < image.size(); ++x) {
        const std::uint32_t mask = (std::uint32_t{1} << d) - 1;
        image[x] = (image_[x >> d] << d) | (x & mask);
    }
    return IntervalPermutation(target_rank, std::move(image));
}

CycleDecomposition IntervalPermutation::cycles() const { return cycles_of(image_); }

IntervalPermutation compose(const IntervalPermutation& a, const IntervalPermutation& b) {
    const unsigned r = std::max(a.rank(), b.rank());
    const IntervalPermutation x = a.refined(r), y = b.refined(r);
    std::vector<std::uint32_t> image(y.size());
    for (std::uint32_t i = 0; i < image.size(); ++i) image[i] = x(y(i));
    return IntervalPermutation(r, std::move(image));
}

IntervalPermutation inverse(const IntervalPermutation& a) { return IntervalPermutation(a.rank(), inverse_of(a.image())); }

IntervalPermutation power(const IntervalPermutation& a, std::int64_t n) {
    return IntervalPermutation(a.rank(), power_of(a.image(), n));
}

// --- CellPermutation ---------------------------------------------------------

CellPermutation::CellPermutation(GridGeometry geometry, std::vector<std::uint32_t> image)
    : geometry_(std::move(geometry)), image_(std::move(image)) {
    if (image_.size() != geometry_.cell_count()) throw PreconditionError("cell permutation has wrong length");
    require_bijection(image_, "cell permutation");
    if (!geometry_.is_square() && !geometry_.uniform_weights()) {
        for (std::uint32_t i = 0; i < image_.size(); ++i)
            if (geometry_.weight(geometry_.cell(i).row) != geometry_.weight(geometry_.cell(image_[i]).row))
                throw PreconditionError("cell permutation moves a cell between levels of different weight");
    }
}

CellPermutation CellPermutation::identity(GridGeometry geometry) {
    std::vector<std::uint32_t> image(geometry.cell_count());
    std::iota(image.begin(), image.end(), 0u);
    return CellPermutation(std::move(geometry), std::move(image));
}

CellPermutation CellPermutation::refined(unsigned target_rank) const {
    if (target_rank == geometry_.rank()) return *this;
    const GridGeometry fine = geometry_.refined(target_rank);
    const unsigned d = target_rank - geometry_.rank();
    const std::uint32_t factor = fine.row_factor(d);
    const std::uint32_t mask = (std::uint32_t{1} << d) - 1;
    std::vector<std::uint32_t> image(fine.cell_count());
    for (std::uint32_t i = 0; i < image.size(); ++i) {
        const Cell c = fine.cell(i);
        const Cell coarse{c.column >> d, fine.is_square() ? (c.row >> d) : c.row};
        const Cell to = (*this)(coarse);
        const std::uint32_t row = fine.is_square() ? (to.row * factor + (c.row & mask)) : to.row;
        image[i] = fine.index({(to.column << d) | (c.column & mask), row});
    }
    return CellPermutation(fine, std::move(image));
}

CycleDecomposition CellPermutation::cycles() const { return cycles_of(image_); }

bool CellPermutation::is_identity() const {
    for (std::uint32_t i = 0; i < image_.size(); ++i)
        if (image_[i] != i) return false;
    return true;
}

DyadicSet CellPermutation::apply(const DyadicSet& set) const {
    const unsigned r = common_rank(geometry_, set.geometry());
    const CellPermutation p = refined(r);
    const DyadicSet s = set.refined(r);
    DyadicSet out(p.geometry());
    for (std::uint32_t i = 0; i < p.image_.size(); ++i)
        if (s.contains(i)) out.insert(p.image_[i]);
    return out;
}

CellPermutation compose(const CellPermutation& a, const CellPermutation& b) {
    const unsigned r = common_rank(a.geometry(), b.geometry());
    const CellPermutation x = a.refined(r), y = b.refined(r);
    std::vector<std::uint32_t> image(y.image().size());
    for (std::uint32_t i = 0; i < image.size(); ++i) image[i] = x(y(i));
    return CellPermutation(x.geometry(), std::move(image));
}

CellPermutation inverse(const CellPermutation& a) { return CellPermutation(a.geometry(), inverse_of(a.image())); }

CellPermutation power(const CellPermutation& a, std::int64_t n) {
    return CellPermutation(a.geometry(), power_of(a.image(), n));
}

IntervalPermutation project_to_base(const CellPermutation& q) {
    const auto& g = q.geometry();
    std::vector<std::uint32_t> base(g.columns());
    for (std::uint32_t c = 0; c < g.columns(); ++c) {
        const std::uint32_t first = g.index({c, 0});
        base[c] = g.cell(q(first)).column;
        for (std::uint32_t r = 1; r < g.rows(); ++r) {
            const std::uint32_t other = g.index({c, r});
            if (g.cell(q(other)).column != base[c])
                throw NotColumnPreserving(first, other,
                                          "cells " + std::to_string(first) + " and " + std::to_string(other) +
                                              " share a column but their images do not");
        }
    }
    return IntervalPermutation(g.rank(), std::move(base));
}

bool is_column_preserving(const CellPermutation& q) {
    try {
        (void)project_to_base(q);
        return true;
    } catch (const NotColumnPreserving&) {
        return false;
    }
}

CellPermutation lift(const IntervalPermutation& base, const GridGeometry& geometry) {
    if (base.rank() > geometry.rank()) throw RankError("lift: base is finer than the grid");
    const IntervalPermutation b = base.refined(geometry.rank());
    std::vector<std::uint32_t> image(geometry.cell_count());
    for (std::uint32_t i = 0; i < image.size(); ++i) {
        const Cell c = geometry.cell(i);
        image[i] = geometry.index({b(c.column), c.row});
    }
    return CellPermutation(geometry, std::move(image));
}

std::vector<std::uint32_t> fiber_action(const CellPermutation& t, std::int64_t n, std::uint32_t column) {
    const auto& g = t.geometry();
    if (column >= g.columns()) throw PreconditionError("fiber_action: column out of range");
    (void)project_to_base(t);
    const CellPermutation tn = power(t, n);
    std::vector<std::uint32_t> sigma(g.rows());
    for (std::uint32_t r = 0; r < g.rows(); ++r) sigma[r] = tn(Cell{column, r}).row;
    return sigma;
}

namespace {

// Groups of rows that share a weight; rows may only be exchanged inside a group.
std::vector<std::vector<std::uint32_t>> weight_classes(const GridGeometry& g) {
    std::map<Rational, std::vector<std::uint32_t>> by_weight;
    for (std::uint32_t r = 0; r < g.rows(); ++r) by_weight[g.weight(r)].push_back(r);
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& [w, rows] : by_weight) out.push_back(std::move(rows));
    return out;
}

std::vector<std::uint32_t> random_row_permutation(const std::vector<std::vector<std::uint32_t>>& classes,
                                                  std::uint32_t rows, Rng& rng) {
    std::vector<std::uint32_t> sigma(rows);
    for (const auto& cls : classes) {
        std::vector<std::uint32_t> shuffled = cls;
        rng.shuffle(std::span<std::uint32_t>(shuffled));
        for (std::size_t i = 0; i < cls.size(); ++i) sigma[cls[i]] = shuffled[i];
    }
    return sigma;
}

}  // namespace

CellPermutation random_extension(const IntervalPermutation& base, const GridGeometry& geometry, std::uint64_t seed) {
    if (base.rank() != geometry.rank()) throw GeometryError("random_extension: base rank differs from grid rank");
    Rng rng(seed);
    const auto classes = weight_classes(geometry);
    std::vector<std::uint32_t> image(geometry.cell_count());
    for (std::uint32_t c = 0; c < geometry.columns(); ++c) {
        const auto sigma = random_row_permutation(classes, geometry.rows(), rng);
        for (std::uint32_t r = 0; r < geometry.rows(); ++r)
            image[geometry.index({c, r})] = geometry.index({base(c), sigma[r]});
    }
    return CellPermutation(geometry, std::move(image));
}

CellPermutation random_column_preserving(const GridGeometry& geometry, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint32_t> base(geometry.columns());
    std::iota(base.begin(), base.end(), 0u);
    rng.shuffle(std::span<std::uint32_t>(base));
    return random_extension(IntervalPermutation(geometry.rank(), std::move(base)), geometry, mix_seed(seed ^ 0x5bd1e995ULL));
}

CellPermutation random_permutation(const GridGeometry& geometry, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint32_t> image(geometry.cell_count());
    for (const auto& cls : weight_classes(geometry)) {
        std::vector<std::uint32_t> cells;
        for (auto r : cls)
            for (std::uint32_t c = 0; c < geometry.columns(); ++c) cells.push_back(geometry.index({c, r}));
        std::vector<std::uint32_t> targets = cells;
        rng.shuffle(std::span<std::uint32_t>(targets));
        for (std::size_t i = 0; i < cells.size(); ++i) image[cells[i]] = targets[i];
    }
    return CellPermutation(geometry, std::move(image));
}

IntervalPermutation random_cyclic(unsigned rank, std::uint64_t seed) {
    check_rank(rank);
    Rng rng(seed);
    const std::uint32_t n = std::uint32_t{1} << rank;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(std::span<std::uint32_t>(order));
    std::vector<std::uint32_t> image(n);
    for (std::uint32_t i = 0; i < n; ++i) image[order[i]] = order[(i + 1) % n];
    return IntervalPermutation(rank, std::move(image));
}

}  // namespace dyext
