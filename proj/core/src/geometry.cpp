#include "dyext/geometry.hpp"

#include <atomic>
#include <string>

#include "dyext/errors.hpp"

namespace dyext {

namespace {
std::atomic<unsigned> g_rank_cap{12};
}

unsigned rank_cap() noexcept { return g_rank_cap.load(std::memory_order_relaxed); }
void set_rank_cap(unsigned cap) noexcept { g_rank_cap.store(cap, std::memory_order_relaxed); }

void check_rank(unsigned rank) {
    if (rank > rank_cap())
        throw RankError("rank " + std::to_string(rank) + " exceeds the rank cap " + std::to_string(rank_cap()));
}

GridGeometry GridGeometry::square(unsigned rank) {
    check_rank(rank);
    const std::uint32_t rows = std::uint32_t{1} << rank;
    return GridGeometry(GridKind::square, rank, std::vector<Rational>(rows, Rational(1, rows)));
}

GridGeometry GridGeometry::discrete(unsigned rank, std::vector<Rational> weights) {
    check_rank(rank);
    if (weights.empty()) throw PreconditionError("discrete grid needs at least one level");
    Rational total = 0;
    for (auto& w : weights) {
        w.canonicalize();
        if (w <= 0) throw PreconditionError("level weights must be positive");
        total += w;
    }
    if (total != 1) throw PreconditionError("level weights sum to " + to_string(total) + ", not 1");
    return GridGeometry(GridKind::discrete, rank, std::move(weights));
}

GridGeometry GridGeometry::discrete_uniform(unsigned rank, unsigned levels) {
    if (levels == 0) throw PreconditionError("discrete grid needs at least one level");
    return discrete(rank, std::vector<Rational>(levels, Rational(1, levels)));
}

bool GridGeometry::uniform_weights() const {
    for (const auto& w : weights_)
        if (w != weights_.front()) return false;
    return true;
}

Rational GridGeometry::cell_measure(std::uint32_t row) const {
    Rational m = weights_[row] / columns();
    return m;
}

Rational GridGeometry::column_measure() const { return Rational(1, columns()); }

GridGeometry GridGeometry::refined(unsigned target_rank) const {
    if (target_rank < rank_)
        throw RankError("cannot refine rank " + std::to_string(rank_) + " down to " + std::to_string(target_rank));
    if (target_rank == rank_) return *this;
    if (is_square()) return square(target_rank);
    check_rank(target_rank);
    return GridGeometry(kind_, target_rank, weights_);
}

bool GridGeometry::compatible(const GridGeometry& other) const {
    if (kind_ != other.kind_) return false;
    return is_square() || weights_ == other.weights_;
}

unsigned common_rank(const GridGeometry& a, const GridGeometry& b) {
    if (!a.compatible(b)) throw GeometryError("geometries are not refinements of a common grid");
    return std::max(a.rank(), b.rank());
}

std::uint32_t coarsen_index(const GridGeometry& fine, std::uint32_t index, const GridGeometry& coarse) {
    const unsigned d = fine.rank() - coarse.rank();
    const Cell c = fine.cell(index);
    const std::uint32_t row = fine.is_square() ? (c.row >> d) : c.row;
    return coarse.index({c.column >> d, row});
}

}  // namespace dyext
