#include "dyext/dyadic_set.hpp"

#include <algorithm>

#include "dyext/errors.hpp"

namespace dyext {

DyadicSet::DyadicSet(GridGeometry geometry)
    : geometry_(std::move(geometry)), bits_(geometry_.cell_count(), false) {}

DyadicSet::DyadicSet(GridGeometry geometry, const std::vector<std::uint32_t>& cells)
    : DyadicSet(std::move(geometry)) {
    for (auto c : cells) {
        if (c >= bits_.size()) throw PreconditionError("cell index out of range");
        bits_[c] = true;
    }
}

DyadicSet DyadicSet::full(GridGeometry geometry) {
    DyadicSet s(std::move(geometry));
    s.bits_.assign(s.bits_.size(), true);
    return s;
}

DyadicSet DyadicSet::cylinder(GridGeometry geometry, const std::vector<std::uint32_t>& columns) {
    DyadicSet s(std::move(geometry));
    const auto& g = s.geometry_;
    for (auto col : columns) {
        if (col >= g.columns()) throw PreconditionError("column index out of range");
        for (std::uint32_t r = 0; r < g.rows(); ++r) s.bits_[g.index({col, r})] = true;
    }
    return s;
}

std::size_t DyadicSet::size() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

std::vector<std::uint32_t> DyadicSet::cells() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(i);
    return out;
}

Rational DyadicSet::measure() const {
    const auto cols = geometry_.columns();
    Rational total = 0;
    for (std::uint32_t r = 0; r < geometry_.rows(); ++r) {
        std::uint32_t count = 0;
        for (std::uint32_t c = 0; c < cols; ++c) count += bits_[r * cols + c];
        if (count) total += geometry_.weight(r) * count;
    }
    total /= cols;
    return total;
}

Rational DyadicSet::column_measure(std::uint32_t column) const {
    Rational total = 0;
    for (std::uint32_t r = 0; r < geometry_.rows(); ++r)
        if (bits_[geometry_.index({column, r})]) total += geometry_.weight(r);
    total /= geometry_.columns();
    return total;
}

DyadicSet DyadicSet::refined(unsigned target_rank) const {
    if (target_rank == geometry_.rank()) return *this;
    DyadicSet out(geometry_.refined(target_rank));
    const auto& fine = out.geometry_;
    for (std::uint32_t i = 0; i < fine.cell_count(); ++i) out.bits_[i] = bits_[coarsen_index(fine, i, geometry_)];
    return out;
}

bool DyadicSet::is_cylinder() const {
    for (std::uint32_t c = 0; c < geometry_.columns(); ++c) {
        const bool first = bits_[c];
        for (std::uint32_t r = 1; r < geometry_.rows(); ++r)
            if (bits_[geometry_.index({c, r})] != first) return false;
    }
    return true;
}

DyadicSet DyadicSet::complement() const {
    DyadicSet out = *this;
    out.bits_.flip();
    return out;
}

namespace {

template <class Op>
DyadicSet combine(const DyadicSet& a, const DyadicSet& b, Op op) {
    const unsigned rank = common_rank(a.geometry(), b.geometry());
    const DyadicSet x = a.refined(rank);
    const DyadicSet y = b.refined(rank);
    DyadicSet out(x.geometry());
    for (std::uint32_t i = 0; i < x.geometry().cell_count(); ++i)
        if (op(x.contains(i), y.contains(i))) out.insert(i);
    return out;
}

}  // namespace

DyadicSet operator|(const DyadicSet& a, const DyadicSet& b) {
    return combine(a, b, [](bool x, bool y) { return x || y; });
}
DyadicSet operator&(const DyadicSet& a, const DyadicSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && y; });
}
DyadicSet operator-(const DyadicSet& a, const DyadicSet& b) {
    return combine(a, b, [](bool x, bool y) { return x && !y; });
}
DyadicSet operator^(const DyadicSet& a, const DyadicSet& b) {
    return combine(a, b, [](bool x, bool y) { return x != y; });
}

bool operator==(const DyadicSet& a, const DyadicSet& b) {
    const unsigned rank = common_rank(a.geometry(), b.geometry());
    if (a.geometry().rank() == rank && b.geometry().rank() == rank) return a.bits_ == b.bits_;
    return a.refined(rank).bits_ == b.refined(rank).bits_;
}

Rational symmetric_difference_measure(const DyadicSet& a, const DyadicSet& b) { return (a ^ b).measure(); }

std::vector<DyadicSet> all_cells(const GridGeometry& geometry) {
    std::vector<DyadicSet> out;
    out.reserve(geometry.cell_count());
    for (std::uint32_t i = 0; i < geometry.cell_count(); ++i) out.emplace_back(geometry, std::vector<std::uint32_t>{i});
    return out;
}

}  // namespace dyext
