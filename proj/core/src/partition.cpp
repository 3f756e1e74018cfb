#include "dyext/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dyext/errors.hpp"

namespace dyext {

Partition::Partition(std::vector<DyadicSet> blocks) {
    if (blocks.empty()) throw PreconditionError("a partition needs at least one block");
    unsigned rank = blocks.front().geometry().rank();
    for (const auto& b : blocks) rank = std::max(rank, common_rank(blocks.front().geometry(), b.geometry()));
    blocks_.reserve(blocks.size());
    for (auto& b : blocks) blocks_.push_back(b.refined(rank));

    const auto& g = blocks_.front().geometry();
    std::vector<std::uint8_t> hits(g.cell_count(), 0);
    for (const auto& b : blocks_)
        for (auto c : b.cells())
            if (++hits[c] > 1) throw PreconditionError("partition blocks overlap");
    if (std::find(hits.begin(), hits.end(), 0) != hits.end())
        throw PreconditionError("partition blocks do not cover the grid");
}

Partition Partition::refined(unsigned target_rank) const {
    std::vector<DyadicSet> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(b.refined(target_rank));
    return Partition(std::move(out));
}

namespace {

bool is_whole_multiple(const Rational& value, const Rational& unit, mpz_class& count) {
    const Rational q = value / unit;
    if (q.get_den() != 1) return false;
    count = q.get_num();
    return true;
}

}  // namespace

Partition partition_match(const Partition& blocks, std::span<const DyadicRational> targets, const Rational& delta) {
    if (targets.size() != blocks.size())
        throw PreconditionError("partition_match: expected " + std::to_string(blocks.size()) + " targets");
    if (delta <= 0) throw PreconditionError("partition_match: delta must be positive");
    if (!blocks.geometry().uniform_weights())
        throw GeometryError("partition_match requires equal level weights");

    Rational total = 0;
    for (const auto& t : targets) {
        if (t.sign() < 0) throw PreconditionError("partition_match: negative target");
        total += t.to_rational();
    }
    if (total != 1) throw PreconditionError("partition_match: targets sum to " + to_string(total));
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Rational gap = abs(blocks[i].measure() - targets[i].to_rational());
        if (gap >= delta)
            throw PreconditionError("partition_match: block " + std::to_string(i) + " is " + to_string(gap) +
                                    " from its target, not below delta");
    }

    // Smallest working rank at which every target is a whole number of cells.
    unsigned rank = blocks.geometry().rank();
    std::vector<mpz_class> wanted(targets.size());
    for (;; ++rank) {
        if (rank > rank_cap()) throw RankError("partition_match: targets not representable up to the rank cap");
        const GridGeometry g = blocks.geometry().refined(rank);
        const Rational unit = g.cell_measure(0);
        bool ok = true;
        for (std::size_t i = 0; i < targets.size() && ok; ++i) ok = is_whole_multiple(targets[i], unit, wanted[i]);
        if (ok) break;
    }

    const Partition work = blocks.refined(rank);
    std::vector<std::vector<std::uint32_t>> members(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) members[i] = work[i].cells();

    std::vector<std::uint32_t> pool;
    for (std::size_t i = 0; i < work.size(); ++i) {
        auto& m = members[i];
        while (mpz_class(static_cast<unsigned long>(m.size())) > wanted[i]) {
            pool.push_back(m.back());
            m.pop_back();
        }
    }
    std::sort(pool.begin(), pool.end());
    std::size_t next = 0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        auto& m = members[i];
        while (mpz_class(static_cast<unsigned long>(m.size())) < wanted[i]) m.push_back(pool.at(next++));
    }

    std::vector<DyadicSet> out;
    out.reserve(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) out.emplace_back(work.geometry(), members[i]);
    Partition result(std::move(out));

    for (std::size_t i = 0; i < result.size(); ++i) {
        if (result[i].measure() != targets[i].to_rational())
            throw std::logic_error("partition_match: target not met");
        if (symmetric_difference_measure(blocks[i], result[i]) >= 2 * delta)
            throw std::logic_error("partition_match: 2·delta bound violated");
    }
    return result;
}

Partition column_partition_match(const Partition& blocks, const Partition& approx,
                                 const std::vector<std::vector<DyadicRational>>& column_targets,
                                 const Rational& epsilon) {
    const GridGeometry& ga = approx.geometry();
    if (!ga.is_square() || !blocks.geometry().is_square())
        throw GeometryError("column_partition_match works on the unit square");
    if (blocks.size() != approx.size()) throw PreconditionError("column_partition_match: block counts differ");
    if (epsilon <= 0) throw PreconditionError("column_partition_match: epsilon must be positive");

    const std::size_t n = blocks.size();
    const unsigned K = ga.rank();
    const std::uint32_t columns = ga.columns();
    if (column_targets.size() != n) throw PreconditionError("column_partition_match: target matrix has wrong height");
    for (const auto& row : column_targets)
        if (row.size() != columns) throw PreconditionError("column_partition_match: target matrix has wrong width");

    const Rational column_mass = ga.column_measure();
    const Rational tolerance = epsilon / columns;
    for (std::uint32_t j = 0; j < columns; ++j) {
        Rational sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (column_targets[i][j].sign() < 0) throw PreconditionError("column_partition_match: negative target");
            sum += column_targets[i][j].to_rational();
        }
        if (sum != column_mass)
            throw PreconditionError("column_partition_match: targets of column " + std::to_string(j) + " sum to " +
                                    to_string(sum));
    }
    const unsigned cmp_rank = common_rank(blocks.geometry(), ga);
    const Partition e_fine = blocks.refined(cmp_rank);
    const std::uint32_t sub = std::uint32_t{1} << (cmp_rank - K);
    for (std::size_t i = 0; i < n; ++i) {
        if (symmetric_difference_measure(blocks[i], approx[i]) >= epsilon)
            throw PreconditionError("column_partition_match: approximation of block " + std::to_string(i) +
                                    " is not within epsilon");
        for (std::uint32_t j = 0; j < columns; ++j) {
            Rational m = 0;
            for (std::uint32_t s = 0; s < sub; ++s) m += e_fine[i].column_measure(j * sub + s);
            if (abs(m - column_targets[i][j].to_rational()) >= tolerance)
                throw PreconditionError("column_partition_match: block " + std::to_string(i) + " column " +
                                        std::to_string(j) + " mass is not within epsilon/2^K of its target");
        }
    }

    // Row rank at which every target is a whole number of strips (rank-K
    // column × one row of height 2^-rank).
    unsigned rank = K;
    for (;; ++rank) {
        if (rank > rank_cap()) throw RankError("column_partition_match: targets not representable up to the rank cap");
        const Rational strip = column_mass / (mpz_class(1) << rank);
        bool ok = true;
        mpz_class unused;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::uint32_t j = 0; j < columns && ok; ++j) ok = is_whole_multiple(column_targets[i][j], strip, unused);
        if (ok) break;
    }
    const Rational strip = column_mass / (mpz_class(1) << rank);
    const std::uint32_t strips = std::uint32_t{1} << rank;
    const std::uint32_t per_row = std::uint32_t{1} << (rank - K);  // fine rows per rank-K row

    // owner[j][s]: block holding strip s of column j.
    std::vector<std::vector<std::size_t>> owner(columns, std::vector<std::size_t>(strips, n));
    for (std::size_t i = 0; i < n; ++i)
        for (auto c : approx[i].cells()) {
            const Cell cell = ga.cell(c);
            for (std::uint32_t s = 0; s < per_row; ++s) owner[cell.column][cell.row * per_row + s] = i;
        }

    for (std::uint32_t j = 0; j < columns; ++j) {
        std::vector<std::vector<std::uint32_t>> held(n);
        for (std::uint32_t s = 0; s < strips; ++s) held[owner[j][s]].push_back(s);
        std::vector<std::size_t> wanted(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Rational q = column_targets[i][j].to_rational() / strip;
            wanted[i] = q.get_num().get_ui();
        }
        std::vector<std::uint32_t> pool;
        for (std::size_t i = 0; i < n; ++i)
            while (held[i].size() > wanted[i]) {
                pool.push_back(held[i].back());
                held[i].pop_back();
            }
        std::sort(pool.begin(), pool.end());
        std::size_t next = 0;
        for (std::size_t i = 0; i < n; ++i)
            while (held[i].size() < wanted[i]) {
                const std::uint32_t s = pool.at(next++);
                held[i].push_back(s);
                owner[j][s] = i;
            }
    }

    const GridGeometry g = GridGeometry::square(rank);
    const std::uint32_t sub_cols = std::uint32_t{1} << (rank - K);
    std::vector<std::vector<std::uint32_t>> members(n);
    for (std::uint32_t j = 0; j < columns; ++j)
        for (std::uint32_t s = 0; s < strips; ++s)
            for (std::uint32_t a = 0; a < sub_cols; ++a) members[owner[j][s]].push_back(g.index({j * sub_cols + a, s}));
    std::vector<DyadicSet> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(g, members[i]);
    Partition result(std::move(out));

    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < columns; ++j) {
            Rational m = 0;
            for (std::uint32_t a = 0; a < sub_cols; ++a) m += result[i].column_measure(j * sub_cols + a);
            if (m != column_targets[i][j].to_rational()) throw std::logic_error("column_partition_match: target not met");
        }
        if (symmetric_difference_measure(blocks[i], result[i]) >= 3 * epsilon)
            throw std::logic_error("column_partition_match: 3·epsilon bound violated");
    }
    return result;
}

}  // namespace dyext
