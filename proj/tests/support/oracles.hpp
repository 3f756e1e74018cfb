#pragma once

// Independent reference computations. Each works from points and plain loops
// rather than the library's refinement and bitmap machinery.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <set>
#include <vector>

#include "dyext/mixing.hpp"
#include "dyext/permutation.hpp"

namespace oracle {

using dyext::Rational;

/// A point of the grid's parameter space: x in [0,1) and a fiber coordinate
/// (height in [0,1) on the square, a level index on discrete grids).
struct Point {
    Rational x;
    Rational y;  // height, or level index for discrete grids
};

inline Rational pow2(unsigned k) { return Rational(mpz_class(1) << k); }

/// Center of each cell of `g` refined by `extra` ranks, with its measure.
inline std::vector<std::pair<Point, Rational>> sample_points(const dyext::GridGeometry& g, unsigned extra) {
    std::vector<std::pair<Point, Rational>> out;
    const Rational cols = pow2(g.rank() + extra);
    const std::uint64_t ncols = std::uint64_t{1} << (g.rank() + extra);
    if (g.is_square()) {
        for (std::uint64_t j = 0; j < ncols; ++j)
            for (std::uint64_t i = 0; i < ncols; ++i) {
                Rational x = (Rational(i) + Rational(1, 2)) / cols;
                Rational y = (Rational(j) + Rational(1, 2)) / cols;
                x.canonicalize();
                y.canonicalize();
                out.push_back({{x, y}, 1 / (cols * cols)});
            }
    } else {
        for (std::uint32_t level = 0; level < g.rows(); ++level)
            for (std::uint64_t i = 0; i < ncols; ++i) {
                Rational x = (Rational(i) + Rational(1, 2)) / cols;
                x.canonicalize();
                out.push_back({{x, Rational(level)}, g.weight(level) / cols});
            }
    }
    return out;
}

inline std::uint32_t floor_scaled(const Rational& v, unsigned rank) {
    const Rational s = v * pow2(rank);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
    return static_cast<std::uint32_t>(q.get_ui());
}

/// Cell of `g` containing the point.
inline dyext::Cell locate(const dyext::GridGeometry& g, const Point& p) {
    const std::uint32_t col = floor_scaled(p.x, g.rank());
    const std::uint32_t row = g.is_square() ? floor_scaled(p.y, g.rank()) : static_cast<std::uint32_t>(p.y.get_num().get_ui());
    return {col, row};
}

/// Image of a point under a cell permutation (translation of cells).
inline Point apply(const dyext::CellPermutation& t, const Point& p) {
    const auto& g = t.geometry();
    const dyext::Cell c = locate(g, p);
    const dyext::Cell d = t(c);
    const Rational w = 1 / pow2(g.rank());
    Point q;
    q.x = p.x + (Rational(d.column) - Rational(c.column)) * w;
    q.y = g.is_square() ? p.y + (Rational(d.row) - Rational(c.row)) * w : Rational(d.row);
    q.x.canonicalize();
    q.y.canonicalize();
    return q;
}

inline bool contains(const dyext::DyadicSet& s, const Point& p) { return s.contains(locate(s.geometry(), p)); }

inline bool same_point(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

inline unsigned finest(const dyext::GridGeometry& a, const dyext::GridGeometry& b) { return std::max(a.rank(), b.rank()); }

/// μ(a △ b) by sampling the centers of the common refinement.
inline Rational symmetric_difference(const dyext::DyadicSet& a, const dyext::DyadicSet& b) {
    const unsigned r = finest(a.geometry(), b.geometry());
    Rational total = 0;
    for (const auto& [p, m] : sample_points(a.geometry(), r - a.geometry().rank()))
        if (contains(a, p) != contains(b, p)) total += m;
    return total;
}

inline Rational measure(const dyext::DyadicSet& s) {
    Rational total = 0;
    for (const auto& [p, m] : sample_points(s.geometry(), 0))
        if (contains(s, p)) total += m;
    return total;
}

/// μ(aE △ bE): a point is in aE iff its preimage under a lies in E.
inline Rational image_deviation(const dyext::CellPermutation& a, const dyext::CellPermutation& b,
                                const dyext::DyadicSet& e) {
    const dyext::CellPermutation ai = dyext::inverse(a), bi = dyext::inverse(b);
    const unsigned r = std::max(finest(a.geometry(), b.geometry()), e.geometry().rank());
    Rational total = 0;
    for (const auto& [p, m] : sample_points(e.geometry(), r - e.geometry().rank()))
        if (contains(e, apply(ai, p)) != contains(e, apply(bi, p))) total += m;
    return total;
}

/// d′ by point sampling.
inline Rational dprime(const dyext::CellPermutation& s, const dyext::CellPermutation& t) {
    const unsigned r = finest(s.geometry(), t.geometry());
    Rational total = 0;
    for (const auto& [p, m] : sample_points(s.geometry(), r - s.geometry().rank()))
        if (!same_point(apply(s, p), apply(t, p))) total += m;
    return total;
}

/// Composition a ∘ b as a point map checked on every sample.
inline bool composes_to(const dyext::CellPermutation& a, const dyext::CellPermutation& b,
                        const dyext::CellPermutation& c) {
    const unsigned r = std::max({a.geometry().rank(), b.geometry().rank(), c.geometry().rank()});
    for (const auto& [p, m] : sample_points(c.geometry(), r - c.geometry().rank()))
        if (!same_point(apply(a, apply(b, p)), apply(c, p))) return false;
    return true;
}

/// Cycle lengths by naive orbit following.
inline std::multiset<std::size_t> cycle_lengths(std::span<const std::uint32_t> image) {
    std::multiset<std::size_t> out;
    std::vector<bool> seen(image.size(), false);
    for (std::uint32_t s = 0; s < image.size(); ++s) {
        if (seen[s]) continue;
        std::size_t len = 0;
        std::uint32_t x = s;
        do {
            seen[x] = true;
            x = image[x];
            ++len;
        } while (x != s);
        out.insert(len);
    }
    return out;
}

/// Naive iterate t^n by repeated application (n ≥ 0).
inline std::vector<std::uint32_t> iterate(const dyext::CellPermutation& t, std::uint64_t n) {
    std::vector<std::uint32_t> out(t.image().size());
    for (std::uint32_t z = 0; z < out.size(); ++z) {
        std::uint32_t x = z;
        for (std::uint64_t i = 0; i < n; ++i) x = t(x);
        out[z] = x;
    }
    return out;
}

/// Brute-force d over all subsets, accumulating rational cell measures.
inline Rational d_bruteforce(const dyext::CellPermutation& s, const dyext::CellPermutation& t) {
    const unsigned r = finest(s.geometry(), t.geometry());
    const auto a = s.refined(r), b = t.refined(r);
    const auto& g = a.geometry();
    const std::uint32_t n = g.cell_count();
    Rational best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::set<std::uint32_t> sa, tb;
        for (std::uint32_t z = 0; z < n; ++z)
            if (mask >> z & 1) {
                sa.insert(a(z));
                tb.insert(b(z));
            }
        Rational m = 0;
        for (std::uint32_t z = 0; z < n; ++z)
            if (sa.count(z) != tb.count(z)) m += g.cell_measure(g.cell(z).row);
        best = std::max(best, m);
    }
    return best;
}

/// Fiber average Σ_i w_i f(x, i) read from point samples of one column.
inline std::vector<Rational> fiber_average(const dyext::GridFunction& f) {
    const auto& g = f.geometry();
    std::vector<Rational> out(g.columns(), 0);
    for (const auto& [p, m] : sample_points(g, 0)) {
        const dyext::Cell c = locate(g, p);
        out[c.column] += m * g.columns() * f.at(c);
    }
    return out;
}

/// ‖E(T^n f · g|X) − E(f|X)∘(T′)^{-n} · E(g|X)‖² with T^n f = f ∘ t^{-n},
/// computed from naive iterates of t⁻¹.
inline Rational mixing_deviation_sq(const dyext::CellPermutation& t, const dyext::GridFunction& f,
                                    const dyext::GridFunction& g, std::uint64_t n) {
    const auto& geo = t.geometry();
    const auto back = iterate(dyext::inverse(t), n);
    std::vector<Rational> moved(geo.cell_count());
    for (std::uint32_t z = 0; z < geo.cell_count(); ++z) moved[z] = f[back[z]] * g[z];
    const auto e = fiber_average(dyext::GridFunction(geo, moved));
    const auto ef = fiber_average(f), eg = fiber_average(g);
    Rational total = 0;
    for (std::uint32_t x = 0; x < geo.columns(); ++x) {
        const std::uint32_t from = geo.cell(back[geo.index({x, 0})]).column;
        const Rational d = e[x] - ef[from] * eg[x];
        total += d * d;
    }
    return total / geo.columns();
}

}  // namespace oracle
