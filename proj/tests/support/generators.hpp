#pragma once

#include <cstdint>
#include <numeric>
#include <string_view>
#include <vector>

#include "dyext/io.hpp"
#include "dyext/permutation.hpp"
#include "dyext/random.hpp"

namespace gen {

using dyext::Rational;

/// The five-cycle worked example on the rank-2 square and its factor (1 3).
inline constexpr std::string_view kExampleP =
    "rank=2 rows=4 kind=square\n(1 11 5 3)(13 15)(9 7)(2 6 14)(4 16 12 8)\n";

inline dyext::CellPermutation example_p() { return dyext::parse_permutation(kExampleP); }

inline Rational random_rational(dyext::Rng& rng, std::int64_t span = 20, std::uint64_t max_den = 12) {
    const auto num = static_cast<std::int64_t>(rng.below(2 * span + 1)) - span;
    const auto den = static_cast<std::int64_t>(rng.below(max_den)) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline dyext::GridFunction random_function(const dyext::GridGeometry& g, dyext::Rng& rng) {
    std::vector<Rational> v(g.cell_count());
    for (auto& x : v) x = random_rational(rng);
    return dyext::GridFunction(g, std::move(v));
}

inline dyext::DyadicSet random_set(const dyext::GridGeometry& g, dyext::Rng& rng) {
    dyext::DyadicSet s(g);
    for (std::uint32_t i = 0; i < g.cell_count(); ++i)
        if (rng.below(2)) s.insert(i);
    return s;
}

/// Column-preserving permutation whose factor is a single 2^rank-cycle.
inline dyext::CellPermutation random_cyclic_extension(unsigned rank, std::uint64_t seed) {
    const auto base = dyext::random_cyclic(rank, seed);
    return dyext::random_extension(base, dyext::GridGeometry::square(rank), dyext::mix_seed(seed));
}

/// Column-preserving permutation whose factor cycles all have length n.
inline dyext::CellPermutation random_periodic_extension(unsigned rank, std::uint32_t n, std::uint64_t seed) {
    dyext::Rng rng(seed);
    const std::uint32_t cols = std::uint32_t{1} << rank;
    std::vector<std::uint32_t> order(cols);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(std::span<std::uint32_t>(order));
    std::vector<std::uint32_t> image(cols);
    for (std::uint32_t start = 0; start < cols; start += n)
        for (std::uint32_t j = 0; j < n; ++j) image[order[start + j]] = order[start + (j + 1) % n];
    return dyext::random_extension(dyext::IntervalPermutation(rank, std::move(image)),
                                   dyext::GridGeometry::square(rank), dyext::mix_seed(seed + 1));
}

/// Transposition of two cells.
inline dyext::CellPermutation swap_cells(const dyext::GridGeometry& g, std::uint32_t a, std::uint32_t b) {
    std::vector<std::uint32_t> image(g.cell_count());
    std::iota(image.begin(), image.end(), 0u);
    std::swap(image[a], image[b]);
    return dyext::CellPermutation(g, std::move(image));
}

}  // namespace gen
