#include "dyext/towers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dyext/approx.hpp"
#include "dyext/errors.hpp"
#include "dyext/metrics.hpp"
#include "dyext/random.hpp"

namespace dyext {

namespace {

IntervalPermutation factor_of(const CellPermutation& t, const char* who) {
    try {
        return project_to_base(t);
    } catch (const NotColumnPreserving& e) {
        throw PreconditionError(std::string(who) + ": input is not column-preserving (" + e.what() + ")");
    }
}

Tower build_tower(const CellPermutation& t, const IntervalPermutation& factor, std::vector<std::uint32_t> base_columns,
                  std::uint32_t n) {
    const GridGeometry& g = t.geometry();
    Tower tower{DyadicSet::cylinder(g, base_columns), n, {}, DyadicSet(g), std::move(base_columns), 0};
    std::vector<std::uint32_t> cols = tower.base_columns;
    DyadicSet covered(g);
    for (std::uint32_t i = 0; i < n; ++i) {
        DyadicSet level = DyadicSet::cylinder(g, cols);
        covered = covered | level;
        tower.levels.push_back(std::move(level));
        for (auto& c : cols) c = factor(c);
    }
    tower.coverage = covered.measure();
    tower.residual = covered.complement();
    return tower;
}

}  // namespace

Tower periodic_base(const CellPermutation& t, std::uint32_t n) {
    if (n == 0) throw PreconditionError("periodic_base: n must be positive");
    const IntervalPermutation factor = factor_of(t, "periodic_base");
    std::vector<std::uint32_t> base;
    for (const auto& c : factor.cycles().cycles) {
        if (c.size() != n)
            throw PreconditionError("periodic_base: factor has a cycle of length " + std::to_string(c.size()) +
                                    ", expected " + std::to_string(n));
        base.push_back(c.front());
    }
    return build_tower(t, factor, std::move(base), n);
}

Rational best_coverage(const CellPermutation& t, std::uint32_t n) {
    if (n == 0) throw PreconditionError("best_coverage: n must be positive");
    const IntervalPermutation factor = factor_of(t, "best_coverage");
    std::uint64_t covered = 0;
    for (const auto& c : factor.cycles().cycles) covered += c.size() - c.size() % n;
    Rational c(mpz_class(static_cast<unsigned long>(covered)), mpz_class(factor.size()));
    c.canonicalize();
    return c;
}

Tower rokhlin_base(const CellPermutation& t, std::uint32_t n, const Rational& epsilon) {
    if (n == 0) throw PreconditionError("rokhlin_base: n must be positive");
    const IntervalPermutation factor = factor_of(t, "rokhlin_base");
    const Rational best = best_coverage(t, n);
    if (best <= 1 - epsilon)
        throw CoverageInfeasible(best, "rokhlin_base: best coverage " + to_string(best) + " is not above 1 - " +
                                           to_string(epsilon));
    std::vector<std::uint32_t> base;
    for (const auto& c : factor.cycles().cycles)
        for (std::size_t j = 0; j + n <= c.size(); j += n) base.push_back(c[j]);
    Tower tower = build_tower(t, factor, std::move(base), n);
    if (tower.coverage != best) throw std::logic_error("rokhlin_base: coverage mismatch");
    return tower;
}

CellPermutation uate(const CellPermutation& t, std::uint32_t n, const Rational& epsilon) {
    const Tower tower = rokhlin_base(t, n, epsilon);
    const GridGeometry& g = t.geometry();
    const CellPermutation back = power(t, -static_cast<std::int64_t>(n - 1));

    std::vector<std::uint32_t> image(g.cell_count());
    for (std::uint32_t z = 0; z < g.cell_count(); ++z) image[z] = z;
    for (std::uint32_t i = 0; i < n; ++i)
        for (auto z : tower.levels[i].cells()) image[z] = (i + 1 < n) ? t(z) : back(z);

    std::vector<std::uint32_t> residual_columns;
    for (std::uint32_t c = 0; c < g.columns(); ++c)
        if (tower.residual.contains(Cell{c, 0})) residual_columns.push_back(c);
    for (std::size_t start = 0; start + n <= residual_columns.size(); start += n)
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t from = residual_columns[start + j];
            const std::uint32_t to = residual_columns[start + (j + 1) % n];
            for (std::uint32_t r = 0; r < g.rows(); ++r) image[g.index({from, r})] = g.index({to, r});
        }

    CellPermutation r(g, std::move(image));
    if (!power(r, n).is_identity()) throw std::logic_error("uate: R^n is not the identity");
    if (metric_dprime(r, t) > Rational(1, n) + epsilon) throw std::logic_error("uate: d'(R,t) exceeds 1/n + epsilon");
    return r;
}

ConjugacyResult conjugacy(const CellPermutation& target, const CellPermutation& t0, unsigned nbhd_rank,
                          const Rational& epsilon, std::optional<std::uint64_t> seed) {
    if (!target.geometry().is_square() || !t0.geometry().is_square())
        throw PreconditionError("conjugacy works on the unit square");
    if (epsilon <= 0) throw PreconditionError("conjugacy: epsilon must be positive");
    (void)factor_of(target, "conjugacy");
    (void)factor_of(t0, "conjugacy");

    const unsigned m = std::max(target.geometry().rank(), nbhd_rank);
    check_rank(m);
    const CellPermutation p = target.refined(m);
    const std::size_t big_k = project_to_base(p).cycles().count();
    const std::size_t ends_per_square = std::min<std::size_t>(big_k, std::size_t{1} << (m - nbhd_rank));

    // Least k whose certified bound 2·ends·2^(-N-k) + d′(R, t0) is below epsilon.
    unsigned k = m;
    std::uint32_t q = 0;
    unsigned w = 0;
    std::optional<CellPermutation> t0w, r;
    Rational r_gap, certified;
    for (;; ++k) {
        if (k > rank_cap() || std::max(k, t0.geometry().rank()) > rank_cap())
            throw RankError("conjugacy: no rank up to the cap " + std::to_string(rank_cap()) + " certifies epsilon");
        q = std::uint32_t{1} << k;
        w = std::max(k, t0.geometry().rank());
        t0w = t0.refined(w);
        const Rational c = best_coverage(*t0w, q);
        r = uate(*t0w, q, 1 - c + Rational(1, q));
        r_gap = metric_dprime(*r, *t0w);
        certified = Rational(2 * ends_per_square, 1) / (mpz_class(1) << (nbhd_rank + k)) + r_gap;
        if (certified < epsilon) break;
    }

    const WateResult snake = wate_at_rank(p, k);
    const CellPermutation qw = snake.q.refined(w);
    const Tower f = periodic_base(*r, q);
    const GridGeometry& g = qw.geometry();
    const std::uint32_t sub = std::uint32_t{1} << (w - k);

    std::vector<std::uint32_t> e0_columns, f0_columns = f.base_columns;
    for (std::uint32_t a = 0; a < sub; ++a) e0_columns.push_back(snake.column_order.front() * sub + a);
    std::sort(f0_columns.begin(), f0_columns.end());
    if (e0_columns.size() != f0_columns.size()) throw std::logic_error("conjugacy: tower bases differ in size");

    std::vector<std::vector<std::uint32_t>> row_map(e0_columns.size(), std::vector<std::uint32_t>(g.rows()));
    for (auto& rows : row_map)
        for (std::uint32_t j = 0; j < g.rows(); ++j) rows[j] = j;
    if (seed) {
        Rng rng(*seed);
        rng.shuffle(std::span<std::uint32_t>(f0_columns));
        for (auto& rows : row_map) rng.shuffle(std::span<std::uint32_t>(rows));
    }

    // S(Q^i z) = R^i S_0 z for z in E_0.
    std::vector<std::uint32_t> image(g.cell_count(), g.cell_count());
    for (std::size_t c = 0; c < e0_columns.size(); ++c)
        for (std::uint32_t j = 0; j < g.rows(); ++j) {
            std::uint32_t zq = g.index({e0_columns[c], j});
            std::uint32_t zr = g.index({f0_columns[c], row_map[c][j]});
            for (std::uint32_t i = 0; i < q; ++i) {
                image[zq] = zr;
                zq = qw(zq);
                zr = (*r)(zr);
            }
        }
    const CellPermutation s(g, std::move(image));
    const CellPermutation s_inv = inverse(s);

    ConjugacyResult result{s, compose(s_inv, compose(*t0w, s)), qw, *r, k, w, false, {}, {}, {}};
    result.identity_verified = compose(s_inv, compose(*r, s)) == qw;
    if (!result.identity_verified) throw std::logic_error("conjugacy: Q = S^-1 R S failed");
    if (!is_column_preserving(s)) throw std::logic_error("conjugacy: S is not column-preserving");

    result.deviations = square_deviations(target, result.conjugate, nbhd_rank);
    const auto snake_dev = square_deviations(target, qw, nbhd_rank);
    for (std::size_t i = 0; i < result.deviations.size(); ++i) {
        result.bounds.push_back(snake_dev[i] + r_gap);
        if (result.deviations[i] > result.bounds[i]) throw std::logic_error("conjugacy: triangle bound violated");
        if (result.deviations[i] >= epsilon) throw std::logic_error("conjugacy: deviation not below epsilon");
    }

    Rational worst = 0;
    for (const auto& d : result.deviations) worst = std::max(worst, d);
    result.trace.add("construction", "conjugacy");
    result.trace.add("nbhd_rank", nbhd_rank);
    result.trace.add("epsilon", epsilon);
    result.trace.add("k", k);
    result.trace.add("period", q);
    result.trace.add("working_rank", w);
    result.trace.add("K", big_k);
    result.trace.add("d_prime_R_t0", r_gap);
    result.trace.add("certified_bound", certified);
    result.trace.add("tower_coverage", f.coverage);
    result.trace.add("identity", "Q = S^-1 R S verified");
    result.trace.add("max_deviation", worst);
    return result;
}

}  // namespace dyext
