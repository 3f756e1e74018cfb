#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>
#include <vector>

#include "dyext/approx.hpp"
#include "dyext/errors.hpp"
#include "dyext/io.hpp"
#include "dyext/metrics.hpp"
#include "dyext/random.hpp"
#include "dyext/towers.hpp"

namespace dyext::cli {

namespace {

void emit(const RunConfig& config, const std::string& name, const std::string& content, std::ostream& out) {
    if (!config.out_dir) {
        out << content;
        return;
    }
    std::filesystem::create_directories(*config.out_dir);
    const auto path = *config.out_dir / name;
    write_text_file(path, content);
    out << "wrote " << path.string() << "\n";
}

Rational epsilon_of(const RunConfig& config) {
    Rational e = parse_rational(config.epsilon);
    if (e <= 0) throw PreconditionError("--epsilon must be positive");
    return e;
}

CellPermutation load_permutation(const std::filesystem::path& path) {
    if (path.empty()) throw ParseError("no permutation file given");
    return parse_permutation(read_text_file(path));
}

// Exact root when the square is a perfect square, decimal otherwise.
std::string root_text(const Rational& sq) {
    if (auto r = exact_sqrt(sq)) return to_string(*r);
    return decimal(sqrt_to_double(sq));
}

std::string deviation_csv(const std::vector<Rational>& deviations) {
    std::string csv = "square,deviation,deviation_decimal\n";
    for (std::size_t i = 0; i < deviations.size(); ++i)
        csv += std::to_string(i + 1) + "," + to_string(deviations[i]) + "," + decimal(deviations[i].get_d()) + "\n";
    return csv;
}

std::string gnuplot_script(const std::string& csv_name, const std::string& x, const std::string& y) {
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set xlabel '" + x + "'\n"
           "set ylabel '" + y + "'\n"
           "plot '" + csv_name + "' using '" + x + "':'" + y + "' with linespoints\n";
}

}  // namespace

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const CoverageInfeasible& e) {
        err << "infeasible: " << e.what() << "\nbest coverage: " << to_string(e.best_coverage()) << "\n";
        return kInfeasible;
    } catch (const RankError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const TooLarge& e) {
        err << "infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const NotColumnPreserving& e) {
        err << "precondition: " << e.what() << " (cells " << e.first() + 1 << " and " << e.second() + 1 << ")\n";
        return kPrecondition;
    } catch (const PreconditionError& e) {
        err << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const GeometryError& e) {
        err << "precondition: " << e.what() << "\n";
        return kPrecondition;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

int cmd_approx(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const Rational eps = epsilon_of(config);
        const CellPermutation t = load_permutation(config.input);
        const ApproxResult r = approximate_by_column_permutation(t, config.rank, eps);
        emit(config, "Q.perm", format_permutation(r.q), out);
        emit(config, "deviations.csv", deviation_csv(r.deviations), out);
        emit(config, "trace.txt", r.trace.str(), out);
        const bool ok = std::all_of(r.deviations.begin(), r.deviations.end(), [&](const Rational& d) { return d < eps; });
        out << "approx: working_rank=" << r.working_rank << " blocks=" << r.block_count
            << " max_deviation=" << r.trace.get("max_deviation") << (ok ? " < " : " >= ") << to_string(eps) << "\n";
        return ok ? kOk : kInfeasible;
    }, err);
}

int cmd_wate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const Rational eps = epsilon_of(config);
        const CellPermutation p = load_permutation(config.input);
        const WateResult r = wate(p, eps, config.k0, config.cyclic);
        emit(config, "Q.perm", format_permutation(r.q), out);
        emit(config, "deviations.csv", deviation_csv(r.deviations), out);
        emit(config, "trace.txt", r.trace.str(), out);
        out << "wate: k=" << r.k << " K=" << r.base_cycles << " bound=" << to_string(r.bound)
            << " max_deviation=" << r.trace.get("max_deviation") << "\n";
        return kOk;
    }, err);
}

int cmd_uate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const Rational eps = epsilon_of(config);
        if (!config.n || *config.n < 1) throw PreconditionError("uate needs --n at least 1");
        const auto n = static_cast<std::uint32_t>(*config.n);
        const CellPermutation t = load_permutation(config.input);
        const Tower tower = rokhlin_base(t, n, eps);
        const CellPermutation r = uate(t, n, eps);
        const Rational gap = metric_dprime(r, t);
        const Rational bound = Rational(1, n) + eps;
        Trace trace;
        trace.add("construction", "uate");
        trace.add("n", n);
        trace.add("epsilon", eps);
        trace.add("base_columns", tower.base_columns.size());
        trace.add("coverage", tower.coverage);
        trace.add("d_prime", gap);
        trace.add("bound", bound);
        trace.add("period_check", power(r, n).is_identity() ? "R^n = id" : "failed");
        emit(config, "R.perm", format_permutation(r), out);
        emit(config, "trace.txt", trace.str(), out);
        out << "uate: n=" << n << " coverage=" << to_string(tower.coverage) << " d'=" << to_string(gap)
            << " <= " << to_string(bound) << "\n";
        return gap <= bound ? kOk : kFailure;
    }, err);
}

int cmd_conjugate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const Rational eps = epsilon_of(config);
        const CellPermutation target = load_permutation(config.input);
        const CellPermutation t0 = load_permutation(config.input2);
        const ConjugacyResult r = conjugacy(target, t0, config.rank, eps, config.seed);
        emit(config, "S.perm", format_permutation(r.s), out);
        emit(config, "conjugate.perm", format_permutation(r.conjugate), out);
        emit(config, "deviations.csv", deviation_csv(r.deviations), out);
        emit(config, "trace.txt", r.trace.str(), out);
        if (r.identity_verified) out << "Q = S⁻¹RS verified\n";
        out << "conjugate: k=" << r.k << " max_deviation=" << r.trace.get("max_deviation") << " < " << to_string(eps)
            << "\n";
        return r.identity_verified ? kOk : kFailure;
    }, err);
}

int cmd_mix(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const CellPermutation t = load_permutation(config.input);
        std::optional<GridFunction> f, g;
        std::optional<Rational> lower;
        if (config.half_square) {
            if (!t.geometry().is_square()) throw PreconditionError("--half-square needs a square grid");
            f = g = half_square_indicator(std::max(t.geometry().rank(), 1u));
        } else if (config.witness_levels) {
            if (t.geometry().rows() != config.witness_levels)
                throw PreconditionError("--witness " + std::to_string(config.witness_levels) +
                                        " does not match the grid's " + std::to_string(t.geometry().rows()) +
                                        " levels");
            f = g = weak_mixing_witness(t.geometry());
            if (t.geometry().rows() <= kWitnessLevelLimit) lower = witness_lower_bound(t.geometry().weights());
        } else {
            if (config.f_path.empty()) throw ParseError("mix needs --f/--g, --witness or --half-square");
            f = parse_grid_function(read_text_file(config.f_path));
            g = config.g_path.empty() ? *f : parse_grid_function(read_text_file(config.g_path));
        }

        const DeviationSequence seq = cesaro_sequence(t, *f, *g, config.count, config.convention);
        std::string csv = "n,deviation_sq,deviation,deviation_decimal,cesaro\n";
        double mean = 0;
        for (std::size_t i = 0; i < seq.terms.size(); ++i) {
            csv += std::to_string(i) + "," + to_string(seq.terms_sq[i]) + "," + root_text(seq.terms_sq[i]) + "," +
                   decimal(seq.terms[i]) + "," + decimal(seq.cesaro[i]) + "\n";
            mean += seq.terms[i];
        }
        emit(config, "mix.csv", csv, out);
        if (config.gnuplot) emit(config, "mix.gp", gnuplot_script("mix.csv", "n", "cesaro"), out);
        if (!seq.terms.empty()) {
            mean /= static_cast<double>(seq.terms.size());
            out << "summary: min=" << root_text(seq.min_term_sq) << " mean=" << decimal(mean)
                << " final_cesaro=" << decimal(seq.cesaro.back()) << "\n";
        }
        if (lower) {
            const bool ok = seq.terms.empty() || seq.min_term_sq >= (*lower) * (*lower);
            out << "witness_lower_bound=" << to_string(*lower) << (ok ? " <= min term" : " VIOLATED") << "\n";
        }
        if (config.n) {
            const Rational sq = mixing_deviation_sq(t, *f, *g, *config.n, config.convention);
            out << "statistic n=" << *config.n << " value=" << root_text(sq) << "\n";
        }
        return kOk;
    }, err);
}

std::string sample_csv(unsigned rank, std::uint64_t samples, std::uint64_t seed, std::uint32_t count,
                       unsigned threads) {
    if (rank < 1) throw PreconditionError("sample needs --rank at least 1");
    const GridGeometry geometry = GridGeometry::square(rank);
    const GridFunction witness = weak_mixing_witness(geometry);
    const GridFunction chi = half_square_indicator(rank);

    std::vector<std::string> rows(samples);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t i; (i = next.fetch_add(1)) < samples;) {
            const std::uint64_t s = mix_seed(seed ^ mix_seed(i + 1));
            const CellPermutation t = random_column_preserving(geometry, s);
            const CycleDecomposition cycles = t.cycles();
            const std::uint64_t period = cycles.period();
            const DeviationSequence seq = cesaro_sequence(t, witness, witness, count);
            const Rational strong = mixing_deviation_sq(t, chi, chi, static_cast<std::int64_t>(period));
            rows[i] = std::to_string(i) + "," + std::to_string(s) + "," +
                      std::to_string(project_to_base(t).cycles().count()) + "," + std::to_string(cycles.count()) +
                      "," + std::to_string(period) + "," + (seq.cesaro.empty() ? "" : decimal(seq.cesaro.back())) +
                      "," + to_string(seq.min_term_sq) + "," + to_string(strong) + "," + root_text(strong) + "\n";
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < std::max(threads, 1u); ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::string csv = "index,seed,base_cycles,cycles,period,witness_cesaro,witness_min_sq,strong_sq,strong\n";
    for (const auto& r : rows) csv += r;
    return csv;
}

int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        check_rank(config.rank);
        const std::string csv = sample_csv(config.rank, config.samples, config.seed.value_or(0), config.count,
                                           config.threads);
        emit(config, "sample.csv", csv, out);
        if (config.gnuplot) emit(config, "sample.gp", gnuplot_script("sample.csv", "index", "witness_cesaro"), out);
        return kOk;
    }, err);
}

int cmd_metrics(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded([&] {
        const CellPermutation s = load_permutation(config.input);
        const CellPermutation t = load_permutation(config.input2);
        const MetricBounds b = metric_d_bounds(s, t);
        out << "d_prime=" << to_string(b.upper) << "\n";
        out << "d_lower=" << to_string(b.lower) << "\n";
        out << "d_upper=" << to_string(b.upper) << "\n";
        const unsigned r = common_rank(s.geometry(), t.geometry());
        if (s.geometry().refined(r).cell_count() <= kBruteForceCellLimit)
            out << "d=" << to_string(metric_d_bruteforce(s, t)) << "\n";
        return kOk;
    }, err);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    ScopedRankCap cap(config.rank_cap);
    if (config.subcommand == "approx") return cmd_approx(config, out, err);
    if (config.subcommand == "wate") return cmd_wate(config, out, err);
    if (config.subcommand == "uate") return cmd_uate(config, out, err);
    if (config.subcommand == "conjugate") return cmd_conjugate(config, out, err);
    if (config.subcommand == "mix") return cmd_mix(config, out, err);
    if (config.subcommand == "sample") return cmd_sample(config, out, err);
    if (config.subcommand == "metrics") return cmd_metrics(config, out, err);
    err << "unknown subcommand '" << config.subcommand << "'\n";
    return kParse;
}

}  // namespace dyext::cli
