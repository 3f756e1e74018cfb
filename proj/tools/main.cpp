#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using dyext::cli::RunConfig;
    RunConfig config;
    std::string convention = "push";
    std::string out_dir;

    CLI::App app{"dyext: exact dyadic permutation constructions and relative mixing statistics"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--rank-cap", config.rank_cap, "Largest rank any construction may build")->capture_default_str();
    app.add_option("--out", out_dir, "Directory for output files (stdout when omitted)");

    auto* approx = app.add_subcommand("approx", "Column-preserving approximation on dyadic squares");
    approx->add_option("input", config.input, "Permutation file")->required();
    approx->add_option("--rank,--N-rank", config.rank, "Neighborhood rank N")->capture_default_str();
    approx->add_option("--epsilon", config.epsilon, "Neighborhood size")->capture_default_str();

    auto* wate = app.add_subcommand("wate", "Approximation by a permutation with cyclic factor");
    wate->add_option("input", config.input, "Column-preserving permutation file")->required();
    wate->add_option("--epsilon", config.epsilon)->capture_default_str();
    wate->add_option("--k0", config.k0, "Smallest admissible rank")->capture_default_str();
    wate->add_flag("--cyclic", config.cyclic, "Chain the passes into one cycle");

    auto* uate = app.add_subcommand("uate", "Periodic approximation through a column tower");
    uate->add_option("input", config.input, "Column-preserving permutation file")->required();
    uate->add_option("--n", config.n, "Tower height")->required();
    uate->add_option("--epsilon", config.epsilon)->capture_default_str();

    auto* conj = app.add_subcommand("conjugate", "Conjugate t0 into a neighborhood of the target");
    conj->add_option("target", config.input, "Target permutation file")->required();
    conj->add_option("t0", config.input2, "Permutation to conjugate")->required();
    conj->add_option("--rank", config.rank, "Neighborhood rank N")->capture_default_str();
    conj->add_option("--epsilon", config.epsilon)->capture_default_str();
    conj->add_option("--seed", config.seed, "Random pairing of the tower bases");

    auto* mix = app.add_subcommand("mix", "Relative mixing deviations and their Cesaro averages");
    mix->add_option("input", config.input, "Column-preserving permutation file")->required();
    mix->add_option("--f", config.f_path, "Function file f");
    mix->add_option("--g", config.g_path, "Function file g (defaults to f)");
    mix->add_option("--witness", config.witness_levels, "Use the level witness on an L-level grid");
    mix->add_flag("--half-square", config.half_square, "Use the indicator of the lower half of the square");
    mix->add_option("--N", config.count, "Sequence length")->capture_default_str();
    mix->add_option("--n", config.n, "Also report the single deviation at n");
    mix->add_option("--koopman-convention", convention, "push (f o t^-n) or pull (f o t^n)")
        ->check(CLI::IsMember({"push", "pull"}))
        ->capture_default_str();
    mix->add_flag("--gnuplot", config.gnuplot, "Also emit a gnuplot script");

    auto* sample = app.add_subcommand("sample", "Statistics of seeded random column-preserving permutations");
    sample->add_option("--rank", config.rank)->capture_default_str();
    sample->add_option("--samples", config.samples)->capture_default_str();
    sample->add_option("--seed", config.seed, "Base seed (default 0)");
    sample->add_option("--N", config.count, "Cesaro length for the witness pair")->capture_default_str();
    sample->add_option("--threads", config.threads)->capture_default_str();
    sample->add_flag("--gnuplot", config.gnuplot, "Also emit a gnuplot script");

    auto* metrics = app.add_subcommand("metrics", "d' and bounds on d between two permutations");
    metrics->add_option("first", config.input)->required();
    metrics->add_option("second", config.input2)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dyext::cli::kParse;
    }

    config.subcommand = app.get_subcommands().front()->get_name();
    config.convention = convention == "pull" ? dyext::KoopmanConvention::pull_back : dyext::KoopmanConvention::push_forward;
    if (!out_dir.empty()) config.out_dir = out_dir;
    return dyext::cli::run(config, std::cout, std::cerr);
}
