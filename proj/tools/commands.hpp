#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "dyext/mixing.hpp"

namespace dyext::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kParse = 2, kInfeasible = 3, kPrecondition = 4 };

struct RunConfig {
    std::string subcommand;
    std::filesystem::path input;   // permutation (target for conjugate)
    std::filesystem::path input2;  // t0 for conjugate, second permutation for metrics
    std::filesystem::path f_path;
    std::filesystem::path g_path;
    std::optional<std::filesystem::path> out_dir;
    unsigned rank = 1;             // neighborhood rank (approx, conjugate) or sample rank
    std::string epsilon = "1/2";
    std::optional<std::int64_t> n;  // tower height (uate) or single statistic index (mix)
    std::uint32_t count = 16;      // sequence length N
    std::optional<std::uint64_t> seed;
    unsigned rank_cap = 12;
    KoopmanConvention convention = KoopmanConvention::push_forward;
    unsigned witness_levels = 0;
    bool half_square = false;
    unsigned k0 = 1;
    bool cyclic = false;
    unsigned threads = 1;
    std::uint64_t samples = 100;
    bool gnuplot = false;
};

/// Runs `body`, mapping library errors onto the exit-code contract and
/// printing their message to `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

int cmd_approx(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_wate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_uate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_conjugate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_mix(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sample(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_metrics(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.subcommand.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// The sample CSV as a string; identical for every thread count.
std::string sample_csv(unsigned rank, std::uint64_t samples, std::uint64_t seed, std::uint32_t count,
                       unsigned threads);

}  // namespace dyext::cli
