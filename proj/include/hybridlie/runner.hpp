#pragma once

#include <optional>

#include "hybridlie/scenario.hpp"

namespace hybridlie {

struct RunOptions {
    std::string out_dir = "out";
    std::optional<uint64_t> seed_override;
    std::optional<int> points_override;
    bool quiet = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitCheckFailure = 2;

/// Executes one scenario subcommand (evolve, spin-orbit, positivity, jacobi,
/// uniqueness) and writes its artifact files plus manifest.json into the
/// output directory. Returns the process exit status.
int run_subcommand(const std::string& subcommand, const Scenario& config,
                   const RunOptions& options);

}  // namespace hybridlie
