#ifndef LPA_CLI_HPP
#define LPA_CLI_HPP

#include <iostream>
#include <string>
#include <vector>

#include "lpa/metrics.hpp"
#include "lpa/persistence.hpp"

namespace lpa {

/// Trains E2E and LPA from the same initialization on the same data
/// (cfg.train.paradigm is ignored); differences between the two results are
/// attributable to the loss alone.
struct CompareResult {
  ResidualNetwork e2e_net;
  ResidualNetwork lpa_net;
  ErrorTrajectory e2e_traj;  // on the test set
  ErrorTrajectory lpa_traj;
};

CompareResult compare_run(const RunConfig& cfg);

/// Dispatches a subcommand; args exclude the program name.
/// Exit codes: 0 success, 1 argument/validation error, 2 runtime/IO error.
int run_cli(const std::vector<std::string>& args,
            std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace lpa

#endif  // LPA_CLI_HPP
