#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twostar/report.hpp"

namespace twostar {
namespace cli {

// Parsed configuration of one run. The command-line front end fills this in;
// tests may construct it directly.
struct RunConfig {
    std::string command;
    std::string verify_what;          // verify subcommand target
    std::string model = "two-star";   // or edge-wedge / edge-triangle
    int n = 4;
    std::vector<double> alphas{0.0};
    std::vector<double> hs{0.0};
    std::vector<double> beta1s{0.0};  // ERGM edge coefficients
    std::vector<double> beta2s{0.0};  // ERGM coefficients of the second pattern
    int order = 0;                    // ursell order; 0 = all orders 1..3
    std::vector<int> indices;         // explicit ursell indices
    int subset_cap = 3;               // GKS sweep subset size cap
    int enum_cap = 24;
    std::vector<int> lambda_set, set_a, set_b, set_e, set_f;
    long long sweeps = 10000;
    long long burnin = 1000;
    int thinning = 10;
    int chains = 8;
    std::uint64_t seed = 1;
    std::string mode = "exact";       // concavity mode
    int histogram_bins = 0;           // mcmc: emit a density histogram instead
    std::string format = "csv";
    std::string out_path;             // empty = stdout
};

// Grid syntax: "start:stop:step" (inclusive endpoints within half a step),
// a comma list, or a single number.
std::vector<double> parse_grid(const std::string& text);
std::vector<int> parse_id_list(const std::string& text);

Report dispatch(const RunConfig& cfg);

// Parse argv, dispatch, write the report. Exit code 0 when every verifier
// passed, 1 on verification failure, 2 on usage/runtime errors.
int run_cli(int argc, char** argv);

}  // namespace cli
}  // namespace twostar
