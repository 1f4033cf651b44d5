#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "twostar/exact.hpp"

namespace twostar {

// Joint cumulant of edge indicators, orders 1..3.
struct UrsellValue {
    int order;
    std::array<int, 3> indices;  // unused slots are -1
    double value;
};

UrsellValue ursell(const ExactSystem& sys, std::span<const int> indices);

enum class InequalityTag { fkg_lattice, fkg, gks, ghs, vol_mono, part_submod };

std::string tag_name(InequalityTag tag);

// Outcome of one inequality check. `worst_violation` is signed: positive
// means the inequality failed by that amount; pass iff it stays within the
// numerical slack.
struct InequalityReport {
    InequalityTag tag;
    std::string point;  // parameter point that produced the numbers
    double worst_violation = -std::numeric_limits<double>::infinity();
    std::string witness;
    long long checked = 0;
    double slack = 1e-12;
    bool exhaustive = true;
    bool pass = true;

    void record(double violation, const std::string& who);
};

// GKS: E[x_A x_B] >= E[x_A] E[x_B].
InequalityReport verify_gks(const ExactSystem& sys, std::span<const int> subset_a,
                            std::span<const int> subset_b);
InequalityReport verify_gks_sweep(const ExactSystem& sys, int max_subset_size = 3);

// GHS: u_3(i,j,k) <= 0.
InequalityReport verify_ghs(const ExactSystem& sys, int i, int j, int k);
InequalityReport verify_ghs_sweep(const ExactSystem& sys);

struct FkgLatticeOptions {
    int exhaustive_cap = 12;     // exhaustive over 4^m ordered pairs up to here
    long long samples = 200000;  // sampled pairs beyond the cap
    std::uint64_t seed = 1;
};

// FKG lattice condition, compared in log space:
// H(x or y) + H(x and y) >= H(x) + H(y).
InequalityReport verify_fkg_lattice(const ExactSystem& sys, FkgLatticeOptions opts = {});

using ConfigFunctional = std::function<double(const Config&)>;

// Positive correlation of increasing functionals: E[fg] >= E[f] E[g].
// Monotonicity is audited exhaustively when m <= 8; for larger systems the
// caller must declare it, and the report notes the declaration.
InequalityReport verify_fkg_monotone(const ExactSystem& sys, const ConfigFunctional& f,
                                     const ConfigFunctional& g, bool declared_increasing = false);

// Volume monotonicity: E_A[x_Lambda] <= E_B[x_Lambda] for Lambda <= A <= B.
InequalityReport verify_volume_monotonicity(const ExactSystem& base, std::span<const int> lambda,
                                            std::span<const int> subset_a, std::span<const int> subset_b);

struct SubmodularityReport {
    InequalityReport report;
    double l_value = 0.0;  // ln Z_{E u F} + ln Z_{E n F} - ln Z_E - ln Z_F
};

// Partition-function comparison: ln Z_E + ln Z_F <= ln Z_{E u F} + ln Z_{E n F}.
SubmodularityReport verify_partition_submodularity(const ExactSystem& base, std::span<const int> subset_e,
                                                   std::span<const int> subset_f);
InequalityReport verify_partition_submodularity_sweep(const ExactSystem& base, int exhaustive_cap = 12);

struct DerivativeCheckRow {
    int order;
    double step;
    double stencil;     // n^2 d^order/dh^order of f, by central differences
    double ursell_sum;  // matching sum of Ursell functions
    double rel_error;
    double tolerance;
    bool pass;
};

struct DerivativeCheck {
    std::vector<DerivativeCheckRow> orders;
    double alpha_stencil = 0.0;       // d f / d alpha
    double wedge_density = 0.0;       // E[sum_W x_i x_j] / n^3
    double alpha_rel_error = 0.0;
    double alpha_tolerance = 1e-8;
    bool pass = true;
};

// Central differences of the free energy in h (orders 1-3) and alpha against
// the corresponding Ursell sums and the wedge density.
DerivativeCheck derivative_ursell_check(const ExactSystem& sys);

struct ConjecturePoint {
    std::string model;
    double coupling = 0.0;  // alpha, or beta for the non-edge pattern
    double field = 0.0;     // h, or beta_1
    double min_mean_edge = 0.0;
    double worst_u3 = 0.0;
    bool ghs_violated = false;
    bool mean_below_half = false;
    bool matches_conjecture = true;  // violation occurs exactly when the mean dips below 1/2
};

// Evidence atlas for the necessity question: records, never asserts.
std::vector<ConjecturePoint> conjecture_scan_two_star(int n, std::span<const double> alphas,
                                                      std::span<const double> hs);
std::vector<ConjecturePoint> conjecture_scan_ergm(int n, const SubgraphPattern& extra_pattern,
                                                  std::span<const double> betas,
                                                  std::span<const double> beta1s);

}  // namespace twostar
