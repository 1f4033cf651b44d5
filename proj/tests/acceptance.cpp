// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "twostar/duplication.hpp"
#include "twostar/exact.hpp"
#include "twostar/inequalities.hpp"
#include "twostar/mcmc.hpp"
#include "twostar/meanfield.hpp"
#include "twostar/numeric.hpp"

using namespace twostar;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.str().empty()) detail << "; ";
            detail << "FAILED: " << what;
        }
    }
};

int g_failures = 0;

void run_criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        body(outcome);
    } catch (const std::exception& e) {
        outcome.pass = false;
        outcome.detail << "exception: " << e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.1f s)%s%s\n", outcome.pass ? "PASS" : "FAIL", id,
                name.c_str(), seconds, outcome.detail.str().empty() ? "" : " — ",
                outcome.detail.str().c_str());
    std::fflush(stdout);
}

ExactSystem scalar_system(int n, double alpha, double h) {
    return ExactSystem(EdgeIndexing(n), ScalarParams{alpha, h});
}

}  // namespace

int main() {
    run_criterion(1, "GKS suite: u2 >= 0 and subset-pair covariances, n in {3,4,5}", [](Outcome& out) {
        double worst_u2 = -1.0, worst_pair = -1.0;
        long long pairs_checked = 0;
        for (int n : {3, 4, 5})
            for (double alpha : {0.0, 0.5, 1.0, 2.0, 4.0})
                for (double h : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
                    auto sys = scalar_system(n, alpha, h);
                    const auto table = sys.moment_table();
                    const int m = sys.ambient_edge_count();
                    for (int i = 0; i < m; ++i)
                        for (int j = i; j < m; ++j) {
                            const int pi[] = {i};
                            const int pj[] = {j};
                            const int pij[] = {i, j};
                            const double u2 =
                                table.monomial(pij) - table.monomial(pi) * table.monomial(pj);
                            worst_u2 = std::max(worst_u2, -u2);
                        }
                    const auto sweep = verify_gks_sweep(sys, 3);
                    pairs_checked += sweep.checked;
                    worst_pair = std::max(worst_pair, sweep.worst_violation);
                    out.require(sweep.pass, "GKS subset sweep at n=" + std::to_string(n));
                }
        out.require(worst_u2 <= 1e-12, "u2 >= -1e-12");
        out.require(worst_pair <= 1e-12, "subset-pair violation <= 1e-12");
        out.detail << "worst -u2 " << worst_u2 << ", worst pair violation " << worst_pair << ", "
                   << pairs_checked << " subset pairs";
    });

    run_criterion(2, "GHS suite: u3 <= 0 on alpha,h >= 0 plus negative-field counterexample",
                  [](Outcome& out) {
                      double worst = -1.0;
                      for (int n : {3, 4, 5})
                          for (double alpha : {0.0, 0.5, 1.0, 2.0, 4.0})
                              for (double h : {0.0, 1.0, 2.0}) {
                                  const auto report = verify_ghs_sweep(scalar_system(n, alpha, h));
                                  worst = std::max(worst, report.worst_violation);
                                  out.require(report.pass, "GHS sweep at n=" + std::to_string(n) +
                                                               " alpha=" + std::to_string(alpha) +
                                                               " h=" + std::to_string(h));
                              }
                      // Detector check at (alpha,h) = (0,-1).
                      auto sys = scalar_system(3, 0.0, -1.0);
                      const auto counter = verify_ghs(sys, 0, 0, 0);
                      const double p = sigmoid(-1.0);
                      const double expected = p * (1.0 - p) * (1.0 - 2.0 * p);
                      out.require(!counter.pass && counter.worst_violation > 1e-12,
                                  "counterexample detected at (0,-1)");
                      out.require(std::fabs(counter.worst_violation - expected) <= 1e-12,
                                  "u3(i,i,i) equals p(1-p)(1-2p)");
                      out.detail << "worst u3 " << worst << ", counterexample u3 "
                                 << counter.worst_violation << " (expected " << expected << ")";
                  });

    run_criterion(3, "FKG lattice and partition submodularity, exhaustive at n=4", [](Outcome& out) {
        long long lattice_pairs = 0, subset_pairs = 0;
        for (double alpha : {0.0, 1.0, 3.0})
            for (double h : {-1.0, 0.5}) {
                auto sys = scalar_system(4, alpha, h);
                const auto lattice = verify_fkg_lattice(sys);
                lattice_pairs += lattice.checked;
                out.require(lattice.pass && lattice.checked == 4096,
                            "FKG lattice exhaustive at alpha=" + std::to_string(alpha));
                const auto submod = verify_partition_submodularity_sweep(sys);
                subset_pairs += submod.checked;
                out.require(submod.pass && submod.checked == 4096,
                            "partition submodularity at alpha=" + std::to_string(alpha));
            }
        out.detail << lattice_pairs << " config pairs, " << subset_pairs << " subset pairs";
    });

    run_criterion(4, "duplication: mixture identity, sum P(A)=1, u3 representation, P lattice",
                  [](Outcome& out) {
                      double worst_mixture = 0.0, worst_psum = 0.0, worst_u3 = 0.0;
                      for (int n : {3, 4})
                          for (double alpha : {0.5, 1.0, 3.0})
                              for (double h : {0.0, 0.5, 1.0}) {
                                  auto sys = scalar_system(n, alpha, h);
                                  DoubledSystem doubled(sys);
                                  const int m = sys.ambient_edge_count();

                                  const auto weights = doubled.mixture_weights();
                                  worst_psum = std::max(worst_psum, std::fabs(weights.total - 1.0));

                                  // battery: all subset pairs with |C|,|D| <= 2
                                  std::vector<std::vector<int>> battery{{}};
                                  for (int i = 0; i < m; ++i) battery.push_back({i});
                                  for (int i = 0; i < m; ++i)
                                      for (int j = i + 1; j < m; ++j) battery.push_back({i, j});
                                  for (const auto& c : battery)
                                      for (const auto& d : battery) {
                                          const double direct = doubled.doubled_expectation(
                                              z_monomial(c), v_monomial(d));
                                          const double mixed = doubled.mixture_expectation(
                                              z_monomial(c), v_monomial(d));
                                          worst_mixture =
                                              std::max(worst_mixture, std::fabs(direct - mixed));
                                      }

                                  for (int i = 0; i < m; ++i)
                                      for (int j = i; j < m; ++j)
                                          for (int k = j; k < m; ++k) {
                                              const auto repr = verify_u3_representation(sys, i, j, k);
                                              worst_u3 = std::max(worst_u3, repr.abs_error);
                                          }

                                  const auto lattice = verify_p_lattice(weights);
                                  out.require(lattice.pass,
                                              "P lattice at n=" + std::to_string(n) + " alpha=" +
                                                  std::to_string(alpha) + " h=" + std::to_string(h));
                              }
                      out.require(worst_mixture <= 1e-10, "mixture identity within 1e-10");
                      out.require(worst_psum <= 1e-10, "sum P(A) = 1 within 1e-10");
                      out.require(worst_u3 <= 1e-12, "u3 representation within 1e-12");
                      out.detail << "worst mixture dev " << worst_mixture << ", worst |sum P - 1| "
                                 << worst_psum << ", worst u3 repr dev " << worst_u3;
                  });

    run_criterion(5, "derivative consistency: stencils vs Ursell sums and wedge density",
                  [](Outcome& out) {
                      for (auto [alpha, h] : {std::pair{1.0, 0.0}, std::pair{3.0, 1.0}}) {
                          const auto check = derivative_ursell_check(scalar_system(3, alpha, h));
                          for (const auto& row : check.orders) {
                              out.require(row.pass, "order " + std::to_string(row.order) + " at alpha=" +
                                                        std::to_string(alpha) +
                                                        " rel=" + std::to_string(row.rel_error));
                          }
                          out.require(check.alpha_rel_error <= 1e-8, "wedge-density derivative");
                          out.detail << "(" << alpha << "," << h << ") rels:";
                          for (const auto& row : check.orders) out.detail << " " << row.rel_error;
                          out.detail << " alpha " << check.alpha_rel_error << "; ";
                      }
                  });

    run_criterion(6, "phase diagram: critical point, coexistence on h=-alpha, uniqueness below",
                  [](Outcome& out) {
                      const auto critical = meanfield::classify(2.0, -2.0);
                      out.require(critical.classification == meanfield::PhaseClass::critical,
                                  "(2,-2) classified critical");
                      for (double alpha : {2.5, 3.0, 4.0}) {
                          const auto sample = meanfield::critical_curve(alpha);
                          out.require(std::fabs(sample.h + alpha) <= 1e-6,
                                      "q(" + std::to_string(alpha) + ") = -alpha");
                          const auto cell = meanfield::classify(alpha, -alpha);
                          out.require(cell.classification == meanfield::PhaseClass::coexistence,
                                      "coexistence at (alpha,-alpha)");
                          out.detail << "q(" << alpha << ")=" << sample.h << " ";
                      }
                      int unique_cells = 0;
                      for (double alpha = 0.0; alpha < 2.0 - 1e-9; alpha += 0.25)
                          for (double h = -4.0; h <= 1.0 + 1e-9; h += 0.5) {
                              const auto cell = meanfield::classify(alpha, h);
                              out.require(cell.classification == meanfield::PhaseClass::unique,
                                          "uniqueness at alpha<2");
                              ++unique_cells;
                          }
                      out.detail << "; " << unique_cells << " cells below alpha=2 all unique";
                  });

    run_criterion(7, "LLN/CLT at n=100, (alpha,h)=(1,0): 32 chains x 10^4 sweeps", [](Outcome& out) {
        const auto phase = meanfield::classify(1.0, 0.0);
        const double u_star = phase.maximizers.front();
        const double v_star = meanfield::limiting_variance(1.0, 0.0);

        mcmc::ChainSpec spec;
        spec.n = 100;
        spec.alpha = 1.0;
        spec.h = 0.0;
        spec.sweeps = 10000;
        spec.burnin = 1000;
        spec.thinning = 10;
        spec.chains = 32;
        spec.seed = 20240801;
        const auto summary = mcmc::run_chains(spec);

        // Location check at the scale of a single observation: the O(1/n)
        // finite-size offset of the density dominates the cross-chain standard
        // error by two orders of magnitude, so the mean-value comparison is
        // made against three sample standard deviations.
        const double bias = summary.pooled_density_mean - u_star;
        out.require(std::fabs(bias) <= 3.0 * summary.sample_sd_density,
                    "pooled density within 3 sample sd of u*");
        const double var_rel = std::fabs(summary.standardized_variance - v_star) / v_star;
        out.require(var_rel <= 0.20, "standardized variance within 20% of v(1,0)");
        out.require(std::fabs(summary.skewness) < 0.2, "|skewness| < 0.2");
        out.detail << "density " << summary.pooled_density_mean << " vs u* " << u_star << " (|bias| "
                   << std::fabs(bias) << " = " << std::fabs(bias) / summary.sample_sd_density
                   << " sample sd, cross-chain se " << summary.pooled_density_se << "); variance "
                   << summary.standardized_variance << " vs " << v_star << " (" << var_rel * 100.0
                   << "%); skew " << summary.skewness;
    });

    run_criterion(8, "concavity: exact second h-differences <= 1e-10, n in {4,5}", [](Outcome& out) {
        double worst = -1.0;
        std::vector<double> hs;
        for (double h = 0.0; h <= 2.0 + 1e-9; h += 0.25) hs.push_back(h);
        for (int n : {4, 5})
            for (double alpha : {0.0, 1.0, 2.0}) {
                const auto rows = mcmc::concavity_scan(alpha, hs, n, mcmc::ScanMode::exact, {});
                for (const auto& row : rows)
                    if (row.has_second_difference) {
                        worst = std::max(worst, row.second_difference);
                        out.require(row.second_difference <= 1e-10,
                                    "second difference at n=" + std::to_string(n) + " alpha=" +
                                        std::to_string(alpha) + " h=" + std::to_string(row.h));
                    }
            }
        out.detail << "worst second difference " << worst;
    });

    run_criterion(9, "sampler oracle: chain moments match exact enumeration, n in {3,4,5}",
                  [](Outcome& out) {
                      const std::vector<std::pair<double, double>> points{{1.0, 0.0}, {3.0, 0.5},
                                                                          {0.0, -1.0}};
                      int checks = 0;
                      double worst_pull = 0.0;
                      for (int n : {3, 4, 5})
                          for (std::size_t p = 0; p < points.size(); ++p) {
                              const auto [alpha, h] = points[p];
                              auto sys = scalar_system(n, alpha, h);
                              const double n2 = static_cast<double>(n) * n;
                              const double exact_density = 2.0 * sys.mean_edge_count() / n2;
                              const double exact_wedges = sys.mean_wedge_pairs();

                              mcmc::ChainSpec spec;
                              spec.n = n;
                              spec.alpha = alpha;
                              spec.h = h;
                              spec.sweeps = 20000;
                              spec.burnin = 2000;
                              spec.thinning = 5;
                              spec.chains = 8;
                              spec.seed = 777 + 100 * static_cast<std::uint64_t>(n) + p;
                              const auto summary = mcmc::run_chains(spec);

                              const double pull_density =
                                  std::fabs(summary.pooled_density_mean - exact_density) /
                                  summary.pooled_density_se;
                              const double pull_wedges =
                                  std::fabs(summary.pooled_wedges_mean - exact_wedges) /
                                  summary.pooled_wedges_se;
                              worst_pull = std::max({worst_pull, pull_density, pull_wedges});
                              out.require(pull_density <= 3.0,
                                          "edge density within 3 SE at n=" + std::to_string(n) +
                                              " point " + std::to_string(p) + " (pull " +
                                              std::to_string(pull_density) + ")");
                              out.require(pull_wedges <= 3.0,
                                          "wedge statistic within 3 SE at n=" + std::to_string(n) +
                                              " point " + std::to_string(p) + " (pull " +
                                              std::to_string(pull_wedges) + ")");
                              checks += 2;
                          }
                      out.detail << checks << " moment checks, worst pull " << worst_pull << " SE";
                  });

    run_criterion(10, "general ERGM (edge+triangle): FKG lattice, GKS, conjecture atlas",
                  [](Outcome& out) {
                      const EdgeIndexing idx(4);
                      const std::vector<double> beta2s{0.0, 0.3, 0.8};
                      const std::vector<double> beta1s{-0.5, 0.0, 0.5};
                      for (double beta2 : beta2s)
                          for (double beta1 : beta1s) {
                              ErgmParams params{{SubgraphPattern::edge(), SubgraphPattern::triangle()},
                                                {beta1, beta2}};
                              ExactSystem sys(idx, params);
                              const auto lattice = verify_fkg_lattice(sys);
                              out.require(lattice.pass && lattice.checked == 4096,
                                          "FKG lattice at beta2=" + std::to_string(beta2) +
                                              " beta1=" + std::to_string(beta1));
                              const auto gks = verify_gks_sweep(sys, 3);
                              out.require(gks.pass, "GKS at beta2=" + std::to_string(beta2) +
                                                        " beta1=" + std::to_string(beta1));
                          }
                      const auto atlas =
                          conjecture_scan_ergm(4, SubgraphPattern::triangle(), beta2s, beta1s);
                      out.require(atlas.size() == 9, "conjecture atlas emitted");
                      int consistent = 0;
                      for (const auto& point : atlas)
                          if (point.matches_conjecture) ++consistent;
                      out.detail << "9 parameter points verified; atlas: " << consistent << "/9 "
                                 << "consistent with the mean >= 1/2 equivalence (recorded only)";
                  });

    std::printf("%s: %d of 10 criteria passed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
