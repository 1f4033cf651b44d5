#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "twostar/exact.hpp"
#include "twostar/graph.hpp"
#include "twostar/params.hpp"

namespace twostar {
namespace mcmc {

struct ChainSpec {
    int n = 100;
    double alpha = 0.0;
    double h = 0.0;
    long long sweeps = 10000;
    long long burnin = 1000;
    int thinning = 10;
    std::uint64_t seed = 1;
    int chains = 8;

    void validate() const;
};

// P(x_i = 1 | rest) = sigmoid((alpha/n) sum_{j ~ i} x_j + h).
double conditional_prob(const Config& c, int edge, const ScalarParams& params, const EdgeIndexing& idx);

std::uint64_t chain_seed(std::uint64_t master, int chain_index);

// Heat-bath single-edge dynamics. The wedge-partner sum of edge {u,v} is
// deg(u) + deg(v) - 2 x_uv, so per-vertex degree counters give O(1) updates.
class GlauberChain {
public:
    GlauberChain(const EdgeIndexing& idx, ScalarParams params, std::uint64_t seed);

    void sweep();  // m heat-bath updates at uniformly random edges

    long long edge_total() const { return edges_; }
    long long wedge_pair_total() const;      // sum_v C(deg v, 2)
    double edge_density() const;             // 2 E_n / n^2
    Config snapshot() const;

private:
    double next_uniform();
    int next_edge();

    EdgeIndexing idx_;
    ScalarParams params_;
    double coupling_over_n_;
    std::vector<std::uint8_t> present_;
    std::vector<int> degree_;
    long long edges_ = 0;
    std::mt19937_64 rng_;
};

struct ChainStats {
    std::uint64_t seed = 0;
    std::vector<double> density_series;
    std::vector<double> wedge_series;  // raw wedge-pair counts
    double mean_density = 0.0;
    double mean_wedges = 0.0;
};

struct ChainSummary {
    ChainSpec spec;
    std::vector<ChainStats> per_chain;
    long long samples_per_chain = 0;

    double pooled_density_mean = 0.0;
    double pooled_density_se = 0.0;  // cross-chain standard error of the mean
    double sample_sd_density = 0.0;  // sd of the individual density samples
    double pooled_wedges_mean = 0.0;
    double pooled_wedges_se = 0.0;

    // Moments of sqrt(2) (E_n - pooled mean E_n) / n over all samples.
    double standardized_variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

ChainSummary run_chains(const ChainSpec& spec);

enum class ScanMode { exact, mcmc };

struct ConcavityRow {
    double h = 0.0;
    double mean_density = 0.0;  // m_n(alpha,h) = E[E_n]/n^2
    double std_error = 0.0;     // 0 in exact mode
    bool has_second_difference = false;
    double second_difference = 0.0;
};

// m_n over an h grid with discrete second differences; exact mode enumerates,
// mcmc mode estimates with error bars.
std::vector<ConcavityRow> concavity_scan(double alpha, const std::vector<double>& hs, int n,
                                         ScanMode mode, const ChainSpec& sampler_settings);

}  // namespace mcmc
}  // namespace twostar
