#include "twostar/mcmc.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "twostar/numeric.hpp"

namespace twostar {
namespace mcmc {

void ChainSpec::validate() const {
    if (n < 1) throw std::invalid_argument("ChainSpec: n must be >= 1");
    if (burnin < 0 || sweeps <= burnin)
        throw std::invalid_argument("ChainSpec: need sweeps > burnin >= 0");
    if (thinning < 1) throw std::invalid_argument("ChainSpec: thinning must be >= 1");
    if (chains < 1) throw std::invalid_argument("ChainSpec: need at least one chain");
}

double conditional_prob(const Config& c, int edge, const ScalarParams& params, const EdgeIndexing& idx) {
    const auto [u, v] = idx.pair_of(edge);
    const auto deg = vertex_degrees(c, idx);
    const int self = c.test(edge) ? 1 : 0;
    const int partner_sum = deg[static_cast<std::size_t>(u)] + deg[static_cast<std::size_t>(v)] - 2 * self;
    return sigmoid(params.alpha / idx.n() * partner_sum + params.h);
}

std::uint64_t chain_seed(std::uint64_t master, int chain_index) {
    std::uint64_t state = master + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(chain_index + 1);
    return splitmix64(state);
}

GlauberChain::GlauberChain(const EdgeIndexing& idx, ScalarParams params, std::uint64_t seed)
    : idx_(idx),
      params_(params),
      coupling_over_n_(params.alpha / idx.n()),
      present_(static_cast<std::size_t>(idx.m()), 0),
      degree_(static_cast<std::size_t>(idx.n()), 0),
      rng_(seed) {}

double GlauberChain::next_uniform() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

int GlauberChain::next_edge() {
    // multiply-shift map of a 64-bit draw onto [0, m)
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(rng_()) * static_cast<unsigned __int128>(idx_.m());
    return static_cast<int>(wide >> 64);
}

void GlauberChain::sweep() {
    const int m = idx_.m();
    for (int step = 0; step < m; ++step) {
        const int i = next_edge();
        const auto [u, v] = idx_.pair_of(i);
        const int self = present_[static_cast<std::size_t>(i)];
        const int partner_sum =
            degree_[static_cast<std::size_t>(u)] + degree_[static_cast<std::size_t>(v)] - 2 * self;
        const double p = sigmoid(coupling_over_n_ * partner_sum + params_.h);
        const int bit = next_uniform() < p ? 1 : 0;
        if (bit != self) {
            const int delta = bit ? 1 : -1;
            degree_[static_cast<std::size_t>(u)] += delta;
            degree_[static_cast<std::size_t>(v)] += delta;
            edges_ += delta;
            present_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(bit);
        }
    }
}

long long GlauberChain::wedge_pair_total() const {
    long long total = 0;
    for (int d : degree_) total += static_cast<long long>(d) * (d - 1) / 2;
    return total;
}

double GlauberChain::edge_density() const {
    const double n = idx_.n();
    return 2.0 * static_cast<double>(edges_) / (n * n);
}

Config GlauberChain::snapshot() const {
    Config c(idx_.m());
    for (int i = 0; i < idx_.m(); ++i) c.set(i, present_[static_cast<std::size_t>(i)] != 0);
    return c;
}

ChainSummary run_chains(const ChainSpec& spec) {
    spec.validate();
    const EdgeIndexing idx(spec.n);

    ChainSummary summary;
    summary.spec = spec;
    summary.samples_per_chain = (spec.sweeps - spec.burnin + spec.thinning - 1) / spec.thinning;
    summary.per_chain.resize(static_cast<std::size_t>(spec.chains));

    auto run_one = [&](int c) {
        ChainStats& stats = summary.per_chain[static_cast<std::size_t>(c)];
        stats.seed = chain_seed(spec.seed, c);
        GlauberChain chain(idx, ScalarParams{spec.alpha, spec.h}, stats.seed);
        stats.density_series.reserve(static_cast<std::size_t>(summary.samples_per_chain));
        stats.wedge_series.reserve(static_cast<std::size_t>(summary.samples_per_chain));
        for (long long sweep = 0; sweep < spec.sweeps; ++sweep) {
            chain.sweep();
            if (sweep >= spec.burnin && (sweep - spec.burnin) % spec.thinning == 0) {
                stats.density_series.push_back(chain.edge_density());
                stats.wedge_series.push_back(static_cast<double>(chain.wedge_pair_total()));
            }
        }
        KahanSum dsum, wsum;
        for (double d : stats.density_series) dsum.add(d);
        for (double w : stats.wedge_series) wsum.add(w);
        stats.mean_density = dsum.value() / static_cast<double>(stats.density_series.size());
        stats.mean_wedges = wsum.value() / static_cast<double>(stats.wedge_series.size());
    };

    const unsigned hw = std::thread::hardware_concurrency();
    const int threads = std::min<int>(spec.chains, static_cast<int>(hw == 0 ? 1 : hw));
    if (threads <= 1) {
        for (int c = 0; c < spec.chains; ++c) run_one(c);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int c = t; c < spec.chains; c += threads) run_one(c);
            });
        for (auto& th : pool) th.join();
    }

    // Pooled sample moments, accumulated in chain order for reproducibility.
    KahanSum dsum, wsum;
    long long count = 0;
    for (const auto& stats : summary.per_chain) {
        for (double d : stats.density_series) dsum.add(d);
        for (double w : stats.wedge_series) wsum.add(w);
        count += static_cast<long long>(stats.density_series.size());
    }
    summary.pooled_density_mean = dsum.value() / static_cast<double>(count);
    summary.pooled_wedges_mean = wsum.value() / static_cast<double>(count);

    const double n = spec.n;
    const double mean_edges = summary.pooled_density_mean * n * n / 2.0;
    KahanSum var2, var_std, skew3, kurt4;
    for (const auto& stats : summary.per_chain)
        for (double d : stats.density_series) {
            const double edges = d * n * n / 2.0;
            const double standardized = std::sqrt(2.0) * (edges - mean_edges) / n;
            var2.add((d - summary.pooled_density_mean) * (d - summary.pooled_density_mean));
            var_std.add(standardized * standardized);
            skew3.add(standardized * standardized * standardized);
            kurt4.add(standardized * standardized * standardized * standardized);
        }
    const double denom = static_cast<double>(count - 1);
    summary.sample_sd_density = std::sqrt(var2.value() / denom);
    summary.standardized_variance = var_std.value() / denom;
    const double sd_std = std::sqrt(summary.standardized_variance);
    summary.skewness = skew3.value() / static_cast<double>(count) / (sd_std * sd_std * sd_std);
    summary.excess_kurtosis =
        kurt4.value() / static_cast<double>(count) / (sd_std * sd_std * sd_std * sd_std) - 3.0;

    if (spec.chains > 1) {
        KahanSum dvar, wvar;
        for (const auto& stats : summary.per_chain) {
            const double dd = stats.mean_density - summary.pooled_density_mean;
            const double dw = stats.mean_wedges - summary.pooled_wedges_mean;
            dvar.add(dd * dd);
            wvar.add(dw * dw);
        }
        const double chains = spec.chains;
        summary.pooled_density_se = std::sqrt(dvar.value() / (chains - 1.0) / chains);
        summary.pooled_wedges_se = std::sqrt(wvar.value() / (chains - 1.0) / chains);
    }
    return summary;
}

std::vector<ConcavityRow> concavity_scan(double alpha, const std::vector<double>& hs, int n,
                                         ScanMode mode, const ChainSpec& sampler_settings) {
    std::vector<ConcavityRow> rows;
    rows.reserve(hs.size());
    const EdgeIndexing idx(n);
    const double n2 = static_cast<double>(n) * n;
    for (double h : hs) {
        ConcavityRow row;
        row.h = h;
        if (mode == ScanMode::exact) {
            ExactSystem sys(idx, ScalarParams{alpha, h});
            row.mean_density = sys.mean_edge_count() / n2;
        } else {
            ChainSpec spec = sampler_settings;
            spec.n = n;
            spec.alpha = alpha;
            spec.h = h;
            const auto summary = run_chains(spec);
            row.mean_density = summary.pooled_density_mean / 2.0;  // E[E_n]/n^2 = density/2
            row.std_error = summary.pooled_density_se / 2.0;
        }
        rows.push_back(row);
    }
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        rows[i].has_second_difference = true;
        rows[i].second_difference = rows[i - 1].mean_density - 2.0 * rows[i].mean_density +
                                    rows[i + 1].mean_density;
    }
    return rows;
}

}  // namespace mcmc
}  // namespace twostar
