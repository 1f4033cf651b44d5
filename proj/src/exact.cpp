#include "twostar/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "twostar/numeric.hpp"

namespace twostar {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

double MomentTable::monomial(std::span<const int> global_edges) const {
    std::uint32_t mask = 0;
    for (int e : global_edges) {
        if (e < 0 || static_cast<std::size_t>(e) >= local_of.size() || local_of[static_cast<std::size_t>(e)] < 0)
            throw std::invalid_argument("MomentTable::monomial: edge " + std::to_string(e) +
                                        " is not in the active subset");
        mask |= std::uint32_t{1} << local_of[static_cast<std::size_t>(e)];
    }
    return by_local_mask[mask];
}

ExactSystem::ExactSystem(const EdgeIndexing& idx, Params params, EnumerationOptions opts)
    : idx_(idx), wedges_(WedgeList::build(idx)), params_(std::move(params)), opts_(opts) {
    active_.resize(static_cast<std::size_t>(idx_.m()));
    for (int i = 0; i < idx_.m(); ++i) active_[static_cast<std::size_t>(i)] = i;
    finalize();
}

ExactSystem ExactSystem::restrict_to(const std::vector<int>& active_global) const {
    if (kind_ == HamiltonianKind::ergm)
        throw std::invalid_argument("restrict_to: restriction is defined for wedge-interaction Hamiltonians only");
    ExactSystem sub;
    sub.idx_ = idx_;
    sub.wedges_ = wedges_;
    sub.params_ = params_;
    sub.opts_ = opts_;
    sub.active_ = active_global;
    std::sort(sub.active_.begin(), sub.active_.end());
    sub.active_.erase(std::unique(sub.active_.begin(), sub.active_.end()), sub.active_.end());
    for (int e : sub.active_)
        if (!is_active(e))
            throw std::invalid_argument("restrict_to: edge " + std::to_string(e) +
                                        " is not active in the parent system");
    sub.finalize();
    return sub;
}

void ExactSystem::finalize() {
    const int k = active_count();
    if (k > opts_.max_active_edges)
        throw std::invalid_argument("ExactSystem: " + std::to_string(k) +
                                    " active edges exceed the enumeration cap of " +
                                    std::to_string(opts_.max_active_edges) +
                                    "; use the MCMC sampler for systems this large");
    if (k > 31) throw std::invalid_argument("ExactSystem: local masks limited to 31 edges");

    local_of_.assign(static_cast<std::size_t>(idx_.m()), -1);
    for (int a = 0; a < k; ++a) local_of_[static_cast<std::size_t>(active_[static_cast<std::size_t>(a)])] = a;

    const double inv_n = 1.0 / idx_.n();

    adj_below_.assign(static_cast<std::size_t>(k), 0u);
    if (std::holds_alternative<ScalarParams>(params_)) {
        kind_ = HamiltonianKind::scalar;
        const auto& p = std::get<ScalarParams>(params_);
        scalar_alpha_over_n_ = p.alpha * inv_n;
        scalar_h_ = p.h;
    } else if (std::holds_alternative<GeneralizedParams>(params_)) {
        kind_ = HamiltonianKind::generalized;
        const auto& p = std::get<GeneralizedParams>(params_);
        if (p.alpha_by_wedge.size() != wedges_.size() ||
            p.h_by_edge.size() != static_cast<std::size_t>(idx_.m()))
            throw std::invalid_argument("GeneralizedParams: coupling sizes do not match W_n / E_n");
        h_local_.assign(static_cast<std::size_t>(k), 0.0);
        for (int a = 0; a < k; ++a)
            h_local_[static_cast<std::size_t>(a)] = p.h_by_edge[static_cast<std::size_t>(active_[static_cast<std::size_t>(a)])];
        coupled_below_.assign(static_cast<std::size_t>(k), {});
    } else {
        kind_ = HamiltonianKind::ergm;
        const auto& p = std::get<ErgmParams>(params_);
        p.validate();
        ergm_edge_coeff_ = ergm_wedge_coeff_ = ergm_triangle_coeff_ = 0.0;
        for (std::size_t j = 0; j < p.patterns.size(); ++j) {
            const double beta = p.betas[j];
            switch (p.patterns[j].tag) {
                case PatternTag::edge: ergm_edge_coeff_ += 2.0 * beta; break;
                case PatternTag::wedge:
                    ergm_wedge_coeff_ += 2.0 * beta * inv_n;
                    ergm_edge_coeff_ += 2.0 * beta * inv_n;
                    break;
                case PatternTag::triangle: ergm_triangle_coeff_ += 6.0 * beta * inv_n; break;
            }
        }
        triangle_masks_.clear();
        for (const auto& t : triangle_edge_triples(idx_)) {
            if (is_active(t[0]) && is_active(t[1]) && is_active(t[2])) {
                std::uint32_t mask = 0;
                for (int e : t) mask |= std::uint32_t{1} << local_of_[static_cast<std::size_t>(e)];
                triangle_masks_.push_back(mask);
            }
        }
    }

    // Wedge pairs restricted to the active set, as below-diagonal adjacency masks.
    for (std::size_t w = 0; w < wedges_.size(); ++w) {
        const auto [i, j] = wedges_.pairs[w];
        const int a = local_of_[static_cast<std::size_t>(i)];
        const int b = local_of_[static_cast<std::size_t>(j)];
        if (a < 0 || b < 0) continue;
        const int lo = std::min(a, b), hi = std::max(a, b);
        adj_below_[static_cast<std::size_t>(hi)] |= std::uint32_t{1} << lo;
        if (kind_ == HamiltonianKind::generalized) {
            const auto& p = std::get<GeneralizedParams>(params_);
            coupled_below_[static_cast<std::size_t>(hi)].emplace_back(lo, p.alpha_by_wedge[w] * inv_n);
        }
    }

    log_z_ = compute_log_partition();
}

double ExactSystem::ham_local(std::uint32_t mask) const {
    switch (kind_) {
        case HamiltonianKind::scalar: {
            int wp = 0;
            for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
                const int a = std::countr_zero(rest);
                wp += std::popcount(mask & adj_below_[static_cast<std::size_t>(a)]);
            }
            return scalar_alpha_over_n_ * wp + scalar_h_ * std::popcount(mask);
        }
        case HamiltonianKind::generalized: {
            double total = 0.0;
            for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
                const int a = std::countr_zero(rest);
                total += h_local_[static_cast<std::size_t>(a)];
                for (const auto& [b, coupling] : coupled_below_[static_cast<std::size_t>(a)])
                    if (mask & (std::uint32_t{1} << b)) total += coupling;
            }
            return total;
        }
        case HamiltonianKind::ergm: {
            const int edges = std::popcount(mask);
            int wp = 0;
            for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
                const int a = std::countr_zero(rest);
                wp += std::popcount(mask & adj_below_[static_cast<std::size_t>(a)]);
            }
            int tri = 0;
            for (std::uint32_t t : triangle_masks_)
                if ((mask & t) == t) ++tri;
            return ergm_edge_coeff_ * edges + ergm_wedge_coeff_ * wp + ergm_triangle_coeff_ * tri;
        }
    }
    return 0.0;
}

void ExactSystem::stats_local(std::uint32_t mask, int& edges, int& wedge_pairs) const {
    edges = std::popcount(mask);
    wedge_pairs = 0;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        const int a = std::countr_zero(rest);
        wedge_pairs += std::popcount(mask & adj_below_[static_cast<std::size_t>(a)]);
    }
}

double ExactSystem::compute_log_partition() const {
    const int k = active_count();
    const std::uint64_t total = std::uint64_t{1} << k;

    // Pass 1: maximum Hamiltonian value (order-independent).
    // Pass 2: Kahan sums of exp(H - max) per fixed block, merged in block order,
    // so the result does not depend on the thread count.
    const int threads = std::min(resolve_threads(opts_.threads), 8);
    const int blocks = (k >= 18 && threads > 1) ? 64 : 1;
    const std::uint64_t block_size = (total + blocks - 1) / blocks;

    std::vector<double> block_max(static_cast<std::size_t>(blocks), -std::numeric_limits<double>::infinity());
    std::vector<double> block_sum(static_cast<std::size_t>(blocks), 0.0);

    auto scan_max = [&](int block) {
        const std::uint64_t lo = block * block_size;
        const std::uint64_t hi = std::min(total, lo + block_size);
        double mx = -std::numeric_limits<double>::infinity();
        for (std::uint64_t mask = lo; mask < hi; ++mask)
            mx = std::max(mx, ham_local(static_cast<std::uint32_t>(mask)));
        block_max[static_cast<std::size_t>(block)] = mx;
    };
    auto run_blocks = [&](auto&& fn) {
        if (blocks == 1) {
            fn(0);
            return;
        }
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int b = t; b < blocks; b += threads) fn(b);
            });
        for (auto& th : pool) th.join();
    };

    run_blocks(scan_max);
    double h_max = -std::numeric_limits<double>::infinity();
    for (double mx : block_max) h_max = std::max(h_max, mx);

    auto scan_sum = [&](int block) {
        const std::uint64_t lo = block * block_size;
        const std::uint64_t hi = std::min(total, lo + block_size);
        KahanSum acc;
        for (std::uint64_t mask = lo; mask < hi; ++mask)
            acc.add(std::exp(ham_local(static_cast<std::uint32_t>(mask)) - h_max));
        block_sum[static_cast<std::size_t>(block)] = acc.value();
    };
    run_blocks(scan_sum);

    KahanSum z;
    for (double s : block_sum) z.add(s);
    return h_max + std::log(z.value());
}

double ExactSystem::wedge_coupling(int ambient_wedge_index) const {
    if (ambient_wedge_index < 0 || static_cast<std::size_t>(ambient_wedge_index) >= wedges_.size())
        throw std::out_of_range("wedge_coupling: bad wedge index");
    switch (kind_) {
        case HamiltonianKind::scalar: return std::get<ScalarParams>(params_).alpha;
        case HamiltonianKind::generalized:
            return std::get<GeneralizedParams>(params_).alpha_by_wedge[static_cast<std::size_t>(ambient_wedge_index)];
        case HamiltonianKind::ergm: break;
    }
    throw std::invalid_argument("wedge_coupling: not defined for ERGM parameters");
}

double ExactSystem::edge_field(int edge) const {
    if (edge < 0 || edge >= idx_.m()) throw std::out_of_range("edge_field: bad edge id");
    switch (kind_) {
        case HamiltonianKind::scalar: return std::get<ScalarParams>(params_).h;
        case HamiltonianKind::generalized:
            return std::get<GeneralizedParams>(params_).h_by_edge[static_cast<std::size_t>(edge)];
        case HamiltonianKind::ergm: break;
    }
    throw std::invalid_argument("edge_field: not defined for ERGM parameters");
}

double ExactSystem::hamiltonian(const Config& c) const {
    if (c.size() != idx_.m())
        throw std::invalid_argument("hamiltonian: configuration length does not match the ambient edge set");
    std::uint32_t mask = 0;
    for (int e = 0; e < idx_.m(); ++e) {
        if (!c.test(e)) continue;
        const int a = local_of_[static_cast<std::size_t>(e)];
        if (a < 0)
            throw std::invalid_argument("hamiltonian: configuration is not supported on the active subset (edge " +
                                        std::to_string(e) + " is set)");
        mask |= std::uint32_t{1} << a;
    }
    return ham_local(mask);
}

double ExactSystem::free_energy() const {
    const double n = idx_.n();
    return log_z_ / (n * n);
}

double ExactSystem::probability_total() const {
    const std::uint64_t total = std::uint64_t{1} << active_count();
    KahanSum acc;
    for (std::uint64_t mask = 0; mask < total; ++mask)
        acc.add(std::exp(ham_local(static_cast<std::uint32_t>(mask)) - log_z_));
    return acc.value();
}

double ExactSystem::expectation_monomial(std::span<const int> global_edges) const {
    std::uint32_t required = 0;
    for (int e : global_edges) {
        if (e < 0 || e >= idx_.m() || local_of_[static_cast<std::size_t>(e)] < 0)
            throw std::invalid_argument("expectation_monomial: edge " + std::to_string(e) +
                                        " is not in the active subset");
        required |= std::uint32_t{1} << local_of_[static_cast<std::size_t>(e)];
    }
    const std::uint64_t total = std::uint64_t{1} << active_count();
    KahanSum acc;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto m32 = static_cast<std::uint32_t>(mask);
        if ((m32 & required) == required) acc.add(std::exp(ham_local(m32) - log_z_));
    }
    return acc.value();
}

double ExactSystem::expectation(const std::function<double(const Config&)>& f) const {
    const std::uint64_t total = std::uint64_t{1} << active_count();
    Config scratch(idx_.m());
    std::uint32_t prev = 0;
    KahanSum acc;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto m32 = static_cast<std::uint32_t>(mask);
        for (std::uint32_t diff = m32 ^ prev; diff != 0; diff &= diff - 1) {
            const int a = std::countr_zero(diff);
            scratch.set(active_[static_cast<std::size_t>(a)], (m32 >> a) & 1u);
        }
        prev = m32;
        acc.add(f(scratch) * std::exp(ham_local(m32) - log_z_));
    }
    return acc.value();
}

double ExactSystem::edge_occurrence_rhs(int edge) const {
    if (kind_ == HamiltonianKind::ergm)
        throw std::invalid_argument("edge_occurrence_rhs: defined for wedge-interaction Hamiltonians only");
    if (edge < 0 || edge >= idx_.m() || local_of_[static_cast<std::size_t>(edge)] < 0)
        throw std::invalid_argument("edge_occurrence_rhs: edge is not active");

    // Active wedge partners of `edge` with their couplings alpha_ij / n.
    std::vector<std::pair<int, double>> partners;
    const double inv_n = 1.0 / idx_.n();
    for (std::size_t w = 0; w < wedges_.size(); ++w) {
        const auto [i, j] = wedges_.pairs[w];
        int other = -1;
        if (i == edge) other = j;
        if (j == edge) other = i;
        if (other < 0) continue;
        const int b = local_of_[static_cast<std::size_t>(other)];
        if (b < 0) continue;
        partners.emplace_back(b, wedge_coupling(static_cast<int>(w)) * inv_n);
    }
    const double field = edge_field(edge);

    const std::uint64_t total = std::uint64_t{1} << active_count();
    KahanSum acc;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto m32 = static_cast<std::uint32_t>(mask);
        double arg = field;
        for (const auto& [b, coupling] : partners)
            if (m32 & (std::uint32_t{1} << b)) arg += coupling;
        acc.add(sigmoid(arg) * std::exp(ham_local(m32) - log_z_));
    }
    return acc.value();
}

double ExactSystem::mean_edge_count() const {
    const std::uint64_t total = std::uint64_t{1} << active_count();
    KahanSum acc;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto m32 = static_cast<std::uint32_t>(mask);
        acc.add(std::popcount(m32) * std::exp(ham_local(m32) - log_z_));
    }
    return acc.value();
}

double ExactSystem::mean_wedge_pairs() const {
    const std::uint64_t total = std::uint64_t{1} << active_count();
    KahanSum acc;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        const auto m32 = static_cast<std::uint32_t>(mask);
        int edges = 0, wp = 0;
        stats_local(m32, edges, wp);
        acc.add(wp * std::exp(ham_local(m32) - log_z_));
    }
    return acc.value();
}

MomentTable ExactSystem::moment_table() const {
    const int k = active_count();
    if (k > opts_.moment_table_cap)
        throw std::invalid_argument("moment_table: " + std::to_string(k) +
                                    " active edges exceed the table cap of " +
                                    std::to_string(opts_.moment_table_cap));
    const std::uint64_t total = std::uint64_t{1} << k;
    MomentTable table;
    table.active = active_;
    table.local_of = local_of_;
    table.by_local_mask.resize(total);
    for (std::uint64_t mask = 0; mask < total; ++mask)
        table.by_local_mask[mask] = std::exp(ham_local(static_cast<std::uint32_t>(mask)) - log_z_);
    // Superset-sum transform: entry S becomes sum of probabilities over T >= S,
    // i.e. the monomial expectation E[x_S].
    for (int b = 0; b < k; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        for (std::uint64_t mask = 0; mask < total; ++mask)
            if (!(mask & bit)) table.by_local_mask[mask] += table.by_local_mask[mask | bit];
    }
    return table;
}

std::vector<double> ExactSystem::hamiltonian_table() const {
    const int k = active_count();
    if (k > opts_.moment_table_cap)
        throw std::invalid_argument("hamiltonian_table: active edge count exceeds the table cap");
    const std::uint64_t total = std::uint64_t{1} << k;
    std::vector<double> table(total);
    for (std::uint64_t mask = 0; mask < total; ++mask)
        table[mask] = ham_local(static_cast<std::uint32_t>(mask));
    return table;
}

}  // namespace twostar
