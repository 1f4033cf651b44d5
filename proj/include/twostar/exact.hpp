#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "twostar/graph.hpp"
#include "twostar/params.hpp"

namespace twostar {

enum class HamiltonianKind { scalar, generalized, ergm };

struct EnumerationOptions {
    int max_active_edges = 24;  // hard cap on 2^k configuration sweeps
    int moment_table_cap = 20;  // all-subset moment tables up to 2^cap entries
    int threads = 0;            // 0 = hardware concurrency
};

// All-subset monomial expectations E[x_S], indexed by local mask over the
// active edges of the system that produced the table.
struct MomentTable {
    std::vector<double> by_local_mask;
    std::vector<int> active;    // local index -> global edge id
    std::vector<int> local_of;  // global edge id -> local index, -1 if inactive

    double by_mask(std::uint32_t local_mask) const { return by_local_mask[local_mask]; }
    // Monomial over global edge ids (duplicates allowed; x_i is idempotent).
    double monomial(std::span<const int> global_edges) const;
};

// A two-star (or general ERGM) Gibbs system on an edge subset of K_n,
// solved exactly by full configuration enumeration. Immutable once built;
// the log-partition value is computed on construction.
class ExactSystem {
public:
    ExactSystem(const EdgeIndexing& idx, Params params, EnumerationOptions opts = {});

    // Restriction to A: wedge set W_A and fields on A only; the 1/n coupling
    // scale keeps the ambient n.
    ExactSystem restrict_to(const std::vector<int>& active_global) const;

    int n() const { return idx_.n(); }
    int ambient_edge_count() const { return idx_.m(); }
    int active_count() const { return static_cast<int>(active_.size()); }
    const std::vector<int>& active_edges() const { return active_; }
    bool is_active(int edge) const { return local_of_[static_cast<std::size_t>(edge)] >= 0; }
    bool is_full() const { return active_count() == ambient_edge_count(); }

    const EdgeIndexing& indexing() const { return idx_; }
    const WedgeList& ambient_wedges() const { return wedges_; }
    const Params& params() const { return params_; }
    HamiltonianKind kind() const { return kind_; }
    const EnumerationOptions& options() const { return opts_; }

    // Coupling/field access (scalar and generalized kinds).
    double wedge_coupling(int ambient_wedge_index) const;
    double edge_field(int edge) const;

    double hamiltonian(const Config& c) const;
    double log_partition() const { return log_z_; }
    double free_energy() const;  // log_partition / n^2
    double probability_total() const;

    double expectation_monomial(std::span<const int> global_edges) const;
    double expectation(const std::function<double(const Config&)>& f) const;
    double edge_occurrence_rhs(int edge) const;
    double mean_edge_count() const;
    double mean_wedge_pairs() const;

    MomentTable moment_table() const;
    // Hamiltonian of every configuration, indexed by local mask.
    std::vector<double> hamiltonian_table() const;

private:
    ExactSystem() = default;
    void finalize();
    double ham_local(std::uint32_t local_mask) const;
    void stats_local(std::uint32_t local_mask, int& edges, int& wedge_pairs) const;
    double compute_log_partition() const;

    EdgeIndexing idx_{1};
    WedgeList wedges_;
    Params params_;
    EnumerationOptions opts_;
    HamiltonianKind kind_ = HamiltonianKind::scalar;

    std::vector<int> active_;    // sorted global edge ids
    std::vector<int> local_of_;  // global -> local, -1 if inactive
    double log_z_ = 0.0;

    // Evaluation tables over local indices.
    double scalar_alpha_over_n_ = 0.0;
    double scalar_h_ = 0.0;
    std::vector<std::uint32_t> adj_below_;  // adjacency mask of smaller local ids
    std::vector<double> h_local_;
    std::vector<std::vector<std::pair<int, double>>> coupled_below_;  // (local j, alpha_ij/n)
    double ergm_edge_coeff_ = 0.0;
    double ergm_wedge_coeff_ = 0.0;
    double ergm_triangle_coeff_ = 0.0;
    std::vector<std::uint32_t> triangle_masks_;
};

}  // namespace twostar
