#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "twostar/exact.hpp"
#include "twostar/inequalities.hpp"

namespace twostar {

// Variables of the doubled system: z_i = x_i - y_i and v_i = (x_i + y_i)/2,
// indexed by global edge id.
struct ZVState {
    std::vector<int> z;     // in {-1, 0, +1}
    std::vector<double> v;  // in {0, 1/2, 1}
};

ZVState to_zv(const Config& x, const Config& y);

using ZFunctional = std::function<double(std::span<const int>)>;
using VFunctional = std::function<double(std::span<const double>)>;

// Monomial helpers; repeated ids multiply (z and v are not idempotent).
ZFunctional z_monomial(std::vector<int> edges);
VFunctional v_monomial(std::vector<int> edges);

struct DecompositionReport {
    long long states_checked = 0;
    double max_abs_error = 0.0;
    bool pass = false;
};

// H(x) + H(y) = H^1(z) + H^2(v) over every doubled state (4^m of them).
DecompositionReport check_decomposition(const ExactSystem& sys);

struct MixtureWeights {
    std::vector<double> p;           // P(A), indexed by local sector mask
    std::vector<double> log_weight;  // ln(Z^Is e^{c_A} Z_v) before normalization
    std::vector<int> active;
    double total = 0.0;  // sum of p, equals 1 up to accumulation error
};

// Sector decomposition of two independent copies of a wedge-interaction
// system: for each agreement set A, an Ising subsystem on A^c (spins z,
// coupling alpha/(2n), zero field) and a shifted two-star subsystem on A
// (occupancies v, couplings 2*alpha, fields 2h + neighbor shift). The
// additive constant of the shifted Hamiltonian is kept as a weight factor so
// the sector weights form a probability.
class DoubledSystem {
public:
    explicit DoubledSystem(const ExactSystem& sys);

    int sector_count_log2() const { return k_; }
    const std::vector<int>& active() const { return active_; }

    double sector_log_weight(std::uint32_t sector) const;
    MixtureWeights mixture_weights() const;

    // f^Phi(A): average of Phi(z) under the Ising subsystem, z pinned to 0 on A.
    double ising_average(std::uint32_t sector, const ZFunctional& phi) const;
    // g^Psi(A): average of Psi(v) under the shifted subsystem, v pinned to 1/2 on A^c.
    double shifted_average(std::uint32_t sector, const VFunctional& psi) const;

    // Sum over sectors of P(A) f^Phi(A) g^Psi(A).
    double mixture_expectation(const ZFunctional& phi, const VFunctional& psi) const;
    // Direct enumeration of the doubled measure (4^m states).
    double doubled_expectation(const ZFunctional& phi, const VFunctional& psi) const;

    std::uint32_t sector_mask_of(std::span<const int> global_edges) const;

private:
    struct LocalWedge {
        int a;
        int b;
        double alpha;
    };

    int n_ = 0;
    int k_ = 0;
    int ambient_m_ = 0;
    double log_z_ = 0.0;
    std::vector<int> active_;
    std::vector<int> local_of_;
    std::vector<LocalWedge> wedges_;
    std::vector<double> h_local_;
    const ExactSystem* sys_ = nullptr;
};

// Prop. 3.12-style correlations of the doubled measure:
// E(z_C z_D) >= E(z_C) E(z_D) and E(z_C v_D) <= E(z_C) E(v_D).
struct ZVInequalityReport {
    std::string point;
    double zz_violation = 0.0;  // E(z_C)E(z_D) - E(z_C z_D)
    double zv_violation = 0.0;  // E(z_C v_D) - E(z_C)E(v_D)
    double slack = 1e-12;
    bool pass = false;
};

ZVInequalityReport verify_zv_inequalities(const ExactSystem& sys, std::span<const int> subset_c,
                                          std::span<const int> subset_d);

// u_3(i,j,k) = E(z_i z_j v_k) - E(z_i z_j) E(v_k).
struct U3RepresentationReport {
    double u3_direct = 0.0;
    double u3_doubled = 0.0;
    double abs_error = 0.0;
    bool pass = false;
};

U3RepresentationReport verify_u3_representation(const ExactSystem& sys, int i, int j, int k);

// f^{z_C} is non-increasing and g^{v_D} non-decreasing along A <= B.
struct SectorMonotonicityReport {
    double f_at_a = 0.0;
    double f_at_b = 0.0;
    double g_at_a = 0.0;
    double g_at_b = 0.0;
    double slack = 1e-12;
    bool pass = false;
};

SectorMonotonicityReport verify_sector_monotonicity(const ExactSystem& sys, std::span<const int> subset_c,
                                                    std::span<const int> subset_d,
                                                    std::span<const int> sector_a,
                                                    std::span<const int> sector_b);

// FKG lattice condition of the sector weights:
// P(E) P(F) <= P(E u F) P(E n F), compared in log space.
InequalityReport verify_p_lattice(const MixtureWeights& weights);

}  // namespace twostar
