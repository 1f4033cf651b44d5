#include "twostar/duplication.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "twostar/numeric.hpp"

namespace twostar {

namespace {

constexpr int kDoubledCap = 10;  // 4^10 doubled states
constexpr int kSectorCap = 12;   // 2^12 sectors

void require_wedge_kind(const ExactSystem& sys, const char* who) {
    if (sys.kind() == HamiltonianKind::ergm)
        throw std::invalid_argument(std::string(who) +
                                    ": variable duplication needs a wedge-interaction Hamiltonian");
}

std::string point_str(const ExactSystem& sys) {
    std::ostringstream out;
    out << "n=" << sys.n();
    if (sys.kind() == HamiltonianKind::scalar) {
        const auto& p = std::get<ScalarParams>(sys.params());
        out << " alpha=" << p.alpha << " h=" << p.h;
    } else {
        out << " (generalized params)";
    }
    return out.str();
}

}  // namespace

ZVState to_zv(const Config& x, const Config& y) {
    if (x.size() != y.size()) throw std::invalid_argument("to_zv: copies live on different edge sets");
    ZVState state;
    state.z.resize(static_cast<std::size_t>(x.size()));
    state.v.resize(static_cast<std::size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i) {
        const int xi = x.test(i) ? 1 : 0, yi = y.test(i) ? 1 : 0;
        state.z[static_cast<std::size_t>(i)] = xi - yi;
        state.v[static_cast<std::size_t>(i)] = 0.5 * (xi + yi);
    }
    return state;
}

ZFunctional z_monomial(std::vector<int> edges) {
    return [edges = std::move(edges)](std::span<const int> z) {
        double prod = 1.0;
        for (int e : edges) prod *= z[static_cast<std::size_t>(e)];
        return prod;
    };
}

VFunctional v_monomial(std::vector<int> edges) {
    return [edges = std::move(edges)](std::span<const double> v) {
        double prod = 1.0;
        for (int e : edges) prod *= v[static_cast<std::size_t>(e)];
        return prod;
    };
}

DecompositionReport check_decomposition(const ExactSystem& sys) {
    require_wedge_kind(sys, "check_decomposition");
    const int k = sys.active_count();
    if (k > kDoubledCap)
        throw std::invalid_argument("check_decomposition: more than " + std::to_string(kDoubledCap) +
                                    " active edges");
    const auto& active = sys.active_edges();
    const int ambient = sys.ambient_edge_count();
    const double n = sys.n();

    // Couplings of the active wedges, as index pairs into the ambient edges.
    struct W {
        int i, j;
        double alpha;
    };
    std::vector<W> wedges;
    const auto& ambient_wedges = sys.ambient_wedges();
    for (std::size_t w = 0; w < ambient_wedges.size(); ++w) {
        const auto [i, j] = ambient_wedges.pairs[w];
        if (sys.is_active(i) && sys.is_active(j))
            wedges.push_back({i, j, sys.wedge_coupling(static_cast<int>(w))});
    }

    DecompositionReport report;
    const std::uint64_t total = std::uint64_t{1} << k;
    Config x(ambient), y(ambient);
    for (std::uint64_t mx = 0; mx < total; ++mx) {
        for (int a = 0; a < k; ++a) x.set(active[static_cast<std::size_t>(a)], ((mx >> a) & 1u) != 0);
        const double hx = sys.hamiltonian(x);
        for (std::uint64_t my = 0; my < total; ++my) {
            for (int a = 0; a < k; ++a) y.set(active[static_cast<std::size_t>(a)], ((my >> a) & 1u) != 0);
            const double hy = sys.hamiltonian(y);
            const auto zv = to_zv(x, y);

            // H^1(z) = (1/2n) sum alpha z z;  H^2(v) = (2/n) sum alpha v v + 2 sum h v.
            double h1 = 0.0, h2 = 0.0;
            for (const auto& w : wedges) {
                h1 += w.alpha * zv.z[static_cast<std::size_t>(w.i)] * zv.z[static_cast<std::size_t>(w.j)];
                h2 += w.alpha * zv.v[static_cast<std::size_t>(w.i)] * zv.v[static_cast<std::size_t>(w.j)];
            }
            h1 /= 2.0 * n;
            h2 *= 2.0 / n;
            for (int e : active) h2 += 2.0 * sys.edge_field(e) * zv.v[static_cast<std::size_t>(e)];

            report.max_abs_error = std::max(report.max_abs_error, std::fabs(hx + hy - h1 - h2));
            ++report.states_checked;
        }
    }
    report.pass = report.max_abs_error <= 1e-12;
    return report;
}

DoubledSystem::DoubledSystem(const ExactSystem& sys) : sys_(&sys) {
    require_wedge_kind(sys, "DoubledSystem");
    k_ = sys.active_count();
    if (k_ > kSectorCap)
        throw std::invalid_argument("DoubledSystem: more than " + std::to_string(kSectorCap) +
                                    " active edges");
    n_ = sys.n();
    ambient_m_ = sys.ambient_edge_count();
    log_z_ = sys.log_partition();
    active_ = sys.active_edges();
    local_of_.assign(static_cast<std::size_t>(ambient_m_), -1);
    for (int a = 0; a < k_; ++a) local_of_[static_cast<std::size_t>(active_[static_cast<std::size_t>(a)])] = a;

    const auto& ambient_wedges = sys.ambient_wedges();
    for (std::size_t w = 0; w < ambient_wedges.size(); ++w) {
        const auto [i, j] = ambient_wedges.pairs[w];
        const int a = local_of_[static_cast<std::size_t>(i)];
        const int b = local_of_[static_cast<std::size_t>(j)];
        if (a >= 0 && b >= 0) wedges_.push_back({a, b, sys.wedge_coupling(static_cast<int>(w))});
    }
    h_local_.resize(static_cast<std::size_t>(k_));
    for (int a = 0; a < k_; ++a)
        h_local_[static_cast<std::size_t>(a)] = sys.edge_field(active_[static_cast<std::size_t>(a)]);
}

std::uint32_t DoubledSystem::sector_mask_of(std::span<const int> global_edges) const {
    std::uint32_t mask = 0;
    for (int e : global_edges) {
        if (e < 0 || e >= ambient_m_ || local_of_[static_cast<std::size_t>(e)] < 0)
            throw std::invalid_argument("DoubledSystem: edge " + std::to_string(e) + " is not active");
        mask |= std::uint32_t{1} << local_of_[static_cast<std::size_t>(e)];
    }
    return mask;
}

double DoubledSystem::sector_log_weight(std::uint32_t sector) const {
    const std::uint32_t comp = ~sector & ((std::uint32_t{1} << k_) - 1u);

    // Ising part on A^c: coupling alpha/(2n), zero field, spins +-1.
    std::vector<int> sites;
    for (std::uint32_t rest = comp; rest != 0; rest &= rest - 1) sites.push_back(std::countr_zero(rest));
    std::vector<int> site_pos(static_cast<std::size_t>(k_), -1);
    for (std::size_t s = 0; s < sites.size(); ++s) site_pos[static_cast<std::size_t>(sites[s])] = static_cast<int>(s);
    struct IsingPair {
        int a, b;
        double beta;
    };
    std::vector<IsingPair> pairs;
    double c_sector = 0.0;  // (1/2n) sum_{W_{A^c}} alpha + sum_{A^c} h
    for (const auto& w : wedges_) {
        const bool ia = (comp >> w.a) & 1u, ib = (comp >> w.b) & 1u;
        if (ia && ib) {
            pairs.push_back({site_pos[static_cast<std::size_t>(w.a)], site_pos[static_cast<std::size_t>(w.b)],
                             w.alpha / (2.0 * n_)});
            c_sector += w.alpha / (2.0 * n_);
        }
    }
    for (std::uint32_t rest = comp; rest != 0; rest &= rest - 1)
        c_sector += h_local_[static_cast<std::size_t>(std::countr_zero(rest))];

    KahanSum z_ising;
    const std::uint64_t spin_total = std::uint64_t{1} << sites.size();
    for (std::uint64_t s = 0; s < spin_total; ++s) {
        double h1 = 0.0;
        for (const auto& p : pairs) {
            const double sa = ((s >> p.a) & 1u) ? 1.0 : -1.0;
            const double sb = ((s >> p.b) & 1u) ? 1.0 : -1.0;
            h1 += p.beta * sa * sb;
        }
        z_ising.add(std::exp(h1));
    }

    // Shifted two-star part on A: couplings 2*alpha, fields 2h + neighbor shift.
    std::vector<int> members;
    for (std::uint32_t rest = sector; rest != 0; rest &= rest - 1) members.push_back(std::countr_zero(rest));
    std::vector<int> member_pos(static_cast<std::size_t>(k_), -1);
    for (std::size_t s = 0; s < members.size(); ++s)
        member_pos[static_cast<std::size_t>(members[s])] = static_cast<int>(s);
    std::vector<double> shifted_field(members.size());
    for (std::size_t s = 0; s < members.size(); ++s)
        shifted_field[s] = 2.0 * h_local_[static_cast<std::size_t>(members[s])];
    struct VPair {
        int a, b;
        double coupling;
    };
    std::vector<VPair> vpairs;
    for (const auto& w : wedges_) {
        const bool ia = (sector >> w.a) & 1u, ib = (sector >> w.b) & 1u;
        if (ia && ib) {
            vpairs.push_back({member_pos[static_cast<std::size_t>(w.a)],
                              member_pos[static_cast<std::size_t>(w.b)], 2.0 * w.alpha / n_});
        } else if (ia && !ib) {
            shifted_field[static_cast<std::size_t>(member_pos[static_cast<std::size_t>(w.a)])] += w.alpha / n_;
        } else if (!ia && ib) {
            shifted_field[static_cast<std::size_t>(member_pos[static_cast<std::size_t>(w.b)])] += w.alpha / n_;
        }
    }
    KahanSum z_shifted;
    const std::uint64_t occ_total = std::uint64_t{1} << members.size();
    for (std::uint64_t occ = 0; occ < occ_total; ++occ) {
        double h2 = 0.0;
        for (std::size_t s = 0; s < members.size(); ++s)
            if ((occ >> s) & 1u) h2 += shifted_field[s];
        for (const auto& p : vpairs)
            if (((occ >> p.a) & 1u) && ((occ >> p.b) & 1u)) h2 += p.coupling;
        z_shifted.add(std::exp(h2));
    }

    return std::log(z_ising.value()) + c_sector + std::log(z_shifted.value());
}

MixtureWeights DoubledSystem::mixture_weights() const {
    MixtureWeights weights;
    weights.active = active_;
    const std::uint64_t sectors = std::uint64_t{1} << k_;
    weights.log_weight.resize(sectors);
    weights.p.resize(sectors);
    for (std::uint64_t a = 0; a < sectors; ++a)
        weights.log_weight[a] = sector_log_weight(static_cast<std::uint32_t>(a));
    KahanSum total;
    for (std::uint64_t a = 0; a < sectors; ++a) {
        weights.p[a] = std::exp(weights.log_weight[a] - 2.0 * log_z_);
        total.add(weights.p[a]);
    }
    weights.total = total.value();
    return weights;
}

double DoubledSystem::ising_average(std::uint32_t sector, const ZFunctional& phi) const {
    const std::uint32_t comp = ~sector & ((std::uint32_t{1} << k_) - 1u);
    std::vector<int> sites;
    for (std::uint32_t rest = comp; rest != 0; rest &= rest - 1) sites.push_back(std::countr_zero(rest));
    struct IsingPair {
        std::size_t a, b;
        double beta;
    };
    std::vector<int> site_pos(static_cast<std::size_t>(k_), -1);
    for (std::size_t s = 0; s < sites.size(); ++s) site_pos[static_cast<std::size_t>(sites[s])] = static_cast<int>(s);
    std::vector<IsingPair> pairs;
    for (const auto& w : wedges_)
        if (((comp >> w.a) & 1u) && ((comp >> w.b) & 1u))
            pairs.push_back({static_cast<std::size_t>(site_pos[static_cast<std::size_t>(w.a)]),
                             static_cast<std::size_t>(site_pos[static_cast<std::size_t>(w.b)]),
                             w.alpha / (2.0 * n_)});

    std::vector<int> z(static_cast<std::size_t>(ambient_m_), 0);
    KahanSum zsum, fsum;
    const std::uint64_t spin_total = std::uint64_t{1} << sites.size();
    for (std::uint64_t s = 0; s < spin_total; ++s) {
        double h1 = 0.0;
        for (const auto& p : pairs) {
            const double sa = ((s >> p.a) & 1u) ? 1.0 : -1.0;
            const double sb = ((s >> p.b) & 1u) ? 1.0 : -1.0;
            h1 += p.beta * sa * sb;
        }
        for (std::size_t t = 0; t < sites.size(); ++t)
            z[static_cast<std::size_t>(active_[static_cast<std::size_t>(sites[t])])] =
                ((s >> t) & 1u) ? 1 : -1;
        const double w = std::exp(h1);
        zsum.add(w);
        fsum.add(phi(z) * w);
    }
    for (std::size_t t = 0; t < sites.size(); ++t)
        z[static_cast<std::size_t>(active_[static_cast<std::size_t>(sites[t])])] = 0;
    return fsum.value() / zsum.value();
}

double DoubledSystem::shifted_average(std::uint32_t sector, const VFunctional& psi) const {
    std::vector<int> members;
    for (std::uint32_t rest = sector; rest != 0; rest &= rest - 1) members.push_back(std::countr_zero(rest));
    std::vector<int> member_pos(static_cast<std::size_t>(k_), -1);
    for (std::size_t s = 0; s < members.size(); ++s)
        member_pos[static_cast<std::size_t>(members[s])] = static_cast<int>(s);
    std::vector<double> shifted_field(members.size());
    for (std::size_t s = 0; s < members.size(); ++s)
        shifted_field[s] = 2.0 * h_local_[static_cast<std::size_t>(members[s])];
    struct VPair {
        std::size_t a, b;
        double coupling;
    };
    std::vector<VPair> vpairs;
    for (const auto& w : wedges_) {
        const bool ia = (sector >> w.a) & 1u, ib = (sector >> w.b) & 1u;
        if (ia && ib)
            vpairs.push_back({static_cast<std::size_t>(member_pos[static_cast<std::size_t>(w.a)]),
                              static_cast<std::size_t>(member_pos[static_cast<std::size_t>(w.b)]),
                              2.0 * w.alpha / n_});
        else if (ia)
            shifted_field[static_cast<std::size_t>(member_pos[static_cast<std::size_t>(w.a)])] += w.alpha / n_;
        else if (ib)
            shifted_field[static_cast<std::size_t>(member_pos[static_cast<std::size_t>(w.b)])] += w.alpha / n_;
    }

    // v = 1/2 off the sector (within the active set), free in {0,1} on it.
    std::vector<double> v(static_cast<std::size_t>(ambient_m_), 0.0);
    for (int a = 0; a < k_; ++a)
        v[static_cast<std::size_t>(active_[static_cast<std::size_t>(a)])] = 0.5;
    KahanSum zsum, gsum;
    const std::uint64_t occ_total = std::uint64_t{1} << members.size();
    for (std::uint64_t occ = 0; occ < occ_total; ++occ) {
        double h2 = 0.0;
        for (std::size_t s = 0; s < members.size(); ++s) {
            const bool on = (occ >> s) & 1u;
            if (on) h2 += shifted_field[s];
            v[static_cast<std::size_t>(active_[static_cast<std::size_t>(members[s])])] = on ? 1.0 : 0.0;
        }
        for (const auto& p : vpairs)
            if (((occ >> p.a) & 1u) && ((occ >> p.b) & 1u)) h2 += p.coupling;
        const double w = std::exp(h2);
        zsum.add(w);
        gsum.add(psi(v) * w);
    }
    return gsum.value() / zsum.value();
}

double DoubledSystem::mixture_expectation(const ZFunctional& phi, const VFunctional& psi) const {
    const std::uint64_t sectors = std::uint64_t{1} << k_;
    KahanSum acc;
    for (std::uint64_t a = 0; a < sectors; ++a) {
        const auto sector = static_cast<std::uint32_t>(a);
        const double p = std::exp(sector_log_weight(sector) - 2.0 * log_z_);
        acc.add(p * ising_average(sector, phi) * shifted_average(sector, psi));
    }
    return acc.value();
}

double DoubledSystem::doubled_expectation(const ZFunctional& phi, const VFunctional& psi) const {
    if (k_ > kDoubledCap)
        throw std::invalid_argument("doubled_expectation: more than " + std::to_string(kDoubledCap) +
                                    " active edges");
    const std::uint64_t total = std::uint64_t{1} << k_;
    Config x(ambient_m_), y(ambient_m_);
    std::vector<double> weight(total);
    for (std::uint64_t mx = 0; mx < total; ++mx) {
        for (int a = 0; a < k_; ++a) x.set(active_[static_cast<std::size_t>(a)], ((mx >> a) & 1u) != 0);
        weight[mx] = std::exp(sys_->hamiltonian(x) - log_z_);
    }
    std::vector<int> z(static_cast<std::size_t>(ambient_m_), 0);
    std::vector<double> v(static_cast<std::size_t>(ambient_m_), 0.0);
    KahanSum acc;
    for (std::uint64_t mx = 0; mx < total; ++mx) {
        for (std::uint64_t my = 0; my < total; ++my) {
            for (int a = 0; a < k_; ++a) {
                const int xi = static_cast<int>((mx >> a) & 1u);
                const int yi = static_cast<int>((my >> a) & 1u);
                const auto e = static_cast<std::size_t>(active_[static_cast<std::size_t>(a)]);
                z[e] = xi - yi;
                v[e] = 0.5 * (xi + yi);
            }
            acc.add(phi(z) * psi(v) * weight[mx] * weight[my]);
        }
    }
    return acc.value();
}

ZVInequalityReport verify_zv_inequalities(const ExactSystem& sys, std::span<const int> subset_c,
                                          std::span<const int> subset_d) {
    DoubledSystem doubled(sys);
    ZVInequalityReport report;
    report.point = point_str(sys);
    const auto one_z = [](std::span<const int>) { return 1.0; };
    const auto one_v = [](std::span<const double>) { return 1.0; };

    std::vector<int> c(subset_c.begin(), subset_c.end());
    std::vector<int> d(subset_d.begin(), subset_d.end());
    std::vector<int> cd(c);
    cd.insert(cd.end(), d.begin(), d.end());

    const double e_zc = doubled.doubled_expectation(z_monomial(c), one_v);
    const double e_zd = doubled.doubled_expectation(z_monomial(d), one_v);
    const double e_zc_zd = doubled.doubled_expectation(z_monomial(cd), one_v);
    const double e_vd = doubled.doubled_expectation(one_z, v_monomial(d));
    const double e_zc_vd = doubled.doubled_expectation(z_monomial(c), v_monomial(d));

    report.zz_violation = e_zc * e_zd - e_zc_zd;
    report.zv_violation = e_zc_vd - e_zc * e_vd;
    report.pass = report.zz_violation <= report.slack && report.zv_violation <= report.slack;
    return report;
}

U3RepresentationReport verify_u3_representation(const ExactSystem& sys, int i, int j, int k) {
    DoubledSystem doubled(sys);
    const auto one_z = [](std::span<const int>) { return 1.0; };
    const auto one_v = [](std::span<const double>) { return 1.0; };
    const double e_zz_v = doubled.doubled_expectation(z_monomial({i, j}), v_monomial({k}));
    const double e_zz = doubled.doubled_expectation(z_monomial({i, j}), one_v);
    const double e_v = doubled.doubled_expectation(one_z, v_monomial({k}));

    U3RepresentationReport report;
    const int ids[] = {i, j, k};
    report.u3_direct = ursell(sys, ids).value;
    report.u3_doubled = e_zz_v - e_zz * e_v;
    report.abs_error = std::fabs(report.u3_direct - report.u3_doubled);
    report.pass = report.abs_error <= 1e-12;
    return report;
}

SectorMonotonicityReport verify_sector_monotonicity(const ExactSystem& sys, std::span<const int> subset_c,
                                                    std::span<const int> subset_d,
                                                    std::span<const int> sector_a,
                                                    std::span<const int> sector_b) {
    DoubledSystem doubled(sys);
    const std::uint32_t mask_a = doubled.sector_mask_of(sector_a);
    const std::uint32_t mask_b = doubled.sector_mask_of(sector_b);
    if ((mask_a & mask_b) != mask_a)
        throw std::invalid_argument("verify_sector_monotonicity: need A <= B");

    const auto phi = z_monomial(std::vector<int>(subset_c.begin(), subset_c.end()));
    const auto psi = v_monomial(std::vector<int>(subset_d.begin(), subset_d.end()));

    SectorMonotonicityReport report;
    report.f_at_a = doubled.ising_average(mask_a, phi);
    report.f_at_b = doubled.ising_average(mask_b, phi);
    report.g_at_a = doubled.shifted_average(mask_a, psi);
    report.g_at_b = doubled.shifted_average(mask_b, psi);
    report.pass = report.f_at_b <= report.f_at_a + report.slack &&
                  report.g_at_a <= report.g_at_b + report.slack;
    return report;
}

InequalityReport verify_p_lattice(const MixtureWeights& weights) {
    InequalityReport report;
    report.tag = InequalityTag::fkg_lattice;
    report.point = "sector weights";
    const std::uint64_t sectors = weights.log_weight.size();
    for (std::uint64_t e = 0; e < sectors; ++e)
        for (std::uint64_t f = 0; f < sectors; ++f) {
            const double violation = weights.log_weight[e] + weights.log_weight[f] -
                                     weights.log_weight[e | f] - weights.log_weight[e & f];
            ++report.checked;
            if (violation > report.worst_violation) {
                report.worst_violation = violation;
                std::ostringstream who;
                who << "E=" << e << " F=" << f;
                report.witness = who.str();
            }
        }
    if (report.worst_violation > report.slack) report.pass = false;
    return report;
}

}  // namespace twostar
