#include "twostar/inequalities.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "twostar/numeric.hpp"

namespace twostar {

namespace {

std::string subset_str(std::span<const int> ids) {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ',';
        out << ids[i];
    }
    out << '}';
    return out.str();
}

std::string mask_str(std::uint32_t mask) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        if (!first) out << ',';
        out << std::countr_zero(rest);
        first = false;
    }
    out << '}';
    return out.str();
}

std::string point_str(const ExactSystem& sys) {
    std::ostringstream out;
    out << "n=" << sys.n();
    switch (sys.kind()) {
        case HamiltonianKind::scalar: {
            const auto& p = std::get<ScalarParams>(sys.params());
            out << " alpha=" << p.alpha << " h=" << p.h;
            break;
        }
        case HamiltonianKind::generalized: out << " (generalized params)"; break;
        case HamiltonianKind::ergm: out << " (ergm params)"; break;
    }
    if (!sys.is_full()) out << " |A|=" << sys.active_count();
    return out.str();
}

double u2_from(const MomentTable& t, int i, int j) {
    const int ij[] = {i, j};
    const int ii[] = {i};
    const int jj[] = {j};
    return t.monomial(ij) - t.monomial(ii) * t.monomial(jj);
}

double u3_from(const MomentTable& t, int i, int j, int k) {
    const int ijk[] = {i, j, k};
    const int ij[] = {i, j};
    const int ik[] = {i, k};
    const int jk[] = {j, k};
    const int ii[] = {i};
    const int jj[] = {j};
    const int kk[] = {k};
    const double ei = t.monomial(ii), ej = t.monomial(jj), ek = t.monomial(kk);
    return t.monomial(ijk) - ei * t.monomial(jk) - ej * t.monomial(ik) - ek * t.monomial(ij) +
           2.0 * ei * ej * ek;
}

std::vector<std::uint32_t> subsets_up_to(int m, int max_size) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask)
        if (std::popcount(mask) <= max_size) out.push_back(mask);
    return out;
}

std::vector<int> mask_to_ids(std::uint32_t mask, const std::vector<int>& active) {
    std::vector<int> ids;
    for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1)
        ids.push_back(active[static_cast<std::size_t>(std::countr_zero(rest))]);
    return ids;
}

}  // namespace

void InequalityReport::record(double violation, const std::string& who) {
    ++checked;
    if (violation > worst_violation) {
        worst_violation = violation;
        witness = who;
    }
    if (violation > slack) pass = false;
}

std::string tag_name(InequalityTag tag) {
    switch (tag) {
        case InequalityTag::fkg_lattice: return "fkg-lattice";
        case InequalityTag::fkg: return "fkg";
        case InequalityTag::gks: return "gks";
        case InequalityTag::ghs: return "ghs";
        case InequalityTag::vol_mono: return "vol-mono";
        case InequalityTag::part_submod: return "part-submod";
    }
    return "unknown";
}

UrsellValue ursell(const ExactSystem& sys, std::span<const int> indices) {
    if (indices.empty() || indices.size() > 3)
        throw std::invalid_argument("ursell: only orders 1 to 3 are supported");
    UrsellValue out;
    out.order = static_cast<int>(indices.size());
    out.indices = {-1, -1, -1};
    for (std::size_t i = 0; i < indices.size(); ++i) out.indices[i] = indices[i];
    const auto em = [&sys](std::vector<int> ids) { return sys.expectation_monomial(ids); };
    switch (out.order) {
        case 1: out.value = em({indices[0]}); break;
        case 2: {
            const int i = indices[0], j = indices[1];
            out.value = em({i, j}) - em({i}) * em({j});
            break;
        }
        default: {
            const int i = indices[0], j = indices[1], k = indices[2];
            const double ei = em({i}), ej = em({j}), ek = em({k});
            out.value = em({i, j, k}) - ei * em({j, k}) - ej * em({i, k}) - ek * em({i, j}) +
                        2.0 * ei * ej * ek;
            break;
        }
    }
    return out;
}

InequalityReport verify_gks(const ExactSystem& sys, std::span<const int> subset_a,
                            std::span<const int> subset_b) {
    InequalityReport report;
    report.tag = InequalityTag::gks;
    report.point = point_str(sys);
    std::vector<int> joint(subset_a.begin(), subset_a.end());
    joint.insert(joint.end(), subset_b.begin(), subset_b.end());
    const double lhs = sys.expectation_monomial(joint);
    const double rhs = sys.expectation_monomial(subset_a) * sys.expectation_monomial(subset_b);
    report.record(rhs - lhs, "A=" + subset_str(subset_a) + " B=" + subset_str(subset_b));
    return report;
}

InequalityReport verify_gks_sweep(const ExactSystem& sys, int max_subset_size) {
    InequalityReport report;
    report.tag = InequalityTag::gks;
    report.point = point_str(sys);
    const auto table = sys.moment_table();
    const auto subsets = subsets_up_to(sys.active_count(), max_subset_size);
    for (std::uint32_t a : subsets) {
        const double ea = table.by_mask(a);
        for (std::uint32_t b : subsets) {
            const double violation = ea * table.by_mask(b) - table.by_mask(a | b);
            ++report.checked;
            if (violation > report.worst_violation) {
                report.worst_violation = violation;
                report.witness = "A=" + mask_str(a) + " B=" + mask_str(b);
            }
        }
    }
    if (report.worst_violation > report.slack) report.pass = false;
    return report;
}

InequalityReport verify_ghs(const ExactSystem& sys, int i, int j, int k) {
    InequalityReport report;
    report.tag = InequalityTag::ghs;
    report.point = point_str(sys);
    const int ids[] = {i, j, k};
    report.record(ursell(sys, ids).value, "(i,j,k)=" + subset_str(ids));
    return report;
}

InequalityReport verify_ghs_sweep(const ExactSystem& sys) {
    InequalityReport report;
    report.tag = InequalityTag::ghs;
    report.point = point_str(sys);
    const auto table = sys.moment_table();
    const auto& active = sys.active_edges();
    const int m = sys.active_count();
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b)
            for (int c = b; c < m; ++c) {
                const int i = active[static_cast<std::size_t>(a)];
                const int j = active[static_cast<std::size_t>(b)];
                const int k = active[static_cast<std::size_t>(c)];
                const double value = u3_from(table, i, j, k);
                ++report.checked;
                if (value > report.worst_violation) {
                    const int ids[] = {i, j, k};
                    report.worst_violation = value;
                    report.witness = "(i,j,k)=" + subset_str(ids);
                }
            }
    if (report.worst_violation > report.slack) report.pass = false;
    return report;
}

InequalityReport verify_fkg_lattice(const ExactSystem& sys, FkgLatticeOptions opts) {
    InequalityReport report;
    report.tag = InequalityTag::fkg_lattice;
    report.point = point_str(sys);
    const int m = sys.active_count();
    const auto ham = sys.hamiltonian_table();
    if (m <= opts.exhaustive_cap) {
        const std::uint64_t total = std::uint64_t{1} << m;
        for (std::uint64_t x = 0; x < total; ++x)
            for (std::uint64_t y = 0; y < total; ++y) {
                const double violation = ham[x] + ham[y] - ham[x | y] - ham[x & y];
                ++report.checked;
                if (violation > report.worst_violation) {
                    report.worst_violation = violation;
                    report.witness = "x=" + mask_str(static_cast<std::uint32_t>(x)) +
                                     " y=" + mask_str(static_cast<std::uint32_t>(y));
                }
            }
        if (report.worst_violation > report.slack) report.pass = false;
    } else {
        report.exhaustive = false;
        std::mt19937_64 rng(opts.seed);
        const std::uint64_t total = std::uint64_t{1} << m;
        for (long long s = 0; s < opts.samples; ++s) {
            const std::uint64_t x = rng() % total, y = rng() % total;
            const double violation = ham[x] + ham[y] - ham[x | y] - ham[x & y];
            report.record(violation, "x=" + mask_str(static_cast<std::uint32_t>(x)) +
                                         " y=" + mask_str(static_cast<std::uint32_t>(y)));
        }
    }
    return report;
}

InequalityReport verify_fkg_monotone(const ExactSystem& sys, const ConfigFunctional& f,
                                     const ConfigFunctional& g, bool declared_increasing) {
    const int m = sys.active_count();
    const auto& active = sys.active_edges();
    InequalityReport report;
    report.tag = InequalityTag::fkg;
    report.point = point_str(sys);

    if (m <= 8) {
        // Exhaustive monotonicity audit over comparable configuration pairs.
        const std::uint64_t total = std::uint64_t{1} << m;
        std::vector<double> fv(total), gv(total);
        Config scratch(sys.ambient_edge_count());
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            for (int a = 0; a < m; ++a)
                scratch.set(active[static_cast<std::size_t>(a)], ((mask >> a) & 1u) != 0);
            fv[mask] = f(scratch);
            gv[mask] = g(scratch);
        }
        for (std::uint64_t y = 1; y < total; ++y) {
            for (std::uint64_t x = (y - 1) & y;; x = (x - 1) & y) {
                if (fv[x] > fv[y] + 1e-15 || gv[x] > gv[y] + 1e-15)
                    throw std::invalid_argument(
                        "verify_fkg_monotone: functional is not increasing (x=" +
                        mask_str(static_cast<std::uint32_t>(x)) + " y=" +
                        mask_str(static_cast<std::uint32_t>(y)) + ")");
                if (x == 0) break;
            }
        }
    } else if (!declared_increasing) {
        throw std::invalid_argument(
            "verify_fkg_monotone: system too large for the monotonicity audit; pass declared_increasing=true");
    } else {
        report.exhaustive = false;
        report.witness = "monotonicity declared by caller";
    }

    const double efg = sys.expectation([&](const Config& c) { return f(c) * g(c); });
    const double ef = sys.expectation(f);
    const double eg = sys.expectation(g);
    report.record(ef * eg - efg, "E[f]E[g]-E[fg]");
    return report;
}

InequalityReport verify_volume_monotonicity(const ExactSystem& base, std::span<const int> lambda,
                                            std::span<const int> subset_a, std::span<const int> subset_b) {
    auto contains = [](std::span<const int> big, std::span<const int> small) {
        for (int e : small)
            if (std::find(big.begin(), big.end(), e) == big.end()) return false;
        return true;
    };
    if (!contains(subset_a, lambda) || !contains(subset_b, subset_a))
        throw std::invalid_argument("verify_volume_monotonicity: need Lambda <= A <= B");

    InequalityReport report;
    report.tag = InequalityTag::vol_mono;
    report.point = point_str(base);
    const auto sys_a = base.restrict_to(std::vector<int>(subset_a.begin(), subset_a.end()));
    const auto sys_b = base.restrict_to(std::vector<int>(subset_b.begin(), subset_b.end()));
    const double lhs = sys_a.expectation_monomial(lambda);
    const double rhs = sys_b.expectation_monomial(lambda);
    report.record(lhs - rhs, "Lambda=" + subset_str(lambda) + " A=" + subset_str(subset_a) +
                                 " B=" + subset_str(subset_b));
    return report;
}

SubmodularityReport verify_partition_submodularity(const ExactSystem& base, std::span<const int> subset_e,
                                                   std::span<const int> subset_f) {
    std::vector<int> e_sorted(subset_e.begin(), subset_e.end());
    std::vector<int> f_sorted(subset_f.begin(), subset_f.end());
    std::sort(e_sorted.begin(), e_sorted.end());
    std::sort(f_sorted.begin(), f_sorted.end());
    std::vector<int> uni, inter;
    std::set_union(e_sorted.begin(), e_sorted.end(), f_sorted.begin(), f_sorted.end(),
                   std::back_inserter(uni));
    std::set_intersection(e_sorted.begin(), e_sorted.end(), f_sorted.begin(), f_sorted.end(),
                          std::back_inserter(inter));

    SubmodularityReport out;
    out.report.tag = InequalityTag::part_submod;
    out.report.point = point_str(base);
    const double lz_e = base.restrict_to(e_sorted).log_partition();
    const double lz_f = base.restrict_to(f_sorted).log_partition();
    const double lz_union = base.restrict_to(uni).log_partition();
    const double lz_inter = base.restrict_to(inter).log_partition();
    out.l_value = lz_union + lz_inter - lz_e - lz_f;
    out.report.record(-out.l_value, "E=" + subset_str(e_sorted) + " F=" + subset_str(f_sorted));
    return out;
}

InequalityReport verify_partition_submodularity_sweep(const ExactSystem& base, int exhaustive_cap) {
    const int m = base.active_count();
    if (m > exhaustive_cap)
        throw std::invalid_argument("verify_partition_submodularity_sweep: too many active edges for the sweep");
    InequalityReport report;
    report.tag = InequalityTag::part_submod;
    report.point = point_str(base);

    // log Z of every restriction, indexed by local subset mask.
    const auto& active = base.active_edges();
    const std::uint64_t total = std::uint64_t{1} << m;
    std::vector<double> lz(total);
    for (std::uint64_t mask = 0; mask < total; ++mask)
        lz[mask] = base.restrict_to(mask_to_ids(static_cast<std::uint32_t>(mask), active)).log_partition();

    for (std::uint64_t e = 0; e < total; ++e)
        for (std::uint64_t f = 0; f < total; ++f) {
            const double violation = lz[e] + lz[f] - lz[e | f] - lz[e & f];
            ++report.checked;
            if (violation > report.worst_violation) {
                report.worst_violation = violation;
                report.witness = "E=" + mask_str(static_cast<std::uint32_t>(e)) +
                                 " F=" + mask_str(static_cast<std::uint32_t>(f));
            }
        }
    if (report.worst_violation > report.slack) report.pass = false;
    return report;
}

DerivativeCheck derivative_ursell_check(const ExactSystem& sys) {
    if (sys.kind() != HamiltonianKind::scalar)
        throw std::invalid_argument("derivative_ursell_check: scalar parameters required");
    if (sys.active_count() > 15)
        throw std::invalid_argument("derivative_ursell_check: too many edges for third-order sweeps");
    const auto& p = std::get<ScalarParams>(sys.params());
    const int n = sys.n();
    const EdgeIndexing idx(n);

    auto lnz_at = [&](double alpha, double h) {
        return ExactSystem(idx, ScalarParams{alpha, h}, sys.options()).log_partition();
    };

    const auto table = sys.moment_table();
    const auto& active = sys.active_edges();
    const int m = sys.active_count();

    DerivativeCheck out;

    {
        const double step = 1e-4;
        const double stencil = (lnz_at(p.alpha, p.h + step) - lnz_at(p.alpha, p.h - step)) / (2.0 * step);
        double sum = 0.0;
        for (int a = 0; a < m; ++a) {
            const int ids[] = {active[static_cast<std::size_t>(a)]};
            sum += table.monomial(ids);
        }
        const double rel = relative_error(stencil, sum);
        out.orders.push_back({1, step, stencil, sum, rel, 1e-8, rel <= 1e-8});
    }
    {
        const double step = 1e-3;
        const double stencil =
            (lnz_at(p.alpha, p.h + step) - 2.0 * sys.log_partition() + lnz_at(p.alpha, p.h - step)) /
            (step * step);
        double sum = 0.0;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                sum += u2_from(table, active[static_cast<std::size_t>(a)],
                               active[static_cast<std::size_t>(b)]);
        const double rel = relative_error(stencil, sum);
        out.orders.push_back({2, step, stencil, sum, rel, 1e-6, rel <= 1e-6});
    }
    {
        // Fourth-order central stencil; the plain antisymmetric two-point rule
        // carries an O(step^2) truncation error above the pinned tolerance.
        const double step = 1e-2;
        const double s1 = lnz_at(p.alpha, p.h + step) - lnz_at(p.alpha, p.h - step);
        const double s2 = lnz_at(p.alpha, p.h + 2 * step) - lnz_at(p.alpha, p.h - 2 * step);
        const double s3 = lnz_at(p.alpha, p.h + 3 * step) - lnz_at(p.alpha, p.h - 3 * step);
        const double stencil = (-13.0 * s1 + 8.0 * s2 - s3) / (8.0 * step * step * step);
        double sum = 0.0;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    sum += u3_from(table, active[static_cast<std::size_t>(a)],
                                   active[static_cast<std::size_t>(b)],
                                   active[static_cast<std::size_t>(c)]);
        const double rel = relative_error(stencil, sum);
        out.orders.push_back({3, step, stencil, sum, rel, 1e-5, rel <= 1e-5});
    }
    {
        const double step = 1e-4;
        const double n3 = static_cast<double>(n) * n * n;
        out.alpha_stencil =
            (lnz_at(p.alpha + step, p.h) - lnz_at(p.alpha - step, p.h)) / (2.0 * step) / n3 * n;
        out.wedge_density = sys.mean_wedge_pairs() / n3;
        out.alpha_rel_error = relative_error(out.alpha_stencil, out.wedge_density);
    }

    out.pass = out.alpha_rel_error <= out.alpha_tolerance;
    for (const auto& row : out.orders) out.pass = out.pass && row.pass;
    return out;
}

namespace {

ConjecturePoint scan_point(const ExactSystem& sys, const std::string& model, double coupling,
                           double field) {
    const auto table = sys.moment_table();
    const auto& active = sys.active_edges();
    const int m = sys.active_count();
    ConjecturePoint point;
    point.model = model;
    point.coupling = coupling;
    point.field = field;
    point.min_mean_edge = 1.0;
    point.worst_u3 = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < m; ++a) {
        const int ids[] = {active[static_cast<std::size_t>(a)]};
        point.min_mean_edge = std::min(point.min_mean_edge, table.monomial(ids));
    }
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b)
            for (int c = b; c < m; ++c)
                point.worst_u3 = std::max(
                    point.worst_u3, u3_from(table, active[static_cast<std::size_t>(a)],
                                            active[static_cast<std::size_t>(b)],
                                            active[static_cast<std::size_t>(c)]));
    point.ghs_violated = point.worst_u3 > 1e-12;
    point.mean_below_half = point.min_mean_edge < 0.5 - 1e-12;
    point.matches_conjecture = (point.ghs_violated == point.mean_below_half);
    return point;
}

}  // namespace

std::vector<ConjecturePoint> conjecture_scan_two_star(int n, std::span<const double> alphas,
                                                      std::span<const double> hs) {
    std::vector<ConjecturePoint> atlas;
    const EdgeIndexing idx(n);
    for (double alpha : alphas)
        for (double h : hs)
            atlas.push_back(scan_point(ExactSystem(idx, ScalarParams{alpha, h}), "two-star", alpha, h));
    return atlas;
}

std::vector<ConjecturePoint> conjecture_scan_ergm(int n, const SubgraphPattern& extra_pattern,
                                                  std::span<const double> betas,
                                                  std::span<const double> beta1s) {
    std::vector<ConjecturePoint> atlas;
    const EdgeIndexing idx(n);
    for (double beta : betas)
        for (double beta1 : beta1s) {
            ErgmParams params{{SubgraphPattern::edge(), extra_pattern}, {beta1, beta}};
            atlas.push_back(
                scan_point(ExactSystem(idx, params), "edge+" + extra_pattern.name(), beta, beta1));
        }
    return atlas;
}

}  // namespace twostar
