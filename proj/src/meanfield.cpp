#include "twostar/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "twostar/numeric.hpp"

namespace twostar {
namespace meanfield {

namespace {

constexpr int kScanIntervals = 10000;
constexpr double kRootTol = 1e-12;
constexpr double kTieTol = 1e-10;
constexpr double kCriticalTol = 1e-6;

double fixed_point_residual(double u, double alpha, double h) {
    return sigmoid(2.0 * alpha * u + h) - u;
}

double stability_denominator(double u, double alpha) {
    return 1.0 - 2.0 * alpha * u * (1.0 - u);
}

}  // namespace

double entropy(double u) {
    if (u < 0.0 || u > 1.0) throw std::domain_error("entropy: u must lie in [0,1]");
    if (u == 0.0 || u == 1.0) return 0.0;
    return u * std::log(u) + (1.0 - u) * std::log1p(-u);
}

double objective(double u, double alpha, double h) {
    return 0.5 * alpha * u * u + 0.5 * h * u - 0.5 * entropy(u);
}

std::vector<double> fixed_points(double alpha, double h) {
    std::vector<double> roots;
    const double width = 1.0 / kScanIntervals;
    double u_prev = 0.0;
    double g_prev = fixed_point_residual(0.0, alpha, h);  // sigmoid(h) > 0
    for (int i = 1; i <= kScanIntervals; ++i) {
        const double u = static_cast<double>(i) * width;
        const double g = fixed_point_residual(u, alpha, h);
        if (g == 0.0) {
            roots.push_back(u);
        } else if ((g_prev > 0.0) != (g > 0.0)) {
            double lo = u_prev, hi = u;
            double g_lo = g_prev;
            while (hi - lo > kRootTol) {
                const double mid = 0.5 * (lo + hi);
                const double g_mid = fixed_point_residual(mid, alpha, h);
                if ((g_lo > 0.0) != (g_mid > 0.0)) {
                    hi = mid;
                } else {
                    lo = mid;
                    g_lo = g_mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        u_prev = u;
        g_prev = g;
    }
    // Merge duplicates from exact zeros landing on grid points.
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique_roots;
    for (double r : roots)
        if (unique_roots.empty() || r - unique_roots.back() > 1e-9) unique_roots.push_back(r);
    return unique_roots;
}

std::string phase_name(PhaseClass cls) {
    switch (cls) {
        case PhaseClass::unique: return "unique";
        case PhaseClass::coexistence: return "coexistence";
        case PhaseClass::critical: return "critical";
    }
    return "unknown";
}

PhasePoint classify(double alpha, double h) {
    PhasePoint point;
    point.alpha = alpha;
    point.h = h;
    point.roots = fixed_points(alpha, h);

    double best = -std::numeric_limits<double>::infinity();
    for (double r : point.roots) best = std::max(best, objective(r, alpha, h));
    for (double r : point.roots)
        if (objective(r, alpha, h) >= best - kTieTol) {
            point.maximizers.push_back(r);
            point.variance_at_max.push_back(r * (1.0 - r) / stability_denominator(r, alpha));
        }

    if (point.maximizers.size() >= 2) {
        point.classification = PhaseClass::coexistence;
    } else if (!point.maximizers.empty() &&
               std::fabs(stability_denominator(point.maximizers.front(), alpha)) <= kCriticalTol) {
        point.classification = PhaseClass::critical;
    } else {
        point.classification = PhaseClass::unique;
    }
    return point;
}

CriticalCurveSample critical_curve(double alpha) {
    if (alpha <= 2.0)
        throw std::invalid_argument("critical_curve: the curve is defined for alpha > 2 only");

    // Signed gap between the outer maximizers; negative when the low phase
    // wins, positive when the high phase wins, strictly increasing in h.
    auto gap = [alpha](double h) {
        const auto roots = fixed_points(alpha, h);
        if (roots.size() >= 2) {
            const double lo = roots.front(), hi = roots.back();
            return objective(hi, alpha, h) - objective(lo, alpha, h);
        }
        return roots.front() > 0.5 ? 1.0 : -1.0;
    };

    double lo = -alpha - 1.0, hi = -alpha + 1.0;
    double g_lo = gap(lo);
    while (g_lo > 0.0) {
        lo -= 1.0;
        g_lo = gap(lo);
    }
    double g_hi = gap(hi);
    while (g_hi < 0.0) {
        hi += 1.0;
        g_hi = gap(hi);
    }
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (gap(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {alpha, 0.5 * (lo + hi)};
}

double limiting_variance(double alpha, double h) {
    const auto point = classify(alpha, h);
    if (point.classification != PhaseClass::unique)
        throw std::domain_error("limiting_variance: undefined at " + phase_name(point.classification) +
                                " points");
    const double u = point.maximizers.front();
    return u * (1.0 - u) / stability_denominator(u, alpha);
}

std::vector<double> GridRange::values() const {
    if (step <= 0.0) throw std::invalid_argument("GridRange: step must be positive");
    std::vector<double> out;
    for (double v = start; v <= stop + 0.5 * step; v += step) out.push_back(v);
    return out;
}

std::vector<PhasePoint> phase_grid(const GridRange& alphas, const GridRange& hs) {
    const auto avals = alphas.values();
    const auto hvals = hs.values();
    std::vector<PhasePoint> cells(avals.size() * hvals.size());

    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned threads = std::min<unsigned>(hw == 0 ? 1 : hw, 8);
    auto worker = [&](unsigned offset) {
        for (std::size_t idx = offset; idx < cells.size(); idx += threads) {
            const std::size_t ia = idx / hvals.size();
            const std::size_t ih = idx % hvals.size();
            cells[idx] = classify(avals[ia], hvals[ih]);
        }
    };
    if (threads <= 1 || cells.size() < 64) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    return cells;
}

}  // namespace meanfield
}  // namespace twostar
