#pragma once

#include <string>
#include <vector>

namespace twostar {
namespace meanfield {

// I(u) = u ln u + (1-u) ln(1-u), with I(0) = I(1) = 0.
double entropy(double u);

// alpha u^2/2 + h u/2 - I(u)/2; its supremum over [0,1] is the limiting
// free energy.
double objective(double u, double alpha, double h);

// All solutions of sigmoid(2 alpha u + h) = u in [0,1], by a sign-change scan
// over 10^4 intervals followed by bisection to 1e-12.
std::vector<double> fixed_points(double alpha, double h);

enum class PhaseClass { unique, coexistence, critical };

std::string phase_name(PhaseClass cls);

struct PhasePoint {
    double alpha = 0.0;
    double h = 0.0;
    std::vector<double> roots;
    std::vector<double> maximizers;       // roots attaining the global maximum
    std::vector<double> variance_at_max;  // u(1-u)/(1 - 2 alpha u(1-u)) per maximizer
    PhaseClass classification = PhaseClass::unique;
};

PhasePoint classify(double alpha, double h);

struct CriticalCurveSample {
    double alpha = 0.0;
    double h = 0.0;  // q(alpha): the field where the two maximizers tie
};

// Bisection on the objective gap between the outer maximizers; alpha > 2.
CriticalCurveSample critical_curve(double alpha);

// v(alpha,h) = d u*/d h at a unique non-critical point; throws elsewhere.
double limiting_variance(double alpha, double h);

struct GridRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
};

std::vector<PhasePoint> phase_grid(const GridRange& alphas, const GridRange& hs);

}  // namespace meanfield
}  // namespace twostar
