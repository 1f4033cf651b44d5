#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "twostar/graph.hpp"

namespace twostar {

// Constant wedge coupling alpha and edge field h.
struct ScalarParams {
    double alpha = 0.0;
    double h = 0.0;
};

// One coupling per wedge pair and one field per edge. Wedge couplings are
// keyed by position in the ambient WedgeList (deterministic order).
struct GeneralizedParams {
    std::vector<double> alpha_by_wedge;
    std::vector<double> h_by_edge;

    static GeneralizedParams constant(const WedgeList& wedges, int m, double alpha, double h) {
        GeneralizedParams p;
        p.alpha_by_wedge.assign(wedges.size(), alpha);
        p.h_by_edge.assign(static_cast<std::size_t>(m), h);
        return p;
    }

    bool alpha_nonnegative() const {
        for (double a : alpha_by_wedge)
            if (a < 0.0) return false;
        return true;
    }

    bool h_nonnegative() const {
        for (double h : h_by_edge)
            if (h < 0.0) return false;
        return true;
    }
};

// Coefficients beta_j for pre-chosen subgraph patterns, first pattern an edge.
struct ErgmParams {
    std::vector<SubgraphPattern> patterns;
    std::vector<double> betas;

    void validate() const {
        if (patterns.empty()) throw std::invalid_argument("ErgmParams: pattern list is empty");
        if (patterns.front().tag != PatternTag::edge)
            throw std::invalid_argument("ErgmParams: first pattern must be the edge");
        if (patterns.size() != betas.size())
            throw std::invalid_argument("ErgmParams: patterns and betas differ in length");
    }
};

using Params = std::variant<ScalarParams, GeneralizedParams, ErgmParams>;

}  // namespace twostar
