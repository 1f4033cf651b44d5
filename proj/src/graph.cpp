#include "twostar/graph.hpp"

#include <stdexcept>

namespace twostar {

EdgeIndexing::EdgeIndexing(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("EdgeIndexing: vertex count must be >= 1");
    m_ = n * (n - 1) / 2;
    pairs_.reserve(static_cast<std::size_t>(m_));
    id_table_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    int id = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            pairs_.emplace_back(u, v);
            id_table_[static_cast<std::size_t>(u) * n + v] = id;
            id_table_[static_cast<std::size_t>(v) * n + u] = id;
            ++id;
        }
    }
}

std::pair<int, int> EdgeIndexing::pair_of(int edge_id) const {
    if (edge_id < 0 || edge_id >= m_) throw std::out_of_range("EdgeIndexing::pair_of: bad edge id");
    return pairs_[static_cast<std::size_t>(edge_id)];
}

int EdgeIndexing::id_of(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
        throw std::out_of_range("EdgeIndexing::id_of: bad vertex pair");
    return id_table_[static_cast<std::size_t>(u) * n_ + v];
}

WedgeList WedgeList::build(const EdgeIndexing& idx) {
    WedgeList w;
    const int m = idx.m();
    for (int i = 0; i < m; ++i) {
        const auto [a, b] = idx.pair_of(i);
        for (int j = i + 1; j < m; ++j) {
            const auto [c, d] = idx.pair_of(j);
            const int shared = (a == c) + (a == d) + (b == c) + (b == d);
            if (shared == 1) w.pairs.emplace_back(i, j);
        }
    }
    return w;
}

Config Config::from_mask(std::uint64_t mask, int m) {
    Config c(m);
    for (int i = 0; i < m; ++i) c.bits_[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    return c;
}

std::uint64_t Config::to_mask() const {
    if (bits_.size() > 64) throw std::length_error("Config::to_mask: more than 64 edges");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) mask |= std::uint64_t{1} << i;
    return mask;
}

int edge_count(const Config& c) {
    int total = 0;
    for (int i = 0; i < c.size(); ++i) total += c.test(i) ? 1 : 0;
    return total;
}

long long wedge_value(const Config& c, const WedgeList& wedges) {
    long long total = 0;
    for (const auto& [i, j] : wedges.pairs)
        if (c.test(i) && c.test(j)) ++total;
    return total;
}

SubgraphPattern SubgraphPattern::edge() { return {PatternTag::edge, 2, {{0, 1}}}; }
SubgraphPattern SubgraphPattern::wedge() { return {PatternTag::wedge, 3, {{0, 1}, {0, 2}}}; }
SubgraphPattern SubgraphPattern::triangle() {
    return {PatternTag::triangle, 3, {{0, 1}, {0, 2}, {1, 2}}};
}

std::string SubgraphPattern::name() const {
    switch (tag) {
        case PatternTag::edge: return "edge";
        case PatternTag::wedge: return "wedge";
        case PatternTag::triangle: return "triangle";
    }
    return "unknown";
}

std::vector<int> vertex_degrees(const Config& c, const EdgeIndexing& idx) {
    std::vector<int> deg(static_cast<std::size_t>(idx.n()), 0);
    for (int i = 0; i < idx.m(); ++i) {
        if (!c.test(i)) continue;
        const auto [u, v] = idx.pair_of(i);
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

double hom_density(const SubgraphPattern& pattern, const Config& c, const EdgeIndexing& idx) {
    const double n = idx.n();
    switch (pattern.tag) {
        case PatternTag::edge:
            // Ordered edge-preserving maps of a single edge: 2 per present edge.
            return 2.0 * edge_count(c) / (n * n);
        case PatternTag::wedge: {
            // Maps of a wedge rooted at v: deg(v)^2 ordered leaf choices.
            const auto deg = vertex_degrees(c, idx);
            double total = 0.0;
            for (int d : deg) total += static_cast<double>(d) * d;
            return total / (n * n * n);
        }
        case PatternTag::triangle: {
            const auto triples = triangle_edge_triples(idx);
            return 6.0 * static_cast<double>(triangle_count(c, triples)) / (n * n * n);
        }
    }
    throw std::invalid_argument("hom_density: unsupported subgraph pattern: " + pattern.name());
}

std::vector<std::array<int, 3>> triangle_edge_triples(const EdgeIndexing& idx) {
    std::vector<std::array<int, 3>> triples;
    const int n = idx.n();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                triples.push_back({idx.id_of(a, b), idx.id_of(a, c), idx.id_of(b, c)});
    return triples;
}

long long triangle_count(const Config& c, const std::vector<std::array<int, 3>>& triples) {
    long long total = 0;
    for (const auto& t : triples)
        if (c.test(t[0]) && c.test(t[1]) && c.test(t[2])) ++total;
    return total;
}

}  // namespace twostar
