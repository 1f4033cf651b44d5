#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace twostar {

// Bijection between the edges of the complete graph K_n and ids 0..m-1,
// lexicographic over vertex pairs (u,v), u < v.
class EdgeIndexing {
public:
    explicit EdgeIndexing(int n);

    int n() const { return n_; }
    int m() const { return m_; }

    std::pair<int, int> pair_of(int edge_id) const;
    int id_of(int u, int v) const;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> id_table_;  // n*n, -1 on the diagonal
};

// All unordered pairs {i,j} of distinct edges sharing exactly one vertex,
// stored with i < j in lexicographic order.
struct WedgeList {
    std::vector<std::pair<int, int>> pairs;

    static WedgeList build(const EdgeIndexing& idx);
    std::size_t size() const { return pairs.size(); }
};

// Occupancy vector over the m edges of the ambient K_n.
class Config {
public:
    Config() = default;
    explicit Config(int m) : bits_(static_cast<std::size_t>(m), 0) {}

    static Config from_mask(std::uint64_t mask, int m);

    int size() const { return static_cast<int>(bits_.size()); }
    bool test(int i) const { return bits_[static_cast<std::size_t>(i)] != 0; }
    void set(int i, bool value) { bits_[static_cast<std::size_t>(i)] = value ? 1 : 0; }
    std::uint64_t to_mask() const;  // requires size() <= 64

    bool operator==(const Config& other) const { return bits_ == other.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

int edge_count(const Config& c);
long long wedge_value(const Config& c, const WedgeList& wedges);

enum class PatternTag { edge, wedge, triangle };

// One of the supported subgraph shapes H, with its vertex count and edge list.
struct SubgraphPattern {
    PatternTag tag;
    int vertex_count;
    std::vector<std::pair<int, int>> edges;

    static SubgraphPattern edge();
    static SubgraphPattern wedge();
    static SubgraphPattern triangle();
    std::string name() const;
};

// Homomorphism density t(H,G) = |hom(H,G)| / n^{|V(H)|}, counting every
// vertex map (degenerate ones included) that sends edges to edges.
double hom_density(const SubgraphPattern& pattern, const Config& c, const EdgeIndexing& idx);

std::vector<int> vertex_degrees(const Config& c, const EdgeIndexing& idx);

// Edge-id triples of all triangles of K_n, each as an ascending array.
std::vector<std::array<int, 3>> triangle_edge_triples(const EdgeIndexing& idx);

long long triangle_count(const Config& c, const std::vector<std::array<int, 3>>& triples);

}  // namespace twostar
