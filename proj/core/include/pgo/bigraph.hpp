#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pgo/interval.hpp"

namespace pgo {

struct BigraphParseError : std::runtime_error {
    enum class Kind { Syntax, EmptyBlock, CountMismatch, Isolated, BadDuals, NonInvolution };
    BigraphParseError(Kind kind, std::size_t pos, const std::string& msg);
    Kind kind;
    std::size_t position;
};

// Depth-stratified bipartite graph. Depth 0 has a single vertex; edges join
// consecutive depths only.
class Bigraph {
public:
    // blocks[d-1][v][u] = multiplicity of the edge between vertex v at depth d
    // and vertex u at depth d-1. duals[k] is a 0-based permutation of depth 2k.
    Bigraph(std::vector<std::vector<std::vector<int>>> blocks, std::vector<std::vector<int>> duals = {});

    int depths() const { return static_cast<int>(blocks_.size()) + 1; }
    int vertices_at(int depth) const;
    int total_vertices() const;
    int multiplicity(int depth, int v, int u) const { return blocks_[depth - 1][v][u]; }
    const std::vector<std::vector<std::vector<int>>>& blocks() const { return blocks_; }
    const std::vector<std::vector<int>>& duals() const { return duals_; }
    bool has_duals() const { return !duals_.empty(); }

    // Full symmetric adjacency matrix; vertices numbered depth by depth.
    std::vector<std::vector<int>> adjacency() const;
    bool connected() const;

    // Relabel the vertices at one depth: new vertex i is old vertex perm[i].
    Bigraph permuted(int depth, const std::vector<int>& perm) const;
    // Add one to a multiplicity (the edge set grows).
    Bigraph with_extra_edge(int depth, int v, int u) const;

    friend bool operator==(const Bigraph& a, const Bigraph& b) {
        return a.blocks_ == b.blocks_ && a.duals_ == b.duals_;
    }

private:
    std::vector<std::vector<std::vector<int>>> blocks_;
    std::vector<std::vector<int>> duals_;
};

// "bwd" depth blocks separated by 'v', vertices by 'p', multiplicities by 'x',
// optionally followed by "duals" and one 1-based involution per even depth.
Bigraph parse_bigraph(std::string_view text);
std::string render_bigraph(const Bigraph& g);

// A principal graph optionally paired with its dual graph.
struct GraphPair {
    Bigraph principal;
    std::optional<Bigraph> dual;
    std::string text;
};
// "G" or "G, H" (parentheses optional).
GraphPair parse_graph_pair(std::string_view text);
// One graph or pair per line; blank lines and '#' comments ignored.
struct GraphLine {
    std::size_t line;
    std::string text;
};
std::vector<GraphLine> read_graph_lines(const std::string& path);

// Certified enclosure of the Perron-Frobenius eigenvalue of the adjacency
// matrix (the graph norm) and of its square. Throws std::invalid_argument on a
// disconnected graph.
struct GraphNorm {
    Interval norm;
    Interval index;
};
GraphNorm graph_norm(const Bigraph& g, int digits = 30);

struct HypothesisReport {
    bool is_3_supertransitive = false;
    std::optional<std::pair<int, int>> depth4_pair;  // indices at depth 4
    std::optional<bool> depth5_simple;
    std::optional<bool> no_common_depth6_neighbor;
    bool overall = false;
    std::string summary() const;
};
HypothesisReport check_hypothesis(const Bigraph& g);

}  // namespace pgo
