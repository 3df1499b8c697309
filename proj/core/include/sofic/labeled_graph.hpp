#ifndef SOFIC_LABELED_GRAPH_HPP
#define SOFIC_LABELED_GRAPH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sofic/errors.hpp"
#include "sofic/int_linalg.hpp"

namespace sofic {

struct edge {
    std::string src;
    std::string dst;
    std::string label;

    bool operator==(const edge& other) const = default;
    auto operator<=>(const edge& other) const = default;
};

// Finite labeled directed multigraph. Vertices keep declaration order,
// edges keep insertion order; parallel edges are counted with multiplicity.
// The label alphabet is derived from the edges, never stored.
class labeled_graph {
public:
    labeled_graph(std::vector<std::string> vertices, std::vector<edge> edges);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<edge>& edges() const { return edges_; }

    bool has_vertex(const std::string& name) const;
    std::size_t vertex_index(const std::string& name) const;

    // Distinct labels, sorted.
    std::vector<std::string> alphabet() const;

    // Edges rewritten to vertex indices, in edge order.
    struct indexed_edge {
        std::size_t src;
        std::size_t dst;
        std::string label;
    };
    std::vector<indexed_edge> indexed_edges() const;

    bool operator==(const labeled_graph& other) const = default;

private:
    std::vector<std::string> vertices_;
    std::vector<edge> edges_;
};

// Disjoint nonempty blocks covering the vertex set.
struct vertex_partition {
    std::vector<std::vector<std::string>> blocks;
};

// Graph file format: lines "vertex <name>", "edge <src> <dst> <label>",
// blank lines, and "# comment"; tokens are whitespace-separated and names
// and labels may be any non-whitespace strings.
labeled_graph parse_graph(const std::string& text);

// Vertices in declared order, then edges sorted by (src, dst, label).
std::string serialize_graph(const labeled_graph& g);

// Entry (i, j) counts edges order[i] -> order[j]; labels are forgotten.
// Default order is the declared vertex order.
int_matrix adjacency_matrix(const labeled_graph& g);
int_matrix adjacency_matrix(const labeled_graph& g, const std::vector<std::string>& order);

labeled_graph reverse_graph(const labeled_graph& g);

vertex_partition strongly_connected_components(const labeled_graph& g);

// Strongly connected with at least one edge.
bool is_irreducible(const labeled_graph& g);

// gcd of the lengths of all cycles; requires an irreducible graph.
unsigned graph_period(const labeled_graph& g);

// Irreducible with period 1. Cross-checked against the Wielandt-bound
// power test: some A^k with k <= (n-1)^2 + 1 must be entrywise positive.
bool is_mixing(const labeled_graph& g);

using vertex_bijection = std::vector<std::pair<std::string, std::string>>;

// A bijection of vertex sets carrying the labeled edge multiset of g1
// exactly onto that of g2, or nullopt. Backtracking search; fine for
// graphs of at most a dozen vertices.
std::optional<vertex_bijection> labeled_isomorphic(const labeled_graph& g1,
                                                   const labeled_graph& g2);

} // namespace sofic

#endif
