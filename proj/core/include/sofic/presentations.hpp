#ifndef SOFIC_PRESENTATIONS_HPP
#define SOFIC_PRESENTATIONS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sofic/int_linalg.hpp"
#include "sofic/labeled_graph.hpp"

namespace sofic {

// Sequence of labels.
using word = std::vector<std::string>;

// Deterministic automaton over subsets of a base graph's vertices.
// Each transition (S, l) -> T has T = { targets of l-labeled edges
// leaving S }, always nonempty; states are pairwise distinct.
struct subset_automaton {
    // Each state is a sorted list of base-vertex names.
    std::vector<std::vector<std::string>> states;
    // (state index, label) -> state index.
    std::map<std::pair<std::size_t, std::string>, std::size_t> transitions;
    labeled_graph base;

    // Canonical state name: members sorted and joined by '+'.
    static std::string state_name(const std::vector<std::string>& state);

    // The automaton as a labeled graph with canonical state names.
    labeled_graph to_labeled_graph() const;
};

// No vertex has two out-edges with equal labels.
bool is_right_resolving(const labeled_graph& g);
// No vertex has two in-edges with equal labels.
bool is_left_resolving(const labeled_graph& g);

// Subset construction seeded with the full vertex set: the states are the
// nonempty images of nonempty words (the seed set is a state only if some
// transition re-enters it). Requires at least one edge.
subset_automaton determinize(const labeled_graph& g);

// Restriction of the automaton to its unique terminal strongly connected
// component. The base graph must be irreducible.
subset_automaton terminal_component(const subset_automaton& sa);

// Quotient by follower equivalence (partition refinement on (label,
// target-block) out-profiles). Requires a right-resolving graph; merged
// blocks are named by their lexicographically least member.
labeled_graph merge_follower_equivalent(const labeled_graph& g);

// Minimal right-resolving presentation of the shift presented by g;
// g must be irreducible. Vertex names are canonical sorted-subset strings.
labeled_graph right_fischer_cover(const labeled_graph& g);

// reverse_graph(right_fischer_cover(reverse_graph(g))).
labeled_graph left_fischer_cover(const labeled_graph& g);

// Shortest word whose image of the full vertex set is a singleton
// (BFS by length, ties broken lexicographically); empty word iff the
// graph has one vertex; nullopt if no such word exists.
std::optional<word> find_synchronizing_word(const labeled_graph& g);

// Pair-graph test: the graph fails to be right-closing iff some
// non-diagonal vertex pair reached from a same-label out-splitting lies
// on a cycle of the pair graph.
bool is_right_closing(const labeled_graph& g);
bool is_left_closing(const labeled_graph& g);

// The right Fischer cover is left-closing; g must be irreducible.
bool is_almost_finite_type(const labeled_graph& g);

// Number of words w of length n with w-periodic bi-infinite label
// sequence in the presented shift, i.e. some vertex v and j <= |V| with a
// w^j cycle at v. Enumerates the alphabet^n word tree with pruning;
// g must be irreducible and n at most max_n.
std::size_t count_periodic_points(const labeled_graph& g, unsigned n,
                                  unsigned max_n = 12);

// trace(M^n) for a square nonnegative matrix: periodic points of the
// edge shift.
bigint sft_periodic_count(const int_matrix& m, unsigned n);

// The right Fischer covers of g1 and g2 are labeled-isomorphic; both
// graphs must be irreducible.
bool same_shift(const labeled_graph& g1, const labeled_graph& g2);

} // namespace sofic

#endif
