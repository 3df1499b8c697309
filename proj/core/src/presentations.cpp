#include "sofic/presentations.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "scc.hpp"

namespace sofic {

namespace {

// label -> per-vertex target lists, labels sorted.
using label_delta = std::map<std::string, std::vector<std::vector<std::size_t>>>;

label_delta build_delta(const labeled_graph& g) {
    label_delta delta;
    for (const auto& l : g.alphabet())
        delta[l].assign(g.vertex_count(), {});
    for (const auto& e : g.indexed_edges())
        delta[e.label][e.src].push_back(e.dst);
    return delta;
}

std::vector<std::size_t> subset_image(const std::vector<std::size_t>& s,
                                      const std::vector<std::vector<std::size_t>>& targets) {
    std::set<std::size_t> out;
    for (std::size_t v : s)
        out.insert(targets[v].begin(), targets[v].end());
    return {out.begin(), out.end()};
}

std::vector<std::string> names_of(const labeled_graph& g, const std::vector<std::size_t>& s) {
    std::vector<std::string> names;
    names.reserve(s.size());
    for (std::size_t v : s) names.push_back(g.vertices()[v]);
    std::sort(names.begin(), names.end());
    return names;
}

} // namespace

std::string subset_automaton::state_name(const std::vector<std::string>& state) {
    std::string name;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i > 0) name += '+';
        name += state[i];
    }
    return name;
}

labeled_graph subset_automaton::to_labeled_graph() const {
    std::vector<std::string> vertices;
    vertices.reserve(states.size());
    for (const auto& s : states) vertices.push_back(state_name(s));
    std::vector<edge> edges;
    edges.reserve(transitions.size());
    for (const auto& [key, dst] : transitions)
        edges.push_back({vertices[key.first], vertices[dst], key.second});
    return labeled_graph(std::move(vertices), std::move(edges));
}

bool is_right_resolving(const labeled_graph& g) {
    std::vector<std::set<std::string>> seen(g.vertex_count());
    for (const auto& e : g.indexed_edges())
        if (!seen[e.src].insert(e.label).second) return false;
    return true;
}

bool is_left_resolving(const labeled_graph& g) {
    return is_right_resolving(reverse_graph(g));
}

subset_automaton determinize(const labeled_graph& g) {
    if (g.edge_count() == 0)
        throw domain_error("determinize requires a graph with at least one edge");
    auto delta = build_delta(g);

    std::vector<std::size_t> seed(g.vertex_count());
    std::iota(seed.begin(), seed.end(), 0);

    std::vector<std::vector<std::size_t>> states{seed};
    std::map<std::vector<std::size_t>, std::size_t> id{{seed, 0}};
    std::map<std::pair<std::size_t, std::string>, std::size_t> transitions;

    for (std::size_t head = 0; head < states.size(); ++head) {
        const auto state = states[head];
        for (const auto& [label, targets] : delta) {
            auto next = subset_image(state, targets);
            if (next.empty()) continue;
            auto [it, fresh] = id.try_emplace(next, states.size());
            if (fresh) states.push_back(next);
            transitions[{head, label}] = it->second;
        }
    }

    // The seed is a state only when it is the image of some nonempty word.
    bool seed_reentered = false;
    for (const auto& [key, dst] : transitions)
        if (dst == 0) {
            seed_reentered = true;
            break;
        }
    subset_automaton sa{{}, {}, g};
    std::size_t skip = seed_reentered ? 0 : 1;
    for (std::size_t i = skip; i < states.size(); ++i)
        sa.states.push_back(names_of(g, states[i]));
    for (const auto& [key, dst] : transitions) {
        if (key.first < skip) continue;
        sa.transitions[{key.first - skip, key.second}] = dst - skip;
    }
    return sa;
}

subset_automaton terminal_component(const subset_automaton& sa) {
    if (!is_irreducible(sa.base))
        throw domain_error("terminal_component requires an irreducible base graph");

    std::vector<std::vector<std::size_t>> succ(sa.states.size());
    for (const auto& [key, dst] : sa.transitions) succ[key.first].push_back(dst);
    std::vector<std::size_t> scc_of;
    std::size_t scc_count = detail::strongly_connected(succ, scc_of);

    std::vector<bool> has_exit(scc_count, false);
    for (const auto& [key, dst] : sa.transitions)
        if (scc_of[key.first] != scc_of[dst]) has_exit[scc_of[key.first]] = true;

    std::vector<std::size_t> terminals;
    for (std::size_t c = 0; c < scc_count; ++c)
        if (!has_exit[c]) terminals.push_back(c);
    if (terminals.size() != 1)
        throw std::logic_error("terminal_component: terminal SCC not unique for irreducible base");
    std::size_t keep = terminals.front();

    subset_automaton out{{}, {}, sa.base};
    std::vector<std::size_t> remap(sa.states.size(), sa.states.size());
    for (std::size_t i = 0; i < sa.states.size(); ++i)
        if (scc_of[i] == keep) {
            remap[i] = out.states.size();
            out.states.push_back(sa.states[i]);
        }
    for (const auto& [key, dst] : sa.transitions)
        if (scc_of[key.first] == keep)
            out.transitions[{remap[key.first], key.second}] = remap[dst];
    return out;
}

labeled_graph merge_follower_equivalent(const labeled_graph& g) {
    if (!is_right_resolving(g))
        throw domain_error("merge_follower_equivalent requires a right-resolving graph");
    const std::size_t n = g.vertex_count();
    auto edges = g.indexed_edges();

    std::vector<std::size_t> block(n, 0);
    std::size_t block_count = 1;
    while (true) {
        // (old block, sorted out-profile) -> new block, numbered by first
        // occurrence in declared vertex order.
        std::vector<std::vector<std::pair<std::string, std::size_t>>> profile(n);
        for (const auto& e : edges) profile[e.src].emplace_back(e.label, block[e.dst]);
        for (auto& p : profile) std::sort(p.begin(), p.end());

        std::map<std::pair<std::size_t, std::vector<std::pair<std::string, std::size_t>>>,
                 std::size_t>
            next_id;
        std::vector<std::size_t> next_block(n);
        for (std::size_t v = 0; v < n; ++v) {
            auto key = std::make_pair(block[v], profile[v]);
            auto [it, fresh] = next_id.try_emplace(key, next_id.size());
            next_block[v] = it->second;
        }
        if (next_id.size() == block_count) break;
        block_count = next_id.size();
        block = std::move(next_block);
    }

    // Representative and name: lexicographically least member.
    std::vector<std::string> block_name(block_count);
    std::vector<std::size_t> block_rep(block_count, n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::string& name = g.vertices()[v];
        std::size_t b = block[v];
        if (block_rep[b] == n || name < block_name[b]) {
            block_rep[b] = v;
            block_name[b] = name;
        }
    }
    // Blocks ordered by first member in declared order.
    std::vector<std::size_t> block_order;
    std::vector<bool> seen(block_count, false);
    for (std::size_t v = 0; v < n; ++v)
        if (!seen[block[v]]) {
            seen[block[v]] = true;
            block_order.push_back(block[v]);
        }
    std::vector<std::size_t> block_pos(block_count);
    for (std::size_t i = 0; i < block_order.size(); ++i) block_pos[block_order[i]] = i;

    std::vector<std::string> vertices;
    vertices.reserve(block_count);
    for (std::size_t b : block_order) vertices.push_back(block_name[b]);
    std::vector<edge> quotient_edges;
    for (std::size_t b : block_order) {
        std::size_t rep = block_rep[b];
        for (const auto& e : edges)
            if (e.src == rep)
                quotient_edges.push_back(
                    {block_name[b], block_name[block[e.dst]], e.label});
    }
    return labeled_graph(std::move(vertices), std::move(quotient_edges));
}

labeled_graph right_fischer_cover(const labeled_graph& g) {
    if (!is_irreducible(g))
        throw domain_error("right_fischer_cover requires an irreducible graph");
    return merge_follower_equivalent(terminal_component(determinize(g)).to_labeled_graph());
}

labeled_graph left_fischer_cover(const labeled_graph& g) {
    return reverse_graph(right_fischer_cover(reverse_graph(g)));
}

std::optional<word> find_synchronizing_word(const labeled_graph& g) {
    auto delta = build_delta(g);
    std::vector<std::size_t> seed(g.vertex_count());
    std::iota(seed.begin(), seed.end(), 0);
    if (seed.size() == 1) return word{};

    // BFS with labels in sorted order visits subsets in (length, lex) order
    // of their minimal words, so the first singleton found is the answer.
    std::vector<std::vector<std::size_t>> queue{seed};
    std::vector<word> words{word{}};
    std::set<std::vector<std::size_t>> visited{seed};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto state = queue[head];
        const auto current = words[head];
        for (const auto& [label, targets] : delta) {
            auto next = subset_image(state, targets);
            if (next.empty() || visited.count(next)) continue;
            visited.insert(next);
            word w = current;
            w.push_back(label);
            if (next.size() == 1) return w;
            queue.push_back(std::move(next));
            words.push_back(std::move(w));
        }
    }
    return std::nullopt;
}

namespace {

// Unordered non-diagonal vertex pairs, indexed u * n + v with u < v.
struct pair_graph {
    std::size_t n;
    std::vector<std::vector<std::size_t>> succ; // over pair codes
    std::vector<bool> is_pair;                  // pair code used

    static std::size_t code(std::size_t a, std::size_t b, std::size_t n) {
        if (a > b) std::swap(a, b);
        return a * n + b;
    }
};

pair_graph build_pair_graph(const labeled_graph& g) {
    const std::size_t n = g.vertex_count();
    auto delta = build_delta(g);
    pair_graph pg{n, std::vector<std::vector<std::size_t>>(n * n), std::vector<bool>(n * n, false)};
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            std::size_t from = pair_graph::code(u, v, n);
            pg.is_pair[from] = true;
            std::set<std::size_t> targets;
            for (const auto& [label, tl] : delta)
                for (std::size_t a : tl[u])
                    for (std::size_t b : tl[v])
                        if (a != b) targets.insert(pair_graph::code(a, b, n));
            pg.succ[from] = {targets.begin(), targets.end()};
        }
    return pg;
}

// Targets of same-label out-splittings: distinct edges at one vertex with
// equal labels and distinct endpoints.
std::set<std::size_t> splitting_pairs(const labeled_graph& g) {
    const std::size_t n = g.vertex_count();
    auto delta = build_delta(g);
    std::set<std::size_t> pairs;
    for (const auto& [label, tl] : delta)
        for (std::size_t q = 0; q < n; ++q) {
            const auto& targets = tl[q];
            for (std::size_t i = 0; i < targets.size(); ++i)
                for (std::size_t j = i + 1; j < targets.size(); ++j)
                    if (targets[i] != targets[j])
                        pairs.insert(pair_graph::code(targets[i], targets[j], n));
        }
    return pairs;
}

} // namespace

bool is_right_closing(const labeled_graph& g) {
    auto initial = splitting_pairs(g);
    if (initial.empty()) return true;
    auto pg = build_pair_graph(g);

    // Reachable pair states from the splittings.
    std::vector<bool> reachable(pg.succ.size(), false);
    std::vector<std::size_t> queue(initial.begin(), initial.end());
    for (std::size_t p : queue) reachable[p] = true;
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (std::size_t next : pg.succ[queue[head]])
            if (!reachable[next]) {
                reachable[next] = true;
                queue.push_back(next);
            }

    // A cycle among reachable pairs means two distinct label-equal paths
    // diverging from one vertex can run forever.
    std::vector<std::size_t> nodes;
    for (std::size_t p = 0; p < pg.succ.size(); ++p)
        if (reachable[p]) nodes.push_back(p);
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = i;

    std::vector<std::vector<std::size_t>> succ(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t next : pg.succ[nodes[i]]) {
            if (next == nodes[i]) return false; // self-loop
            if (reachable[next]) succ[i].push_back(pos[next]);
        }
    }
    std::vector<std::size_t> scc_of;
    std::size_t scc_count = detail::strongly_connected(succ, scc_of);
    std::vector<std::size_t> scc_size(scc_count, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) ++scc_size[scc_of[i]];
    return std::all_of(scc_size.begin(), scc_size.end(),
                       [](std::size_t s) { return s <= 1; });
}

bool is_left_closing(const labeled_graph& g) {
    return is_right_closing(reverse_graph(g));
}

bool is_almost_finite_type(const labeled_graph& g) {
    if (!is_irreducible(g))
        throw domain_error("is_almost_finite_type requires an irreducible graph");
    return is_left_closing(right_fischer_cover(g));
}

namespace {

using reach_masks = std::vector<std::uint64_t>; // per-vertex target bitmask

reach_masks compose(const reach_masks& a, const reach_masks& b) {
    reach_masks out(a.size(), 0);
    for (std::size_t v = 0; v < a.size(); ++v) {
        std::uint64_t m = a[v];
        while (m) {
            std::size_t w = static_cast<std::size_t>(std::countr_zero(m));
            m &= m - 1;
            out[v] |= b[w];
        }
    }
    return out;
}

bool has_periodic_cycle(const reach_masks& rel) {
    // Some vertex returns to itself within |V| repetitions of the word.
    const std::size_t n = rel.size();
    reach_masks power = rel;
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t v = 0; v < n; ++v)
            if (power[v] >> v & 1u) return true;
        if (j < n) power = compose(power, rel);
    }
    return false;
}

} // namespace

std::size_t count_periodic_points(const labeled_graph& g, unsigned n, unsigned max_n) {
    if (!is_irreducible(g))
        throw domain_error("count_periodic_points requires an irreducible graph");
    if (n == 0)
        throw domain_error("period length must be positive");
    if (n > max_n)
        throw domain_error("period length " + std::to_string(n) +
                           " exceeds the configured bound " + std::to_string(max_n));
    const std::size_t vn = g.vertex_count();
    if (vn > 64)
        throw domain_error("count_periodic_points supports at most 64 vertices");

    auto alphabet = g.alphabet();
    std::vector<reach_masks> label_masks;
    label_masks.reserve(alphabet.size());
    {
        auto delta = build_delta(g);
        for (const auto& l : alphabet) {
            reach_masks masks(vn, 0);
            for (std::size_t v = 0; v < vn; ++v)
                for (std::size_t w : delta[l][v]) masks[v] |= std::uint64_t(1) << w;
            label_masks.push_back(std::move(masks));
        }
    }

    // Word tree walk; subtrees with an empty relation present no factors
    // and are pruned.
    std::size_t count = 0;
    reach_masks identity(vn);
    for (std::size_t v = 0; v < vn; ++v) identity[v] = std::uint64_t(1) << v;

    std::function<void(const reach_masks&, unsigned)> walk =
        [&](const reach_masks& rel, unsigned depth) {
            if (depth == n) {
                if (has_periodic_cycle(rel)) ++count;
                return;
            }
            for (const auto& masks : label_masks) {
                auto next = compose(rel, masks);
                if (std::all_of(next.begin(), next.end(),
                                [](std::uint64_t m) { return m == 0; }))
                    continue;
                walk(next, depth + 1);
            }
        };
    walk(identity, 0);
    return count;
}

bigint sft_periodic_count(const int_matrix& m, unsigned n) {
    if (!m.is_square())
        throw domain_error("sft_periodic_count requires a square matrix");
    if (!entrywise_nonnegative(m))
        throw domain_error("sft_periodic_count requires nonnegative entries");
    if (n == 0)
        throw domain_error("period length must be positive");
    auto p = mat_pow(m, n);
    bigint trace = 0;
    for (std::size_t i = 0; i < p.rows(); ++i) trace += p(i, i);
    return trace;
}

bool same_shift(const labeled_graph& g1, const labeled_graph& g2) {
    if (!is_irreducible(g1) || !is_irreducible(g2))
        throw domain_error("same_shift requires irreducible graphs");
    return labeled_isomorphic(right_fischer_cover(g1), right_fischer_cover(g2)).has_value();
}

} // namespace sofic
