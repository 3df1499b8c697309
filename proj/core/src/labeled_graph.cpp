#include "sofic/labeled_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "scc.hpp"

namespace sofic {

labeled_graph::labeled_graph(std::vector<std::string> vertices, std::vector<edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (vertices_.empty())
        throw domain_error("graph must have at least one vertex");
    std::set<std::string> seen;
    for (const auto& v : vertices_) {
        if (v.empty())
            throw domain_error("vertex names must be nonempty");
        if (!seen.insert(v).second)
            throw domain_error("duplicate vertex \"" + v + "\"");
    }
    for (const auto& e : edges_) {
        if (e.label.empty())
            throw domain_error("edge labels must be nonempty");
        if (!seen.count(e.src))
            throw domain_error("edge references undeclared vertex \"" + e.src + "\"");
        if (!seen.count(e.dst))
            throw domain_error("edge references undeclared vertex \"" + e.dst + "\"");
    }
}

bool labeled_graph::has_vertex(const std::string& name) const {
    return std::find(vertices_.begin(), vertices_.end(), name) != vertices_.end();
}

std::size_t labeled_graph::vertex_index(const std::string& name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end())
        throw domain_error("unknown vertex \"" + name + "\"");
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<std::string> labeled_graph::alphabet() const {
    std::set<std::string> labels;
    for (const auto& e : edges_) labels.insert(e.label);
    return {labels.begin(), labels.end()};
}

std::vector<labeled_graph::indexed_edge> labeled_graph::indexed_edges() const {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < vertices_.size(); ++i) index[vertices_[i]] = i;
    std::vector<indexed_edge> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_)
        out.push_back({index.at(e.src), index.at(e.dst), e.label});
    return out;
}

labeled_graph parse_graph(const std::string& text) {
    std::vector<std::string> vertices;
    std::vector<edge> edges;
    std::set<std::string> declared;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        if (tokens[0] == "vertex") {
            if (tokens.size() != 2)
                throw parse_error(where + "expected \"vertex <name>\"");
            if (!declared.insert(tokens[1]).second)
                throw parse_error(where + "duplicate vertex \"" + tokens[1] + "\"");
            vertices.push_back(tokens[1]);
        } else if (tokens[0] == "edge") {
            if (tokens.size() != 4)
                throw parse_error(where + "expected \"edge <src> <dst> <label>\"");
            if (!declared.count(tokens[1]))
                throw parse_error(where + "edge references undeclared vertex \"" +
                                  tokens[1] + "\"");
            if (!declared.count(tokens[2]))
                throw parse_error(where + "edge references undeclared vertex \"" +
                                  tokens[2] + "\"");
            edges.push_back({tokens[1], tokens[2], tokens[3]});
        } else {
            throw parse_error(where + "unknown directive \"" + tokens[0] + "\"");
        }
    }
    if (vertices.empty())
        throw parse_error("graph file declares no vertices");
    return labeled_graph(std::move(vertices), std::move(edges));
}

std::string serialize_graph(const labeled_graph& g) {
    std::ostringstream out;
    for (const auto& v : g.vertices()) out << "vertex " << v << '\n';
    auto sorted = g.edges();
    std::sort(sorted.begin(), sorted.end());
    for (const auto& e : sorted)
        out << "edge " << e.src << ' ' << e.dst << ' ' << e.label << '\n';
    return out.str();
}

int_matrix adjacency_matrix(const labeled_graph& g) {
    return adjacency_matrix(g, g.vertices());
}

int_matrix adjacency_matrix(const labeled_graph& g, const std::vector<std::string>& order) {
    const std::size_t n = g.vertex_count();
    if (order.size() != n)
        throw domain_error("vertex order has wrong length");
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (!g.has_vertex(order[i]))
            throw domain_error("vertex order names unknown vertex \"" + order[i] + "\"");
        if (!pos.emplace(order[i], i).second)
            throw domain_error("vertex order repeats vertex \"" + order[i] + "\"");
    }
    int_matrix m(n, n);
    for (const auto& e : g.edges())
        m(pos.at(e.src), pos.at(e.dst)) += 1;
    return m;
}

labeled_graph reverse_graph(const labeled_graph& g) {
    std::vector<edge> reversed;
    reversed.reserve(g.edge_count());
    for (const auto& e : g.edges()) reversed.push_back({e.dst, e.src, e.label});
    return labeled_graph(g.vertices(), std::move(reversed));
}

namespace {

std::vector<std::vector<std::size_t>> successor_lists(const labeled_graph& g) {
    std::vector<std::vector<std::size_t>> succ(g.vertex_count());
    for (const auto& e : g.indexed_edges()) succ[e.src].push_back(e.dst);
    return succ;
}

} // namespace

vertex_partition strongly_connected_components(const labeled_graph& g) {
    std::vector<std::size_t> scc_of;
    std::size_t count = detail::strongly_connected(successor_lists(g), scc_of);

    std::vector<std::vector<std::size_t>> members(count);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) members[scc_of[v]].push_back(v);

    // Blocks ordered by least member, members in declared order.
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    vertex_partition p;
    for (const auto& scc : members) {
        std::vector<std::string> block;
        block.reserve(scc.size());
        for (std::size_t i : scc) block.push_back(g.vertices()[i]);
        p.blocks.push_back(std::move(block));
    }
    return p;
}

bool is_irreducible(const labeled_graph& g) {
    if (g.edge_count() == 0) return false;
    return strongly_connected_components(g).blocks.size() == 1;
}

unsigned graph_period(const labeled_graph& g) {
    if (!is_irreducible(g))
        throw domain_error("graph_period requires an irreducible graph");
    const std::size_t n = g.vertex_count();
    auto succ = successor_lists(g);
    // BFS distances from vertex 0; the period is the gcd of
    // dist(u) + 1 - dist(v) over all edges u -> v.
    std::vector<long long> dist(n, -1);
    std::vector<std::size_t> queue{0};
    dist[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::size_t u = queue[head];
        for (std::size_t w : succ[u])
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    long long period = 0;
    for (const auto& e : g.indexed_edges()) {
        long long diff = dist[e.src] + 1 - dist[e.dst];
        period = std::gcd(period, diff);
    }
    if (period <= 0)
        throw std::logic_error("graph_period: no cycle found in irreducible graph");
    return static_cast<unsigned>(period);
}

bool is_mixing(const labeled_graph& g) {
    bool by_period = is_irreducible(g) && graph_period(g) == 1;

    // Wielandt bound: a primitive n x n matrix has a positive power with
    // exponent at most (n-1)^2 + 1.
    const std::size_t n = g.vertex_count();
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    int_matrix a = adjacency_matrix(g);
    int_matrix p = a;
    bool by_power = false;
    for (std::size_t k = 1; k <= bound; ++k) {
        if (entrywise_positive(p)) {
            by_power = true;
            break;
        }
        if (k < bound) p = mat_mul(p, a);
    }

    if (by_period != by_power)
        throw std::logic_error("is_mixing: period test and power test disagree");
    return by_period;
}

namespace {

// Per-vertex signature for isomorphism pruning: sorted multisets of
// (label, is-loop) over out- and in-edges.
using vertex_signature =
    std::pair<std::vector<std::pair<std::string, bool>>, std::vector<std::pair<std::string, bool>>>;

std::vector<vertex_signature> signatures(const labeled_graph& g) {
    std::vector<vertex_signature> sig(g.vertex_count());
    for (const auto& e : g.indexed_edges()) {
        bool loop = e.src == e.dst;
        sig[e.src].first.emplace_back(e.label, loop);
        sig[e.dst].second.emplace_back(e.label, loop);
    }
    for (auto& s : sig) {
        std::sort(s.first.begin(), s.first.end());
        std::sort(s.second.begin(), s.second.end());
    }
    return sig;
}

// Labeled edge counts keyed by (src, dst); complete pairwise pruning for
// the backtracking search.
using pair_counts = std::map<std::pair<std::size_t, std::size_t>, std::map<std::string, std::size_t>>;

pair_counts count_pairs(const std::vector<labeled_graph::indexed_edge>& edges) {
    pair_counts counts;
    for (const auto& e : edges) ++counts[{e.src, e.dst}][e.label];
    return counts;
}

} // namespace

std::optional<vertex_bijection> labeled_isomorphic(const labeled_graph& g1,
                                                   const labeled_graph& g2) {
    const std::size_t n = g1.vertex_count();
    if (n != g2.vertex_count() || g1.edge_count() != g2.edge_count()) return std::nullopt;

    auto sig1 = signatures(g1);
    auto sig2 = signatures(g2);
    auto counts1 = count_pairs(g1.indexed_edges());
    auto counts2 = count_pairs(g2.indexed_edges());

    std::vector<std::size_t> image(n, n);
    std::vector<bool> used(n, false);

    auto pair_ok = [&](std::size_t a, std::size_t b) {
        auto it1 = counts1.find({a, b});
        auto it2 = counts2.find({image[a], image[b]});
        bool e1 = it1 != counts1.end();
        bool e2 = it2 != counts2.end();
        if (e1 != e2) return false;
        return !e1 || it1->second == it2->second;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t v) {
        if (v == n) return true;
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w] || sig1[v] != sig2[w]) continue;
            image[v] = w;
            used[w] = true;
            bool ok = true;
            for (std::size_t u = 0; u <= v && ok; ++u) {
                if (image[u] == n) continue;
                ok = pair_ok(v, u) && (u == v || pair_ok(u, v));
            }
            if (ok && assign(v + 1)) return true;
            used[w] = false;
            image[v] = n;
        }
        return false;
    };

    if (!assign(0)) return std::nullopt;
    vertex_bijection out;
    out.reserve(n);
    for (std::size_t v = 0; v < n; ++v)
        out.emplace_back(g1.vertices()[v], g2.vertices()[image[v]]);
    return out;
}

} // namespace sofic
