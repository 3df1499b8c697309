#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "sofic/int_linalg.hpp"
#include "sofic/labeled_graph.hpp"
#include "test_util.hpp"

using namespace sofic;
using namespace sofic::testutil;

TEST_CASE("parse_graph on the fixtures") {
    auto fig1 = fixture_graph("fig1.graph");
    CHECK(fig1.vertex_count() == 5);
    CHECK(fig1.edge_count() == 14);
    CHECK(fig1.vertices() == std::vector<std::string>{"u", "v", "w", "x", "y"});
    CHECK(fig1.alphabet() ==
          std::vector<std::string>{"a", "a'", "b", "c", "d", "e", "f", "g"});

    auto fig2 = fixture_graph("fig2.graph");
    CHECK(fig2.vertex_count() == 4);
    CHECK(fig2.edge_count() == 11);

    auto even = fixture_graph("even.graph");
    CHECK(even.vertex_count() == 2);
    CHECK(even.edge_count() == 3);
}

TEST_CASE("parse_graph handles the full 2-shift and error cases") {
    auto g = parse_graph("vertex p\nedge p p 0\nedge p p 1");
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 2);

    CHECK_THROWS_WITH_AS(parse_graph("vertex a\nedge a b 0"),
                         "line 2: edge references undeclared vertex \"b\"", parse_error);
    CHECK_THROWS_WITH_AS(parse_graph("vertex a\nvertex a"),
                         "line 2: duplicate vertex \"a\"", parse_error);
    CHECK_THROWS_AS(parse_graph("vertex a\nfrobnicate a"), parse_error);
    CHECK_THROWS_AS(parse_graph("vertex"), parse_error);
    CHECK_THROWS_AS(parse_graph("edge a b"), parse_error);
    CHECK_THROWS_AS(parse_graph("# only a comment\n"), parse_error);

    // comments, blank lines, repeated whitespace
    auto h = parse_graph("# heading\n\n  vertex  a\n\tedge a a x\n# trailing\n");
    CHECK(h.vertex_count() == 1);
    CHECK(h.edge_count() == 1);
}

TEST_CASE("serialization is canonical and lossless") {
    auto fig1 = fixture_graph("fig1.graph");
    auto text = serialize_graph(fig1);
    auto reparsed = parse_graph(text);
    CHECK(reparsed.vertices() == fig1.vertices());
    auto sorted_edges = [](const labeled_graph& g) {
        auto es = g.edges();
        std::sort(es.begin(), es.end());
        return es;
    };
    CHECK(sorted_edges(reparsed) == sorted_edges(fig1));
    CHECK(serialize_graph(reparsed) == text); // canonical fixed point

    // edges sorted by (src, dst, label), vertices in declared order
    auto g = parse_graph("vertex b\nvertex a\nedge b a z\nedge a a y\nedge a a x");
    CHECK(serialize_graph(g) ==
          "vertex b\nvertex a\nedge a a x\nedge a a y\nedge b a z\n");
}

TEST_CASE("adjacency matrix reproduces the printed 5x5 matrix") {
    auto fig1 = fixture_graph("fig1.graph");
    auto a = fixture_matrix("A.mat");
    CHECK(adjacency_matrix(fig1, {"u", "w", "v", "x", "y"}) == a);

    SUBCASE("that ordering is the only one that matches") {
        auto verts = fig1.vertices();
        std::sort(verts.begin(), verts.end());
        std::size_t matches = 0;
        std::vector<std::string> winner;
        do {
            if (adjacency_matrix(fig1, verts) == a) {
                ++matches;
                winner = verts;
            }
        } while (std::next_permutation(verts.begin(), verts.end()));
        CHECK(matches == 1);
        CHECK(winner == std::vector<std::string>{"u", "w", "v", "x", "y"});
    }
}

TEST_CASE("adjacency matrix basics") {
    auto even = fixture_graph("even.graph");
    CHECK(adjacency_matrix(even, {"A", "B"}) == int_matrix({{1, 1}, {1, 0}}));
    CHECK(adjacency_matrix(even) == int_matrix({{1, 1}, {1, 0}}));

    auto empty = labeled_graph({"a", "b"}, {});
    CHECK(adjacency_matrix(empty) == int_matrix(2, 2));

    CHECK_THROWS_AS(adjacency_matrix(even, {"A"}), domain_error);
    CHECK_THROWS_AS(adjacency_matrix(even, {"A", "C"}), domain_error);
    CHECK_THROWS_AS(adjacency_matrix(even, {"A", "A"}), domain_error);
}

TEST_CASE("reverse_graph") {
    auto single = labeled_graph({"a", "b"}, {{"a", "b", "x"}});
    auto rev = reverse_graph(single);
    CHECK(rev.edges() == std::vector<edge>{{"b", "a", "x"}});

    auto fig1 = fixture_graph("fig1.graph");
    CHECK(reverse_graph(reverse_graph(fig1)) == fig1);

    // the 2-vertex even presentation is its own reverse as an edge multiset
    auto even = fixture_graph("even.graph");
    auto sorted = [](labeled_graph g) {
        auto es = g.edges();
        std::sort(es.begin(), es.end());
        return es;
    };
    CHECK(sorted(reverse_graph(even)) == sorted(even));
}

TEST_CASE("adjacency of reverse is the transpose, on random graphs") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_graph(rng);
        CHECK(adjacency_matrix(reverse_graph(g)) == transpose(adjacency_matrix(g)));
    }
}

TEST_CASE("strongly connected components") {
    auto fig1 = fixture_graph("fig1.graph");
    auto p = strongly_connected_components(fig1);
    REQUIRE(p.blocks.size() == 1);
    CHECK(p.blocks[0] == std::vector<std::string>{"u", "v", "w", "x", "y"});

    auto chain = labeled_graph({"a", "b"}, {{"a", "b", "x"}});
    auto pc = strongly_connected_components(chain);
    REQUIRE(pc.blocks.size() == 2);
    CHECK(pc.blocks[0] == std::vector<std::string>{"a"});
    CHECK(pc.blocks[1] == std::vector<std::string>{"b"});

    auto lonely = labeled_graph({"a"}, {});
    CHECK(strongly_connected_components(lonely).blocks ==
          std::vector<std::vector<std::string>>{{"a"}});
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(fixture_graph("fig1.graph")));
    CHECK(is_irreducible(fixture_graph("even.graph")));
    CHECK_FALSE(is_irreducible(labeled_graph({"a"}, {})));
    CHECK_FALSE(is_irreducible(labeled_graph({"a", "b"}, {{"a", "b", "x"}})));
}

TEST_CASE("graph period") {
    auto two_cycle = labeled_graph({"a", "b"}, {{"a", "b", "x"}, {"b", "a", "y"}});
    CHECK(graph_period(two_cycle) == 2);
    CHECK(graph_period(fixture_graph("even.graph")) == 1);
    CHECK(graph_period(fixture_graph("fig1.graph")) == 1);
    CHECK_THROWS_AS(graph_period(labeled_graph({"a"}, {})), domain_error);
}

TEST_CASE("mixing") {
    CHECK(is_mixing(fixture_graph("fig1.graph")));
    CHECK(is_mixing(fixture_graph("fig2.graph")));
    CHECK(is_mixing(fixture_graph("even.graph")));
    CHECK_FALSE(is_mixing(labeled_graph({"a", "b"}, {{"a", "b", "x"}, {"b", "a", "y"}})));
    CHECK_FALSE(is_mixing(labeled_graph({"a"}, {})));

    // the even cover squares to a positive matrix
    auto m = adjacency_matrix(fixture_graph("even.graph"));
    CHECK(mat_pow(m, 2) == int_matrix({{2, 1}, {1, 1}}));
}

TEST_CASE("mixing verdict equals a direct power search, on random graphs") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_irreducible_graph(rng);
        const std::size_t n = g.vertex_count();
        auto a = adjacency_matrix(g);
        bool positive_power = false;
        auto p = a;
        for (std::size_t k = 1; k <= (n - 1) * (n - 1) + 1; ++k) {
            if (entrywise_positive(p)) {
                positive_power = true;
                break;
            }
            p = mat_mul(p, a);
        }
        CHECK(is_mixing(g) == positive_power);
    }
}

TEST_CASE("downstream invariants do not depend on the vertex order") {
    auto fig1 = fixture_graph("fig1.graph");
    auto base = adjacency_matrix(fig1);
    auto base_factors = smith_normal_form(identity_minus(base)).invariant_factors;
    auto base_rank = rank_exact(base);

    std::mt19937 rng(31337);
    auto order = fig1.vertices();
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(order.begin(), order.end(), rng);
        auto m = adjacency_matrix(fig1, order);
        CHECK(rank_exact(m) == base_rank);
        CHECK(smith_normal_form(identity_minus(m)).invariant_factors == base_factors);
        bool positive = entrywise_positive(mat_pow(m, 3));
        CHECK(positive == entrywise_positive(mat_pow(base, 3)));
    }
}

TEST_CASE("labeled isomorphism on the fixtures") {
    auto fig1 = fixture_graph("fig1.graph");
    auto fig2 = fixture_graph("fig2.graph");

    // renaming is an isomorphism
    std::vector<std::string> renamed{"1", "2", "3", "4"};
    std::vector<edge> edges;
    for (const auto& e : fig2.edges())
        edges.push_back({renamed[fig2.vertex_index(e.src)],
                         renamed[fig2.vertex_index(e.dst)], e.label});
    auto fig2_renamed = labeled_graph(renamed, edges);
    auto bij = labeled_isomorphic(fig2, fig2_renamed);
    REQUIRE(bij.has_value());
    for (const auto& [from, to] : *bij)
        CHECK(to == renamed[fig2.vertex_index(from)]);

    CHECK_FALSE(labeled_isomorphic(fig1, fig2).has_value()); // 5 vs 4 vertices

    // swapping the labels 0 and 1 on the even cover breaks isomorphism
    auto even = fixture_graph("even.graph");
    std::vector<edge> swapped;
    for (const auto& e : even.edges())
        swapped.push_back({e.src, e.dst, e.label == "0" ? "1" : "0"});
    auto even_swapped = labeled_graph(even.vertices(), swapped);
    CHECK_FALSE(labeled_isomorphic(even, even_swapped).has_value());
}

TEST_CASE("labeled isomorphism is reflexive and symmetric on random graphs") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = random_graph(rng, 5, 10);
        auto self = labeled_isomorphic(g, g);
        REQUIRE(self.has_value());

        auto h = random_graph(rng, 5, 10);
        auto fwd = labeled_isomorphic(g, h);
        auto bwd = labeled_isomorphic(h, g);
        CHECK(fwd.has_value() == bwd.has_value());

        if (fwd) {
            // the bijection carries the edge multiset of g exactly onto h's
            std::map<std::string, std::string> to;
            for (const auto& [a, b] : *fwd) to[a] = b;
            std::multiset<std::tuple<std::string, std::string, std::string>> mapped, target;
            for (const auto& e : g.edges()) mapped.insert({to[e.src], to[e.dst], e.label});
            for (const auto& e : h.edges()) target.insert({e.src, e.dst, e.label});
            CHECK(mapped == target);
        }
    }
}

TEST_CASE("graph construction invariants") {
    CHECK_THROWS_AS(labeled_graph({}, {}), domain_error);
    CHECK_THROWS_AS(labeled_graph({"a", "a"}, {}), domain_error);
    CHECK_THROWS_AS(labeled_graph({"a"}, {{"a", "z", "l"}}), domain_error);
    CHECK_THROWS_AS(labeled_graph({"a"}, {{"a", "a", ""}}), domain_error);

    // parallel edges are kept with multiplicity
    auto g = labeled_graph({"a"}, {{"a", "a", "x"}, {"a", "a", "x"}});
    CHECK(g.edge_count() == 2);
    CHECK(adjacency_matrix(g) == int_matrix({{2}}));
}
