#include "doctest.h"

#include <set>

#include "btg/levels.hpp"
#include "btg/oracle.hpp"
#include "corpus.hpp"

using namespace btg;

// Smallest B4 word with a non-degenerate level subgraph, found by scanning
// all freely reduced B4 words in length order.
static const char* const kNonDegenerateB4 = "s1 s2";

TEST_CASE("level subgraphs of B2 and B3 graphs") {
    auto g2 = build_trace_graph(parse_word("s1^2", 2));
    auto s = level_subgraph(g2, 1);
    CHECK(s.vertices.empty());
    CHECK(s.loops.size() == g2.edges.size());

    auto g3 = build_trace_graph(parse_word("s1 s2^-1 s1", 3));
    auto s1 = level_subgraph(g3, 1), s2 = level_subgraph(g3, 2);
    CHECK(s1.edges.size() + s1.loops.size() + s2.edges.size() + s2.loops.size() == g3.edges.size());
    CHECK_THROWS_AS(level_subgraph(g3, 3), Error);
    CHECK_THROWS_AS(level_subgraph(g3, 0), Error);
}

TEST_CASE("levels 1 and 3 of a B4 graph share no vertex") {
    auto g = build_trace_graph(parse_word("s2 s3^2 s2", 4));
    auto a = level_subgraph(g, 1), b = level_subgraph(g, 3);
    std::set<int> va(a.vertices.begin(), a.vertices.end());
    for (int v : b.vertices) CHECK(va.count(v) == 0);
}

TEST_CASE("right attractors") {
    auto g = build_trace_graph(parse_word("s1^2", 2));
    auto ra = right_attractors(g, level_subgraph(g, 1));
    // one attractor per vertex-free circle (12) and (21)
    REQUIRE(ra.size() == 2);
    for (const auto& a : ra) {
        CHECK(a.cls.u == 1);
        CHECK(a.primitive);
    }
    // both circles wind once against t: the pair turns a full half-turn twice
    CHECK(ra[0].cls.w == ra[1].cls.w);
}

TEST_CASE("attractors on the small corpus: exist, q > 0, disjoint, symmetric") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : corpus::reduced_words(n, n == 4 ? 3 : 5)) {
            auto g = build_trace_graph(w);
            for (int k = 1; k < n; ++k) {
                auto s = level_subgraph(g, k);
                auto ra = right_attractors(g, s);
                REQUIRE(!ra.empty());
                std::set<int> used;
                for (const auto& a : ra) {
                    CHECK(a.cls.u > 0);
                    CHECK(a.primitive);
                    for (int e : a.edges) {
                        CHECK(g.edges[e].level == k);
                        if (!g.edges[e].closed_loop()) CHECK(used.insert(g.edges[e].from).second);
                    }
                }
                // the involution carries S^(k) onto S^(n-k)
                auto mirror = level_subgraph(g, n - k);
                CHECK(mirror.edges.size() == s.edges.size());
                for (int e : s.edges) CHECK(g.edges[g.edge_partner[e]].level == n - k);
            }
        }
}

TEST_CASE("degeneracy") {
    // vertex-free levels are degenerate
    auto g = build_trace_graph(parse_word("", 3));
    for (int k = 1; k <= 2; ++k) CHECK(is_degenerate(g, level_subgraph(g, k)));

    // a single cycle is degenerate
    auto g2 = build_trace_graph(parse_word("s1^2", 2));
    auto s = level_subgraph(g2, 1);
    s.loops.resize(1);
    CHECK(is_degenerate(g2, s));

    auto w = build_trace_graph(parse_word(kNonDegenerateB4, 4));
    bool found = false;
    for (int k = 1; k <= 3; ++k) {
        auto lvl = level_subgraph(w, k);
        if (is_degenerate(w, lvl)) continue;
        found = true;
        auto rep = cycle_classes(w, lvl);
        // two independent classes exist
        bool independent = false;
        for (const auto& a : rep.classes)
            for (const auto& b : rep.classes)
                if (a.u * b.w != a.w * b.u) independent = true;
        CHECK(independent);
    }
    CHECK(found);
}

TEST_CASE("degeneracy via the basis agrees with full enumeration") {
    for (int n = 3; n <= 4; ++n)
        for (const auto& w : corpus::reduced_words(n, 3)) {
            auto g = build_trace_graph(w);
            for (int k = 1; k < n; ++k) {
                auto s = level_subgraph(g, k);
                auto classes = cycle_classes(g, s).classes;
                bool dependent = true;
                for (const auto& a : classes)
                    for (const auto& b : classes)
                        if (a.u * b.w != a.w * b.u) dependent = false;
                CHECK(is_degenerate(g, s) == dependent);
            }
        }
}

TEST_CASE("maximal class selection") {
    // r = 0: M is w itself
    std::vector<HomologyClass> cs{{1, 0}, {1, 2}, {2, 2}, {0, 1}};
    auto best = select_maximal(cs, {1, 0});
    REQUIRE(best);
    CHECK(*best == HomologyClass{2, 2});

    // M = u/q - w/r with (q, r) = (1, 1): (1,-1) -> 2, (2,-1) -> 3, (0,1) -> -1
    auto b2 = select_maximal({{1, -1}, {2, -1}, {0, 1}, {1, 1}}, {1, 1});
    REQUIRE(b2);
    CHECK(*b2 == HomologyClass{2, -1});

    CHECK_FALSE(select_maximal({{1, 1}, {2, 2}}, {1, 1}));

    auto g = build_trace_graph(parse_word("", 3));
    auto s = level_subgraph(g, 1);
    CHECK_THROWS_AS(maximal_class(g, s, {1, 0}), Error);
}

TEST_CASE("maximal class agrees with cycle-space brute force") {
    auto w = build_trace_graph(parse_word(kNonDegenerateB4, 4));
    for (int k = 1; k <= 3; ++k) {
        auto s = level_subgraph(w, k);
        if (is_degenerate(w, s)) continue;
        auto att = right_attractors(w, s).front().cls;
        auto brute = oracle::brute_force_maximal(w, s, att);
        REQUIRE(brute);
        CHECK(maximal_class(w, s, att) == *brute);
    }
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        auto word = corpus::random_reduced_word(rng, 3 + trial % 3, 2 + trial % 5);
        auto g = build_trace_graph(word);
        for (int k = 1; k < word.strands(); ++k) {
            auto s = level_subgraph(g, k);
            CHECK(cycle_classes(g, s).classes == oracle::brute_force_cycle_classes(g, s));
            if (is_degenerate(g, s)) continue;
            auto att = right_attractors(g, s).front().cls;
            CHECK(maximal_class(g, s, att) == *oracle::brute_force_maximal(g, s, att));
        }
    }
}

TEST_CASE("cycle enumeration respects its budget") {
    auto g = build_trace_graph(parse_word("s1 s2 s1 s2^-1", 4));
    for (int k = 1; k <= 3; ++k) {
        auto s = level_subgraph(g, k);
        if (cycle_classes(g, s).cycles > 3) {
            CHECK_THROWS_AS(cycle_classes(g, s, 3), BudgetExceeded);
            return;
        }
    }
    FAIL("no level with more than three cycles");
}
