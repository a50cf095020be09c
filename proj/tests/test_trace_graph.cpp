#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "btg/trace_graph.hpp"
#include "corpus.hpp"

using namespace btg;

namespace {

int level_of(const TraceGraph& g, const EdgeEnd& end) { return g.edges[end.edge].level; }

void check_local_structure(const TraceGraph& g) {
    for (const auto& v : g.vertices) {
        // the middle end below belongs to the circle of the two outer strands
        const auto& mid = g.edges[v.below[1].edge];
        CHECK(mid.pair_to == std::array<int, 2>{v.strands[0], v.strands[2]});
        // above, the middle end continues the same circle
        const auto& mid_up = g.edges[v.above[1].edge];
        CHECK(mid_up.pair_from == std::array<int, 2>{v.strands[0], v.strands[2]});

        std::map<int, int> count;
        for (const auto& e : v.below) count[level_of(g, e)]++;
        for (const auto& e : v.above) count[level_of(g, e)]++;
        REQUIRE(count.size() == 2);
        auto lo = count.begin(), hi = std::next(count.begin());
        CHECK(hi->first - lo->first == 1);
        CHECK(lo->second == 3);
        CHECK(hi->second == 3);
        // the middle circle changes level by one step, like the outer ones
        int k = level_of(g, v.below[1]);
        CHECK(level_of(g, v.above[1]) != k);
        CHECK(std::abs(level_of(g, v.above[1]) - k) == 1);
    }
}

}  // namespace

TEST_CASE("vertex and circle counts on the spec examples") {
    auto g = build_trace_graph(parse_word("s1", 3));
    CHECK(g.vertices.size() == 2);
    CHECK(g.circles.size() == 3);

    // the closure of s1^2 has two components, so N = 2 gcd(1,1) = 2: circles (12) and (21)
    auto g2 = build_trace_graph(parse_word("s1^2", 2));
    CHECK(g2.vertices.empty());
    CHECK(g2.circles.size() == 2);
    // a knot closure in B2 has n - 1 = 1 circle
    auto g1 = build_trace_graph(parse_word("s1^3", 2));
    CHECK(g1.vertices.empty());
    CHECK(g1.circles.size() == 1);

    auto g4 = build_trace_graph(parse_word("s2 s3^2 s2", 4));
    CHECK(g4.vertices.size() == 16);
    CHECK(g4.circles.size() == 12);
}

TEST_CASE("markings") {
    auto pure = build_trace_graph(parse_word("s1^2 s2^2", 3));
    std::set<std::pair<int, int>> pairs;
    for (const auto& c : pure.circles) {
        CHECK(c.marking.k == 1);
        pairs.insert({c.marking.i, c.marking.j});
    }
    CHECK(pairs == std::set<std::pair<int, int>>{{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}});

    auto knot = build_trace_graph(parse_word("s1 s2", 3));
    REQUIRE(knot.circles.size() == 2);
    std::set<int> ks;
    for (const auto& c : knot.circles) {
        CHECK(c.marking.i == 1);
        CHECK(c.marking.j == 1);
        ks.insert(c.marking.k);
    }
    CHECK(ks == std::set<int>{1, 2});

    // cycle lengths (2,3) in B5
    auto w = parse_word("s1 s3 s4", 5);
    CHECK(cycle_structure(w).lengths() == std::vector<int>{2, 3});
    auto g = build_trace_graph(w);
    CHECK(g.circles.size() == 5);
    CHECK(circle_count_formula(g.cycles) == 5);
}

TEST_CASE("levels") {
    auto paths = StrandPathSet(parse_word("s2", 3));
    auto fiber = read_fiber(paths, 0.0);
    REQUIRE(fiber.size() == 1);
    CHECK(fiber[0].level == 2);

    for (const auto& e : build_trace_graph(parse_word("s1^3", 2)).edges) CHECK(e.level == 1);

    // the two vertices of TG(s1) carry mirrored patterns: one has its middle
    // circle at level 1 below with the outer circles at 2, the other the reverse
    auto g = build_trace_graph(parse_word("s1", 3));
    std::multiset<int> middle_levels;
    for (const auto& v : g.vertices) {
        int k = level_of(g, v.below[1]);
        middle_levels.insert(k);
        CHECK(level_of(g, v.below[0]) == 3 - k);
        CHECK(level_of(g, v.below[2]) == 3 - k);
    }
    CHECK(middle_levels == std::multiset<int>{1, 2});
}

TEST_CASE("symmetry involution") {
    auto g = build_trace_graph(parse_word("s1", 3));
    CHECK(g.vertex_partner == std::vector<int>{1, 0});

    auto pure = build_trace_graph(parse_word("s1^2 s2^-2", 3));
    for (const auto& c : pure.circles) {
        const auto& p = pure.circles[pure.circle_partner[c.id]];
        CHECK(p.marking.i == c.marking.j);
        CHECK(p.marking.j == c.marking.i);
    }

    auto knot = build_trace_graph(parse_word("s1 s2", 3));
    for (const auto& c : knot.circles) CHECK(knot.circles[knot.circle_partner[c.id]].marking.k == 3 - c.marking.k);
}

TEST_CASE("graph invariants on small words") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : corpus::reduced_words(n, n == 4 ? 3 : 5)) {
            auto g = build_trace_graph(w);
            CHECK(g.vertices.size() == 2 * w.length() * static_cast<std::size_t>(n - 2));
            CHECK(static_cast<int>(g.circles.size()) == circle_count_formula(g.cycles));
            check_local_structure(g);

            for (std::size_t v = 0; v < g.vertices.size(); ++v) {
                int p = g.vertex_partner[v];
                REQUIRE(p >= 0);
                CHECK(p != static_cast<int>(v));
                CHECK(g.vertex_partner[p] == static_cast<int>(v));
            }
            for (const auto& e : g.edges) {
                int p = g.edge_partner[e.id];
                REQUIRE(p >= 0);
                CHECK(g.edges[p].level == n - e.level);
                CHECK(e.dz > 0);
            }
            for (const auto& c : g.circles) {
                double dz = 0, dt = 0;
                for (int e : c.edges) {
                    dz += g.edges[e].dz;
                    dt += g.edges[e].dt;
                }
                CHECK(dz == doctest::Approx(c.periods));
                double turns = dt / kTwoPi;
                CHECK(std::abs(turns - std::round(turns)) < 1e-9);
            }
        }
}

TEST_CASE("reading the fiber at t = 0 reproduces the word") {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : corpus::reduced_words(n, n == 4 ? 3 : 4)) {
            StrandPathSet paths(w);
            CHECK(read_word_at(paths, 0.0) == w);
        }
    StrandPathSet p(parse_word("s1 s2^-1", 3));
    auto f = read_fiber(p, 0.0);
    REQUIRE(f.size() == 2);
    CHECK(f[0].level == 1);
    CHECK(f[0].sign == 1);
    CHECK(f[1].level == 2);
    CHECK(f[1].sign == -1);
    CHECK(read_word_at(StrandPathSet(parse_word("", 3)), 0.0).empty());
}

TEST_CASE("a fiber through a vertex is rejected") {
    StrandPathSet paths(parse_word("s1", 3));
    auto g = build_trace_graph(paths);
    CHECK_THROWS_AS(read_fiber(paths, g.vertices[0].t), GenericityError);
}

TEST_CASE("crossing counts change in pairs across the t circle") {
    StrandPathSet paths(parse_word("s1", 3));
    std::size_t first = read_fiber(paths, 0.001).size();
    for (int k = 0; k < 997; ++k) {
        double t = 0.001 + kTwoPi * k / 997.0;
        auto count = read_fiber(paths, t).size();
        CHECK((count - first) % 2 == 0);
    }
}

TEST_CASE("gauss diagram pairs each crossing's labelled points") {
    StrandPathSet paths(parse_word("s1^2 s2^-2", 3));
    auto chords = gauss_diagram(paths, 0.3);
    for (const auto& ch : chords) {
        CHECK(ch.over_marking.i == ch.under_marking.j);
        CHECK(ch.over_marking.j == ch.under_marking.i);
        CHECK(ch.over_position >= 0);
        CHECK(ch.over_position < 1);
    }
}
