#include "doctest.h"

#include <random>

#include "btg/braid.hpp"
#include "btg/embedding.hpp"

using namespace btg;

namespace {

std::vector<Letter> L(std::initializer_list<std::pair<int, int>> xs) {
    std::vector<Letter> out;
    for (auto [i, s] : xs) out.push_back({i, s});
    return out;
}

BraidWord random_word(std::mt19937& rng, int n, int len) {
    std::uniform_int_distribution<int> idx(1, n - 1), sgn(0, 1);
    std::vector<Letter> letters;
    for (int k = 0; k < len; ++k) letters.push_back({idx(rng), sgn(rng) ? 1 : -1});
    return BraidWord(n, letters);
}

}  // namespace

TEST_CASE("parse_word tokens, powers and bounds") {
    auto w = parse_word("s1 s2^-1 s1 s2^-1 s1 s2^-1", 3);
    CHECK(w.strands() == 3);
    CHECK(w.letters() == L({{1, 1}, {2, -1}, {1, 1}, {2, -1}, {1, 1}, {2, -1}}));
    CHECK(parse_word("", 3).empty());
    CHECK_THROWS_AS(parse_word("s3", 3), ParseError);
    CHECK_THROWS_AS(parse_word("s1 x2", 3), ParseError);
    CHECK_THROWS_AS(parse_word("(s1", 3), ParseError);
    CHECK(parse_word("(s1 s2^-1)^3") == w);
    CHECK(parse_word("s1^2 s2^-2").letters() == L({{1, 1}, {1, 1}, {2, -1}, {2, -1}}));
    CHECK(parse_word("(s1 s2)^-1") == invert(parse_word("s1 s2")));
    CHECK(parse_word("s4").strands() == 5);
    CHECK(parse_word("").strands() == 2);
}

TEST_CASE("permutation and cycle structure") {
    CHECK(permutation(parse_word("s1", 2)).images == std::vector<int>{1, 0});
    CHECK(permutation(parse_word("(s1 s2^-1)^3", 3)).is_identity());
    CHECK(permutation(parse_word("", 4)).is_identity());

    auto cs = cycle_structure(parse_word("s1", 3));
    CHECK(cs.components() == 2);
    CHECK(cs.lengths() == std::vector<int>{2, 1});

    auto knot = cycle_structure(parse_word("s1 s2", 3));
    CHECK(knot.components() == 1);
    CHECK(knot.lengths() == std::vector<int>{3});

    CHECK(cycle_structure(parse_word("s1^2 s2^2", 3)).lengths() == std::vector<int>{1, 1, 1});
}

TEST_CASE("permutation of a product composes in letter order") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 5;
        auto a = random_word(rng, n, trial % 7);
        auto b = random_word(rng, n, (trial * 3) % 6);
        CHECK(permutation(concatenate(a, b)) == permutation(b).after(permutation(a)));
    }
}

TEST_CASE("linking numbers and exponent sums") {
    auto w = parse_word("s1^2", 2);
    CHECK(linking_number(w, 0, 1) == 1);
    auto borromean = parse_word("(s1 s2^-1)^3", 3);
    CHECK(linking_number(borromean, 0, 1) == 0);
    CHECK(linking_number(parse_word("", 3), 0, 1) == 0);
    CHECK_THROWS_AS(linking_number(w, 0, 0), Error);
    CHECK_THROWS_AS(linking_number(w, 0, 2), Error);

    CHECK(exponent_sum(borromean) == 0);
    CHECK(exponent_sum(garside_delta(3)) == 3);
    CHECK(exponent_sum(parse_word("", 3)) == 0);
}

TEST_CASE("linking number and exponent sum survive free reduction and braid relations") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + trial % 3;
        auto w = random_word(rng, n, 8);
        auto r = free_reduce(w);
        CHECK(exponent_sum(r) == exponent_sum(w));
        // insert s_i s_{i+1} s_i (s_{i+1} s_i s_{i+1})^-1 somewhere: a trivial braid
        std::uniform_int_distribution<int> pick(1, n - 2);
        int i = pick(rng);
        auto rel = parse_word("s" + std::to_string(i) + " s" + std::to_string(i + 1) + " s" + std::to_string(i) +
                                  " s" + std::to_string(i + 1) + "^-1 s" + std::to_string(i) + "^-1 s" +
                                  std::to_string(i + 1) + "^-1",
                              n);
        auto v = concatenate(concatenate(rotate(w, 0), rel), w);
        auto ww = concatenate(w, w);
        CHECK(exponent_sum(v) == exponent_sum(ww));
        auto cs = cycle_structure(ww);
        REQUIRE(cycle_structure(v).cycles == cs.cycles);
        for (int a = 0; a < cs.components(); ++a)
            for (int b = a + 1; b < cs.components(); ++b) {
                CHECK(linking_number(v, a, b) == linking_number(ww, a, b));
            }
        auto wcs = cycle_structure(w);
        for (int a = 0; a < wcs.components(); ++a)
            for (int b = a + 1; b < wcs.components(); ++b)
                CHECK(linking_number_doubled(r, a, b) == linking_number_doubled(w, a, b));
    }
}

TEST_CASE("garside element") {
    CHECK(garside_delta(3) == parse_word("s1 s2 s1", 3));
    CHECK(garside_delta(2) == parse_word("s1", 2));
    auto d4 = garside_delta(4);
    CHECK(d4 == parse_word("s1 s2 s1 s3 s2 s1", 4));
    // the half twist reverses the strand order
    auto p = permutation(d4);
    for (int s = 0; s < 4; ++s) CHECK(p.images[s] == 3 - s);
    CHECK_THROWS_AS(garside_delta(1), Error);
}

TEST_CASE("word operations") {
    auto w = parse_word("s1 s2^-1", 3);
    CHECK(power(w, 3).length() == 6);
    CHECK(free_reduce(parse_word("s1 s1^-1 s2", 3)) == parse_word("s2", 3));
    CHECK(invert(parse_word("s1 s2", 3)) == parse_word("s2^-1 s1^-1", 3));
    CHECK_THROWS_AS(concatenate(parse_word("s1", 2), parse_word("s1", 3)), Error);
    CHECK(rotate(parse_word("s1 s2 s1^-1", 3), 1) == parse_word("s2 s1^-1 s1", 3));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        auto v = random_word(rng, 4, trial % 10);
        auto r = free_reduce(v);
        CHECK(r.length() <= v.length());
        CHECK(free_reduce(r) == r);
    }
}

TEST_CASE("pure power exponent") {
    CHECK(pure_power_exponent(parse_word("s1 s2", 3)) == 3);
    CHECK(pure_power_exponent(parse_word("s1^2", 3)) == 1);
    CHECK(pure_power_exponent(parse_word("s1", 3)) == 2);
}

TEST_CASE("pure power is pure, exhaustively for small words") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<Letter> alphabet;
        for (int i = 1; i < n; ++i) {
            alphabet.push_back({i, 1});
            alphabet.push_back({i, -1});
        }
        std::vector<std::vector<Letter>> layer{{}};
        for (int len = 0; len <= 6; ++len) {
            std::vector<std::vector<Letter>> next;
            for (const auto& letters : layer) {
                BraidWord w(n, letters);
                CHECK(permutation(power(w, pure_power_exponent(w))).is_identity());
                if (len < 6 && (n < 4 || len < 5))
                    for (const auto& a : alphabet) {
                        auto ext = letters;
                        ext.push_back(a);
                        next.push_back(std::move(ext));
                    }
            }
            layer = std::move(next);
        }
    }
}

TEST_CASE("subbraid") {
    // s1 s3 closes to two 2-strand components; keep the one through strands 0 and 1
    auto w = parse_word("s1 s3", 4);
    auto cs = cycle_structure(w);
    CHECK(cs.components() == 2);
    CHECK(subbraid(w, {0}) == parse_word("s1", 2));

    auto d = parse_word("s1 s2 s1", 3);
    auto dcs = cycle_structure(d);
    REQUIRE(dcs.components() == 2);  // strands {0,2} form a cycle, {1} is fixed
    CHECK(subbraid(d, {0}) == parse_word("s1", 2));

    auto p = parse_word("s1^2 s2^2 s1^-2", 3);
    CHECK(subbraid(p, {0, 1, 2}) == p);
    // strands 0 and 2 never meet in s1^2 s2^2 s1^-2
    CHECK(subbraid(p, {0, 2}) == parse_word("", 2));
    CHECK(subbraid(p, {1, 2}) == parse_word("s1^2", 2));
    CHECK_THROWS_AS(subbraid(p, {3}), Error);
    CHECK_THROWS_AS(subbraid(p, {}), Error);
}

TEST_CASE("subbraid commutes with free reduction") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto w = random_word(rng, 4, 10);
        auto cs = cycle_structure(w);
        if (cs.components() < 2) continue;
        std::set<int> keep;
        for (int c = 0; c < cs.components(); ++c)
            if (c % 2 == 0 || c == 1) keep.insert(c);
        int strands = 0;
        for (int c : keep) strands += cs.length(c);
        if (strands < 2) continue;
        CHECK(free_reduce(subbraid(free_reduce(w), keep)) == free_reduce(subbraid(w, keep)));
        std::set<int> all;
        for (int c = 0; c < cs.components(); ++c) all.insert(c);
        CHECK(subbraid(w, all) == w);
    }
}

TEST_CASE("slot placement") {
    auto s3 = slot_angles(3);
    CHECK(s3.angles[0] == doctest::Approx(kPi));
    CHECK(s3.angles[1] == doctest::Approx(kPi / 2));
    CHECK(s3.angles[2] == doctest::Approx(0.0));
    CHECK(s3.points[0].x == doctest::Approx(-1));
    CHECK(s3.points[1].x == doctest::Approx(0).epsilon(1e-12));
    CHECK(s3.points[2].x == doctest::Approx(1));
    auto s2 = slot_angles(2);
    CHECK(s2.angles == std::vector<double>{kPi, 0.0});
    CHECK_THROWS_AS(slot_angles(1), Error);
    CHECK_THROWS_AS(slot_angles(13), Error);
    for (int n = 2; n <= kMaxStrands; ++n) {
        auto s = slot_angles(n);
        for (int j = 0; j + 1 < n; ++j) CHECK(s.points[j].x < s.points[j + 1].x);
        CHECK(s.slope_margin >= 10 * kTolerance);
    }
}

TEST_CASE("crossing time lifts") {
    auto lifts = crossing_time({-1, 0}, {0, 1});
    CHECK(lifts[0].t == doctest::Approx(kPi / 4));
    CHECK(lifts[1].t == doctest::Approx(5 * kPi / 4));
    auto vertical = crossing_time({0, 1}, {0, -1});
    CHECK(vertical[0].t == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(vertical[1].t == doctest::Approx(kPi));
    CHECK(vertical[0].p_over);  // p has the larger y at t = 0
    auto swapped = crossing_time({0, 1}, {-1, 0});
    CHECK(swapped[0].t == doctest::Approx(lifts[0].t));
    CHECK(swapped[0].p_over != lifts[0].p_over);
    CHECK_THROWS_AS(crossing_time({0, 0}, {0, 0}), GenericityError);
}

TEST_CASE("strand paths") {
    StrandPathSet paths(parse_word("s1", 3));
    REQUIRE(paths.windows().size() == 1);
    const auto& w = paths.windows()[0];
    CHECK(w.z_begin == doctest::Approx(1.0 / 3));
    CHECK(w.z_end == doctest::Approx(2.0 / 3));
    CHECK(w.u_strand == 0);
    CHECK(w.v_strand == 1);
    auto p = paths.position(0, 0.1);
    CHECK(p.x == doctest::Approx(-1));
    auto q = paths.position(0, 0.9);
    CHECK(q.x == doctest::Approx(0).epsilon(1e-12));
    CHECK(q.y == doctest::Approx(1));

    // the exchange arcs stay apart and near their chord
    StrandPathSet many(parse_word("s1 s2^-1 s3 s1^-1 s2", 5));
    for (const auto& win : many.windows()) {
        for (int k = 0; k <= 100; ++k) {
            double s = k / 100.0;
            Point d = many.exchange_difference(win, s);
            CHECK(std::hypot(d.x, d.y) > 0);
        }
        CHECK(win.z_end <= (win.letter + 1.0) / 5 + 1e-12);
        CHECK(win.z_begin >= win.letter / 5.0 - 1e-12);
    }
    CHECK(many.delta() > 0);
}

TEST_CASE("pair angle change matches sampled unwrapping") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto w = random_word(rng, 4, 6);
        StrandPathSet paths(w);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                double acc = 0, prev = paths.pair_angle(a, b, 0.0);
                const int steps = 6000;
                for (int k = 1; k <= steps; ++k) {
                    double cur = paths.pair_angle(a, b, static_cast<double>(k) / steps * 0.999);
                    acc += wrap_pi(cur - prev);
                    prev = cur;
                }
                CHECK(paths.pair_angle_change(a, b, 0.0, 0.999) == doctest::Approx(acc).epsilon(1e-9));
            }
    }
}
