#include "btg/three_braid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "btg/equivalence.hpp"
#include "btg/oracle.hpp"

namespace btg {

std::string TripletColumn::to_string() const {
    std::ostringstream out;
    out << "C(" << a << b << ") =";
    for (const auto& t : canonical) out << " {" << t[0].to_string() << ' ' << t[1].to_string() << ' ' << t[2].to_string() << '}';
    return out.str();
}

std::size_t least_rotation(const std::vector<MarkingTriplet>& s) {
    const std::size_t n = s.size();
    if (n == 0) return 0;
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        const auto& sj = s[j % n];
        long i = f[j - k - 1];
        while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
            if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
            i = f[static_cast<std::size_t>(i)];
        }
        if (i == -1 && sj != s[k % n]) {
            if (sj < s[k % n]) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k % n;
}

namespace {

TripletColumn finish(int a, int b, std::vector<MarkingTriplet> raw) {
    TripletColumn c;
    c.a = a;
    c.b = b;
    c.raw = std::move(raw);
    c.canonical = c.raw;
    std::rotate(c.canonical.begin(), c.canonical.begin() + static_cast<long>(least_rotation(c.raw)),
                c.canonical.end());
    return c;
}

void require_pure3(const BraidWord& w) {
    if (w.strands() != 3) throw Error("expected a 3-braid, got " + std::to_string(w.strands()) + " strands");
    if (!permutation(w).is_identity()) throw Error("braid " + w.to_string() + " is not pure");
}

}  // namespace

TripletColumn cyclic_invariant(const TraceGraph& g, int a, int b) {
    if (g.n != 3 || g.cycles.components() != 3) throw Error("cyclic invariants need a reduced pure 3-braid graph");
    if (a == b || a < 1 || a > 3 || b < 1 || b > 3) throw Error("pair must be two distinct labels in 1..3");
    int c = g.circle_of_marking({a, b, 1});
    std::vector<MarkingTriplet> raw;
    if (g.vertex_visits(c) > 0)
        for (int e : g.circles[c].edges) {
            const auto& v = g.vertices[g.edges[e].from];
            MarkingTriplet t;
            for (int j = 0; j < 3; ++j) t[j] = g.circles[g.edges[v.below[j].edge].circle].marking;
            raw.push_back(t);
        }
    return finish(a, b, std::move(raw));
}

TripletColumn cyclic_invariant(const BraidWord& w, int a, int b, std::array<int, 3> components) {
    std::array<int, 3> sorted = components;
    std::sort(sorted.begin(), sorted.end());
    if (sorted[0] == sorted[1] || sorted[1] == sorted[2]) throw Error("components must be distinct");
    auto where = [&](int x) {
        auto it = std::find(sorted.begin(), sorted.end(), x);
        if (it == sorted.end())
            throw Error("pair (" + std::to_string(a) + "," + std::to_string(b) + ") is not within the chosen components");
        return static_cast<int>(it - sorted.begin()) + 1;
    };
    int la = where(a), lb = where(b);

    BraidWord sub = w;
    if (w.strands() != 3 || sorted != std::array<int, 3>{1, 2, 3}) {
        auto cs = cycle_structure(w);
        for (int x : sorted)
            if (x < 1 || x > cs.components()) throw Error("component " + std::to_string(x) + " does not exist");
        sub = subbraid(w, {sorted[0] - 1, sorted[1] - 1, sorted[2] - 1});
    }
    if (sub.strands() != 3 || !permutation(sub).is_identity())
        throw Error("the subbraid on the chosen components is not a pure 3-braid");
    return cyclic_invariant(reduce(build_trace_graph(sub)), la, lb);
}

TripletColumn reversed_column(const TripletColumn& c) {
    // the involution keeps vertex heights and the t-order below a vertex,
    // and reverses every label; pure braids have only (ij)[1] circles
    std::vector<MarkingTriplet> raw;
    for (const auto& t : c.raw) {
        MarkingTriplet r;
        for (int j = 0; j < 3; ++j) r[j] = {t[j].j, t[j].i, t[j].k};
        raw.push_back(r);
    }
    return finish(c.b, c.a, std::move(raw));
}

bool conjugate_pure_ordered(const BraidWord& x, const BraidWord& y) {
    require_pure3(x);
    require_pure3(y);
    if (linking_number(x, 0, 1) != linking_number(y, 0, 1)) return false;
    return cyclic_invariant(x, 1, 2).cyclically_equal(cyclic_invariant(y, 1, 2));
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::True:
            return "true";
        case Verdict::False:
            return "false";
        case Verdict::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

namespace {

std::vector<int> cycle_type(const BraidWord& w) {
    auto lengths = cycle_structure(w).lengths();
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

// Positive permutation braids of S_3, one per relabeling of the strands.
std::vector<BraidWord> permutation_braids() {
    std::vector<BraidWord> out;
    for (const char* s : {"", "s1", "s2", "s1 s2", "s2 s1", "s1 s2 s1"}) out.push_back(parse_word(s, 3));
    return out;
}

}  // namespace

ConjugacyDecision conjugate_3braids(const BraidWord& x, const BraidWord& y, const Conj3Options& options) {
    if (x.strands() != 3 || y.strands() != 3) throw Error("conjugate_3braids expects two 3-braids");
    ConjugacyDecision d;
    if (cycle_type(x) != cycle_type(y)) {
        d.reason = "permutation cycle types differ";
        return d;
    }
    d.power = std::lcm(pure_power_exponent(x), pure_power_exponent(y));
    auto xk = free_reduce(power(x, d.power));
    auto yk = free_reduce(power(y, d.power));
    auto target_lk = linking_number(yk, 0, 1);
    auto target = cyclic_invariant(yk, 1, 2);
    for (const auto& p : permutation_braids()) {
        auto relabeled = free_reduce(concatenate(concatenate(p, xk), invert(p)));
        if (linking_number(relabeled, 0, 1) != target_lk) continue;
        if (!cyclic_invariant(relabeled, 1, 2).cyclically_equal(target)) continue;
        d.verdict = Verdict::True;
        d.relabeling = p;
        d.reason = "lk_12 and C_(12) agree after relabeling by " + (p.empty() ? std::string("the identity") : p.to_string());
        return d;
    }
    d.reason = "no relabeling of the pure powers matches lk_12 and C_(12)";
    if (options.oracle_depth > 0) {
        d.oracle_witness = oracle::conjugator_search(x, y, options.oracle_depth);
        if (d.oracle_witness) {
            d.verdict = Verdict::Inconclusive;
            d.reason += ", but the Burau search found a conjugator";
        }
    }
    return d;
}

}  // namespace btg
