#include "btg/oracle.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace btg::oracle {

Laurent::Laurent(long long c, int exponent) {
    if (c != 0) terms_[exponent] = c;
}

void Laurent::add_term(int e, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

Laurent Laurent::operator-() const {
    Laurent out;
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

Laurent Laurent::operator*(const Laurent& o) const {
    Laurent out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
    return out;
}

std::string Laurent::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << '-';
        first = false;
        Integer a = c < 0 ? Integer(-c) : c;
        if (e == 0 || a != 1) out << a;
        if (e != 0) {
            if (a != 1) out << '*';
            out << 't';
            if (e != 1) out << '^' << e;
        }
    }
    return out.str();
}

LaurentMatrix LaurentMatrix::identity(int size) {
    LaurentMatrix m;
    m.size = size;
    m.entries.resize(static_cast<std::size_t>(size * size));
    for (int i = 0; i < size; ++i) m.at(i, i) = Laurent(1);
    return m;
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
    LaurentMatrix out;
    out.size = size;
    out.entries.resize(entries.size());
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) {
            Laurent acc;
            for (int k = 0; k < size; ++k) {
                const auto& a = at(r, k);
                const auto& b = o.at(k, c);
                if (!a.is_zero() && !b.is_zero()) acc = acc + a * b;
            }
            out.at(r, c) = std::move(acc);
        }
    return out;
}

Laurent LaurentMatrix::trace() const {
    Laurent acc;
    for (int i = 0; i < size; ++i) acc = acc + at(i, i);
    return acc;
}

std::string LaurentMatrix::key() const {
    std::string out;
    for (const auto& e : entries) {
        out += e.to_string();
        out += ';';
    }
    return out;
}

namespace {

LaurentMatrix burau3_letter(const Letter& l) {
    LaurentMatrix m = LaurentMatrix::identity(2);
    if (l.index == 1) {
        if (l.sign > 0) {
            m.at(0, 0) = Laurent(-1, 1);
            m.at(0, 1) = Laurent(1);
        } else {
            m.at(0, 0) = Laurent(-1, -1);
            m.at(0, 1) = Laurent(1, -1);
        }
    } else {
        if (l.sign > 0) {
            m.at(1, 0) = Laurent(1, 1);
            m.at(1, 1) = Laurent(-1, 1);
        } else {
            m.at(1, 0) = Laurent(1);
            m.at(1, 1) = Laurent(-1, -1);
        }
    }
    return m;
}

LaurentMatrix burau_letter(int n, const Letter& l) {
    LaurentMatrix m = LaurentMatrix::identity(n);
    int i = l.index - 1;
    if (l.sign > 0) {
        m.at(i, i) = Laurent(1) - Laurent(1, 1);
        m.at(i, i + 1) = Laurent(1, 1);
        m.at(i + 1, i) = Laurent(1);
        m.at(i + 1, i + 1) = Laurent();
    } else {
        m.at(i, i) = Laurent();
        m.at(i, i + 1) = Laurent(1);
        m.at(i + 1, i) = Laurent(1, -1);
        m.at(i + 1, i + 1) = Laurent(1) - Laurent(1, -1);
    }
    return m;
}

void require_b3(const BraidWord& w) {
    if (w.strands() != 3) throw Error("the Burau oracle decides only 3-braids");
}

}  // namespace

LaurentMatrix burau3(const BraidWord& w) {
    require_b3(w);
    LaurentMatrix m = LaurentMatrix::identity(2);
    for (const auto& l : w.letters()) m = m * burau3_letter(l);
    return m;
}

LaurentMatrix burau(const BraidWord& w) {
    LaurentMatrix m = LaurentMatrix::identity(w.strands());
    for (const auto& l : w.letters()) m = m * burau_letter(w.strands(), l);
    return m;
}

Burau3Invariants burau3_invariants(const BraidWord& w) {
    auto m = burau3(w);
    return {exponent_sum(w), m.trace(), m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0)};
}

ConjugacyBall::ConjugacyBall(const BraidWord& beta, int depth) : strands_(beta.strands()) {
    require_b3(beta);
    const auto mb = burau3(beta);
    struct Node {
        BraidWord x;
        LaurentMatrix m;
        LaurentMatrix inv;
    };
    const std::vector<Letter> alphabet{{1, 1}, {1, -1}, {2, 1}, {2, -1}};
    std::set<std::string> seen;
    std::vector<Node> layer{{BraidWord(3), LaurentMatrix::identity(2), LaurentMatrix::identity(2)}};
    seen.insert(layer[0].m.key());
    for (int d = 0;; ++d) {
        for (const auto& node : layer) conjugates_.try_emplace((node.m * mb * node.inv).key(), node.x);
        if (d == depth) break;
        std::vector<Node> next;
        for (const auto& node : layer)
            for (const auto& a : alphabet) {
                LaurentMatrix m = node.m * burau3_letter(a);
                auto key = m.key();
                if (!seen.insert(key).second) continue;
                auto letters = node.x.letters();
                letters.push_back(a);
                next.push_back({BraidWord(3, std::move(letters)), std::move(m),
                                burau3_letter({a.index, -a.sign}) * node.inv});
            }
        layer = std::move(next);
    }
}

std::optional<BraidWord> ConjugacyBall::witness(const BraidWord& target) const {
    if (target.strands() != strands_) return std::nullopt;
    auto it = conjugates_.find(burau3(target).key());
    if (it == conjugates_.end()) return std::nullopt;
    return it->second;
}

std::optional<BraidWord> conjugator_search(const BraidWord& beta, const BraidWord& target, int max_len) {
    return ConjugacyBall(beta, max_len).witness(target);
}

bool cheap_invariants_agree(const BraidWord& a, const BraidWord& b) {
    if (a.strands() != b.strands()) return false;
    if (exponent_sum(a) != exponent_sum(b)) return false;
    auto ca = cycle_structure(a), cb = cycle_structure(b);
    auto la = ca.lengths(), lb = cb.lengths();
    auto sa = la, sb = lb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    auto link_profile = [](const BraidWord& w, const CycleStructure& cs) {
        std::multiset<std::array<int, 3>> out;
        for (int i = 0; i < cs.components(); ++i)
            for (int j = i + 1; j < cs.components(); ++j) {
                int x = cs.length(i), y = cs.length(j);
                out.insert({std::min(x, y), std::max(x, y), linking_number_doubled(w, i, j)});
            }
        return out;
    };
    if (link_profile(a, ca) != link_profile(b, cb)) return false;
    auto ma = burau(a), mb = burau(b);
    auto pa = ma, pb = mb;
    for (int k = 1; k <= a.strands(); ++k) {
        if (!(pa.trace() == pb.trace())) return false;
        pa = pa * ma;
        pb = pb * mb;
    }
    return true;
}

CountReport brute_counts(const TraceGraph& g, bool expect_unreduced) {
    CountReport rep;
    rep.vertices = g.vertices.size();
    rep.expected_circles = circle_count_formula(g.cycles);
    rep.expected_vertices = 2 * g.word.length() * static_cast<std::size_t>(g.n - 2);
    std::ostringstream diff;

    // straight-through traversal: at a vertex an arriving edge continues on
    // the leaving edge carrying the same ordered strand pair
    std::vector<bool> used(g.edges.size(), false);
    for (const auto& start : g.edges) {
        if (used[start.id]) continue;
        int visits = 0;
        int e = start.id;
        std::size_t steps = 0;
        do {
            used[e] = true;
            const auto& edge = g.edges[e];
            if (edge.closed_loop()) break;
            ++visits;
            int next = -1;
            for (const auto& end : g.vertices[edge.to].above)
                if (g.edges[end.edge].pair_from == edge.pair_to) next = end.edge;
            if (next < 0) {
                diff << "edge " << e << " has no straight continuation at vertex " << edge.to << "; ";
                break;
            }
            e = next;
            if (++steps > g.edges.size()) {
                diff << "traversal from edge " << start.id << " does not close; ";
                break;
            }
        } while (e != start.id);
        rep.visits.push_back(visits);
        ++rep.circles;
    }
    int total = std::accumulate(rep.visits.begin(), rep.visits.end(), 0);
    if (static_cast<std::size_t>(total) != 3 * rep.vertices)
        diff << "sum of circle visits " << total << " != 3 x " << rep.vertices << " vertices; ";
    if (static_cast<int>(rep.circles) != rep.expected_circles)
        diff << "circles " << rep.circles << " != N(beta) = " << rep.expected_circles << "; ";
    if (rep.circles != g.circles.size())
        diff << "traversal found " << rep.circles << " circles, graph stores " << g.circles.size() << "; ";
    if (expect_unreduced && rep.vertices != rep.expected_vertices)
        diff << "vertices " << rep.vertices << " != 2l(n-2) = " << rep.expected_vertices << "; ";
    rep.diff = diff.str();
    rep.ok = rep.diff.empty();
    return rep;
}

std::vector<HomologyClass> brute_force_cycle_classes(const TraceGraph& g, const LevelSubgraph& s) {
    // cycle space of the subgraph: spanning forest plus one fundamental
    // cycle per non-tree edge; walk every non-empty combination
    std::vector<int> edges = s.edges;
    const std::size_t m = edges.size();
    std::map<int, int> local;
    for (std::size_t k = 0; k < s.vertices.size(); ++k) local[s.vertices[k]] = static_cast<int>(k);
    const std::size_t nv = s.vertices.size();

    std::vector<int> parent_edge(nv, -1), parent(nv, -1), depth(nv, 0);
    std::vector<bool> seen(nv, false), tree(m, false);
    std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (neighbour, local edge)
    for (std::size_t k = 0; k < m; ++k) {
        int a = local[g.edges[edges[k]].from], b = local[g.edges[edges[k]].to];
        adj[a].push_back({b, static_cast<int>(k)});
        if (a != b) adj[b].push_back({a, static_cast<int>(k)});
    }
    for (std::size_t r = 0; r < nv; ++r) {
        if (seen[r]) continue;
        seen[r] = true;
        std::deque<int> queue{static_cast<int>(r)};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (auto [u, k] : adj[v]) {
                if (seen[u]) continue;
                seen[u] = true;
                tree[k] = true;
                parent[u] = v;
                parent_edge[u] = k;
                depth[u] = depth[v] + 1;
                queue.push_back(u);
            }
        }
    }
    std::vector<std::vector<bool>> basis;
    for (std::size_t k = 0; k < m; ++k) {
        if (tree[k]) continue;
        std::vector<bool> cyc(m, false);
        cyc[k] = true;
        int a = local[g.edges[edges[k]].from], b = local[g.edges[edges[k]].to];
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            cyc[parent_edge[a]] = !cyc[parent_edge[a]];
            a = parent[a];
        }
        basis.push_back(std::move(cyc));
    }
    if (basis.size() > 24) throw BudgetExceeded("cycle space too large for brute force");

    std::set<HomologyClass> classes;
    for (int e : s.loops) {
        auto c = oriented(walk_class(g, {e}, {1}));
        if (!c.trivial()) classes.insert(c);
    }
    const std::size_t total = std::size_t{1} << basis.size();
    std::vector<bool> cur(m, false);
    for (std::size_t code = 1; code < total; ++code) {
        // Gray code: flip exactly one basis element per step
        std::size_t gray = code ^ (code >> 1), prev = (code - 1) ^ ((code - 1) >> 1);
        std::size_t bit = 0;
        while (((gray ^ prev) >> bit) != 1) ++bit;
        for (std::size_t k = 0; k < m; ++k)
            if (basis[bit][k]) cur[k] = !cur[k];

        // a simple cycle: connected, every vertex of degree 0 or 2
        std::vector<int> deg(nv, 0);
        int count = 0, first = -1;
        for (std::size_t k = 0; k < m; ++k) {
            if (!cur[k]) continue;
            ++count;
            if (first < 0) first = static_cast<int>(k);
            deg[local[g.edges[edges[k]].from]]++;
            deg[local[g.edges[edges[k]].to]]++;
        }
        if (std::any_of(deg.begin(), deg.end(), [](int d) { return d != 0 && d != 2; })) continue;
        // walk from the first edge and require that the walk uses every edge
        std::vector<int> walk_edges, dirs;
        std::vector<bool> used(m, false);
        int k = first;
        int at = local[g.edges[edges[k]].to];
        int dir = 1;
        const int origin = local[g.edges[edges[k]].from];
        while (true) {
            used[k] = true;
            walk_edges.push_back(edges[k]);
            dirs.push_back(dir);
            if (at == origin) break;
            int nk = -1;
            for (auto [u, j] : adj[at]) {
                (void)u;
                if (cur[j] && !used[j]) {
                    nk = j;
                    break;
                }
            }
            if (nk < 0) break;
            k = nk;
            const auto& e = g.edges[edges[k]];
            dir = local[e.from] == at ? 1 : -1;
            at = dir > 0 ? local[e.to] : local[e.from];
        }
        if (static_cast<int>(walk_edges.size()) != count || at != origin) continue;
        auto c = oriented(walk_class(g, walk_edges, dirs));
        if (!c.trivial()) classes.insert(c);
    }
    return {classes.begin(), classes.end()};
}

std::optional<HomologyClass> brute_force_maximal(const TraceGraph& g, const LevelSubgraph& s,
                                                 const HomologyClass& attractor) {
    // M = (u r - w q) / (q r) when r != 0, so compare numerators scaled by
    // the sign of q r; for r = 0, M = w
    const long long q = attractor.u, r = attractor.w;
    std::optional<HomologyClass> best;
    auto num = [&](const HomologyClass& c) {
        if (r == 0) return c.w;
        long long n = c.u * r - c.w * q;
        return q * r > 0 ? n : -n;
    };
    for (const auto& c : brute_force_cycle_classes(g, s)) {
        if (num(c) == 0) continue;
        if (!best || num(c) > num(*best) || (num(c) == num(*best) && c.u > best->u)) best = c;
    }
    return best;
}

bool CheckReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

CheckReport run_checks(const BraidWord& w) {
    CheckReport rep;
    auto add = [&](const std::string& name, bool ok, const std::string& detail = {}) {
        rep.checks.emplace_back(name, ok);
        if (!ok && !detail.empty()) rep.details.push_back(name + ": " + detail);
    };
    StrandPathSet paths(w);
    auto g = build_trace_graph(paths);
    const int n = g.n;

    auto counts = brute_counts(g, true);
    add("vertex count 2l(n-2)", g.vertices.size() == counts.expected_vertices,
        std::to_string(g.vertices.size()) + " vertices");
    add("circle count N(beta)", static_cast<int>(g.circles.size()) == counts.expected_circles,
        std::to_string(g.circles.size()) + " circles");
    add("circle count bounds n-1 <= N <= n(n-1)",
        counts.expected_circles >= n - 1 && counts.expected_circles <= n * (n - 1));
    add("independent traversal", counts.ok, counts.diff);

    bool sym = true;
    std::ostringstream sym_detail;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        int p = g.vertex_partner[v];
        if (p < 0 || p == static_cast<int>(v) || g.vertex_partner[p] != static_cast<int>(v)) {
            sym = false;
            sym_detail << "vertex " << v << ' ';
            continue;
        }
        if (std::abs(g.vertices[p].z - g.vertices[v].z) > 1e-6 ||
            std::abs(wrap_pi(g.vertices[p].t - g.vertices[v].t - kPi)) > 1e-6)
            sym = false;
    }
    for (const auto& e : g.edges) {
        int p = g.edge_partner[e.id];
        if (p < 0 || g.edges[p].level != n - e.level || g.edge_partner[p] != e.id) {
            sym = false;
            sym_detail << "edge " << e.id << ' ';
        }
    }
    for (const auto& c : g.circles) {
        int p = g.circle_partner[c.id];
        // a circle marked [n_i/2] is carried onto itself; vertices and edges never are
        if (p < 0 || !(g.circles[p].marking == reversed_marking(g.cycles, c.marking))) {
            sym = false;
            sym_detail << "circle " << c.marking.to_string() << ' ';
        }
    }
    add("t+pi symmetry involution", sym, sym_detail.str());

    bool middle = true, split = true;
    for (const auto& v : g.vertices) {
        std::array<int, 2> outer{v.strands[0], v.strands[2]};
        if (g.edges[v.below[1].edge].pair_to != outer || g.edges[v.above[1].edge].pair_from != outer) middle = false;
        std::map<int, int> count;
        for (const auto& end : v.below) count[g.edges[end.edge].level]++;
        for (const auto& end : v.above) count[g.edges[end.edge].level]++;
        if (count.size() != 2 || count.begin()->second != 3 ||
            std::next(count.begin())->first - count.begin()->first != 1)
            split = false;
        int k = g.edges[v.below[1].edge].level;
        if (std::abs(g.edges[v.above[1].edge].level - k) != 1) split = false;
    }
    add("middle circle passes between", middle);
    add("3+3 level split with +-1 changes", split);

    bool winding = true;
    for (const auto& c : g.circles) {
        double dz = 0, dt = 0;
        for (int e : c.edges) {
            dz += g.edges[e].dz;
            dt += g.edges[e].dt;
        }
        if (std::abs(dz - c.periods) > 1e-9 || std::abs(dt / kTwoPi - std::round(dt / kTwoPi)) > 1e-9)
            winding = false;
    }
    add("circle windings integral", winding);

    add("t=0 read-back", read_word_at(paths, 0.0) == w);

    bool attractors = true;
    std::ostringstream att_detail;
    try {
        for (int k = 1; k < n; ++k) {
            auto s = level_subgraph(g, k);
            auto ra = right_attractors(g, s);
            if (ra.empty()) attractors = false;
            std::set<int> seen_vertices;
            for (const auto& a : ra) {
                if (a.cls.u <= 0) attractors = false;
                for (int e : a.edges)
                    if (!g.edges[e].closed_loop() && !seen_vertices.insert(g.edges[e].from).second)
                        attractors = false;
            }
        }
    } catch (const Error& e) {
        attractors = false;
        att_detail << e.what();
    }
    add("level subgraphs trivalent with right attractors", attractors, att_detail.str());
    return rep;
}

}  // namespace btg::oracle
