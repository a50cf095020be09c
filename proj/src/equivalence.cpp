#include "btg/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace btg {

std::vector<LevelCode> level_codes(const TraceGraph& g, std::size_t cycle_budget) {
    std::vector<LevelCode> out;
    for (int k = 1; k < g.n; ++k) {
        LevelCode lc;
        lc.level = k;
        auto s = level_subgraph(g, k);
        for (const auto& ra : right_attractors(g, s)) lc.attractors.push_back(ra.cls);
        std::sort(lc.attractors.begin(), lc.attractors.end());
        lc.degenerate = is_degenerate(g, s);
        if (!lc.degenerate && !lc.attractors.empty())
            lc.maximal = maximal_class(g, s, lc.attractors.front(), cycle_budget);
        out.push_back(std::move(lc));
    }
    return out;
}

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

int pair_slot(int m, int i, int j) { return std::min(i, j) * m + std::max(i, j); }

Marking shift_marking(const CycleStructure& cs, const Marking& mk, const std::vector<int>& shifts) {
    if (mk.i == mk.j || shifts.empty()) return mk;
    const int m = cs.components();
    int g = std::gcd(cs.length(mk.i - 1), cs.length(mk.j - 1));
    int s = shifts[pair_slot(m, mk.i - 1, mk.j - 1)];
    return {mk.i, mk.j, mod(mk.k - 1 + s, g) + 1};
}

// Where every vertex visit sits along its circle.
struct Layout {
    std::vector<int> len;                               // vertex visits per circle
    std::vector<std::vector<std::pair<int, int>>> at;   // circle, visit -> (vertex, below slot)
    struct Slot {
        int circle, visit, level;
    };
    std::vector<std::array<Slot, 3>> slots;             // vertex -> below ends
    std::vector<int> loop_level;                        // -1 unless vertex-free
};

Layout layout(const TraceGraph& g) {
    Layout L;
    const auto nc = g.circles.size();
    L.len.resize(nc);
    L.at.resize(nc);
    L.loop_level.assign(nc, -1);
    for (const auto& c : g.circles) {
        L.len[c.id] = g.vertex_visits(c.id);
        L.at[c.id].resize(static_cast<std::size_t>(L.len[c.id]));
        if (L.len[c.id] == 0) L.loop_level[c.id] = g.edges[c.edges[0]].level;
    }
    auto pos = g.edge_positions();
    L.slots.resize(g.vertices.size());
    for (const auto& v : g.vertices)
        for (int j = 0; j < 3; ++j) {
            const auto& e = g.edges[v.below[j].edge];
            int visit = (pos[e.id] + 1) % L.len[e.circle];
            L.slots[v.id][j] = {e.circle, visit, e.level};
            L.at[e.circle][visit] = {v.id, j};
        }
    return L;
}

}  // namespace

TraceCode trace_code(const TraceGraph& g, const CodeChoice& choice) { return trace_code(g, choice, level_codes(g)); }

TraceCode trace_code(const TraceGraph& g, const CodeChoice& choice, const std::vector<LevelCode>& levels) {
    auto L = layout(g);
    TraceCode code;
    code.levels = levels;
    auto marking = [&](int c) { return shift_marking(g.cycles, g.circles[c].marking, choice.marking_shift); };
    for (const auto& v : g.vertices) {
        std::array<CodeEntry, 3> trip;
        for (int j = 0; j < 3; ++j) {
            const auto& s = L.slots[v.id][j];
            int base = choice.base_points.empty() ? 0 : choice.base_points[s.circle];
            trip[j] = {marking(s.circle), mod(s.visit - base, L.len[s.circle]) + 1, s.level};
        }
        code.triplets.push_back(trip);
    }
    std::sort(code.triplets.begin(), code.triplets.end());
    for (const auto& c : g.circles)
        if (L.len[c.id] == 0) code.loops.emplace_back(marking(c.id), L.loop_level[c.id]);
    std::sort(code.loops.begin(), code.loops.end());
    return code;
}

bool codes_equal(const TraceCode& a, const TraceCode& b) { return a == b; }

std::uint64_t default_budget() {
    if (const char* env = std::getenv("BTG_BUDGET")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
        throw Error(std::string("BTG_BUDGET is not a positive integer: ") + env);
    }
    return 10000000ULL;
}

namespace {

struct Relabeling {
    std::vector<int> component;  // a component -> b component
    bool inverted = false;
    std::vector<int> shifts;     // on b's unordered pairs
};

// Image of a marking of graph a under a relabeling, in b's conventions.
Marking map_marking(const CycleStructure& cb, const Marking& mk, const Relabeling& r) {
    int i = r.component[mk.i - 1], j = r.component[mk.j - 1];
    if (mk.i == mk.j) return {i + 1, j + 1, mk.k};
    int g = std::gcd(cb.length(i), cb.length(j));
    // k measures idx(lower label) - idx(higher label); a swap of order negates it
    int d = mk.k - 1;
    if ((mk.i < mk.j) != (i < j)) d = -d;
    d += r.shifts[pair_slot(cb.components(), i, j)];
    return {i + 1, j + 1, mod(d, g) + 1};
}

class Matcher {
public:
    Matcher(const TraceGraph& a, const TraceGraph& b, const IsotopyOptions& opt, IsotopyResult& res)
        : a_(a), b_(b), opt_(opt), res_(res), la_(layout(a)), lb_(layout(b)) {
        for (const auto& c : b.circles) b_by_marking_[c.marking] = c.id;
    }

    bool levels_match(const std::vector<LevelCode>& A, const std::vector<LevelCode>& B, bool inverted) const {
        for (const auto& lc : A) {
            LevelCode img = lc;
            img.level = inverted ? a_.n - lc.level : lc.level;
            if (!(B[img.level - 1] == img)) return false;
        }
        return true;
    }

    // Circle map and level map of a relabeling; false if some image is missing
    // or has a different number of vertex visits.
    bool prepare(const Relabeling& r) {
        cmap_.assign(a_.circles.size(), -1);
        for (const auto& c : a_.circles) {
            auto it = b_by_marking_.find(map_marking(b_.cycles, c.marking, r));
            if (it == b_by_marking_.end()) return false;
            int d = it->second;
            if (la_.len[c.id] != lb_.len[d]) return false;
            if (la_.len[c.id] == 0 && lb_.loop_level[d] != level(la_.loop_level[c.id], r)) return false;
            cmap_[c.id] = d;
        }
        return true;
    }

    int level(int k, const Relabeling& r) const { return r.inverted ? a_.n - k : k; }

    // Anchors one circle per connected piece and propagates the forced
    // shifts through shared vertices.
    bool propagate(const Relabeling& r, std::vector<int>& shift) {
        shift.assign(a_.circles.size(), -1);
        for (const auto& c : a_.circles) {
            if (la_.len[c.id] == 0 || shift[c.id] >= 0) continue;
            bool found = false;
            for (int s = 0; s < la_.len[c.id] && !found; ++s) {
                if (++res_.examined > budget()) throw BudgetExceeded(budget_message());
                auto trial = shift;
                if (spread(r, c.id, s, trial)) {
                    shift = std::move(trial);
                    found = true;
                }
            }
            if (!found) return false;
        }
        return true;
    }

    bool exhaustive(const Relabeling& r, const TraceCode& a_code, const std::vector<LevelCode>& b_levels,
                    std::vector<int>& witness) {
        TraceCode target = a_code;
        for (auto& trip : target.triplets)
            for (auto& e : trip) {
                e.marking = map_marking(b_.cycles, e.marking, r);
                e.level = level(e.level, r);
            }
        std::sort(target.triplets.begin(), target.triplets.end());
        for (auto& [mk, lv] : target.loops) {
            mk = map_marking(b_.cycles, mk, r);
            lv = level(lv, r);
        }
        std::sort(target.loops.begin(), target.loops.end());
        target.levels = b_levels;

        CodeChoice choice;
        choice.base_points.assign(b_.circles.size(), 0);
        while (true) {
            if (++res_.examined > budget()) throw BudgetExceeded(budget_message());
            if (trace_code(b_, choice, b_levels) == target) {
                witness.assign(a_.circles.size(), -1);
                for (const auto& c : a_.circles)
                    if (la_.len[c.id] > 0) witness[c.id] = choice.base_points[cmap_[c.id]];
                return true;
            }
            std::size_t c = 0;
            for (; c < b_.circles.size(); ++c) {
                if (lb_.len[c] == 0) continue;
                if (++choice.base_points[c] < lb_.len[c]) break;
                choice.base_points[c] = 0;
            }
            if (c == b_.circles.size()) return false;
        }
    }

    std::uint64_t budget() const { return opt_.budget ? opt_.budget : default_budget(); }

    std::string budget_message() const {
        return "isotopy search exceeded the budget of " + std::to_string(budget()) + " choices";
    }

private:
    const TraceGraph& a_;
    const TraceGraph& b_;
    const IsotopyOptions& opt_;
    IsotopyResult& res_;
    Layout la_, lb_;
    std::map<Marking, int> b_by_marking_;
    std::vector<int> cmap_;

    bool spread(const Relabeling& r, int anchor, int s, std::vector<int>& shift) {
        std::vector<int> vmap(a_.vertices.size(), -1);
        std::deque<int> queue{anchor};
        shift[anchor] = s;
        while (!queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            const int len = la_.len[x];
            for (int p = 0; p < len; ++p) {
                auto [v, j] = la_.at[x][p];
                auto [v2, j2] = lb_.at[cmap_[x]][(p + shift[x]) % len];
                if (j2 != j) return false;
                if (vmap[v] >= 0) {
                    if (vmap[v] != v2) return false;
                    continue;
                }
                vmap[v] = v2;
                for (int i = 0; i < 3; ++i) {
                    const auto& sa = la_.slots[v][i];
                    const auto& sb = lb_.slots[v2][i];
                    if (sb.circle != cmap_[sa.circle] || sb.level != level(sa.level, r)) return false;
                    int need = mod(sb.visit - sa.visit, la_.len[sa.circle]);
                    if (shift[sa.circle] < 0) {
                        shift[sa.circle] = need;
                        queue.push_back(sa.circle);
                    } else if (shift[sa.circle] != need) {
                        return false;
                    }
                }
            }
        }
        return true;
    }
};

bool next_shifts(const CycleStructure& cs, std::vector<int>& shifts) {
    const int m = cs.components();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            int g = std::gcd(cs.length(i), cs.length(j));
            int& s = shifts[pair_slot(m, i, j)];
            if (++s < g) return true;
            s = 0;
        }
    return false;
}

std::vector<int> component_lengths(const CycleStructure& cs) {
    std::vector<int> out;
    for (int c = 0; c < cs.components(); ++c) out.push_back(cs.length(c));
    return out;
}

}  // namespace

IsotopyResult compare_isotopy(const TraceGraph& a, const TraceGraph& b, const IsotopyOptions& options) {
    IsotopyResult res;
    const int m = a.cycles.components();
    {
        auto ka = component_lengths(a.cycles), kb = component_lengths(b.cycles);
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        if (a.n != b.n || ka != kb || a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size() ||
            a.circles.size() != b.circles.size())
            return res;
    }

    res.base_point_choices = 1;
    for (const auto& c : a.circles) {
        int k = a.vertex_visits(c.id);
        if (k > 0) res.base_point_choices *= k;
    }
    double six_l = 6.0 * std::max<std::size_t>(std::max(a.word.length(), b.word.length()), 1);
    res.log10_bound = static_cast<double>(a.n * a.n - a.n) * std::log10(six_l);

    auto la = level_codes(a, options.cycle_budget);
    auto lb = level_codes(b, options.cycle_budget);
    auto all_degenerate = [](const std::vector<LevelCode>& ls) {
        return std::all_of(ls.begin(), ls.end(), [](const LevelCode& l) { return l.degenerate; });
    };
    res.all_levels_degenerate = all_degenerate(la) && all_degenerate(lb);

    Matcher matcher(a, b, options, res);
    TraceCode a_code;
    if (options.exhaustive) a_code = trace_code(a, {}, la);

    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool lengths_ok = true;
        for (int c = 0; c < m; ++c) lengths_ok = lengths_ok && a.cycles.length(c) == b.cycles.length(perm[c]);
        if (!lengths_ok) continue;
        for (int inv = 0; inv < 2; ++inv) {
            Relabeling r{perm, inv == 1, std::vector<int>(static_cast<std::size_t>(m * m), 0)};
            if (!matcher.levels_match(la, lb, r.inverted)) {
                ++res.relabelings;
                continue;
            }
            do {
                ++res.relabelings;
                if (!matcher.prepare(r)) continue;
                std::vector<int> witness;
                bool ok = options.exhaustive ? matcher.exhaustive(r, a_code, lb, witness)
                                             : matcher.propagate(r, witness);
                if (ok) {
                    res.isotopic = true;
                    res.component_map = r.component;
                    res.marking_shift = r.shifts;
                    res.inverted = r.inverted;
                    res.base_points = witness;
                    for (const auto& c : a.circles)
                        if (a.vertex_visits(c.id) == 0) res.base_points[c.id] = -1;
                    return res;
                }
            } while (next_shifts(b.cycles, r.shifts));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return res;
}

bool isotopic(const TraceGraph& a, const TraceGraph& b) { return compare_isotopy(a, b).isotopic; }

namespace {

// Mutable copy of a graph for elimination.  Vertex and edge ids stay
// stable, circles are doubly linked, and merged edges are appended, so one
// elimination costs O(1) apart from the final compaction.
class Reducer {
public:
    explicit Reducer(const TraceGraph& g)
        : g_(g), edges_(g.edges), vertices_(g.vertices), vertex_alive_(g.vertices.size(), true),
          edge_alive_(g.edges.size(), true), prev_(g.edges.size(), -1), head_(g.circles.size(), -1) {
        for (const auto& c : g.circles) {
            head_[c.id] = c.edges.front();
            const std::size_t m = c.edges.size();
            for (std::size_t k = 0; k < m; ++k) {
                edges_[c.edges[k]].next = c.edges[(k + 1) % m];
                prev_[c.edges[(k + 1) % m]] = c.edges[k];
            }
        }
    }

    // Lower vertex v bounds a contractible trihedron; fills t.
    bool trihedron_at(int v, Trihedron& t) const {
        if (v < 0 || !vertex_alive_[v]) return false;
        const auto& up = vertices_[v].above;
        int to = edges_[up[0].edge].to;
        if (to == v || to < 0) return false;
        for (const auto& end : up)
            if (edges_[end.edge].to != to) return false;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (!class_of({up[i].edge, up[j].edge}, {1, -1}).trivial()) return false;
        t = {v, to, {up[0].edge, up[1].edge, up[2].edge}};
        return true;
    }

    std::vector<Trihedron> trihedra() const {
        std::vector<Trihedron> out;
        Trihedron t;
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (trihedron_at(static_cast<int>(v), t)) out.push_back(t);
        return out;
    }

    // Returns the lower ends of the merged edges: the only vertices whose
    // upward edges changed.
    std::vector<int> eliminate(const Trihedron& t) {
        Trihedron check;
        if (!trihedron_at(t.lower, check) || check.upper != t.upper || check.edges != t.edges)
            throw Error("vertices " + std::to_string(t.lower) + " and " + std::to_string(t.upper) +
                        " do not bound an embedded trihedron");
        vertex_alive_[t.lower] = vertex_alive_[t.upper] = false;
        auto dead = [&](int v) { return v == t.lower || v == t.upper; };
        auto in_t = [&](int e) { return std::find(t.edges.begin(), t.edges.end(), e) != t.edges.end(); };

        std::vector<int> touched;
        for (int e : t.edges) {
            if (!edge_alive_[e]) continue;  // consumed by an earlier run
            int start = e;
            bool loop = false;
            while (dead(edges_[start].from)) {
                start = prev_[start];
                if (start == e) {
                    loop = true;
                    break;
                }
            }
            std::vector<int> run;
            int x = start;
            while (true) {
                run.push_back(x);
                if (loop ? edges_[x].next == start : !dead(edges_[x].to)) break;
                x = edges_[x].next;
            }

            TraceEdge m;
            m.id = static_cast<int>(edges_.size());
            const auto& first = edges_[run.front()];
            const auto& last = edges_[run.back()];
            m.from = loop ? -1 : first.from;
            m.to = loop ? -1 : last.to;
            m.circle = first.circle;
            m.pair_from = first.pair_from;
            m.pair_to = loop ? first.pair_from : last.pair_to;
            m.level = -1;
            for (int r : run) {
                m.dz += edges_[r].dz;
                m.dt += edges_[r].dt;
                if (in_t(r)) continue;
                if (m.level >= 0 && edges_[r].level != m.level)
                    throw Error("not an eliminable trihedron: circle " + g_.circles[m.circle].marking.to_string() +
                                " changes level across it");
                m.level = edges_[r].level;
            }
            if (m.level < 0) throw Error("not an eliminable trihedron: a circle lies inside it");
            for (int r : run) edge_alive_[r] = false;

            if (loop) {
                m.next = m.id;
                prev_.push_back(m.id);
            } else {
                int before = prev_[run.front()], after = last.next;
                m.next = after;
                prev_.push_back(before);
                edges_[before].next = m.id;
                prev_[after] = m.id;
                for (auto& end : vertices_[m.from].above)
                    if (end.edge == run.front()) end.edge = m.id;
                for (auto& end : vertices_[m.to].below)
                    if (end.edge == run.back()) end.edge = m.id;
                touched.push_back(m.from);
            }
            head_[m.circle] = m.id;
            edges_.push_back(m);
            edge_alive_.push_back(true);
        }
        return touched;
    }

    // Eliminates t and then its image under t -> t + pi, so the graph is
    // symmetric again between rounds.  Eliminating one half alone can
    // create trihedra whose partners are not trihedra.
    std::vector<int> eliminate_with_partner(const Trihedron& t) {
        auto touched = eliminate(t);
        int pl = g_.vertex_partner.empty() ? -1 : g_.vertex_partner[t.lower];
        int pu = g_.vertex_partner.empty() ? -1 : g_.vertex_partner[t.upper];
        Trihedron p;
        if (pl >= 0 && trihedron_at(pl, p) && p.upper == pu) {
            auto more = eliminate(p);
            touched.insert(touched.end(), more.begin(), more.end());
        }
        return touched;
    }

    TraceGraph compact() const {
        TraceGraph h;
        h.word = g_.word;
        h.n = g_.n;
        h.cycles = g_.cycles;
        std::vector<int> vmap(vertices_.size(), -1), emap(edges_.size(), -1);
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (vertex_alive_[v]) {
                vmap[v] = static_cast<int>(h.vertices.size());
                h.vertices.push_back(vertices_[v]);
                h.vertices.back().id = vmap[v];
            }
        for (const auto& c : g_.circles) {
            TraceCircle nc = c;
            nc.edges.clear();
            int e = head_[c.id];
            do {
                TraceEdge copy = edges_[e];
                copy.id = static_cast<int>(h.edges.size());
                if (copy.from >= 0) {
                    copy.from = vmap[copy.from];
                    copy.to = vmap[copy.to];
                }
                emap[e] = copy.id;
                nc.edges.push_back(copy.id);
                h.edges.push_back(copy);
                e = edges_[e].next;
            } while (e != head_[c.id]);
            h.circles.push_back(std::move(nc));
        }
        for (auto& v : h.vertices) {
            for (auto& end : v.below) end.edge = emap[end.edge];
            for (auto& end : v.above) end.edge = emap[end.edge];
        }
        finalize_links(h);
        compute_symmetry(h);
        return h;
    }

    const TripleVertex& vertex(int v) const { return vertices_[v]; }
    std::size_t vertex_slots() const { return vertices_.size(); }

private:
    const TraceGraph& g_;
    std::vector<TraceEdge> edges_;
    std::vector<TripleVertex> vertices_;
    std::vector<bool> vertex_alive_;
    std::vector<bool> edge_alive_;
    std::vector<int> prev_;
    std::vector<int> head_;

    HomologyClass class_of(const std::vector<int>& es, const std::vector<int>& dirs) const {
        double dz = 0, dt = 0;
        for (std::size_t k = 0; k < es.size(); ++k) {
            dz += dirs[k] * edges_[es[k]].dz;
            dt += dirs[k] * edges_[es[k]].dt;
        }
        return {std::llround(dz), std::llround(-dt / kTwoPi)};
    }
};

}  // namespace

std::vector<Trihedron> find_embedded_trihedra(const TraceGraph& g) { return Reducer(g).trihedra(); }

TraceGraph eliminate_trihedron(const TraceGraph& g, const Trihedron& t) {
    Reducer r(g);
    r.eliminate(t);
    return r.compact();
}

TraceGraph reduce(const TraceGraph& g) {
    Reducer r(g);
    auto key = [&](int v) { return std::tuple(r.vertex(v).z, r.vertex(v).t, v); };
    std::set<std::tuple<double, double, int>> queue;
    Trihedron t;
    for (std::size_t v = 0; v < r.vertex_slots(); ++v)
        if (r.trihedron_at(static_cast<int>(v), t)) queue.insert(key(static_cast<int>(v)));
    while (!queue.empty()) {
        int v = std::get<2>(*queue.begin());
        queue.erase(queue.begin());
        if (!r.trihedron_at(v, t)) continue;
        for (int u : r.eliminate_with_partner(t))
            if (r.trihedron_at(u, t)) queue.insert(key(u));
    }
    return r.compact();
}

TraceGraph reduce(const TraceGraph& g, std::mt19937_64& rng) {
    Reducer r(g);
    std::vector<int> pool;
    std::vector<bool> pooled(r.vertex_slots(), false);
    Trihedron t;
    auto offer = [&](int v) {
        if (!pooled[v] && r.trihedron_at(v, t)) {
            pooled[v] = true;
            pool.push_back(v);
        }
    };
    for (std::size_t v = 0; v < r.vertex_slots(); ++v) offer(static_cast<int>(v));
    while (!pool.empty()) {
        std::size_t k = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
        int v = pool[k];
        pool[k] = pool.back();
        pool.pop_back();
        pooled[v] = false;
        if (!r.trihedron_at(v, t)) continue;
        for (int u : r.eliminate_with_partner(t)) offer(u);
    }
    return r.compact();
}

IsotopyResult compare_trihedral(const TraceGraph& a, const TraceGraph& b, const IsotopyOptions& options) {
    return compare_isotopy(reduce(a), reduce(b), options);
}

bool equivalent_up_to_trihedral(const TraceGraph& a, const TraceGraph& b) { return compare_trihedral(a, b).isotopic; }

}  // namespace btg
