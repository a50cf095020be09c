#include "btg/levels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/rational.hpp>

namespace btg {

std::string HomologyClass::to_string() const {
    std::ostringstream out;
    out << '(' << u << ',' << w << ')';
    return out.str();
}

namespace {

long long integral(double x, const char* what) {
    double r = std::round(x);
    if (std::abs(x - r) > 1e-6) throw Error(std::string("non-integral ") + what + " winding " + std::to_string(x));
    return static_cast<long long>(r);
}

HomologyClass class_from_sums(double dz, double dt) {
    return {integral(dz, "vertical"), integral(-dt / kTwoPi, "horizontal")};
}

}  // namespace

HomologyClass walk_class(const TraceGraph& g, const std::vector<int>& edges, const std::vector<int>& directions) {
    double dz = 0, dt = 0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        dz += directions[k] * g.edges[edges[k]].dz;
        dt += directions[k] * g.edges[edges[k]].dt;
    }
    return class_from_sums(dz, dt);
}

HomologyClass oriented(HomologyClass c) {
    if (c.u < 0 || (c.u == 0 && c.w < 0)) return {-c.u, -c.w};
    return c;
}

LevelSubgraph level_subgraph(const TraceGraph& g, int k) {
    if (k < 1 || k > g.n - 1) throw Error("level " + std::to_string(k) + " outside 1.." + std::to_string(g.n - 1));
    LevelSubgraph s;
    s.level = k;
    for (const auto& e : g.edges) {
        if (e.level != k) continue;
        (e.closed_loop() ? s.loops : s.edges).push_back(e.id);
    }
    for (const auto& v : g.vertices) {
        int up = 0, down = 0;
        for (const auto& end : v.above) up += g.edges[end.edge].level == k;
        for (const auto& end : v.below) down += g.edges[end.edge].level == k;
        if (up + down == 0) continue;
        if (!((up == 2 && down == 1) || (up == 1 && down == 2)))
            throw Error("vertex " + std::to_string(v.id) + " is not trivalent in level " + std::to_string(k) +
                        " (" + std::to_string(down) + " down, " + std::to_string(up) + " up)");
        s.vertices.push_back(v.id);
    }
    return s;
}

int right_successor(const TraceGraph& g, const TripleVertex& v, int level) {
    for (const auto& end : v.above)
        if (g.edges[end.edge].level == level) return end.edge;
    throw Error("vertex " + std::to_string(v.id) + " has no upward edge in level " + std::to_string(level));
}

std::vector<RightAttractor> right_attractors(const TraceGraph& g, const LevelSubgraph& s) {
    std::vector<RightAttractor> out;
    std::vector<int> succ_edge(g.vertices.size(), -1);
    for (int v : s.vertices) succ_edge[v] = right_successor(g, g.vertices[v], s.level);

    // colour: 0 unseen, 1 on the current walk, 2 finished
    std::vector<int> colour(g.vertices.size(), 0);
    for (int start : s.vertices) {
        if (colour[start]) continue;
        std::vector<int> walk;
        int v = start;
        while (colour[v] == 0) {
            colour[v] = 1;
            walk.push_back(v);
            v = g.edges[succ_edge[v]].to;
        }
        if (colour[v] == 1) {
            // v closes a new cycle; list it from its smallest vertex
            auto it = std::find(walk.begin(), walk.end(), v);
            std::vector<int> cyc(it, walk.end());
            std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
            RightAttractor ra;
            for (int x : cyc) ra.edges.push_back(succ_edge[x]);
            ra.cls = walk_class(g, ra.edges, std::vector<int>(ra.edges.size(), 1));
            ra.primitive = std::gcd(ra.cls.u, std::abs(ra.cls.w)) == 1;
            out.push_back(std::move(ra));
        }
        for (int x : walk) colour[x] = 2;
    }
    for (int e : s.loops) {
        RightAttractor ra;
        ra.edges = {e};
        ra.cls = walk_class(g, ra.edges, {1});
        ra.primitive = std::gcd(ra.cls.u, std::abs(ra.cls.w)) == 1;
        out.push_back(std::move(ra));
    }
    std::sort(out.begin(), out.end(),
              [](const RightAttractor& a, const RightAttractor& b) { return a.edges.front() < b.edges.front(); });
    return out;
}

namespace {

struct Arc {
    int to;
    int edge;
    int dir;
};

struct LocalGraph {
    std::vector<int> ids;                // local index -> vertex id
    std::vector<std::vector<Arc>> adj;   // non-loop edges, both directions
    std::vector<int> self_loops;         // edges from a vertex to itself
};

LocalGraph local_graph(const TraceGraph& g, const LevelSubgraph& s) {
    LocalGraph lg;
    lg.ids = s.vertices;
    std::vector<int> index(g.vertices.size(), -1);
    for (std::size_t k = 0; k < lg.ids.size(); ++k) index[lg.ids[k]] = static_cast<int>(k);
    lg.adj.resize(lg.ids.size());
    for (int e : s.edges) {
        const auto& edge = g.edges[e];
        int a = index[edge.from], b = index[edge.to];
        if (a == b) {
            lg.self_loops.push_back(e);
            continue;
        }
        lg.adj[a].push_back({b, e, 1});
        lg.adj[b].push_back({a, e, -1});
    }
    return lg;
}

class CycleWalker {
public:
    CycleWalker(const TraceGraph& g, const LocalGraph& lg, std::size_t budget, CycleClassReport& report)
        : g_(g), lg_(lg), budget_(budget), report_(report), on_path_(lg.ids.size(), false) {}

    void run(std::set<HomologyClass>& classes) {
        classes_ = &classes;
        for (std::size_t s = 0; s < lg_.ids.size(); ++s) {
            start_ = static_cast<int>(s);
            on_path_[s] = true;
            for (const auto& arc : lg_.adj[s]) {
                if (arc.to < start_) continue;
                first_edge_ = arc.edge;
                extend(arc, 0.0, 0.0);
            }
            on_path_[s] = false;
        }
    }

private:
    const TraceGraph& g_;
    const LocalGraph& lg_;
    std::size_t budget_;
    CycleClassReport& report_;
    std::vector<bool> on_path_;
    std::set<HomologyClass>* classes_ = nullptr;
    int start_ = 0;
    int first_edge_ = -1;

    void record(double dz, double dt) {
        if (++report_.cycles > budget_)
            throw BudgetExceeded("simple-cycle enumeration exceeded the budget of " + std::to_string(budget_));
        auto c = oriented(class_from_sums(dz, dt));
        if (c.trivial())
            ++report_.trivial_cycles;
        else
            classes_->insert(c);
    }

    void extend(const Arc& arc, double dz, double dt) {
        const auto& e = g_.edges[arc.edge];
        dz += arc.dir * e.dz;
        dt += arc.dir * e.dt;
        int v = arc.to;
        if (v == start_) {
            // each cycle is met in both directions; keep one
            if (first_edge_ < arc.edge) record(dz, dt);
            return;
        }
        on_path_[v] = true;
        for (const auto& next : lg_.adj[v]) {
            if (next.edge == arc.edge) continue;
            if (next.to < start_) continue;
            if (next.to != start_ && on_path_[next.to]) continue;
            extend(next, dz, dt);
        }
        on_path_[v] = false;
    }
};

}  // namespace

CycleClassReport cycle_classes(const TraceGraph& g, const LevelSubgraph& s, std::size_t budget) {
    CycleClassReport report;
    std::set<HomologyClass> classes;
    auto lg = local_graph(g, s);
    auto single = [&](int e) {
        if (++report.cycles > budget)
            throw BudgetExceeded("simple-cycle enumeration exceeded the budget of " + std::to_string(budget));
        auto c = oriented(walk_class(g, {e}, {1}));
        if (c.trivial())
            ++report.trivial_cycles;
        else
            classes.insert(c);
    };
    for (int e : s.loops) single(e);
    for (int e : lg.self_loops) single(e);
    CycleWalker(g, lg, budget, report).run(classes);
    report.classes.assign(classes.begin(), classes.end());
    return report;
}

bool is_degenerate(const TraceGraph& g, const LevelSubgraph& s) {
    auto lg = local_graph(g, s);
    const std::size_t nv = lg.ids.size();
    // potentials along a spanning forest; every non-tree edge closes a
    // fundamental cycle whose class is the potential mismatch
    std::vector<double> pz(nv, 0), pt(nv, 0);
    std::vector<bool> seen(nv, false);
    std::vector<bool> tree_edge(g.edges.size(), false);
    for (std::size_t root = 0; root < nv; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::vector<int> stack{static_cast<int>(root)};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& arc : lg.adj[v]) {
                if (seen[arc.to]) continue;
                seen[arc.to] = true;
                tree_edge[arc.edge] = true;
                pz[arc.to] = pz[v] + arc.dir * g.edges[arc.edge].dz;
                pt[arc.to] = pt[v] + arc.dir * g.edges[arc.edge].dt;
                stack.push_back(arc.to);
            }
        }
    }
    std::vector<HomologyClass> basis;
    auto add = [&](double dz, double dt) {
        auto c = class_from_sums(dz, dt);
        if (!c.trivial()) basis.push_back(c);
    };
    for (int e : s.loops) add(g.edges[e].dz, g.edges[e].dt);
    for (int e : lg.self_loops) add(g.edges[e].dz, g.edges[e].dt);
    std::vector<int> index(g.vertices.size(), -1);
    for (std::size_t k = 0; k < nv; ++k) index[lg.ids[k]] = static_cast<int>(k);
    for (int e : s.edges) {
        const auto& edge = g.edges[e];
        if (tree_edge[e] || edge.from == edge.to) continue;
        int a = index[edge.from], b = index[edge.to];
        add(pz[a] + edge.dz - pz[b], pt[a] + edge.dt - pt[b]);
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (basis[i].u * basis[j].w != basis[i].w * basis[j].u) return false;
    return true;
}

std::optional<HomologyClass> select_maximal(const std::vector<HomologyClass>& classes,
                                            const HomologyClass& attractor) {
    using Q = boost::rational<long long>;
    std::optional<HomologyClass> best;
    Q best_m;
    for (const auto& c : classes) {
        if (c.trivial()) continue;
        Q m = attractor.w == 0 ? Q(c.w) : Q(c.u, attractor.u) - Q(c.w, attractor.w);
        // numerator test: boost 1.74 recurses on rational == int under C++20
        if (m.numerator() == 0) continue;
        if (!best || m > best_m || (m == best_m && c.u > best->u)) {
            best = c;
            best_m = m;
        }
    }
    return best;
}

HomologyClass maximal_class(const TraceGraph& g, const LevelSubgraph& s, const HomologyClass& attractor,
                            std::size_t budget) {
    if (is_degenerate(g, s))
        throw Error("maximal class requested for the degenerate level subgraph " + std::to_string(s.level));
    auto report = cycle_classes(g, s, budget);
    auto best = select_maximal(report.classes, attractor);
    if (!best) throw Error("level " + std::to_string(s.level) + " has no cycle with non-zero M");
    return *best;
}

}  // namespace btg
