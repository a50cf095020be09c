#include "btg/trace_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace btg {

std::string Marking::to_string() const {
    std::ostringstream out;
    out << '(' << i << j << ")[" << k << ']';
    return out.str();
}

int TraceGraph::vertex_visits(int c) const {
    const auto& es = circles[c].edges;
    if (es.size() == 1 && edges[es[0]].closed_loop()) return 0;
    return static_cast<int>(es.size());
}

int TraceGraph::circle_of_marking(const Marking& m) const {
    for (const auto& c : circles)
        if (c.marking == m) return c.id;
    return -1;
}

std::vector<int> TraceGraph::edge_positions() const {
    std::vector<int> pos(edges.size(), -1);
    for (const auto& c : circles)
        for (std::size_t k = 0; k < c.edges.size(); ++k) pos[c.edges[k]] = static_cast<int>(k);
    return pos;
}

Marking pair_marking(const CycleStructure& cs, int a, int b) {
    int ca = cs.component[a], cb = cs.component[b];
    int pa = cs.position[a], pb = cs.position[b];
    if (ca == cb) {
        int len = cs.length(ca);
        return {ca + 1, cb + 1, ((pa - pb) % len + len) % len};
    }
    int g = std::gcd(cs.length(ca), cs.length(cb));
    int diff = ca < cb ? pa - pb : pb - pa;
    return {ca + 1, cb + 1, ((diff % g) + g) % g + 1};
}

Marking reversed_marking(const CycleStructure& cs, const Marking& m) {
    if (m.i == m.j) return {m.i, m.j, cs.length(m.i - 1) - m.k};
    return {m.j, m.i, m.k};
}

namespace {

struct Trisecant {
    int window = 0;
    double s = 0;
    double z = 0;
    double t_top = 0;              // time at which order[0] is over order[1] over order[2]
    std::array<int, 3> order{};    // strands in line order
};

// Collinearity of the exchanging pair with each spectator.  The midpoint
// of u and v is fixed and u - v turns monotonically through pi, so the
// line through them meets every spectator slot exactly once.
std::vector<Trisecant> trisecant_events(const StrandPathSet& paths) {
    std::vector<Trisecant> out;
    const auto& Q = paths.slots().points;
    const int n = paths.strands();
    for (const auto& w : paths.windows()) {
        Point mid = paths.exchange_midpoint(w);
        std::vector<double> found;
        for (int j = 0; j < n; ++j) {
            if (j == w.slot || j == w.slot + 1) continue;
            Point W = Q[j] - mid;
            auto h = [&](double s) { return cross(paths.exchange_difference(w, s), W); };
            double lo = 0.0, hi = 1.0;
            double hlo = h(lo), hhi = h(hi);
            if (!(hlo * hhi < 0))
                throw GenericityError("no trisecant bracket in window " + std::to_string(w.letter));
            // the sign must change exactly once across the window
            int changes = 0;
            double prev = hlo;
            constexpr int kSamples = 64;
            for (int k = 1; k <= kSamples; ++k) {
                double cur = h(static_cast<double>(k) / kSamples);
                if ((prev < 0) != (cur < 0)) ++changes;
                prev = cur;
            }
            if (changes != 1)
                throw GenericityError("spectator slot " + std::to_string(j) + " meets the exchange line " +
                                      std::to_string(changes) + " times in window " +
                                      std::to_string(w.letter));
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                double m = 0.5 * (lo + hi);
                double hm = h(m);
                if ((hm < 0) == (hlo < 0)) {
                    lo = m;
                    hlo = hm;
                } else {
                    hi = m;
                }
            }
            double s = 0.5 * (lo + hi);
            for (double other : found)
                if (std::abs(other - s) < kSeparation)
                    throw GenericityError("trisecants closer than tolerance in window " +
                                          std::to_string(w.letter));
            found.push_back(s);

            Point D = paths.exchange_difference(w, s);
            double len = std::hypot(D.x, D.y);
            Point dir{D.x / len, D.y / len};
            int c = paths.occupant(j, static_cast<std::size_t>(w.letter));
            std::array<std::pair<double, int>, 3> proj{
                std::pair{0.5 * len, w.u_strand}, std::pair{-0.5 * len, w.v_strand},
                std::pair{dot(W, dir), c}};
            std::sort(proj.begin(), proj.end(), [](auto& x, auto& y) { return x.first > y.first; });
            Trisecant tri;
            tri.window = w.letter;
            tri.s = s;
            tri.z = w.z_begin + s * (w.z_end - w.z_begin);
            tri.order = {proj[0].second, proj[1].second, proj[2].second};
            tri.t_top = wrap_2pi(kPi / 2 - std::atan2(dir.y, dir.x));
            out.push_back(tri);
        }
    }
    return out;
}

struct Visit {
    double z = 0;
    int vertex = 0;
    int passage = 0;
};

// Passages of a vertex with strands (q, r, s): (q,r), (r,s), (q,s).
std::array<std::array<int, 2>, 3> passages(const std::array<int, 3>& st) {
    return {{{st[0], st[1]}, {st[1], st[2]}, {st[0], st[2]}}};
}

}  // namespace

int crossing_level(const StrandPathSet& paths, int a, int b, double z) {
    auto at = paths.locate(z);
    Point pa = paths.position(a, at), pb = paths.position(b, at);
    Point d = pa - pb;
    double t = kPi / 2 - std::atan2(d.y, d.x);
    double c = std::cos(t), s = std::sin(t);
    double x0 = 0.5 * (rotated_x(pa, c, s) + rotated_x(pb, c, s));
    int below = 0;
    for (int k = 0; k < paths.strands(); ++k) {
        if (k == a || k == b) continue;
        if (rotated_x(paths.position(k, at), c, s) < x0) ++below;
    }
    return below + 1;
}

TraceGraph build_trace_graph(const BraidWord& w) { return build_trace_graph(StrandPathSet(w)); }

TraceGraph build_trace_graph(const StrandPathSet& paths) {
    const int n = paths.strands();
    TraceGraph g;
    g.word = paths.word();
    g.n = n;
    g.cycles = cycle_structure(paths.closure_permutation());
    const auto& perm = paths.closure_permutation();

    auto events = trisecant_events(paths);
    std::vector<std::vector<Visit>> visits(static_cast<std::size_t>(n * n));
    for (const auto& ev : events) {
        for (int lift = 0; lift < 2; ++lift) {
            TripleVertex v;
            v.id = static_cast<int>(g.vertices.size());
            v.z = ev.z;
            v.t = lift == 0 ? ev.t_top : wrap_2pi(ev.t_top + kPi);
            v.strands = lift == 0 ? ev.order : std::array<int, 3>{ev.order[2], ev.order[1], ev.order[0]};
            auto ps = passages(v.strands);
            for (int p = 0; p < 3; ++p) visits[ps[p][0] * n + ps[p][1]].push_back({v.z, v.id, p});
            g.vertices.push_back(v);
        }
    }
    for (auto& list : visits)
        std::sort(list.begin(), list.end(), [](const Visit& x, const Visit& y) { return x.z < y.z; });

    // per vertex and passage: edge arriving and edge leaving
    std::vector<std::array<int, 3>> edge_in(g.vertices.size()), edge_out(g.vertices.size());

    std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || seen[a * n + b]) continue;
            std::vector<std::array<int, 2>> orbit;
            int x = a, y = b;
            do {
                seen[x * n + y] = true;
                orbit.push_back({x, y});
                x = perm.images[x];
                y = perm.images[y];
            } while (x != a || y != b);
            const int periods = static_cast<int>(orbit.size());

            TraceCircle circle;
            circle.id = static_cast<int>(g.circles.size());
            circle.marking = pair_marking(g.cycles, a, b);
            circle.periods = periods;

            struct Stop {
                double u;  // unwrapped height
                int vertex;
                int passage;
                int period;
            };
            std::vector<Stop> stops;
            for (int p = 0; p < periods; ++p)
                for (const auto& vis : visits[orbit[p][0] * n + orbit[p][1]])
                    stops.push_back({p + vis.z, vis.vertex, vis.passage, p});

            // angle change of the orbit between unwrapped heights u1 <= u2
            auto orbit_change = [&](double u1, double u2) {
                double total = 0;
                auto p1 = static_cast<long>(std::floor(u1));
                auto p2 = static_cast<long>(std::floor(u2));
                for (long p = p1; p <= p2; ++p) {
                    const auto& pr = orbit[static_cast<std::size_t>(p % periods)];
                    double lo = p == p1 ? u1 - static_cast<double>(p) : 0.0;
                    double hi = p == p2 ? u2 - static_cast<double>(p) : 1.0;
                    if (hi > lo) total += paths.pair_angle_change(pr[0], pr[1], lo, hi);
                }
                return total;
            };
            auto level_at = [&](double u) {
                auto p = static_cast<long>(std::floor(u));
                const auto& pr = orbit[static_cast<std::size_t>(p % periods)];
                return crossing_level(paths, pr[0], pr[1], u - static_cast<double>(p));
            };

            if (stops.empty()) {
                TraceEdge e;
                e.id = static_cast<int>(g.edges.size());
                e.dz = periods;
                e.dt = -orbit_change(0.0, static_cast<double>(periods) - 1e-15);
                e.level = level_at(0.5);
                e.circle = circle.id;
                e.pair_from = orbit[0];
                e.pair_to = orbit[0];
                circle.edges.push_back(e.id);
                g.edges.push_back(e);
            } else {
                const std::size_t m = stops.size();
                for (std::size_t k = 0; k < m; ++k) {
                    const Stop& cur = stops[k];
                    Stop nxt = stops[(k + 1) % m];
                    if (k + 1 == m) {
                        nxt.u += periods;
                        nxt.period += periods;
                    }
                    TraceEdge e;
                    e.id = static_cast<int>(g.edges.size());
                    e.from = cur.vertex;
                    e.to = nxt.vertex;
                    e.dz = nxt.u - cur.u;
                    e.dt = -orbit_change(cur.u, nxt.u);
                    e.level = level_at(0.5 * (cur.u + nxt.u));
                    e.circle = circle.id;
                    e.pair_from = orbit[cur.period];
                    e.pair_to = orbit[nxt.period % periods];
                    edge_out[cur.vertex][cur.passage] = e.id;
                    edge_in[nxt.vertex][nxt.passage] = e.id;
                    circle.edges.push_back(e.id);
                    g.edges.push_back(e);
                }
            }
            g.circles.push_back(std::move(circle));
        }

    // local t-order of the six ends: below the vertex t grows against the
    // slope dt/dz, above it grows with it
    for (auto& v : g.vertices) {
        auto at = paths.locate(v.z);
        auto ps = passages(v.strands);
        std::array<double, 3> slope{};
        for (int p = 0; p < 3; ++p) slope[p] = -paths.pair_angle_rate(ps[p][0], ps[p][1], at);
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return slope[x] < slope[y]; });
        double scale = std::max({std::abs(slope[0]), std::abs(slope[1]), std::abs(slope[2]), 1.0});
        for (int k = 0; k + 1 < 3; ++k)
            if (slope[idx[k + 1]] - slope[idx[k]] < kTolerance * scale)
                throw GenericityError("tangent circles at triple vertex " + std::to_string(v.id));
        for (int k = 0; k < 3; ++k) {
            v.above[k] = {edge_out[v.id][idx[k]], true};
            v.below[k] = {edge_in[v.id][idx[2 - k]], false};
        }
    }

    finalize_links(g);
    compute_symmetry(g);
    for (std::size_t k = 0; k < g.vertices.size(); ++k)
        if (g.vertex_partner[k] < 0)
            throw GenericityError("vertex " + std::to_string(k) + " has no partner under t -> t + pi");
    return g;
}

void finalize_links(TraceGraph& g) {
    for (auto& c : g.circles) {
        const std::size_t m = c.edges.size();
        for (std::size_t k = 0; k < m; ++k) {
            g.edges[c.edges[k]].next = c.edges[(k + 1) % m];
            g.edges[c.edges[k]].circle = c.id;
        }
    }
}

void compute_symmetry(TraceGraph& g) {
    constexpr double kMatch = 1e-7;
    const std::size_t nv = g.vertices.size();
    g.vertex_partner.assign(nv, -1);
    g.edge_partner.assign(g.edges.size(), -1);
    g.circle_partner.assign(g.circles.size(), -1);

    std::vector<int> order(nv);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return g.vertices[a].z < g.vertices[b].z; });
    for (std::size_t k = 0; k < nv; ++k) {
        const auto& v = g.vertices[order[k]];
        std::array<int, 3> rev{v.strands[2], v.strands[1], v.strands[0]};
        // scan the block of vertices at the same height
        std::size_t lo = k;
        while (lo > 0 && v.z - g.vertices[order[lo - 1]].z < kMatch) --lo;
        for (std::size_t m = lo; m < nv && g.vertices[order[m]].z - v.z < kMatch; ++m) {
            const auto& w = g.vertices[order[m]];
            if (w.id == v.id || w.strands != rev) continue;
            if (std::abs(wrap_pi(w.t - v.t - kPi)) < kMatch) {
                g.vertex_partner[v.id] = w.id;
                break;
            }
        }
    }

    std::map<Marking, int> by_marking;
    for (const auto& c : g.circles) by_marking[c.marking] = c.id;
    for (const auto& c : g.circles) {
        auto it = by_marking.find(reversed_marking(g.cycles, c.marking));
        if (it != by_marking.end()) g.circle_partner[c.id] = it->second;
    }

    for (const auto& e : g.edges) {
        int pc = e.circle >= 0 ? g.circle_partner[e.circle] : -1;
        if (pc < 0) continue;
        if (e.closed_loop()) {
            const auto& pe = g.circles[pc].edges;
            if (pe.size() == 1 && g.edges[pe[0]].closed_loop()) g.edge_partner[e.id] = pe[0];
            continue;
        }
        int pv = g.vertex_partner[e.from];
        if (pv < 0) continue;
        std::array<int, 2> rev{e.pair_from[1], e.pair_from[0]};
        for (const auto& end : g.vertices[pv].above) {
            const auto& cand = g.edges[end.edge];
            if (cand.pair_from == rev && cand.circle == pc) {
                g.edge_partner[e.id] = cand.id;
                break;
            }
        }
    }
}

namespace {

struct FiberRoot {
    double z;
    int a;
    int b;
};

}  // namespace

std::vector<FiberCrossing> read_fiber(const StrandPathSet& paths, double t) {
    t = wrap_2pi(t);
    const int n = paths.strands();
    const auto cs = cycle_structure(paths.closure_permutation());

    for (const auto& ev : trisecant_events(paths)) {
        for (double tv : {ev.t_top, wrap_2pi(ev.t_top + kPi)})
            if (std::abs(wrap_pi(tv - t)) < 1e-9)
                throw GenericityError("fiber at t = " + std::to_string(t) +
                                      " passes through the triple vertex at z = " + std::to_string(ev.z));
    }

    const double target = kPi / 2 - t;  // angle of P_over - P_under at a crossing
    std::vector<FiberRoot> roots;
    const auto& windows = paths.windows();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            // stationary stretches: the pair must not sit exactly on the fiber
            auto check_stationary = [&](double z) {
                double th = paths.pair_angle(a, b, z);
                if (std::abs(wrap_pi(th - target)) < 1e-9)
                    throw GenericityError("fiber at t = " + std::to_string(t) +
                                          " contains a vertical arc of the trace graph");
            };
            if (windows.empty()) {
                check_stationary(0.5);
                continue;
            }
            check_stationary(0.0);
            for (const auto& w : windows) {
                check_stationary(w.z_end + 1e-12);
                bool involved = a == w.u_strand || a == w.v_strand || b == w.u_strand || b == w.v_strand;
                if (!involved) continue;
                const int samples = (a == w.u_strand || a == w.v_strand) && (b == w.u_strand || b == w.v_strand)
                                        ? 64
                                        : 256;
                double base = paths.pair_angle(a, b, w.z_begin);
                auto g = [&](double s) {
                    double z = w.z_begin + s * (w.z_end - w.z_begin);
                    double th = base + paths.pair_angle_change(a, b, w.z_begin, z);
                    return (th - target) / kTwoPi;
                };
                std::vector<double> vals(samples + 1);
                for (int k = 0; k <= samples; ++k) vals[k] = g(static_cast<double>(k) / samples);
                for (int k = 1; k < samples; ++k) {
                    bool extremum = (vals[k] - vals[k - 1]) * (vals[k + 1] - vals[k]) <= 0;
                    if (extremum && std::abs(vals[k] - std::round(vals[k])) < 1e-7)
                        throw GenericityError("fiber at t = " + std::to_string(t) +
                                              " is tangent to the trace graph");
                }
                for (int k = 0; k < samples; ++k) {
                    double g0 = vals[k], g1 = vals[k + 1];
                    double lo_v = std::min(g0, g1), hi_v = std::max(g0, g1);
                    for (double N = std::ceil(lo_v); N <= hi_v; N += 1.0) {
                        if (N == g1 && k + 1 < samples) continue;  // caught by the next interval
                        double lo = static_cast<double>(k) / samples, hi = static_cast<double>(k + 1) / samples;
                        double flo = g0 - N;
                        for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
                            double m = 0.5 * (lo + hi);
                            double fm = g(m) - N;
                            if ((fm < 0) == (flo < 0)) {
                                lo = m;
                                flo = fm;
                            } else {
                                hi = m;
                            }
                        }
                        double s = 0.5 * (lo + hi);
                        roots.push_back({w.z_begin + s * (w.z_end - w.z_begin), a, b});
                    }
                }
            }
        }

    std::sort(roots.begin(), roots.end(), [](const FiberRoot& x, const FiberRoot& y) { return x.z < y.z; });
    std::vector<FiberCrossing> out;
    const double c = std::cos(t), s = std::sin(t);
    for (const auto& r : roots) {
        FiberCrossing fc;
        fc.z = r.z;
        fc.over = r.a;
        fc.under = r.b;
        fc.marking = pair_marking(cs, r.a, r.b);
        fc.level = crossing_level(paths, r.a, r.b, r.z);
        auto at = paths.locate(r.z);
        Point dv = paths.velocity(r.a, at) - paths.velocity(r.b, at);
        double rate = rotated_x(dv, c, s);
        // positive when the over-strand comes from the left
        fc.sign = rate > 0 ? 1 : -1;
        out.push_back(fc);
    }
    return out;
}

BraidWord read_word_at(const StrandPathSet& paths, double t) {
    std::vector<Letter> letters;
    for (const auto& fc : read_fiber(paths, t)) letters.push_back({fc.level, fc.sign});
    return BraidWord(paths.strands(), std::move(letters));
}

std::vector<GaussChord> gauss_diagram(const StrandPathSet& paths, double t) {
    const auto cs = cycle_structure(paths.closure_permutation());
    std::vector<GaussChord> out;
    for (const auto& fc : read_fiber(paths, t)) {
        GaussChord ch;
        ch.over_component = cs.component[fc.over] + 1;
        ch.over_position = cs.position[fc.over] + fc.z;
        ch.under_component = cs.component[fc.under] + 1;
        ch.under_position = cs.position[fc.under] + fc.z;
        ch.sign = fc.sign;
        ch.over_marking = fc.marking;
        ch.under_marking = pair_marking(cs, fc.under, fc.over);
        out.push_back(ch);
    }
    return out;
}

}  // namespace btg
