#include "btg/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace btg::io {

using nlohmann::json;

double round_significant(double x) {
    if (!std::isfinite(x)) throw Error("non-finite coordinate in trace graph");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
    double r = std::strtod(buf, nullptr);
    return r == 0 ? 0.0 : r;  // no negative zero in documents
}

namespace {

json pair_json(const std::array<int, 2>& p) { return json::array({p[0] + 1, p[1] + 1}); }

json marking_json(const Marking& m) { return json::array({m.i, m.j, m.k}); }

// below ends left to right, then above ends right to left: counterclockwise
// around the vertex in the (t, z) plane
std::array<EdgeEnd, 6> rotation(const TripleVertex& v) {
    return {v.below[0], v.below[1], v.below[2], v.above[2], v.above[1], v.above[0]};
}

[[noreturn]] void fail(const std::string& what) { throw SchemaError("invalid trace graph document: " + what); }

template <class T>
T get(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail(std::string("field \"") + key + "\" has the wrong type");
    }
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int check_id(int id, std::size_t size, const char* what, bool allow_none = false) {
    if (allow_none && id == -1) return id;
    if (id < 0 || static_cast<std::size_t>(id) >= size) fail(std::string("dangling ") + what + " id " + std::to_string(id));
    return id;
}

std::array<int, 2> read_pair(const json& j, int n) {
    if (!j.is_array() || j.size() != 2) fail("strand pair must have two entries");
    std::array<int, 2> p{};
    for (int k = 0; k < 2; ++k) {
        int s = j[k].get<int>();
        if (s < 1 || s > n) fail("strand " + std::to_string(s) + " out of range");
        p[k] = s - 1;
    }
    return p;
}

}  // namespace

json to_json(const TraceGraph& g) {
    json doc;
    doc["schema"] = "btg.trace_graph";
    doc["schema_version"] = kSchemaVersion;
    doc["word"] = g.word.to_string();
    doc["n"] = g.n;

    json comps = json::array();
    for (const auto& cyc : g.cycles.cycles) {
        json c = json::array();
        for (int s : cyc) c.push_back(s + 1);
        comps.push_back(c);
    }
    doc["components"] = comps;

    json vs = json::array();
    for (const auto& v : g.vertices) {
        json rot = json::array();
        for (const auto& e : rotation(v)) rot.push_back({{"edge", e.edge}, {"up", e.up}});
        vs.push_back({{"id", v.id},
                      {"z", round_significant(v.z)},
                      {"t", round_significant(v.t)},
                      {"strands", json::array({v.strands[0] + 1, v.strands[1] + 1, v.strands[2] + 1})},
                      {"rotation", rot}});
    }
    doc["vertices"] = vs;

    json es = json::array();
    for (const auto& e : g.edges) {
        es.push_back({{"id", e.id},
                      {"endpoints", e.closed_loop() ? json(nullptr) : json::array({e.from, e.to})},
                      {"dz", round_significant(e.dz)},
                      {"dt", round_significant(e.dt)},
                      {"level", e.level},
                      {"circle", e.circle},
                      {"over_under", json::array({pair_json(e.pair_from), pair_json(e.pair_to)})}});
    }
    doc["edges"] = es;

    json cs = json::array();
    for (const auto& c : g.circles)
        cs.push_back({{"id", c.id}, {"marking", marking_json(c.marking)}, {"edges", c.edges}, {"periods", c.periods}});
    doc["circles"] = cs;

    doc["symmetry"] = {{"vertices", g.vertex_partner}, {"edges", g.edge_partner}, {"circles", g.circle_partner}};
    doc["provenance"] = {{"tool", "btg"},
                         {"version", kToolVersion},
                         {"tolerances",
                          {{"significant_digits", kSignificantDigits},
                           {"symmetry_match", 1e-7},
                           {"trisecant_bisection", 1e-15}}}};
    return doc;
}

namespace {

TraceGraph read_document(const json& doc) {
    if (!doc.is_object()) fail("top level must be an object");
    if (get<std::string>(doc, "schema") != "btg.trace_graph") fail("unknown schema");
    int version = get<int>(doc, "schema_version");
    if (version != kSchemaVersion)
        throw SchemaError("unsupported schema version " + std::to_string(version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");

    TraceGraph g;
    g.n = get<int>(doc, "n");
    if (g.n < 2) fail("n must be at least 2");
    try {
        g.word = parse_word(get<std::string>(doc, "word"), g.n);
    } catch (const ParseError& e) {
        fail(std::string("word: ") + e.what());
    }
    g.cycles = cycle_structure(g.word);

    const auto& vs = field(doc, "vertices");
    const auto& es = field(doc, "edges");
    const auto& cs = field(doc, "circles");
    if (!vs.is_array() || !es.is_array() || !cs.is_array()) fail("vertices, edges and circles must be arrays");

    for (std::size_t k = 0; k < es.size(); ++k) {
        const auto& je = es[k];
        TraceEdge e;
        e.id = get<int>(je, "id");
        if (e.id != static_cast<int>(k)) fail("edge ids must be 0..E-1 in order");
        const auto& ends = field(je, "endpoints");
        if (ends.is_null()) {
            e.from = e.to = -1;
        } else {
            if (!ends.is_array() || ends.size() != 2) fail("edge endpoints must be a pair or null");
            e.from = check_id(ends[0].get<int>(), vs.size(), "vertex");
            e.to = check_id(ends[1].get<int>(), vs.size(), "vertex");
        }
        e.dz = get<double>(je, "dz");
        e.dt = get<double>(je, "dt");
        e.level = get<int>(je, "level");
        if (e.level < 1 || e.level > g.n - 1) fail("edge level out of range");
        e.circle = check_id(get<int>(je, "circle"), cs.size(), "circle");
        const auto& ou = field(je, "over_under");
        if (!ou.is_array() || ou.size() != 2) fail("over_under must hold two pairs");
        e.pair_from = read_pair(ou[0], g.n);
        e.pair_to = read_pair(ou[1], g.n);
        g.edges.push_back(e);
    }

    for (std::size_t k = 0; k < vs.size(); ++k) {
        const auto& jv = vs[k];
        TripleVertex v;
        v.id = get<int>(jv, "id");
        if (v.id != static_cast<int>(k)) fail("vertex ids must be 0..V-1 in order");
        v.z = get<double>(jv, "z");
        v.t = get<double>(jv, "t");
        const auto& st = field(jv, "strands");
        if (!st.is_array() || st.size() != 3) fail("a vertex has three strands");
        for (int j = 0; j < 3; ++j) {
            int s = st[j].get<int>();
            if (s < 1 || s > g.n) fail("strand out of range");
            v.strands[j] = s - 1;
        }
        const auto& rot = field(jv, "rotation");
        if (!rot.is_array() || rot.size() != 6) fail("a vertex rotation lists six edge ends");
        std::array<EdgeEnd, 6> ends;
        for (int j = 0; j < 6; ++j) {
            ends[j].edge = check_id(get<int>(rot[j], "edge"), es.size(), "edge");
            ends[j].up = get<bool>(rot[j], "up");
            const auto& e = g.edges[ends[j].edge];
            if ((ends[j].up ? e.from : e.to) != v.id) fail("rotation of vertex " + std::to_string(v.id) + " names a foreign edge");
            if (ends[j].up != (j >= 3)) fail("rotation must list the three ends below before the three above");
        }
        v.below = {ends[0], ends[1], ends[2]};
        v.above = {ends[5], ends[4], ends[3]};
        g.vertices.push_back(v);
    }

    std::vector<int> seen(g.edges.size(), 0);
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const auto& jc = cs[k];
        TraceCircle c;
        c.id = get<int>(jc, "id");
        if (c.id != static_cast<int>(k)) fail("circle ids must be 0..N-1 in order");
        auto m = get<std::vector<int>>(jc, "marking");
        if (m.size() != 3) fail("a marking is (i, j, k)");
        c.marking = {m[0], m[1], m[2]};
        c.edges = get<std::vector<int>>(jc, "edges");
        if (c.edges.empty()) fail("circle without edges");
        for (std::size_t p = 0; p < c.edges.size(); ++p) {
            int e = check_id(c.edges[p], g.edges.size(), "edge");
            if (g.edges[e].circle != c.id) fail("edge " + std::to_string(e) + " is listed under two circles");
            ++seen[e];
            int nxt = c.edges[(p + 1) % c.edges.size()];
            check_id(nxt, g.edges.size(), "edge");
            if (!g.edges[e].closed_loop() && g.edges[e].to != g.edges[nxt].from)
                fail("circle " + std::to_string(c.id) + " is not a closed edge path");
        }
        c.periods = get<int>(jc, "periods");
        g.circles.push_back(std::move(c));
    }
    for (std::size_t e = 0; e < seen.size(); ++e)
        if (seen[e] != 1) fail("edge " + std::to_string(e) + " must lie on exactly one circle");

    const auto& sym = field(doc, "symmetry");
    g.vertex_partner = get<std::vector<int>>(sym, "vertices");
    g.edge_partner = get<std::vector<int>>(sym, "edges");
    g.circle_partner = get<std::vector<int>>(sym, "circles");
    if (g.vertex_partner.size() != g.vertices.size() || g.edge_partner.size() != g.edges.size() ||
        g.circle_partner.size() != g.circles.size())
        fail("symmetry arrays must match the element counts");
    for (int p : g.vertex_partner) check_id(p, g.vertices.size(), "vertex", true);
    for (int p : g.edge_partner) check_id(p, g.edges.size(), "edge", true);
    for (int p : g.circle_partner) check_id(p, g.circles.size(), "circle", true);

    finalize_links(g);
    return g;
}

}  // namespace

TraceGraph from_json(const json& doc) {
    try {
        return read_document(doc);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid trace graph document: ") + e.what());
    }
}

std::string canonical_dump(const json& doc) { return doc.dump() + "\n"; }

void save(const TraceGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << canonical_dump(to_json(g));
    if (!out) throw Error("write to " + path + " failed");
}

TraceGraph load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return from_json(doc);
}

namespace {

// Ten well-separated colours, cycled by circle id.
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

std::string fixed(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", round_significant(x));
    return buf;
}

}  // namespace

std::string to_dot(const TraceGraph& g) {
    std::ostringstream out;
    out << "digraph trace_graph {\n";
    out << "  graph [label=\"TG(" << g.word.to_string() << "), n = " << g.n
        << "; x = t in [0, 2pi), y = z in [0, 1)\", layout=neato];\n";
    out << "  node [shape=point, width=0.08];\n";
    // 4 inches per unit in t, 8 per unit in z
    for (const auto& v : g.vertices) {
        out << "  v" << v.id << " [pos=\"" << fixed(4 * v.t) << ',' << fixed(8 * v.z) << "!\", xlabel=\"" << v.id
            << " (" << v.strands[0] + 1 << v.strands[1] + 1 << v.strands[2] + 1 << ")\"];\n";
    }
    for (const auto& c : g.circles) {
        const char* colour = kPalette[c.id % 10];
        for (int id : c.edges) {
            const auto& e = g.edges[id];
            out << "  ";
            if (e.closed_loop()) {
                out << "loop" << c.id << " [shape=circle, width=0.05, label=\"\"];\n  loop" << c.id << " -> loop"
                    << c.id;
            } else {
                out << 'v' << e.from << " -> v" << e.to;
            }
            out << " [color=\"" << colour << "\", label=\"" << c.marking.to_string() << " L" << e.level
                << "\", fontcolor=\"" << colour << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace btg::io
