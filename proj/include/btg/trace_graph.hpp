#ifndef BTG_TRACE_GRAPH_HPP
#define BTG_TRACE_GRAPH_HPP

#include <array>
#include <string>
#include <vector>

#include "btg/braid.hpp"
#include "btg/embedding.hpp"

namespace btg {

/// Circle label (ij)[k].  Components i, j are 1-based.  For i == j the
/// index k is the index difference of the two points along the component;
/// for i != j it is the residue class of that difference modulo
/// gcd(n_i, n_j), shifted to 1..gcd.
struct Marking {
    int i = 1;
    int j = 2;
    int k = 1;

    std::string to_string() const;
    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking&, const Marking&) = default;
};

struct EdgeEnd {
    int edge = -1;
    bool up = false;  ///< the edge leaves the vertex upwards
    friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

/// A triple vertex.  strands = (q, r, s) in line order, q over r over s;
/// r is the middle strand, so the circle of (q, s) passes between the
/// others.  Strand labels are local to the period containing z.
struct TripleVertex {
    int id = -1;
    double z = 0;
    double t = 0;
    std::array<int, 3> strands{};
    /// Ends below the vertex, left to right (increasing t).
    std::array<EdgeEnd, 3> below{};
    /// Ends above the vertex, left to right (increasing t).
    std::array<EdgeEnd, 3> above{};
};

/// An arc of a trace circle between consecutive vertices.  from == to ==
/// -1 marks a vertex-free circle closed on itself.
struct TraceEdge {
    int id = -1;
    int from = -1;
    int to = -1;
    double dz = 0;  ///< lift displacement, positive upwards
    double dt = 0;  ///< lift displacement in the time direction
    int level = 0;
    int circle = -1;
    /// Ordered (over, under) strand pair at the lower and upper end, in
    /// the labels of the period where that end lies.
    std::array<int, 2> pair_from{};
    std::array<int, 2> pair_to{};
    int next = -1;  ///< following edge along the circle

    bool closed_loop() const { return from < 0; }
};

struct TraceCircle {
    int id = -1;
    Marking marking;
    /// Edges in z order, starting with the edge leaving the base visit.
    std::vector<int> edges;
    /// Number of periods the circle winds vertically.
    int periods = 1;
};

struct TraceGraph {
    BraidWord word;
    int n = 2;
    CycleStructure cycles;
    std::vector<TripleVertex> vertices;
    std::vector<TraceEdge> edges;
    std::vector<TraceCircle> circles;
    /// Pairing under t -> t + pi; -1 where no partner was found.
    std::vector<int> vertex_partner;
    std::vector<int> edge_partner;
    std::vector<int> circle_partner;

    int circle_of_marking(const Marking& m) const;
    /// Number of vertex visits of circle c; 0 for a vertex-free circle.
    int vertex_visits(int c) const;
    /// Edge position within its circle.
    std::vector<int> edge_positions() const;
};

/// Marking of the circle through the ordered strand pair (a, b).
Marking pair_marking(const CycleStructure& cs, int a, int b);
/// Marking of the image circle under t -> t + pi.
Marking reversed_marking(const CycleStructure& cs, const Marking& m);

TraceGraph build_trace_graph(const BraidWord& w);
TraceGraph build_trace_graph(const StrandPathSet& paths);

/// Fills edge.next, positions and the symmetry pairing from vertices,
/// edges and circles.  Used after loading or editing a graph.
void finalize_links(TraceGraph& g);
void compute_symmetry(TraceGraph& g);

/// Level of the crossing of the ordered pair (a, b) at height z.
int crossing_level(const StrandPathSet& paths, int a, int b, double z);

struct FiberCrossing {
    double z = 0;
    int over = 0;
    int under = 0;
    Marking marking;
    int level = 0;
    int sign = 0;
};

/// Crossings of the diagram rotated by t, sorted by z.
std::vector<FiberCrossing> read_fiber(const StrandPathSet& paths, double t);
BraidWord read_word_at(const StrandPathSet& paths, double t);

struct GaussChord {
    int over_component = 0;
    double over_position = 0;
    int under_component = 0;
    double under_position = 0;
    int sign = 0;
    Marking over_marking;
    Marking under_marking;
};

/// Positions along component c run over [0, n_c): arc index plus height.
std::vector<GaussChord> gauss_diagram(const StrandPathSet& paths, double t);

}  // namespace btg

#endif  // BTG_TRACE_GRAPH_HPP
