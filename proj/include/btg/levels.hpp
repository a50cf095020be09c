#ifndef BTG_LEVELS_HPP
#define BTG_LEVELS_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "btg/trace_graph.hpp"

namespace btg {

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Homology class on the torus: u winds along the vertical circle, w along
/// the horizontal one taken opposite to the t direction.
struct HomologyClass {
    long long u = 0;
    long long w = 0;

    bool trivial() const { return u == 0 && w == 0; }
    std::string to_string() const;
    friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
    friend auto operator<=>(const HomologyClass&, const HomologyClass&) = default;
};

/// Class of a closed walk given by edges and traversal directions (+1 along
/// the edge, -1 against it).  Throws if the sums are not integral.
HomologyClass walk_class(const TraceGraph& g, const std::vector<int>& edges, const std::vector<int>& directions);

/// Orients a class so that u > 0, or u == 0 and w >= 0.
HomologyClass oriented(HomologyClass c);

struct LevelSubgraph {
    int level = 0;
    std::vector<int> vertices;  ///< graph vertices with level-k ends, ascending
    std::vector<int> edges;     ///< level-k edges between vertices
    std::vector<int> loops;     ///< vertex-free circles of level k
};

/// Edges of level k.  Checks the trivalence pattern at every vertex.
LevelSubgraph level_subgraph(const TraceGraph& g, int k);

struct RightAttractor {
    std::vector<int> edges;  ///< edge cycle in upward order
    HomologyClass cls;       ///< (q, r)
    bool primitive = true;   ///< gcd(q, |r|) == 1
};

/// At a vertex with two level-k ends going up, the walk takes the one with
/// smaller t.  This is the only place that convention lives.
int right_successor(const TraceGraph& g, const TripleVertex& v, int level);

std::vector<RightAttractor> right_attractors(const TraceGraph& g, const LevelSubgraph& s);

/// All simple cycles of the underlying undirected subgraph, as oriented
/// classes.  Throws BudgetExceeded after `budget` cycles.
struct CycleClassReport {
    std::vector<HomologyClass> classes;  ///< distinct non-trivial classes, sorted
    std::size_t cycles = 0;              ///< simple cycles visited
    std::size_t trivial_cycles = 0;
};

constexpr std::size_t kDefaultCycleBudget = 1000000;

CycleClassReport cycle_classes(const TraceGraph& g, const LevelSubgraph& s,
                               std::size_t budget = kDefaultCycleBudget);

/// True when all non-trivial cycle classes are pairwise dependent.  Uses a
/// fundamental cycle basis, so it never enumerates cycles.
bool is_degenerate(const TraceGraph& g, const LevelSubgraph& s);

/// Selection rule for the maximal class: M = u/q - w/r (M = w when r = 0),
/// largest non-zero M, ties to largest u.  Exact rationals.
std::optional<HomologyClass> select_maximal(const std::vector<HomologyClass>& classes,
                                            const HomologyClass& attractor);

/// Maximal class of a non-degenerate level subgraph.
HomologyClass maximal_class(const TraceGraph& g, const LevelSubgraph& s, const HomologyClass& attractor,
                            std::size_t budget = kDefaultCycleBudget);

}  // namespace btg

#endif  // BTG_LEVELS_HPP
