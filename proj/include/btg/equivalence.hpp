#ifndef BTG_EQUIVALENCE_HPP
#define BTG_EQUIVALENCE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "btg/levels.hpp"
#include "btg/trace_graph.hpp"

namespace btg {

/// One below-end of a vertex in a trace code: circle marking, vertex index
/// along the circle counted from its base point (1-based), and the level of
/// the edge arriving from below.
struct CodeEntry {
    Marking marking;
    int index = 0;
    int level = 0;
    friend bool operator==(const CodeEntry&, const CodeEntry&) = default;
    friend auto operator<=>(const CodeEntry&, const CodeEntry&) = default;
};

struct LevelCode {
    int level = 0;
    std::vector<HomologyClass> attractors;  ///< sorted
    bool degenerate = true;
    std::optional<HomologyClass> maximal;   ///< only for non-degenerate levels
    friend bool operator==(const LevelCode&, const LevelCode&) = default;
};

struct TraceCode {
    std::vector<std::array<CodeEntry, 3>> triplets;  ///< sorted
    std::vector<LevelCode> levels;                   ///< levels 1..n-1
    /// Vertex-free circles as (marking, level), sorted.  They never show up
    /// among the triplets, so they are listed separately.
    std::vector<std::pair<Marking, int>> loops;
    friend bool operator==(const TraceCode&, const TraceCode&) = default;
};

/// Per-level attractor and maximal-class data.  Independent of base points
/// and markings, so it is computed once per graph.
std::vector<LevelCode> level_codes(const TraceGraph& g, std::size_t cycle_budget = kDefaultCycleBudget);

/// base_points[c] is the visit position (0-based, along circle.edges) used
/// as vertex 1 of circle c; marking_shift[{i,j}] cyclically shifts the
/// index k of the markings (ij) and (ji) when i != j.  Empty vectors mean
/// "all zero".
struct CodeChoice {
    std::vector<int> base_points;
    std::vector<int> marking_shift;  ///< indexed by i * m + j for i < j (0-based components)
};

TraceCode trace_code(const TraceGraph& g, const CodeChoice& choice = {});
TraceCode trace_code(const TraceGraph& g, const CodeChoice& choice, const std::vector<LevelCode>& levels);
bool codes_equal(const TraceCode& a, const TraceCode& b);

struct IsotopyOptions {
    /// Upper limit on the choice space examined.  0 reads BTG_BUDGET from
    /// the environment, falling back to 10^7.
    std::uint64_t budget = 0;
    /// Runs the full product of base points and markings instead of
    /// propagating from an anchor.  Used to certify the pruned search.
    bool exhaustive = false;
    std::size_t cycle_budget = kDefaultCycleBudget;
};

struct IsotopyResult {
    bool isotopic = false;
    /// Witness, meaningful when isotopic: component map from the first graph
    /// to the second (0-based), marking shifts per unordered pair of the
    /// second graph, whether levels were inverted, and base points in the
    /// second graph for every circle of the first (-1 for vertex-free).
    std::vector<int> component_map;
    std::vector<int> marking_shift;
    bool inverted = false;
    std::vector<int> base_points;
    /// Choice accounting: relabelings, product of circle visit counts
    /// k_1...k_N, and log10 of the paper's bound (6l)^(n^2-n).
    std::uint64_t relabelings = 0;
    long double base_point_choices = 0;
    double log10_bound = 0;
    std::uint64_t examined = 0;
    /// Every level of both graphs is degenerate; the comparison is made by
    /// the same code-equality rule but is flagged.
    bool all_levels_degenerate = false;
};

std::uint64_t default_budget();

IsotopyResult compare_isotopy(const TraceGraph& a, const TraceGraph& b, const IsotopyOptions& options = {});
bool isotopic(const TraceGraph& a, const TraceGraph& b);

/// Two vertices joined by three edges.  lower sends all three of its up
/// ends to upper.
struct Trihedron {
    int lower = -1;
    int upper = -1;
    std::array<int, 3> edges{};
};

std::vector<Trihedron> find_embedded_trihedra(const TraceGraph& g);
TraceGraph eliminate_trihedron(const TraceGraph& g, const Trihedron& t);

/// Eliminates embedded trihedra until none is left, always taking the one
/// whose lower vertex has the smallest (z, t), together with its t + pi
/// partner.
TraceGraph reduce(const TraceGraph& g);
/// Same, with the trihedron chosen uniformly at random each round (its
/// partner still goes with it).
TraceGraph reduce(const TraceGraph& g, std::mt19937_64& rng);

IsotopyResult compare_trihedral(const TraceGraph& a, const TraceGraph& b, const IsotopyOptions& options = {});
bool equivalent_up_to_trihedral(const TraceGraph& a, const TraceGraph& b);

}  // namespace btg

#endif  // BTG_EQUIVALENCE_HPP
