#ifndef BTG_THREE_BRAID_HPP
#define BTG_THREE_BRAID_HPP

#include <array>
#include <optional>
#include <vector>

#include "btg/braid.hpp"
#include "btg/trace_graph.hpp"

namespace btg {

using MarkingTriplet = std::array<Marking, 3>;

/// Column of triplets along the reduced circle T_(ab), defined up to
/// cyclic permutation.  a and b are 1-based labels of the 3-subbraid.
struct TripletColumn {
    int a = 1;
    int b = 2;
    std::vector<MarkingTriplet> raw;        ///< from the circle's base visit
    std::vector<MarkingTriplet> canonical;  ///< lexicographically least rotation

    std::string to_string() const;
    bool cyclically_equal(const TripletColumn& other) const { return canonical == other.canonical; }
};

/// Index of the lexicographically least rotation (Booth).
std::size_t least_rotation(const std::vector<MarkingTriplet>& seq);

/// Column C_(ab) of the 3-subbraid on the given components (1-based labels
/// of w).  For a 3-braid the components default to {1, 2, 3}.  Throws on
/// a non-pure subbraid or a pair outside the components.
TripletColumn cyclic_invariant(const BraidWord& w, int a, int b, std::array<int, 3> components = {1, 2, 3});

/// Same for a reduced trace graph of a pure 3-braid already at hand.
TripletColumn cyclic_invariant(const TraceGraph& reduced, int a, int b);

/// C_(ba) read off C_(ab) through the t -> t + pi symmetry.
TripletColumn reversed_column(const TripletColumn& c);

/// lk_12 equal and C_(12) cyclically equal.  Both words must be pure
/// 3-braids.
bool conjugate_pure_ordered(const BraidWord& x, const BraidWord& y);

enum class Verdict { True, False, Inconclusive };
const char* to_string(Verdict v);

struct ConjugacyDecision {
    Verdict verdict = Verdict::False;
    int power = 1;                        ///< k making both braids pure
    std::optional<BraidWord> relabeling;  ///< permutation braid p with p x^k p^-1 ~ y^k
    std::optional<BraidWord> oracle_witness;
    std::string reason;
};

struct Conj3Options {
    /// Depth of the Burau conjugator search consulted before a negative
    /// verdict; 0 skips it.
    int oracle_depth = 4;
};

ConjugacyDecision conjugate_3braids(const BraidWord& x, const BraidWord& y, const Conj3Options& options = {});

}  // namespace btg

#endif  // BTG_THREE_BRAID_HPP
