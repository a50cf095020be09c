#ifndef BTG_ORACLE_HPP
#define BTG_ORACLE_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "btg/braid.hpp"
#include "btg/levels.hpp"
#include "btg/trace_graph.hpp"

namespace btg::oracle {

using Integer = boost::multiprecision::cpp_int;

/// Integer Laurent polynomial in t.  Stored as exponent -> non-zero coefficient.
class Laurent {
public:
    Laurent() = default;
    Laurent(long long c, int exponent = 0);

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Integer>& terms() const { return terms_; }

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent operator-() const;
    friend bool operator==(const Laurent&, const Laurent&) = default;

    std::string to_string() const;

private:
    std::map<int, Integer> terms_;
    void add_term(int e, const Integer& c);
};

/// Square matrix over Laurent polynomials, row-major.
struct LaurentMatrix {
    int size = 0;
    std::vector<Laurent> entries;

    static LaurentMatrix identity(int size);
    const Laurent& at(int r, int c) const { return entries[r * size + c]; }
    Laurent& at(int r, int c) { return entries[r * size + c]; }
    LaurentMatrix operator*(const LaurentMatrix& o) const;
    Laurent trace() const;
    friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;
    /// Stable text form, usable as a hash key.
    std::string key() const;
};

/// Reduced Burau representation of B_3 (faithful).
LaurentMatrix burau3(const BraidWord& w);
/// Unreduced Burau representation of B_n; used only for necessary
/// conditions when n >= 4.
LaurentMatrix burau(const BraidWord& w);

/// Conjugacy invariants of the reduced Burau image: exponent sum, trace and
/// determinant.
struct Burau3Invariants {
    int exponent_sum = 0;
    Laurent trace;
    Laurent determinant;
    friend bool operator==(const Burau3Invariants&, const Burau3Invariants&) = default;
};
Burau3Invariants burau3_invariants(const BraidWord& w);

/// All conjugates x beta x^-1 with |x| <= depth, keyed by matrix, each with
/// the first conjugator found in breadth-first, letter-ordered search.
class ConjugacyBall {
public:
    ConjugacyBall(const BraidWord& beta, int depth);
    std::optional<BraidWord> witness(const BraidWord& target) const;
    std::size_t size() const { return conjugates_.size(); }

private:
    int strands_ = 3;
    std::unordered_map<std::string, BraidWord> conjugates_;
};

/// Breadth-first conjugator search in B_3.  nullopt means "unknown", never
/// "not conjugate".
std::optional<BraidWord> conjugator_search(const BraidWord& beta, const BraidWord& target, int max_len);

/// Necessary conditions for conjugacy for any n: exponent sum, cycle type,
/// linking numbers against cycle lengths, and traces of the first n powers
/// of the unreduced Burau matrix.
bool cheap_invariants_agree(const BraidWord& a, const BraidWord& b);

/// Independent re-traversal of a trace graph.
struct CountReport {
    std::size_t vertices = 0;
    std::size_t circles = 0;
    std::vector<int> visits;  ///< vertex visits per circle, in traversal order
    int expected_circles = 0;
    std::size_t expected_vertices = 0;  ///< 2 l (n - 2)
    bool ok = false;
    std::string diff;
};
CountReport brute_counts(const TraceGraph& g, bool expect_unreduced = true);

/// Classes of all simple cycles of a level subgraph, by enumerating the
/// whole cycle space.  Slow; for cross-checking only.
std::vector<HomologyClass> brute_force_cycle_classes(const TraceGraph& g, const LevelSubgraph& s);
std::optional<HomologyClass> brute_force_maximal(const TraceGraph& g, const LevelSubgraph& s,
                                                 const HomologyClass& attractor);

/// The invariant suite behind `btg check`.
struct CheckReport {
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::string> details;
    bool ok() const;
};
CheckReport run_checks(const BraidWord& w);

}  // namespace btg::oracle

#endif  // BTG_ORACLE_HPP
