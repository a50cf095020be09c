#ifndef BTG_BRAID_HPP
#define BTG_BRAID_HPP

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace btg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// One generator sigma_index^sign.  index is 1-based, sign is +1 or -1.
struct Letter {
    int index = 1;
    int sign = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A word in the generators of B_n.
///
/// Strands are numbered 0..n-1 internally; generator indices are 1-based
/// as in the usual notation, so sigma_i exchanges slots i-1 and i.
class BraidWord {
public:
    BraidWord() = default;
    explicit BraidWord(int strands, std::vector<Letter> letters = {});

    int strands() const { return strands_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const std::vector<Letter>& letters() const { return letters_; }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }

    /// "s1 s2^-1 ..." form; the empty word prints as "".
    std::string to_string() const;

    friend bool operator==(const BraidWord&, const BraidWord&) = default;

private:
    int strands_ = 2;
    std::vector<Letter> letters_;
};

/// Parses a generator word.  Grammar:
///
///   word   := item*
///   item   := atom ('^' int)?
///   atom   := 's' digits | '(' word ')'
///
/// A power applies to the preceding atom; negative powers invert it.
/// When strands is 0 the strand count is inferred as 1 + max index
/// (at least 2).
BraidWord parse_word(std::string_view text, int strands = 0);

/// A bijection on {0..n-1}; images[s] is where strand s ends up.
struct Permutation {
    std::vector<int> images;

    int size() const { return static_cast<int>(images.size()); }
    bool is_identity() const;
    /// (this after first): x -> this(first(x)).
    Permutation after(const Permutation& first) const;
    Permutation inverse() const;
    friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Cycles of the closure permutation.  Component labels are 0-based
/// internally and ordered by the smallest strand of each cycle.
struct CycleStructure {
    /// cycles[c] lists strands in orbit order starting at the smallest.
    std::vector<std::vector<int>> cycles;
    /// component[s] = label of the cycle containing strand s.
    std::vector<int> component;
    /// position[s] = index of s inside its cycle.
    std::vector<int> position;

    int components() const { return static_cast<int>(cycles.size()); }
    int length(int c) const { return static_cast<int>(cycles[c].size()); }
    std::vector<int> lengths() const;
};

/// Letters act left to right, i.e. bottom to top of the braid: the
/// permutation sends the strand starting in slot s to its final slot.
Permutation permutation(const BraidWord& w);
CycleStructure cycle_structure(const BraidWord& w);
CycleStructure cycle_structure(const Permutation& p);

/// N(beta) = sum(n_i - 1) + 2 sum_{i<j} gcd(n_i, n_j).
int circle_count_formula(const CycleStructure& cs);

/// Linking number of components i and j (0-based labels, i != j).
int linking_number(const BraidWord& w, int i, int j);
/// Twice the linking number, for callers that want the raw half-sum.
int linking_number_doubled(const BraidWord& w, int i, int j);

int exponent_sum(const BraidWord& w);

/// Positive half twist (s1)(s2 s1)...(s_{n-1}...s1).
BraidWord garside_delta(int n);

BraidWord concatenate(const BraidWord& a, const BraidWord& b);
BraidWord invert(const BraidWord& w);
BraidWord power(const BraidWord& w, int k);
BraidWord free_reduce(const BraidWord& w);
/// Cyclic rotation: moves the first k letters to the end.
BraidWord rotate(const BraidWord& w, std::size_t k);

/// Order of the permutation: power(w, k) is pure.
int pure_power_exponent(const BraidWord& w);

/// Restriction of w to the strands of the given components (0-based
/// labels).  Kept strands are renumbered in slot order.
BraidWord subbraid(const BraidWord& w, const std::set<int>& keep);

}  // namespace btg

#endif  // BTG_BRAID_HPP
