#include "btg/braid.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace btg {

BraidWord::BraidWord(int strands, std::vector<Letter> letters)
    : strands_(strands), letters_(std::move(letters)) {
    if (strands_ < 2) throw Error("braid needs at least 2 strands");
    for (const auto& l : letters_) {
        if (l.index < 1 || l.index > strands_ - 1)
            throw Error("generator s" + std::to_string(l.index) + " out of range for " +
                        std::to_string(strands_) + " strands");
        if (l.sign != 1 && l.sign != -1) throw Error("letter sign must be +1 or -1");
    }
}

std::string BraidWord::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out << ' ';
        out << 's' << letters_[i].index;
        if (letters_[i].sign < 0) out << "^-1";
    }
    return out.str();
}

namespace {

class WordParser {
public:
    explicit WordParser(std::string_view text) : text_(text) {}

    std::vector<Letter> parse() {
        auto out = parse_sequence();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return out;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("word parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    long parse_int(bool allow_sign) {
        skip_space();
        bool neg = false;
        if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        std::size_t start = pos_;
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1000000) fail("number too large");
            ++pos_;
        }
        if (start == pos_) fail("expected a number");
        return neg ? -value : value;
    }

    std::vector<Letter> parse_sequence() {
        std::vector<Letter> out;
        while (true) {
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] == ')') return out;
            auto item = parse_atom();
            if (at('^')) {
                ++pos_;
                long k = parse_int(true);
                item = raise(item, k);
            }
            out.insert(out.end(), item.begin(), item.end());
        }
    }

    std::vector<Letter> parse_atom() {
        skip_space();
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_sequence();
            if (!at(')')) fail("missing ')'");
            ++pos_;
            return inner;
        }
        if (c == 's' || c == 'S') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected generator index after 's'");
            long idx = parse_int(false);
            if (idx < 1) fail("generator index must be positive");
            return {Letter{static_cast<int>(idx), 1}};
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    static std::vector<Letter> raise(const std::vector<Letter>& item, long k) {
        std::vector<Letter> base = item;
        if (k < 0) {
            std::reverse(base.begin(), base.end());
            for (auto& l : base) l.sign = -l.sign;
            k = -k;
        }
        std::vector<Letter> out;
        out.reserve(base.size() * static_cast<std::size_t>(k));
        for (long i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
        return out;
    }
};

}  // namespace

BraidWord parse_word(std::string_view text, int strands) {
    auto letters = WordParser(text).parse();
    int max_index = 0;
    for (const auto& l : letters) max_index = std::max(max_index, l.index);
    if (strands == 0) strands = std::max(2, max_index + 1);
    if (strands < 2) throw ParseError("strand count must be at least 2");
    if (max_index > strands - 1)
        throw ParseError("generator s" + std::to_string(max_index) + " out of range for " +
                         std::to_string(strands) + " strands");
    return BraidWord(strands, std::move(letters));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (images[i] != i) return false;
    return true;
}

Permutation Permutation::after(const Permutation& first) const {
    Permutation out{std::vector<int>(images.size())};
    for (int i = 0; i < size(); ++i) out.images[i] = images[first.images[i]];
    return out;
}

Permutation Permutation::inverse() const {
    Permutation out{std::vector<int>(images.size())};
    for (int i = 0; i < size(); ++i) out.images[images[i]] = i;
    return out;
}

std::vector<int> CycleStructure::lengths() const {
    std::vector<int> out;
    for (const auto& c : cycles) out.push_back(static_cast<int>(c.size()));
    return out;
}

Permutation permutation(const BraidWord& w) {
    const int n = w.strands();
    // occupant[slot] = strand currently there
    std::vector<int> occupant(n);
    std::iota(occupant.begin(), occupant.end(), 0);
    for (const auto& l : w.letters()) std::swap(occupant[l.index - 1], occupant[l.index]);
    Permutation p{std::vector<int>(n)};
    for (int slot = 0; slot < n; ++slot) p.images[occupant[slot]] = slot;
    return p;
}

CycleStructure cycle_structure(const Permutation& p) {
    const int n = p.size();
    CycleStructure cs;
    cs.component.assign(n, -1);
    cs.position.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        if (cs.component[s] >= 0) continue;
        std::vector<int> cycle;
        int x = s;
        do {
            cs.component[x] = static_cast<int>(cs.cycles.size());
            cs.position[x] = static_cast<int>(cycle.size());
            cycle.push_back(x);
            x = p.images[x];
        } while (x != s);
        cs.cycles.push_back(std::move(cycle));
    }
    return cs;
}

CycleStructure cycle_structure(const BraidWord& w) { return cycle_structure(permutation(w)); }

int circle_count_formula(const CycleStructure& cs) {
    auto len = cs.lengths();
    int total = 0;
    for (std::size_t i = 0; i < len.size(); ++i) {
        total += len[i] - 1;
        for (std::size_t j = i + 1; j < len.size(); ++j) total += 2 * std::gcd(len[i], len[j]);
    }
    return total;
}

int linking_number_doubled(const BraidWord& w, int i, int j) {
    auto cs = cycle_structure(w);
    if (i == j || i < 0 || j < 0 || i >= cs.components() || j >= cs.components())
        throw Error("invalid component pair for linking number");
    std::vector<int> occupant(w.strands());
    std::iota(occupant.begin(), occupant.end(), 0);
    int sum = 0;
    for (const auto& l : w.letters()) {
        int a = cs.component[occupant[l.index - 1]];
        int b = cs.component[occupant[l.index]];
        if ((a == i && b == j) || (a == j && b == i)) sum += l.sign;
        std::swap(occupant[l.index - 1], occupant[l.index]);
    }
    return sum;
}

int linking_number(const BraidWord& w, int i, int j) {
    int doubled = linking_number_doubled(w, i, j);
    if (doubled % 2 != 0) throw Error("odd crossing sum between distinct components");
    return doubled / 2;
}

int exponent_sum(const BraidWord& w) {
    int sum = 0;
    for (const auto& l : w.letters()) sum += l.sign;
    return sum;
}

BraidWord garside_delta(int n) {
    if (n < 2) throw Error("Garside element needs n >= 2");
    std::vector<Letter> letters;
    for (int k = 1; k <= n - 1; ++k)
        for (int i = k; i >= 1; --i) letters.push_back({i, 1});
    return BraidWord(n, std::move(letters));
}

BraidWord concatenate(const BraidWord& a, const BraidWord& b) {
    if (a.strands() != b.strands()) throw Error("strand counts differ");
    auto letters = a.letters();
    letters.insert(letters.end(), b.letters().begin(), b.letters().end());
    return BraidWord(a.strands(), std::move(letters));
}

BraidWord invert(const BraidWord& w) {
    std::vector<Letter> letters(w.letters().rbegin(), w.letters().rend());
    for (auto& l : letters) l.sign = -l.sign;
    return BraidWord(w.strands(), std::move(letters));
}

BraidWord power(const BraidWord& w, int k) {
    BraidWord base = k < 0 ? invert(w) : w;
    std::vector<Letter> letters;
    for (int i = 0; i < std::abs(k); ++i)
        letters.insert(letters.end(), base.letters().begin(), base.letters().end());
    return BraidWord(w.strands(), std::move(letters));
}

BraidWord free_reduce(const BraidWord& w) {
    std::vector<Letter> stack;
    for (const auto& l : w.letters()) {
        if (!stack.empty() && stack.back().index == l.index && stack.back().sign == -l.sign)
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return BraidWord(w.strands(), std::move(stack));
}

BraidWord rotate(const BraidWord& w, std::size_t k) {
    if (w.empty()) return w;
    k %= w.length();
    std::vector<Letter> letters(w.letters().begin() + static_cast<long>(k), w.letters().end());
    letters.insert(letters.end(), w.letters().begin(), w.letters().begin() + static_cast<long>(k));
    return BraidWord(w.strands(), std::move(letters));
}

int pure_power_exponent(const BraidWord& w) {
    int order = 1;
    for (int len : cycle_structure(w).lengths()) order = std::lcm(order, len);
    return order;
}

BraidWord subbraid(const BraidWord& w, const std::set<int>& keep) {
    auto cs = cycle_structure(w);
    if (keep.empty()) throw Error("subbraid needs at least one component");
    for (int c : keep)
        if (c < 0 || c >= cs.components()) throw Error("invalid component label " + std::to_string(c));
    const int n = w.strands();
    std::vector<bool> kept(n);
    int count = 0;
    for (int s = 0; s < n; ++s)
        if (keep.count(cs.component[s])) {
            kept[s] = true;
            ++count;
        }
    if (count < 2) throw Error("subbraid needs at least 2 strands");
    std::vector<int> occupant(n);
    std::iota(occupant.begin(), occupant.end(), 0);
    std::vector<Letter> letters;
    for (const auto& l : w.letters()) {
        int a = occupant[l.index - 1], b = occupant[l.index];
        if (kept[a] && kept[b]) {
            int rank = 0;
            for (int slot = 0; slot < l.index - 1; ++slot)
                if (kept[occupant[slot]]) ++rank;
            letters.push_back({rank + 1, l.sign});
        }
        std::swap(occupant[l.index - 1], occupant[l.index]);
    }
    return BraidWord(count, std::move(letters));
}

}  // namespace btg
