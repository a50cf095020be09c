// Word corpora shared by the unit tests and the acceptance runner.
#ifndef BTG_TESTS_CORPUS_HPP
#define BTG_TESTS_CORPUS_HPP

#include <random>
#include <vector>

#include "btg/braid.hpp"

namespace btg::corpus {

// All freely reduced words on n strands with length <= max_len.
inline std::vector<BraidWord> reduced_words(int n, int max_len) {
    std::vector<Letter> alphabet;
    for (int i = 1; i < n; ++i) {
        alphabet.push_back({i, 1});
        alphabet.push_back({i, -1});
    }
    std::vector<BraidWord> out;
    std::vector<std::vector<Letter>> layer{{}};
    for (int len = 0; len <= max_len; ++len) {
        std::vector<std::vector<Letter>> next;
        for (auto& letters : layer) {
            if (len < max_len)
                for (const auto& a : alphabet) {
                    if (!letters.empty() && letters.back().index == a.index && letters.back().sign == -a.sign)
                        continue;
                    auto ext = letters;
                    ext.push_back(a);
                    next.push_back(std::move(ext));
                }
            out.emplace_back(n, std::move(letters));
        }
        layer = std::move(next);
    }
    return out;
}

inline BraidWord random_word(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> idx(1, n - 1), sgn(0, 1);
    std::vector<Letter> letters;
    for (int k = 0; k < len; ++k) letters.push_back({idx(rng), sgn(rng) ? 1 : -1});
    return BraidWord(n, std::move(letters));
}

inline BraidWord random_reduced_word(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> idx(1, n - 1), sgn(0, 1);
    std::vector<Letter> letters;
    while (static_cast<int>(letters.size()) < len) {
        Letter a{idx(rng), sgn(rng) ? 1 : -1};
        if (!letters.empty() && letters.back().index == a.index && letters.back().sign == -a.sign) continue;
        letters.push_back(a);
    }
    return BraidWord(n, std::move(letters));
}

// Random pure word: a random word followed by enough of its own power.
inline BraidWord random_pure_word(std::mt19937_64& rng, int n, int max_len) {
    std::uniform_int_distribution<int> len_pick(0, max_len);
    for (;;) {
        auto w = random_reduced_word(rng, n, len_pick(rng));
        if (permutation(w).is_identity()) return w;
    }
}

}  // namespace btg::corpus

#endif
