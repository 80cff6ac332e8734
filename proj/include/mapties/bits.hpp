// Fixed-width binary words and index subsets of [n].
//
// Convention: bit positions are 1-based and the leftmost character of a word
// string is position 1. Position t of an n-bit word maps to machine bit n-t,
// so ascending integer order coincides with lexicographic string order.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mapties {

using Word = std::uint64_t;

inline constexpr int kMaxBlocklength = 64;

inline Word word_full_mask(int n) {
    return n >= 64 ? ~Word{0} : ((Word{1} << n) - 1);
}

inline std::string word_to_string(Word w, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int t = 1; t <= n; ++t)
        if ((w >> (n - t)) & 1) s[t - 1] = '1';
    return s;
}

inline Word word_from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty codeword string");
    if (s.size() > kMaxBlocklength)
        throw std::invalid_argument("blocklength exceeds " + std::to_string(kMaxBlocklength) + " bits");
    Word w = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("codeword strings must be over {0,1}");
        w = (w << 1) | static_cast<Word>(c - '0');
    }
    return w;
}

/// Subset of positions {1,..,n}, stored in the same bit layout as Word.
struct IndexSet {
    std::uint64_t mask = 0;

    static IndexSet full(int n) { return {word_full_mask(n)}; }

    bool contains(int t, int n) const { return (mask >> (n - t)) & 1; }
    void insert(int t, int n) { mask |= Word{1} << (n - t); }
    int size() const { return std::popcount(mask); }
    bool empty() const { return mask == 0; }

    IndexSet operator&(IndexSet o) const { return {mask & o.mask}; }
    IndexSet operator|(IndexSet o) const { return {mask | o.mask}; }
    IndexSet complement(int n) const { return {~mask & word_full_mask(n)}; }
    bool operator==(const IndexSet&) const = default;

    /// Ascending 1-based member positions.
    std::vector<int> members(int n) const {
        std::vector<int> out;
        for (int t = 1; t <= n; ++t)
            if (contains(t, n)) out.push_back(t);
        return out;
    }

    std::string to_string(int n) const {
        std::string s = "{";
        bool first = true;
        for (int t : members(n)) {
            if (!first) s += ",";
            s += std::to_string(t);
            first = false;
        }
        return s + "}";
    }
};

/// Hamming distance between x and y restricted to the positions in S.
/// By convention the distance over the empty set is 0.
inline int restricted_distance(Word x, Word y, IndexSet S) {
    return std::popcount((x ^ y) & S.mask);
}

inline int hamming_distance(Word x, Word y, int n) {
    return std::popcount((x ^ y) & word_full_mask(n));
}

}  // namespace mapties
