#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "tokhard/core.hpp"

namespace tokhard::detail {

// Prefix trie over glyph indices; `id` is the token's position in insertion
// order or -1 for inner nodes.
class TokenTrie {
public:
    explicit TokenTrie(const Alphabet& alphabet) : alphabet_(alphabet) { nodes_.emplace_back(width()); }

    int insert(std::string_view token) {
        std::size_t node = 0;
        for (char g : token) {
            auto idx = alphabet_.index_of(g);
            if (nodes_[node].next[idx] < 0) {
                nodes_[node].next[idx] = static_cast<int>(nodes_.size());
                nodes_.emplace_back(width());
            }
            node = static_cast<std::size_t>(nodes_[node].next[idx]);
        }
        if (nodes_[node].id < 0) nodes_[node].id = count_++;
        return nodes_[node].id;
    }

    // Calls f(length, id) for every token that is a prefix of s, shortest first.
    template <class F>
    void for_each_prefix(std::string_view s, F&& f) const {
        std::size_t node = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto idx = alphabet_.glyphs().find(s[i]);
            if (idx == std::string::npos) return;
            int nx = nodes_[node].next[idx];
            if (nx < 0) return;
            node = static_cast<std::size_t>(nx);
            if (nodes_[node].id >= 0) f(i + 1, nodes_[node].id);
        }
    }

    int size() const { return count_; }

private:
    struct Node {
        explicit Node(std::size_t w) : next(w, -1) {}
        std::vector<int> next;
        int id = -1;
    };

    std::size_t width() const { return alphabet_.size(); }

    Alphabet alphabet_;
    std::vector<Node> nodes_;
    int count_ = 0;
};

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// best[i] = fewest tokens covering s[i..]. kUnreachable where no segmentation exists.
inline std::vector<std::uint32_t> suffix_costs(const TokenTrie& trie, std::string_view s) {
    std::vector<std::uint32_t> best(s.size() + 1, kUnreachable);
    best[s.size()] = 0;
    for (std::size_t i = s.size(); i-- > 0;) {
        trie.for_each_prefix(s.substr(i), [&](std::size_t len, int) {
            auto rest = best[i + len];
            if (rest != kUnreachable && rest + 1 < best[i]) best[i] = rest + 1;
        });
    }
    return best;
}

}  // namespace tokhard::detail
