#include "tokhard/encoders.hpp"

#include <algorithm>
#include <limits>

#include "coins.hpp"
#include "parallel.hpp"
#include "trie.hpp"

namespace tokhard {

namespace {

detail::TokenTrie build_trie(const Vocabulary& vocab) {
    detail::TokenTrie trie(vocab.alphabet());
    for (const auto& t : vocab.tokens()) trie.insert(t);
    return trie;
}

Segmentation segment(const detail::TokenTrie& trie, std::string_view c) {
    auto best = detail::suffix_costs(trie, c);
    if (best[0] == detail::kUnreachable) throw ValidationError("string cannot be segmented over the vocabulary");
    Segmentation out;
    std::size_t i = 0;
    while (i < c.size()) {
        std::size_t pick = 0;
        // Prefixes arrive shortest first, so the first fitting one is the
        // lexicographically earliest choice.
        trie.for_each_prefix(c.substr(i), [&](std::size_t len, int) {
            if (pick == 0 && best[i + len] != detail::kUnreachable && best[i + len] + 1 == best[i]) pick = len;
        });
        out.tokens.emplace_back(c.substr(i, pick));
        i += pick;
    }
    return out;
}

std::uint32_t segment_count(const detail::TokenTrie& trie, std::string_view c) {
    auto best = detail::suffix_costs(trie, c);
    if (best[0] == detail::kUnreachable) throw ValidationError("string cannot be segmented over the vocabulary");
    return best[0];
}

void apply_merge(std::vector<Token>& tokens, const Merge& m) {
    std::vector<Token> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size();) {
        if (i + 1 < tokens.size() && tokens[i] == m.left && tokens[i + 1] == m.right) {
            out.push_back(m.left + m.right);
            i += 2;
        } else {
            out.push_back(std::move(tokens[i]));
            ++i;
        }
    }
    tokens = std::move(out);
}

CoinChange table_engine(const std::vector<BigInt>& asc, std::size_t L) {
    std::vector<std::size_t> coins;
    for (const auto& d : asc)
        if (d <= L) coins.push_back(static_cast<std::size_t>(d));
    constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> cost(L + 1, inf);
    std::vector<std::uint32_t> last(L + 1, 0);
    cost[0] = 0;
    for (std::size_t x = 1; x <= L; ++x) {
        for (std::size_t k = 0; k < coins.size() && coins[k] <= x; ++k) {
            auto prev = cost[x - coins[k]];
            if (prev != inf && prev + 1 < cost[x]) {
                cost[x] = prev + 1;
                last[x] = static_cast<std::uint32_t>(k);
            }
        }
    }
    if (cost[L] == inf) throw ValidationError("length " + std::to_string(L) + " is not representable");
    CoinChange out;
    out.count = cost[L];
    out.denominations = asc;
    out.coins.assign(asc.size(), 0);
    for (std::size_t x = L; x > 0; x -= coins[last[x]]) {
        auto d = coins[last[x]];
        auto it = std::lower_bound(asc.begin(), asc.end(), BigInt(d));
        out.coins[static_cast<std::size_t>(it - asc.begin())] += 1;
    }
    return out;
}

template <class Int>
CoinChange search_engine(const std::vector<BigInt>& asc, const BigInt& L, std::uint64_t max_nodes) {
    detail::CoinSolver<Int> solver;
    solver.max_nodes = max_nodes;
    std::vector<std::size_t> index;  // position in asc for each entry of desc
    for (std::size_t i = asc.size(); i-- > 0;) {
        if (asc[i] > L) continue;
        solver.desc.push_back(static_cast<Int>(asc[i]));
        index.push_back(i);
    }
    CoinChange out;
    out.denominations = asc;
    out.coins.assign(asc.size(), 0);
    if (L == 0) {
        out.count = 0;
        return out;
    }
    if (solver.desc.empty()) throw ValidationError("length " + L.str() + " is not representable");
    solver.run(static_cast<Int>(L));
    if (!solver.found) throw ValidationError("length " + L.str() + " is not representable");
    out.count = BigInt(solver.best_count);
    for (std::size_t k = 0; k < index.size(); ++k) out.coins[index[k]] = BigInt(solver.best[k]);
    return out;
}

void require_explicit(const Dataset& dataset, const char* what) {
    if (dataset.representation() != Representation::explicit_strings)
        throw ValidationError(std::string(what) + " needs an explicit dataset");
}

}  // namespace

Segmentation direct_encode(const Vocabulary& vocab, std::string_view c) {
    vocab.alphabet().check(c);
    return segment(build_trie(vocab), c);
}

std::vector<Token> bottomup_apply(const MergeSequence& merges, std::string_view c) {
    std::vector<Token> tokens;
    tokens.reserve(c.size());
    for (char g : c) tokens.emplace_back(1, g);
    for (const auto& m : merges) apply_merge(tokens, m);
    return tokens;
}

Vocabulary ope_vocab(const MergeSequence& merges, const Alphabet& alphabet) {
    std::vector<Token> products;
    products.reserve(merges.size());
    for (const auto& m : merges) products.push_back(m.product());
    return Vocabulary(alphabet, products);
}

Segmentation ope_encode(const MergeSequence& merges, const Alphabet& alphabet, std::string_view c) {
    return direct_encode(ope_vocab(merges, alphabet), c);
}

CoinChange unary_direct_encode(std::span<const BigInt> lengths, const BigInt& L, const UnaryEncodeOptions& options) {
    if (L < 0) throw ValidationError("negative length");
    std::vector<BigInt> asc(lengths.begin(), lengths.end());
    std::sort(asc.begin(), asc.end());
    asc.erase(std::unique(asc.begin(), asc.end()), asc.end());
    if (!asc.empty() && asc.front() <= 0) throw ValidationError("token lengths must be positive");
    if (L == 0) {
        CoinChange out;
        out.count = 0;
        out.denominations = asc;
        out.coins.assign(asc.size(), 0);
        return out;
    }
    if (L <= options.dp_bound) return table_engine(asc, static_cast<std::size_t>(L));
    // 2^62 leaves headroom for the c*d and lb arithmetic.
    if (L < (BigInt(1) << 62)) return search_engine<std::uint64_t>(asc, L, options.max_nodes);
    return search_engine<BigInt>(asc, L, options.max_nodes);
}

std::vector<BigInt> direct_counts(const Vocabulary& vocab, const Dataset& dataset, Exec exec) {
    require_explicit(dataset, "direct encoding");
    if (!(vocab.alphabet() == dataset.alphabet())) throw ValidationError("vocabulary and dataset alphabets differ");
    auto trie = build_trie(vocab);
    std::vector<BigInt> counts(dataset.size());
    std::vector<std::uint32_t> raw(dataset.size());
    detail::for_each_index_checked(dataset.size(), exec, [&](std::size_t i) { raw[i] = segment_count(trie, dataset[i].text); });
    for (std::size_t i = 0; i < raw.size(); ++i) counts[i] = raw[i];
    return counts;
}

std::vector<BigInt> bottomup_counts(const MergeSequence& merges, const Dataset& dataset, Exec exec) {
    require_explicit(dataset, "bottom-up encoding");
    std::vector<std::size_t> raw(dataset.size());
    detail::for_each_index_checked(dataset.size(), exec,
                        [&](std::size_t i) { raw[i] = bottomup_apply(merges, dataset[i].text).size(); });
    return {raw.begin(), raw.end()};
}

std::vector<BigInt> unary_counts(std::span<const BigInt> lengths, const Dataset& dataset, Exec exec) {
    if (dataset.alphabet().size() != 1) throw ValidationError("unary encoding needs a unary dataset");
    std::vector<BigInt> coins(lengths.begin(), lengths.end());
    coins.push_back(1);
    std::vector<BigInt> counts(dataset.size());
    detail::for_each_index_checked(dataset.size(), exec,
                        [&](std::size_t i) { counts[i] = unary_direct_encode(coins, dataset[i].length).count; });
    return counts;
}

BigInt direct_objective(const Vocabulary& vocab, const Dataset& dataset, Exec exec) {
    if (dataset.representation() == Representation::lengths) {
        std::vector<BigInt> lengths;
        for (const auto& t : vocab.tokens()) lengths.emplace_back(t.size());
        return objective_length(unary_counts(lengths, dataset, exec), dataset);
    }
    return objective_length(direct_counts(vocab, dataset, exec), dataset);
}

BigInt bottomup_objective(const MergeSequence& merges, const Dataset& dataset, Exec exec) {
    return objective_length(bottomup_counts(merges, dataset, exec), dataset);
}

BigInt ope_objective(const MergeSequence& merges, const Dataset& dataset, Exec exec) {
    return direct_objective(ope_vocab(merges, dataset.alphabet()), dataset, exec);
}

}  // namespace tokhard
