#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tokhard/core.hpp"
#include "tokhard/exec.hpp"

namespace tokhard {

struct Segmentation {
    std::vector<Token> tokens;
    std::size_t size() const { return tokens.size(); }
};

// Minimum-token segmentation. Among optimal segmentations the one with the
// lexicographically smallest (start, length) sequence is returned.
Segmentation direct_encode(const Vocabulary& vocab, std::string_view c);

std::vector<Token> bottomup_apply(const MergeSequence& merges, std::string_view c);

Vocabulary ope_vocab(const MergeSequence& merges, const Alphabet& alphabet);
Segmentation ope_encode(const MergeSequence& merges, const Alphabet& alphabet, std::string_view c);

struct CoinChange {
    BigInt count;
    std::vector<BigInt> denominations;  // ascending, distinct
    std::vector<BigInt> coins;          // aligned with denominations
};

struct UnaryEncodeOptions {
    BigInt dp_bound = 1'000'000;
    std::uint64_t max_nodes = 50'000'000;
};

// Change-making: fewest parts from `lengths` summing to L. The table engine is
// used for L <= dp_bound, branch and bound over coin counts otherwise.
CoinChange unary_direct_encode(std::span<const BigInt> lengths, const BigInt& L,
                               const UnaryEncodeOptions& options = {});

// Dataset-level kernels. Counts are per entry, aligned with dataset.entries().
std::vector<BigInt> direct_counts(const Vocabulary& vocab, const Dataset& dataset,
                                  Exec exec = Exec::parallel);
std::vector<BigInt> bottomup_counts(const MergeSequence& merges, const Dataset& dataset,
                                    Exec exec = Exec::parallel);
std::vector<BigInt> unary_counts(std::span<const BigInt> lengths, const Dataset& dataset,
                                 Exec exec = Exec::parallel);

BigInt direct_objective(const Vocabulary& vocab, const Dataset& dataset, Exec exec = Exec::parallel);
BigInt bottomup_objective(const MergeSequence& merges, const Dataset& dataset,
                          Exec exec = Exec::parallel);
BigInt ope_objective(const MergeSequence& merges, const Dataset& dataset, Exec exec = Exec::parallel);

}  // namespace tokhard
