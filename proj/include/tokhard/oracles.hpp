#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tokhard/core.hpp"
#include "tokhard/exec.hpp"

namespace tokhard {

struct DirectSolution {
    Vocabulary vocabulary;
    BigInt delta;
    std::uint64_t nodes = 0;
};

struct MergeSolution {
    MergeSequence merges;
    BigInt delta;
    std::uint64_t nodes = 0;
};

struct UnarySolution {
    std::vector<BigInt> lengths;  // non-alphabet token lengths
    BigInt delta;
    std::uint64_t nodes = 0;
};

struct Max2SatSolution {
    Assignment assignment;
    std::uint64_t satisfied = 0;
};

struct CoverSolution {
    std::vector<std::uint32_t> cover;
    std::size_t size() const { return cover.size(); }
};

struct ChainSolution {
    std::vector<std::uint64_t> chain;  // starts at 1
    std::size_t length() const { return chain.empty() ? 0 : chain.size() - 1; }
};

// Distinct substrings of length >= 2 of the dataset strings, sorted.
std::vector<Token> substring_candidates(const Dataset& dataset);

DirectSolution solve_direct_exact(const Dataset& dataset, std::uint64_t kappa,
                                  const std::optional<std::vector<Token>>& candidates = std::nullopt,
                                  const SearchBudget& budget = {}, Exec exec = Exec::parallel);

MergeSolution solve_bottomup_exact(const Dataset& dataset, std::uint64_t kappa,
                                   const SearchBudget& budget = {}, Exec exec = Exec::parallel);

MergeSolution solve_ope_exact(const Dataset& dataset, std::uint64_t kappa,
                              const SearchBudget& budget = {}, Exec exec = Exec::parallel);

UnarySolution solve_unary_direct_exact(const Dataset& dataset, std::uint64_t kappa,
                                       const std::optional<std::vector<BigInt>>& candidates = std::nullopt,
                                       const SearchBudget& budget = {}, Exec exec = Exec::parallel);

Max2SatSolution solve_max2sat_exact(const Max2SatInstance& inst, Exec exec = Exec::parallel);

CoverSolution solve_vc_exact(const VcInstance& inst);

ChainSolution solve_addchain_exact(const AddChainInstance& inst, const SearchBudget& budget = {});

}  // namespace tokhard
