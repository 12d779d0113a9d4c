#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tokhard/core.hpp"
#include "tokhard/exec.hpp"

namespace tokhard {

enum class Method { full_oracle, restricted_oracle, compliant_enumeration };
const char* to_string(Method m);

struct ThresholdRow {
    std::string threshold;  // source-side parameter (F, k or zeta)
    bool source_yes = false;
    bool reduced_yes = false;
};

struct EquivalenceReport {
    std::string instance;
    std::string reduction;
    std::string source_optimum;   // F*, min cover or min chain length
    std::string reduced_optimum;  // delta* or minimal merge count
    std::string predicted;
    std::vector<Method> methods;
    std::vector<ThresholdRow> sweep;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    bool passed() const { return failures.empty(); }
    std::string render_text() const;
    std::string render_kv() const;
};

struct HarnessOptions {
    SearchBudget budget;
    Exec exec = Exec::parallel;
    bool swap_probe = true;
    // The unrestricted direct oracle also runs when J is at most this.
    std::uint32_t full_oracle_max_vars = 2;
    std::uint32_t max_vc_vertices = 4;
    std::uint64_t max_chain_target = 24;
    std::uint64_t max_zeta = 6;
};

EquivalenceReport verify_d2tok_equivalence(const Max2SatInstance& inst, const HarnessOptions& options = {});
EquivalenceReport verify_b2tok_equivalence(const Max2SatInstance& inst, const HarnessOptions& options = {});
EquivalenceReport verify_d1tok_equivalence(const VcInstance& inst, const HarnessOptions& options = {});
EquivalenceReport verify_uope_equivalence(const AddChainInstance& inst, const HarnessOptions& options = {});

// Smallest kappa whose OPE optimum reaches one token per target.
std::uint64_t minimal_ope_merges(const AddChainInstance& inst, const SearchBudget& budget = {},
                                 Exec exec = Exec::parallel);

struct GreedyResult {
    MergeSequence merges;
    std::size_t noop_padding = 0;
};

GreedyResult greedy_bpe_train(const Dataset& dataset, std::uint64_t kappa);

struct RatioReport {
    Mode mode = Mode::direct;
    BigInt raw_size;
    BigInt achieved;
    std::optional<BigInt> optimal;  // empty when the oracle ran out of budget
    std::optional<Rational> length_ratio;
    std::optional<Rational> reduce_ratio;
    std::size_t noop_padding = 0;
    std::string optimum_source;  // "oracle", "supplied" or "none"

    bool lower_bound_only() const { return !optimal.has_value(); }
    std::string render_text() const;
    std::string render_kv() const;
};

// Greedy BPE against the exact optimum. `known_optimum` skips the oracle, e.g.
// with a compliant-enumeration value for reduction instances.
RatioReport bench_ratio(const Dataset& dataset, std::uint64_t kappa, Mode mode,
                        const std::optional<BigInt>& known_optimum = std::nullopt,
                        const SearchBudget& budget = {});

// Random valid 3-occurrence instance with J variables (J even). Target F is 0.
Max2SatInstance random_3occ_instance(std::uint32_t J, std::mt19937_64& rng);

// Best objective over the 2^J sat-compliant tokenisers (direct vocabularies
// or bottom-up witness merges).
struct CompliantOptimum {
    BigInt delta;
    Assignment assignment;
};
CompliantOptimum compliant_direct_optimum(const Max2SatInstance& inst, const Dataset& reduced,
                                          Exec exec = Exec::parallel);
CompliantOptimum compliant_bottomup_optimum(const Max2SatInstance& inst, const Dataset& reduced,
                                            Exec exec = Exec::parallel);

struct SwapProbeResult {
    bool improved = false;
    BigInt best;
    std::string detail;
    std::uint64_t evaluated = 0;
};

// Replaces each non-alphabet token by each candidate substring in turn and
// reports any strict improvement of the direct objective.
SwapProbeResult one_swap_probe(const Vocabulary& vocab, const Dataset& dataset, Exec exec = Exec::parallel);

// Replaces each merge by each pair of tokens available at that position and
// reports any strict improvement of the bottom-up objective.
SwapProbeResult one_swap_probe_merges(const MergeSequence& merges, const Dataset& dataset,
                                      Exec exec = Exec::parallel);

// The four clause shapes of the bottom-up reduction over x1 (j) and x2 (j'),
// replayed under the witness merges for every assignment of the two variables.
struct ClauseRow {
    char shape = 'A';  // A: (+x1,-x2)  B: (-x1,+x2)  C: (-x1,-x2)  D: (+x1,+x2)
    bool s1 = false;
    bool s2 = false;
    CharString clause;
    std::vector<Token> tokens;
    std::size_t expected = 0;  // 2 if the clause is satisfied, else 3
    bool ok() const { return tokens.size() == expected; }
};
std::vector<ClauseRow> replay_clause_shapes();

}  // namespace tokhard
