#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tokhard/core.hpp"
#include "tokhard/exec.hpp"

namespace tokhard {

enum class Variant { direct, bottomup };
enum class Choice { y_side, n_side, both, neither };

const char* to_string(Choice c);

struct SatComplianceReport {
    bool compliant = false;
    std::vector<Token> missing_required;
    std::vector<Token> extra_noncompliant;
    std::vector<Choice> choices;  // index j-1
};

Vocabulary build_direct_witness(const Max2SatInstance& inst, const Assignment& s);
MergeSequence build_bottomup_witness(const Max2SatInstance& inst, const Assignment& s);
// 2J-1 merges after which every run 0^j, j <= 2J, is a single token.
MergeSequence build_zero_run_merges(std::uint32_t J);

SatComplianceReport check_sat_compliance(const Vocabulary& vocab, std::uint32_t J, Variant variant);
Assignment extract_assignment(const Vocabulary& vocab, std::uint32_t J, Variant variant = Variant::direct);

// Returned lengths exclude the alphabet token 1.
std::vector<BigInt> build_vc_witness(const VcInstance& inst, const std::vector<std::uint32_t>& cover);
std::vector<std::uint32_t> extract_cover(const std::vector<BigInt>& vocab_lengths, const VcInstance& inst);

// Coin vectors come from unary_direct_encode over {1} plus `lengths`.
UnaryCertificate make_unary_certificate(const Dataset& dataset, const std::vector<BigInt>& lengths);

struct CertificateCheck {
    bool accepted = false;
    std::vector<std::string> reasons;
};

CertificateCheck verify_unary_certificate(const Dataset& dataset, const UnaryCertificate& cert,
                                          std::uint64_t kappa, const BigInt& delta);

MergeSequence build_addchain_witness(const std::vector<std::uint64_t>& chain);
// Drops merges whose parts are not reachable; result starts with 1 and is in
// merge order.
std::vector<std::uint64_t> extract_addchain(const MergeSequence& merges);

struct SumIdentityOptions {
    // Sweeper self-test: drop the squares condition so counterexamples appear.
    bool weakened = false;
    Exec exec = Exec::parallel;
};

struct SumCounterexample {
    std::string identity;  // "pair-sum", "pair-collision", "triple-sum", "triple-pair"
    std::vector<std::uint64_t> values;
};

struct SumIdentityReport {
    std::uint64_t bound = 0;
    std::uint64_t checked = 0;
    std::vector<SumCounterexample> counterexamples;
    bool empty() const { return counterexamples.empty(); }
};

// Exhaustive search for nonzero values <= bound violating:
//   i+j = r and i^2+j^2 = r^2
//   distinct pairs {i,j} != {k,l} with equal sums and equal sums of squares
//   i+j+k = r and i^2+j^2+k^2 = r^2
//   a triple and a pair (r, p), p possibly 0, agreeing on power sums 1..3
// Only the first few counterexamples per identity are kept.
SumIdentityReport check_sum_identities(std::uint64_t bound, const SumIdentityOptions& options = {});

}  // namespace tokhard
