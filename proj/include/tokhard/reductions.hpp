#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tokhard/core.hpp"

namespace tokhard {

// Multiplicities of the binary reductions. The recurrences are checked by
// static_assert in reductions.cpp.
namespace d2tok {
inline constexpr std::uint64_t c2 = 7;   // D3
inline constexpr std::uint64_t c1 = 21;  // D2
inline constexpr std::uint64_t c0 = 63;  // D1
}  // namespace d2tok

namespace b2tok {
inline constexpr std::uint64_t c3 = 4;    // D4
inline constexpr std::uint64_t c2 = 23;   // D3
inline constexpr std::uint64_t c1 = 115;  // D2
inline constexpr std::uint64_t c0 = 575;  // D1
}  // namespace b2tok

struct VariableGadget {
    std::uint32_t j = 0;
    CharString yes;  // 0^(2j-1)
    CharString no;   // 0^(2j)
};

VariableGadget variable_gadget(std::uint32_t j);
// x_j -> y_j, -x_j -> n_j
const CharString& literal_string(const std::vector<VariableGadget>& gadgets, int lit);

TokenisationInstance reduce_max2sat_to_d2tok(const Max2SatInstance& inst);
TokenisationInstance reduce_max2sat_to_b2tok(const Max2SatInstance& inst);

// Formula values of delta for a given satisfied-clause count.
BigInt d2tok_delta(std::uint32_t J, std::size_t C, std::uint64_t F);
BigInt b2tok_delta(std::uint32_t J, std::size_t C, std::uint64_t F);

struct VcEncoding {
    BigInt base;  // N = (n+m+1)^4
    BigInt big;   // B = N^4

    BigInt enc(std::uint32_t j) const;
    BigInt vertex(std::uint32_t j) const { return enc(j); }
    BigInt cover(std::uint32_t j) const { return enc(j) + big; }
    BigInt edge(std::uint32_t u, std::uint32_t v) const { return enc(u) + enc(v) + big; }
};

VcEncoding vc_encoding(const VcInstance& inst);

struct VcReduction {
    TokenisationInstance instance;
    VcEncoding encoding;
};

// The dataset lists vertex strings (1..n), then B, then cover strings (1..n),
// then edge strings in input order.
VcReduction reduce_vc_to_d1tok(const VcInstance& inst);

// Base-N digits of x from the most significant position B down to N^0; five
// digits for every length the reduction emits.
std::vector<BigInt> base_digits(const BigInt& x, const BigInt& base, std::size_t width);
// Checks distinctness and the digit patterns of every emitted length.
void check_vc_structure(const VcReduction& red, const VcInstance& inst);

TokenisationInstance reduce_addchain_to_uope(const AddChainInstance& inst);

struct GapConstruction {
    Rational f_minus;
    Rational f_plus;
    Rational delta_minus;
    Rational delta_plus;
    Rational instance_ratio;  // delta_minus / delta_plus for this instance
    Rational ratio_bound;     // asymptotic inapproximability constant at this epsilon
    Dataset dataset;
    std::uint64_t kappa = 0;
    Mode mode = Mode::direct;

    // Throws ValidationError if delta_minus or delta_plus is not an integer.
    GapInstance emit() const;
};

// C must equal 2016 * n_bk.
GapConstruction make_gap_d2tok(const Max2SatInstance& inst, std::uint64_t n_bk, const Rational& epsilon);
GapConstruction make_gap_b2tok(const Max2SatInstance& inst, std::uint64_t n_bk, const Rational& epsilon);

Rational gap_ratio_bound_d2tok(const Rational& epsilon);
Rational gap_ratio_bound_b2tok(const Rational& epsilon);

}  // namespace tokhard
