#pragma once

#include <istream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tokhard/core.hpp"

namespace tokhard {

// Line formats. Lines starting with 'c' are comments; blank lines are skipped.
//   .m2s  p m2s <J> <C> <F>, then C lines "<l1> <l2>"
//   .vc   p vc <n> <m> <k>, then m lines "<u> <v>"
//   .ac   p ac <T> <zeta>, then one line of T targets
//   .tok  p tok <alphabet size> <entries> <kappa> <delta> <mode> <repr>, then
//         "<multiplicity> <payload>" lines, optionally "g <delta-> <delta+>"
//   witness  "v <token>" or "m <left> <right>" lines

Max2SatInstance parse_m2s(std::istream& in);
VcInstance parse_vc(std::istream& in);
AddChainInstance parse_ac(std::istream& in);

struct TokFile {
    TokenisationInstance instance;
    std::optional<GapInstance> gap;
};
TokFile parse_tok(std::istream& in);

struct WitnessFile {
    std::vector<std::string> vocab;  // tokens, or decimal lengths for length datasets
    MergeSequence merges;
    bool has_vocab() const { return !vocab.empty(); }
    bool has_merges() const { return !merges.empty(); }
};
WitnessFile parse_witness(std::istream& in);

std::string render(const Max2SatInstance& inst);
std::string render(const VcInstance& inst);
std::string render(const AddChainInstance& inst);
std::string render(const TokenisationInstance& inst);
std::string render(const GapInstance& gap);
std::string render(const WitnessFile& w);

using SourceFile = std::variant<Max2SatInstance, VcInstance, AddChainInstance, TokFile>;
// Dispatches on the header's problem tag.
SourceFile parse_any(std::istream& in);

std::string read_file(const std::string& path);

}  // namespace tokhard
