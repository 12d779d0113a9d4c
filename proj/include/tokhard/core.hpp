#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tokhard {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class BudgetExhausted : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Symbols are stored as their glyphs: 'a' for the unary alphabet, '0'/'1' for
// binary, 'a'.. for larger alphabets.
class Alphabet {
public:
    explicit Alphabet(std::size_t size);
    static Alphabet unary() { return Alphabet(1); }
    static Alphabet binary() { return Alphabet(2); }

    std::size_t size() const { return glyphs_.size(); }
    const std::string& glyphs() const { return glyphs_; }
    char glyph(std::size_t index) const { return glyphs_.at(index); }
    bool contains(char glyph) const;
    std::size_t index_of(char glyph) const;
    // Throws ValidationError if any glyph is foreign.
    void check(std::string_view s) const;
    bool valid(std::string_view s) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::string glyphs_;
};

using CharString = std::string;
using Token = std::string;
using UnaryLength = BigInt;

// Sigma is always a subset; the set is frozen at construction.
class Vocabulary {
public:
    explicit Vocabulary(Alphabet alphabet);
    Vocabulary(Alphabet alphabet, std::span<const Token> tokens);
    Vocabulary(Alphabet alphabet, std::initializer_list<Token> tokens);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::set<Token, std::less<>>& tokens() const { return tokens_; }
    bool contains(std::string_view t) const;
    std::size_t size() const { return tokens_.size(); }
    std::size_t kappa() const { return tokens_.size() - alphabet_.size(); }
    std::vector<Token> non_alphabet_tokens() const;
    std::size_t max_token_length() const;

    Vocabulary with(const Token& t) const;
    Vocabulary without(const Token& t) const;

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

private:
    Alphabet alphabet_;
    std::set<Token, std::less<>> tokens_;
};

struct Merge {
    Token left;
    Token right;

    Token product() const { return left + right; }
    friend bool operator==(const Merge&, const Merge&) = default;
    friend auto operator<=>(const Merge&, const Merge&) = default;
};

using MergeSequence = std::vector<Merge>;

enum class Representation { explicit_strings, lengths };
enum class Mode { direct, bottomup, ope };

const char* to_string(Representation r);
const char* to_string(Mode m);

// For the length representation `text` is empty and only `length` matters.
struct DatasetEntry {
    CharString text;
    UnaryLength length;
    std::uint64_t multiplicity = 1;

    friend bool operator==(const DatasetEntry&, const DatasetEntry&) = default;
};

class Dataset {
public:
    Dataset() : Dataset(Alphabet::binary(), Representation::explicit_strings) {}
    static Dataset from_strings(Alphabet alphabet,
                                std::vector<std::pair<CharString, std::uint64_t>> entries);
    static Dataset from_lengths(std::vector<std::pair<UnaryLength, std::uint64_t>> entries);

    const Alphabet& alphabet() const { return alphabet_; }
    Representation representation() const { return repr_; }
    const std::vector<DatasetEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const DatasetEntry& operator[](std::size_t i) const { return entries_[i]; }

    std::uint64_t total_multiplicity() const;
    BigInt raw_size() const;
    std::size_t max_length() const;  // explicit only

    // Unary explicit <-> length conversions. to_explicit refuses lengths above cap.
    Dataset to_lengths() const;
    Dataset to_explicit(const BigInt& cap) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    Dataset(Alphabet alphabet, Representation repr) : alphabet_(std::move(alphabet)), repr_(repr) {}

    Alphabet alphabet_;
    Representation repr_;
    std::vector<DatasetEntry> entries_;
};

struct TokenisationInstance {
    Dataset dataset;
    std::uint64_t kappa = 0;
    BigInt delta;
    Mode mode = Mode::direct;

    // Every entry needs at least one token, so delta below this floor is a NO.
    bool below_floor() const { return delta < dataset.total_multiplicity(); }
    friend bool operator==(const TokenisationInstance&, const TokenisationInstance&) = default;
};

struct GapInstance {
    Dataset dataset;
    std::uint64_t kappa = 0;
    BigInt delta_minus;
    BigInt delta_plus;
    Mode mode = Mode::direct;

    void validate() const;
    friend bool operator==(const GapInstance&, const GapInstance&) = default;
};

using Assignment = std::vector<bool>;

struct Clause {
    int lit1 = 0;
    int lit2 = 0;
    friend bool operator==(const Clause&, const Clause&) = default;
};

struct Max2SatInstance {
    std::uint32_t num_vars = 0;
    std::vector<Clause> clauses;
    std::uint64_t target = 0;

    void validate() const;
    bool satisfied(const Clause& c, const Assignment& s) const;
    std::uint64_t count_satisfied(const Assignment& s) const;
    friend bool operator==(const Max2SatInstance&, const Max2SatInstance&) = default;
};

// Vertices are 1-based, matching the enc(j) indexing of the unary reduction.
struct VcInstance {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::uint32_t k = 0;

    void validate() const;
    bool is_cover(const std::vector<std::uint32_t>& cover) const;
    friend bool operator==(const VcInstance&, const VcInstance&) = default;
};

struct AddChainInstance {
    std::vector<std::uint64_t> targets;  // sorted, distinct
    std::uint64_t zeta = 0;

    void validate() const;
    std::uint64_t max_target() const { return targets.back(); }
    friend bool operator==(const AddChainInstance&, const AddChainInstance&) = default;
};

struct UnaryCertificate {
    std::vector<BigInt> vocab_lengths;
    std::vector<std::vector<BigInt>> coin_assignments;
};

CharString concat(std::span<const Token> subwords);

enum class Objective { length, reduce };

BigInt objective_length(std::span<const BigInt> counts, const Dataset& dataset);
BigInt objective_reduce(std::span<const BigInt> counts, const Dataset& dataset);
Rational approximation_ratio(const BigInt& achieved, const BigInt& optimal, Objective objective);

}  // namespace tokhard
