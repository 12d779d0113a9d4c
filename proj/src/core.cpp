#include "tokhard/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace tokhard {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

Alphabet::Alphabet(std::size_t size) {
    if (size == 0) throw ValidationError("alphabet size must be positive");
    if (size == 2) {
        glyphs_ = "01";
        return;
    }
    if (size > 26) throw ValidationError("alphabets above 26 symbols have no glyphs");
    for (std::size_t i = 0; i < size; ++i) glyphs_.push_back(static_cast<char>('a' + i));
}

bool Alphabet::contains(char glyph) const { return glyphs_.find(glyph) != std::string::npos; }

std::size_t Alphabet::index_of(char glyph) const {
    auto pos = glyphs_.find(glyph);
    if (pos == std::string::npos) throw ValidationError(std::string("symbol '") + glyph + "' not in alphabet");
    return pos;
}

bool Alphabet::valid(std::string_view s) const {
    return std::all_of(s.begin(), s.end(), [&](char g) { return contains(g); });
}

void Alphabet::check(std::string_view s) const {
    for (char g : s) index_of(g);
}

Vocabulary::Vocabulary(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    for (char g : alphabet_.glyphs()) tokens_.insert(std::string(1, g));
}

Vocabulary::Vocabulary(Alphabet alphabet, std::span<const Token> tokens) : Vocabulary(std::move(alphabet)) {
    for (const auto& t : tokens) {
        if (t.empty()) throw ValidationError("empty token");
        alphabet_.check(t);
        tokens_.insert(t);
    }
}

Vocabulary::Vocabulary(Alphabet alphabet, std::initializer_list<Token> tokens)
    : Vocabulary(std::move(alphabet), std::span<const Token>(tokens.begin(), tokens.size())) {}

bool Vocabulary::contains(std::string_view t) const { return tokens_.find(t) != tokens_.end(); }

std::vector<Token> Vocabulary::non_alphabet_tokens() const {
    std::vector<Token> out;
    for (const auto& t : tokens_)
        if (t.size() > 1) out.push_back(t);
    return out;
}

std::size_t Vocabulary::max_token_length() const {
    std::size_t m = 0;
    for (const auto& t : tokens_) m = std::max(m, t.size());
    return m;
}

Vocabulary Vocabulary::with(const Token& t) const {
    if (t.empty()) throw ValidationError("empty token");
    alphabet_.check(t);
    Vocabulary v = *this;
    v.tokens_.insert(t);
    return v;
}

Vocabulary Vocabulary::without(const Token& t) const {
    if (t.size() == 1 && alphabet_.contains(t[0])) throw ValidationError("cannot remove an alphabet symbol");
    Vocabulary v = *this;
    v.tokens_.erase(t);
    return v;
}

const char* to_string(Representation r) {
    return r == Representation::explicit_strings ? "explicit" : "length";
}

const char* to_string(Mode m) {
    switch (m) {
    case Mode::direct: return "direct";
    case Mode::bottomup: return "bottomup";
    case Mode::ope: return "ope";
    }
    return "?";
}

Dataset Dataset::from_strings(Alphabet alphabet, std::vector<std::pair<CharString, std::uint64_t>> entries) {
    Dataset d(std::move(alphabet), Representation::explicit_strings);
    d.entries_.reserve(entries.size());
    for (auto& [text, mult] : entries) {
        if (mult == 0) throw ValidationError("multiplicity must be positive");
        if (text.empty()) throw ValidationError("dataset strings must be nonempty");
        d.alphabet_.check(text);
        BigInt len = text.size();
        d.entries_.push_back({std::move(text), std::move(len), mult});
    }
    return d;
}

Dataset Dataset::from_lengths(std::vector<std::pair<UnaryLength, std::uint64_t>> entries) {
    Dataset d(Alphabet::unary(), Representation::lengths);
    d.entries_.reserve(entries.size());
    for (auto& [len, mult] : entries) {
        if (mult == 0) throw ValidationError("multiplicity must be positive");
        if (len <= 0) throw ValidationError("dataset lengths must be positive");
        d.entries_.push_back({{}, std::move(len), mult});
    }
    return d;
}

std::uint64_t Dataset::total_multiplicity() const {
    std::uint64_t total = 0;
    for (const auto& e : entries_) total += e.multiplicity;
    return total;
}

BigInt Dataset::raw_size() const {
    BigInt total = 0;
    for (const auto& e : entries_) total += e.length * e.multiplicity;
    return total;
}

std::size_t Dataset::max_length() const {
    std::size_t m = 0;
    for (const auto& e : entries_) m = std::max(m, e.text.size());
    return m;
}

Dataset Dataset::to_lengths() const {
    if (alphabet_.size() != 1) throw ValidationError("length representation needs a unary alphabet");
    std::vector<std::pair<UnaryLength, std::uint64_t>> out;
    for (const auto& e : entries_) out.emplace_back(e.length, e.multiplicity);
    return from_lengths(std::move(out));
}

Dataset Dataset::to_explicit(const BigInt& cap) const {
    if (repr_ == Representation::explicit_strings) return *this;
    std::vector<std::pair<CharString, std::uint64_t>> out;
    for (const auto& e : entries_) {
        if (e.length > cap) throw ValidationError("length " + e.length.str() + " exceeds explicit cap");
        out.emplace_back(std::string(static_cast<std::size_t>(e.length), 'a'), e.multiplicity);
    }
    return from_strings(Alphabet::unary(), std::move(out));
}

void GapInstance::validate() const {
    if (delta_plus > delta_minus) throw ValidationError("gap instance needs delta_plus <= delta_minus");
}

void Max2SatInstance::validate() const {
    std::vector<int> occurrences(num_vars + 1, 0);
    for (const auto& c : clauses) {
        for (int lit : {c.lit1, c.lit2}) {
            if (lit == 0 || static_cast<std::uint32_t>(std::abs(lit)) > num_vars)
                throw ValidationError("literal " + std::to_string(lit) + " out of range");
            ++occurrences[std::abs(lit)];
        }
    }
    for (std::uint32_t j = 1; j <= num_vars; ++j)
        if (occurrences[j] != 3)
            throw ValidationError("variable " + std::to_string(j) + " occurs " + std::to_string(occurrences[j]) +
                                  " times, expected 3");
}

bool Max2SatInstance::satisfied(const Clause& c, const Assignment& s) const {
    auto holds = [&](int lit) { return lit > 0 ? s[lit - 1] : !s[-lit - 1]; };
    return holds(c.lit1) || holds(c.lit2);
}

std::uint64_t Max2SatInstance::count_satisfied(const Assignment& s) const {
    if (s.size() != num_vars) throw ValidationError("assignment length differs from variable count");
    std::uint64_t n = 0;
    for (const auto& c : clauses) n += satisfied(c, s);
    return n;
}

void VcInstance::validate() const {
    if (k > n) throw ValidationError("k exceeds vertex count");
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (auto [u, v] : edges) {
        if (u < 1 || v < 1 || u > n || v > n) throw ValidationError("edge endpoint out of range");
        if (u == v) throw ValidationError("self-loop on vertex " + std::to_string(u));
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
            throw ValidationError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
}

bool VcInstance::is_cover(const std::vector<std::uint32_t>& cover) const {
    std::vector<bool> in(n + 1, false);
    for (auto v : cover) {
        if (v < 1 || v > n) return false;
        in[v] = true;
    }
    return std::all_of(edges.begin(), edges.end(), [&](auto e) { return in[e.first] || in[e.second]; });
}

void AddChainInstance::validate() const {
    if (targets.empty()) throw ValidationError("no targets");
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] == 0) throw ValidationError("targets must be positive");
        if (i > 0 && targets[i] <= targets[i - 1]) throw ValidationError("targets must be sorted and distinct");
    }
}

CharString concat(std::span<const Token> subwords) {
    CharString out;
    for (const auto& t : subwords) out += t;
    return out;
}

static void check_counts(std::span<const BigInt> counts, const Dataset& dataset) {
    if (counts.size() != dataset.size())
        throw ValidationError("expected " + std::to_string(dataset.size()) + " counts, got " +
                              std::to_string(counts.size()));
}

BigInt objective_length(std::span<const BigInt> counts, const Dataset& dataset) {
    check_counts(counts, dataset);
    BigInt total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) total += counts[i] * dataset[i].multiplicity;
    return total;
}

BigInt objective_reduce(std::span<const BigInt> counts, const Dataset& dataset) {
    check_counts(counts, dataset);
    BigInt total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > dataset[i].length) throw ValidationError("token count exceeds string length");
        total += (dataset[i].length - counts[i]) * dataset[i].multiplicity;
    }
    return total;
}

Rational approximation_ratio(const BigInt& achieved, const BigInt& optimal, Objective objective) {
    if (achieved < 0 || optimal < 0) throw ValidationError("objective values must be nonnegative");
    if (objective == Objective::length) {
        if (optimal == 0) throw ValidationError("division by zero: optimal length is 0");
        return Rational(achieved, optimal);
    }
    if (achieved > optimal) throw ValidationError("achieved reduction exceeds the optimum");
    if (achieved == 0) throw ValidationError("division by zero: achieved reduction is 0");
    return Rational(optimal, achieved);
}

}  // namespace tokhard
