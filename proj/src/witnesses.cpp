#include "tokhard/witnesses.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "parallel.hpp"
#include "tokhard/encoders.hpp"
#include "tokhard/reductions.hpp"

namespace tokhard {

const char* to_string(Choice c) {
    switch (c) {
    case Choice::y_side: return "y-side";
    case Choice::n_side: return "n-side";
    case Choice::both: return "both";
    case Choice::neither: return "neither";
    }
    return "?";
}

namespace {

void check_assignment(const Max2SatInstance& inst, const Assignment& s) {
    inst.validate();
    if (s.size() != inst.num_vars) throw ValidationError("assignment length differs from variable count");
}

std::string zeros(std::size_t n) { return std::string(n, '0'); }

}  // namespace

Vocabulary build_direct_witness(const Max2SatInstance& inst, const Assignment& s) {
    check_assignment(inst, s);
    std::vector<Token> tokens;
    for (std::uint32_t j = 1; j <= inst.num_vars; ++j) {
        auto g = variable_gadget(j);
        tokens.insert(tokens.end(), {"1" + g.yes, g.yes + "1", "1" + g.no, g.no + "1"});
        tokens.push_back(s[j - 1] ? "1" + g.yes + "1" : "1" + g.no + "1");
    }
    return Vocabulary(Alphabet::binary(), tokens);
}

MergeSequence build_zero_run_merges(std::uint32_t J) {
    if (J == 0) throw ValidationError("zero-run merges need J >= 1");
    const std::size_t T = 2 * static_cast<std::size_t>(J);
    MergeSequence m;
    // Doubling stage: a run becomes its binary decomposition, largest part first.
    for (std::size_t p = 1; 2 * p <= T; p *= 2) m.push_back({zeros(p), zeros(p)});
    // Each power P then absorbs the remainder to its right, rebuilding every
    // length below 2P.
    for (std::size_t P = 2; P <= T; P *= 2)
        for (std::size_t r = 1; r <= std::min(P - 1, T - P); ++r) m.push_back({zeros(P), zeros(r)});
    return m;
}

MergeSequence build_bottomup_witness(const Max2SatInstance& inst, const Assignment& s) {
    check_assignment(inst, s);
    const std::uint32_t J = inst.num_vars;
    std::vector<VariableGadget> g;
    for (std::uint32_t j = 1; j <= J; ++j) g.push_back(variable_gadget(j));
    const std::string sp = "1", sp2 = "11";

    MergeSequence m{{sp, sp}};
    auto runs = build_zero_run_merges(J);
    m.insert(m.end(), runs.begin(), runs.end());
    for (const auto& v : g) {
        m.push_back({sp2, v.no});
        m.push_back({v.yes, sp2});
    }
    for (std::uint32_t j = 0; j < J; ++j)
        m.push_back(s[j] ? Merge{sp, g[j].yes + sp2} : Merge{sp2 + g[j].no, sp});
    for (const auto& v : g) {
        m.push_back({v.no, sp});
        m.push_back({sp, v.yes});
    }
    for (std::uint32_t j = 0; j < J; ++j)
        m.push_back(s[j] ? Merge{sp + g[j].yes, sp} : Merge{sp, g[j].no + sp});
    for (const auto& v : g) {
        m.push_back({sp, v.no});
        m.push_back({v.yes, sp});
    }
    return m;
}

SatComplianceReport check_sat_compliance(const Vocabulary& vocab, std::uint32_t J, Variant variant) {
    if (vocab.alphabet().size() != 2) throw ValidationError("compliance is defined over the binary alphabet");
    const std::string sp = "1", sp2 = "11";
    std::set<Token> permitted;
    std::vector<Token> required;
    std::vector<std::pair<std::vector<Token>, std::vector<Token>>> sides;
    if (variant == Variant::bottomup) required.push_back(sp2);
    for (std::uint32_t j = 1; j <= J; ++j) {
        auto g = variable_gadget(j);
        const auto &y = g.yes, &n = g.no;
        std::vector<Token> req{sp + y, y + sp, sp + n, n + sp};
        if (variant == Variant::direct) {
            sides.push_back({{sp + y + sp}, {sp + n + sp}});
        } else {
            req.insert(req.end(), {y, n, y + sp2, sp2 + n});
            sides.push_back({{sp + y + sp, sp + y + sp2}, {sp + n + sp, sp2 + n + sp}});
        }
        required.insert(required.end(), req.begin(), req.end());
        permitted.insert(sides.back().first.begin(), sides.back().first.end());
        permitted.insert(sides.back().second.begin(), sides.back().second.end());
    }
    permitted.insert(required.begin(), required.end());

    SatComplianceReport r;
    std::set<Token> missing;
    for (const auto& t : required)
        if (!vocab.contains(t)) missing.insert(t);
    r.missing_required.assign(missing.begin(), missing.end());
    for (const auto& t : vocab.tokens())
        if (t.size() > 1 && !permitted.count(t)) r.extra_noncompliant.push_back(t);

    bool all_chosen = true;
    for (const auto& [ys, ns] : sides) {
        auto count = [&](const std::vector<Token>& ts) {
            return std::count_if(ts.begin(), ts.end(), [&](const Token& t) { return vocab.contains(t); });
        };
        auto yc = count(ys), nc = count(ns);
        Choice c = Choice::neither;
        if (yc > 0 && nc > 0)
            c = Choice::both;
        else if (yc == static_cast<long>(ys.size()))
            c = Choice::y_side;
        else if (nc == static_cast<long>(ns.size()))
            c = Choice::n_side;
        r.choices.push_back(c);
        all_chosen = all_chosen && (c == Choice::y_side || c == Choice::n_side);
    }
    r.compliant = r.missing_required.empty() && r.extra_noncompliant.empty() && all_chosen;
    return r;
}

Assignment extract_assignment(const Vocabulary& vocab, std::uint32_t J, Variant variant) {
    auto report = check_sat_compliance(vocab, J, variant);
    if (!report.compliant) {
        std::string why;
        if (!report.missing_required.empty()) why += " missing " + report.missing_required.front();
        if (!report.extra_noncompliant.empty()) why += " extra " + report.extra_noncompliant.front();
        for (std::size_t j = 0; j < report.choices.size(); ++j)
            if (report.choices[j] == Choice::both || report.choices[j] == Choice::neither)
                why += " x" + std::to_string(j + 1) + ":" + to_string(report.choices[j]);
        throw ValidationError("vocabulary is not sat-compliant:" + why);
    }
    Assignment s;
    for (auto c : report.choices) s.push_back(c == Choice::y_side);
    return s;
}

std::vector<BigInt> build_vc_witness(const VcInstance& inst, const std::vector<std::uint32_t>& cover) {
    inst.validate();
    std::set<std::uint32_t> chosen(cover.begin(), cover.end());
    if (!inst.is_cover(cover)) throw ValidationError("not a vertex cover");
    if (chosen.size() > inst.k) throw ValidationError("cover larger than k");
    for (std::uint32_t v = 1; chosen.size() < inst.k; ++v) chosen.insert(v);

    auto code = vc_encoding(inst);
    std::vector<BigInt> lengths;
    for (std::uint32_t j = 1; j <= inst.n; ++j) lengths.push_back(code.vertex(j));
    lengths.push_back(code.big);
    for (auto j : chosen) lengths.push_back(code.cover(j));
    return lengths;
}

std::vector<std::uint32_t> extract_cover(const std::vector<BigInt>& vocab_lengths, const VcInstance& inst) {
    inst.validate();
    auto code = vc_encoding(inst);
    std::map<BigInt, std::pair<char, std::pair<std::uint32_t, std::uint32_t>>> kind;
    for (std::uint32_t j = 1; j <= inst.n; ++j) {
        kind[code.vertex(j)] = {'v', {j, j}};
        kind[code.cover(j)] = {'c', {j, j}};
    }
    kind[code.big] = {'b', {0, 0}};
    for (auto [u, v] : inst.edges) kind[code.edge(u, v)] = {'e', {u, v}};

    std::set<std::uint32_t> cover;
    for (const auto& len : vocab_lengths) {
        if (len == 1) continue;
        auto it = kind.find(len);
        if (it == kind.end()) throw ValidationError("token length " + len.str() + " is not a reduced target length");
        auto [tag, ends] = it->second;
        if (tag == 'c') cover.insert(ends.first);
        if (tag == 'e') cover.insert(std::min(ends.first, ends.second));
    }
    std::vector<std::uint32_t> out(cover.begin(), cover.end());
    for (auto [u, v] : inst.edges)
        if (!cover.count(u) && !cover.count(v))
            throw ValidationError("vocabulary leaves edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " uncovered; it cannot reach the target token count");
    return out;
}

UnaryCertificate make_unary_certificate(const Dataset& dataset, const std::vector<BigInt>& lengths) {
    if (dataset.alphabet().size() != 1) throw ValidationError("unary certificates need a unary dataset");
    UnaryCertificate cert;
    cert.vocab_lengths = lengths;
    cert.vocab_lengths.push_back(1);
    std::sort(cert.vocab_lengths.begin(), cert.vocab_lengths.end());
    cert.vocab_lengths.erase(std::unique(cert.vocab_lengths.begin(), cert.vocab_lengths.end()),
                             cert.vocab_lengths.end());
    for (const auto& e : dataset.entries()) cert.coin_assignments.push_back(unary_direct_encode(cert.vocab_lengths, e.length).coins);
    return cert;
}

CertificateCheck verify_unary_certificate(const Dataset& dataset, const UnaryCertificate& cert, std::uint64_t kappa,
                                          const BigInt& delta) {
    CertificateCheck r;
    std::set<BigInt> distinct;
    std::uint64_t extra = 0;
    for (const auto& len : cert.vocab_lengths) {
        if (len <= 0) r.reasons.push_back("nonpositive-length " + len.str());
        if (!distinct.insert(len).second) r.reasons.push_back("duplicate-length " + len.str());
        if (len != 1) ++extra;
    }
    if (extra > kappa) r.reasons.push_back("too-many-tokens " + std::to_string(extra));
    if (dataset.representation() != Representation::lengths && dataset.alphabet().size() != 1)
        r.reasons.push_back("not-unary");
    if (cert.coin_assignments.size() != dataset.size()) {
        r.reasons.push_back("entry-count-mismatch");
    } else {
        BigInt total = 0;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            const auto& coins = cert.coin_assignments[i];
            if (coins.size() != cert.vocab_lengths.size()) {
                r.reasons.push_back("coin-vector-size entry " + std::to_string(i));
                continue;
            }
            BigInt sum = 0, count = 0;
            for (std::size_t k = 0; k < coins.size(); ++k) {
                if (coins[k] < 0) r.reasons.push_back("negative-count entry " + std::to_string(i));
                sum += coins[k] * cert.vocab_lengths[k];
                count += coins[k];
            }
            if (sum != dataset[i].length) r.reasons.push_back("sum-mismatch entry " + std::to_string(i));
            total += count * dataset[i].multiplicity;
        }
        if (total > delta) r.reasons.push_back("over-budget " + total.str() + " > " + delta.str());
    }
    r.accepted = r.reasons.empty();
    return r;
}

MergeSequence build_addchain_witness(const std::vector<std::uint64_t>& chain) {
    if (chain.empty() || chain.front() != 1) throw ValidationError("addition chains start at 1");
    MergeSequence m;
    for (std::size_t r = 1; r < chain.size(); ++r) {
        bool found = false;
        for (std::size_t j = 0; j < r && !found; ++j)
            for (std::size_t k = j; k < r && !found; ++k)
                if (chain[j] + chain[k] == chain[r]) {
                    m.push_back({std::string(chain[j], 'a'), std::string(chain[k], 'a')});
                    found = true;
                }
        if (!found)
            throw ValidationError("chain element " + std::to_string(chain[r]) + " is not a sum of earlier elements");
    }
    return m;
}

std::vector<std::uint64_t> extract_addchain(const MergeSequence& merges) {
    auto unary = [](const Token& t) {
        if (t.empty() || t.find_first_not_of('a') != std::string::npos)
            throw ValidationError("addition chains come from unary merges");
        return static_cast<std::uint64_t>(t.size());
    };
    std::vector<std::uint64_t> chain{1};
    std::set<std::uint64_t> reachable{1};
    for (const auto& m : merges) {
        auto a = unary(m.left), b = unary(m.right);
        if (!reachable.count(a) || !reachable.count(b)) continue;
        if (reachable.insert(a + b).second) chain.push_back(a + b);
    }
    return chain;
}

namespace {

struct SumKey {
    std::uint64_t s1, s2, s3;
    bool operator==(const SumKey&) const = default;
};

struct SumKeyHash {
    std::size_t operator()(const SumKey& k) const {
        std::size_t h = std::hash<std::uint64_t>{}(k.s1);
        h = h * 1000003u ^ std::hash<std::uint64_t>{}(k.s2);
        return h * 1000003u ^ std::hash<std::uint64_t>{}(k.s3);
    }
};

constexpr std::size_t kKeepPerIdentity = 5;

void keep(std::vector<SumCounterexample>& out, std::map<std::string, std::size_t>& seen, SumCounterexample c) {
    if (seen[c.identity]++ < kKeepPerIdentity) out.push_back(std::move(c));
}

}  // namespace

SumIdentityReport check_sum_identities(std::uint64_t bound, const SumIdentityOptions& options) {
    if (bound > 100000) throw ValidationError("sum identity bound above 100000 refused");
    const bool sq = !options.weakened;
    const std::uint64_t B = bound;
    SumIdentityReport report;
    report.bound = bound;
    std::map<std::string, std::size_t> seen;

    // Pairs: i + j = r with matching squares, and collisions between pairs.
    std::unordered_map<SumKey, std::pair<std::uint64_t, std::uint64_t>, SumKeyHash> pairs;
    for (std::uint64_t i = 1; i <= B; ++i)
        for (std::uint64_t j = i; j <= B; ++j) {
            ++report.checked;
            std::uint64_t r = i + j;
            if (r <= B && (!sq || i * i + j * j == r * r))
                keep(report.counterexamples, seen, {"pair-sum", {i, j, r}});
            SumKey key{i + j, sq ? i * i + j * j : 0, 0};
            auto [it, fresh] = pairs.try_emplace(key, i, j);
            if (!fresh) keep(report.counterexamples, seen, {"pair-collision", {it->second.first, it->second.second, i, j}});
        }

    // Pairs (r, p) with p possibly 0, keyed on power sums 1..3.
    std::unordered_map<SumKey, std::pair<std::uint64_t, std::uint64_t>, SumKeyHash> sums;
    for (std::uint64_t r = 0; r <= B; ++r)
        for (std::uint64_t p = 0; p <= r; ++p)
            sums.try_emplace(SumKey{r + p, sq ? r * r + p * p : 0, r * r * r + p * p * p}, r, p);

    // Triples split over i; per-i results are merged in order so the report is
    // the same serially and in parallel.
    std::vector<std::vector<SumCounterexample>> found(B);
    std::vector<std::uint64_t> counted(B, 0);
    detail::for_each_index(B, options.exec, [&](std::size_t idx) {
        const std::uint64_t i = idx + 1;
        std::map<std::string, std::size_t> local;
        for (std::uint64_t j = i; j <= B; ++j)
            for (std::uint64_t k = j; k <= B; ++k) {
                ++counted[idx];
                std::uint64_t s1 = i + j + k, s2 = i * i + j * j + k * k, s3 = i * i * i + j * j * j + k * k * k;
                if (s1 <= B && (!sq || s2 == s1 * s1)) keep(found[idx], local, {"triple-sum", {i, j, k, s1}});
                auto it = sums.find(SumKey{s1, sq ? s2 : 0, s3});
                if (it != sums.end())
                    keep(found[idx], local, {"triple-pair", {i, j, k, it->second.first, it->second.second}});
            }
    });
    for (std::size_t idx = 0; idx < B; ++idx) {
        report.checked += counted[idx];
        for (auto& c : found[idx]) keep(report.counterexamples, seen, std::move(c));
    }
    return report;
}

}  // namespace tokhard
