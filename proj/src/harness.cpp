#include "tokhard/harness.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "tokhard/encoders.hpp"
#include "tokhard/oracles.hpp"
#include "tokhard/reductions.hpp"
#include "tokhard/witnesses.hpp"

namespace tokhard {

const char* to_string(Method m) {
    switch (m) {
    case Method::full_oracle: return "full-oracle";
    case Method::restricted_oracle: return "restricted-oracle";
    case Method::compliant_enumeration: return "compliant-enumeration";
    }
    return "?";
}

namespace {

const char* yes_no(bool b) { return b ? "YES" : "NO"; }

std::string rational_str(const Rational& r) {
    std::ostringstream out;
    out << numerator(r);
    if (denominator(r) != 1) out << "/" << denominator(r);
    return out.str();
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

Assignment mask_assignment(std::uint64_t mask, std::uint32_t J) {
    Assignment s(J);
    for (std::uint32_t j = 0; j < J; ++j) s[j] = (mask >> j) & 1;
    return s;
}

std::string assignment_str(const Assignment& s) {
    std::string out;
    for (bool b : s) out += b ? 'T' : 'F';
    return out;
}

std::string describe(const Max2SatInstance& inst) {
    return "max2sat J=" + std::to_string(inst.num_vars) + " C=" + std::to_string(inst.clauses.size()) +
           " F=" + std::to_string(inst.target);
}

void check_sweep(EquivalenceReport& r, bool weaker_first) {
    // Rows run from the weakest threshold to the strongest (or the reverse);
    // once a side says NO it must stay NO.
    bool src_no = false, red_no = false;
    auto visit = [&](const ThresholdRow& row) {
        if (row.source_yes != row.reduced_yes)
            r.failures.push_back("decision disagreement at " + row.threshold + ": source " + yes_no(row.source_yes) +
                                 ", reduced " + yes_no(row.reduced_yes));
        if (src_no && row.source_yes) r.failures.push_back("source decision not monotone at " + row.threshold);
        if (red_no && row.reduced_yes) r.failures.push_back("reduced decision not monotone at " + row.threshold);
        src_no = src_no || !row.source_yes;
        red_no = red_no || !row.reduced_yes;
    };
    if (weaker_first)
        for (const auto& row : r.sweep) visit(row);
    else
        for (auto it = r.sweep.rbegin(); it != r.sweep.rend(); ++it) visit(*it);
}

void require_small(const Max2SatInstance& inst) {
    inst.validate();
    if (inst.num_vars > 20) throw ValidationError("equivalence pipelines enumerate 2^J assignments; J > 20 refused");
}

template <class Eval>
CompliantOptimum best_over_assignments(std::uint32_t J, Exec exec, Eval eval) {
    const std::uint64_t total = std::uint64_t(1) << J;
    std::vector<BigInt> values(total);
    detail::for_each_index_checked(total, exec, [&](std::size_t m) { values[m] = eval(mask_assignment(m, J)); });
    // Lowest mask wins ties.
    std::size_t arg = 0;
    for (std::size_t m = 1; m < total; ++m)
        if (values[m] < values[arg]) arg = m;
    return {values[arg], mask_assignment(arg, J)};
}

}  // namespace

std::string EquivalenceReport::render_text() const {
    std::ostringstream out;
    out << "instance:        " << instance << "\n";
    out << "reduction:       " << reduction << "\n";
    out << "source optimum:  " << source_optimum << "\n";
    out << "reduced optimum: " << reduced_optimum << "\n";
    out << "predicted:       " << predicted << "\n";
    std::vector<std::string> ms;
    for (auto m : methods) ms.push_back(to_string(m));
    out << "methods:         " << join(ms, ", ") << "\n";
    for (const auto& row : sweep)
        out << "  " << row.threshold << ": source " << yes_no(row.source_yes) << ", reduced "
            << yes_no(row.reduced_yes) << "\n";
    for (const auto& n : notes) out << "note: " << n << "\n";
    for (const auto& f : failures) out << "failure: " << f << "\n";
    out << "result: " << (passed() ? "PASS" : "FAILED") << "\n";
    return out.str();
}

std::string EquivalenceReport::render_kv() const {
    std::ostringstream out;
    out << "instance=" << instance << "\n";
    out << "reduction=" << reduction << "\n";
    out << "source_optimum=" << source_optimum << "\n";
    out << "reduced_optimum=" << reduced_optimum << "\n";
    out << "predicted=" << predicted << "\n";
    std::vector<std::string> ms;
    for (auto m : methods) ms.push_back(to_string(m));
    out << "methods=" << join(ms, ",") << "\n";
    for (const auto& row : sweep)
        out << "sweep." << row.threshold << "=" << yes_no(row.source_yes) << "/" << yes_no(row.reduced_yes) << "\n";
    for (std::size_t i = 0; i < notes.size(); ++i) out << "note." << i << "=" << notes[i] << "\n";
    for (std::size_t i = 0; i < failures.size(); ++i) out << "failure." << i << "=" << failures[i] << "\n";
    out << "result=" << (passed() ? "PASS" : "FAILED") << "\n";
    return out.str();
}

CompliantOptimum compliant_direct_optimum(const Max2SatInstance& inst, const Dataset& reduced, Exec exec) {
    require_small(inst);
    return best_over_assignments(inst.num_vars, exec, [&](const Assignment& s) {
        return direct_objective(build_direct_witness(inst, s), reduced, Exec::serial);
    });
}

CompliantOptimum compliant_bottomup_optimum(const Max2SatInstance& inst, const Dataset& reduced, Exec exec) {
    require_small(inst);
    return best_over_assignments(inst.num_vars, exec, [&](const Assignment& s) {
        return bottomup_objective(build_bottomup_witness(inst, s), reduced, Exec::serial);
    });
}

SwapProbeResult one_swap_probe(const Vocabulary& vocab, const Dataset& dataset, Exec exec) {
    auto removable = vocab.non_alphabet_tokens();
    std::vector<Token> additions;
    for (auto& c : substring_candidates(dataset))
        if (!vocab.contains(c)) additions.push_back(std::move(c));

    SwapProbeResult r;
    r.best = direct_objective(vocab, dataset, exec);
    const std::size_t total = removable.size() * additions.size();
    std::vector<BigInt> values(total);
    detail::for_each_index_checked(total, exec, [&](std::size_t i) {
        const auto& out = removable[i / additions.size()];
        const auto& in = additions[i % additions.size()];
        values[i] = direct_objective(vocab.without(out).with(in), dataset, Exec::serial);
    });
    r.evaluated = total;
    for (std::size_t i = 0; i < total; ++i)
        if (values[i] < r.best) {
            r.improved = true;
            r.best = values[i];
            r.detail = "replace " + removable[i / additions.size()] + " by " + additions[i % additions.size()];
        }
    return r;
}

SwapProbeResult one_swap_probe_merges(const MergeSequence& merges, const Dataset& dataset, Exec exec) {
    const auto& glyphs = dataset.alphabet().glyphs();
    // Tokens that exist before merge i: the alphabet plus earlier products.
    std::vector<std::pair<std::size_t, Merge>> trials;
    std::set<Token> avail;
    for (char g : glyphs) avail.insert(std::string(1, g));
    for (std::size_t i = 0; i < merges.size(); ++i) {
        for (const auto& a : avail)
            for (const auto& b : avail) {
                Merge m{a, b};
                if (m != merges[i]) trials.push_back({i, m});
            }
        avail.insert(merges[i].product());
    }

    SwapProbeResult r;
    r.best = bottomup_objective(merges, dataset, exec);
    std::vector<BigInt> values(trials.size());
    detail::for_each_index_checked(trials.size(), exec, [&](std::size_t t) {
        auto changed = merges;
        changed[trials[t].first] = trials[t].second;
        values[t] = bottomup_objective(changed, dataset, Exec::serial);
    });
    r.evaluated = trials.size();
    for (std::size_t t = 0; t < trials.size(); ++t)
        if (values[t] < r.best) {
            r.improved = true;
            r.best = values[t];
            const auto& [pos, m] = trials[t];
            r.detail = "merge " + std::to_string(pos + 1) + " -> (" + m.left + "," + m.right + ")";
        }
    return r;
}

EquivalenceReport verify_d2tok_equivalence(const Max2SatInstance& inst, const HarnessOptions& options) {
    require_small(inst);
    const std::uint32_t J = inst.num_vars;
    const std::size_t C = inst.clauses.size();
    EquivalenceReport r;
    r.instance = describe(inst);
    r.reduction = "d2tok";
    auto reduced = reduce_max2sat_to_d2tok(inst);
    auto sat = solve_max2sat_exact(inst, options.exec);
    r.source_optimum = "F*=" + std::to_string(sat.satisfied);

    // Forward direction for every assignment.
    const std::uint64_t total = std::uint64_t(1) << J;
    std::vector<std::string> bad(total);
    detail::for_each_index_checked(total, options.exec, [&](std::size_t m) {
        auto s = mask_assignment(m, J);
        auto vocab = build_direct_witness(inst, s);
        auto got = direct_objective(vocab, reduced.dataset, Exec::serial);
        auto want = d2tok_delta(J, C, inst.count_satisfied(s));
        if (vocab.kappa() != reduced.kappa)
            bad[m] = "witness for " + assignment_str(s) + " has " + std::to_string(vocab.kappa()) + " tokens";
        else if (got != want)
            bad[m] = "witness for " + assignment_str(s) + " gives " + got.str() + ", formula " + want.str();
        else if (extract_assignment(vocab, J) != s)
            bad[m] = "assignment " + assignment_str(s) + " does not round-trip through its witness";
    });
    for (auto& b : bad)
        if (!b.empty()) r.failures.push_back(std::move(b));

    auto best = compliant_direct_optimum(inst, reduced.dataset, options.exec);
    r.methods.push_back(Method::compliant_enumeration);
    auto predicted = d2tok_delta(J, C, sat.satisfied);
    r.reduced_optimum = "delta*=" + best.delta.str();
    r.predicted = "329J+3C-F*=" + predicted.str();
    if (best.delta != predicted)
        r.failures.push_back("compliant optimum " + best.delta.str() + " differs from " + predicted.str() +
                             " (best assignment " + assignment_str(best.assignment) + ")");

    if (J <= options.full_oracle_max_vars) {
        try {
            auto full = solve_direct_exact(reduced.dataset, reduced.kappa, std::nullopt, options.budget, options.exec);
            r.methods.push_back(Method::full_oracle);
            r.notes.push_back("unrestricted oracle: delta*=" + full.delta.str() + " after " +
                              std::to_string(full.nodes) + " nodes");
            if (full.delta != predicted)
                r.failures.push_back("unrestricted optimum " + full.delta.str() + " differs from " + predicted.str());
        } catch (const BudgetExhausted& e) {
            r.notes.push_back(std::string("unrestricted oracle skipped: ") + e.what());
        }
    }

    if (options.swap_probe) {
        auto probe = one_swap_probe(build_direct_witness(inst, best.assignment), reduced.dataset, options.exec);
        r.notes.push_back("1-swap probe evaluated " + std::to_string(probe.evaluated) + " vocabularies");
        if (probe.improved) r.failures.push_back("1-swap probe improves to " + probe.best.str() + ": " + probe.detail);
    }

    for (std::uint64_t F = 0; F <= C + 1; ++F)
        r.sweep.push_back({"F=" + std::to_string(F), sat.satisfied >= F, best.delta <= d2tok_delta(J, C, F)});
    check_sweep(r, true);
    return r;
}

EquivalenceReport verify_b2tok_equivalence(const Max2SatInstance& inst, const HarnessOptions& options) {
    require_small(inst);
    const std::uint32_t J = inst.num_vars;
    const std::size_t C = inst.clauses.size();
    EquivalenceReport r;
    r.instance = describe(inst);
    r.reduction = "b2tok";
    auto reduced = reduce_max2sat_to_b2tok(inst);
    auto sat = solve_max2sat_exact(inst, options.exec);
    r.source_optimum = "F*=" + std::to_string(sat.satisfied);

    // Clause strings sit after the fixed gadget entries.
    const std::size_t first_clause = reduced.dataset.size() - C;

    const std::uint64_t total = std::uint64_t(1) << J;
    std::vector<std::vector<std::string>> bad(total);
    detail::for_each_index_checked(total, options.exec, [&](std::size_t m) {
        auto s = mask_assignment(m, J);
        auto merges = build_bottomup_witness(inst, s);
        auto& out = bad[m];
        if (merges.size() != reduced.kappa)
            out.push_back("witness for " + assignment_str(s) + " has " + std::to_string(merges.size()) + " merges");
        auto got = bottomup_objective(merges, reduced.dataset, Exec::serial);
        auto want = b2tok_delta(J, C, inst.count_satisfied(s));
        if (got != want)
            out.push_back("witness for " + assignment_str(s) + " gives " + got.str() + ", formula " + want.str());
        // Per-clause rows: a satisfied clause ends as two tokens, otherwise three.
        for (std::size_t c = 0; c < C; ++c) {
            const auto& text = reduced.dataset[first_clause + c].text;
            auto n = bottomup_apply(merges, text).size();
            std::size_t expect = inst.satisfied(inst.clauses[c], s) ? 2 : 3;
            if (n != expect)
                out.push_back("clause " + std::to_string(c + 1) + " under " + assignment_str(s) + " ends in " +
                              std::to_string(n) + " tokens, expected " + std::to_string(expect));
        }
        auto vocab = ope_vocab(merges, reduced.dataset.alphabet());
        auto report = check_sat_compliance(vocab, J, Variant::bottomup);
        if (!report.compliant)
            out.push_back("merge-extracted vocabulary of " + assignment_str(s) + " is not sat-compliant");
        else if (extract_assignment(vocab, J, Variant::bottomup) != s)
            out.push_back("assignment " + assignment_str(s) + " does not round-trip through its witness");
    });
    for (auto& b : bad)
        for (auto& f : b) r.failures.push_back(std::move(f));

    auto best = compliant_bottomup_optimum(inst, reduced.dataset, options.exec);
    r.methods.push_back(Method::compliant_enumeration);
    auto predicted = b2tok_delta(J, C, sat.satisfied);
    r.reduced_optimum = "delta*=" + best.delta.str();
    r.predicted = "5398J+575+3C-F*=" + predicted.str();
    if (best.delta != predicted)
        r.failures.push_back("compliant optimum " + best.delta.str() + " differs from " + predicted.str() +
                             " (best assignment " + assignment_str(best.assignment) + ")");

    if (options.swap_probe) {
        auto probe =
            one_swap_probe_merges(build_bottomup_witness(inst, best.assignment), reduced.dataset, options.exec);
        r.notes.push_back("1-swap probe evaluated " + std::to_string(probe.evaluated) + " merge sequences");
        if (probe.improved) r.failures.push_back("1-swap probe improves to " + probe.best.str() + ": " + probe.detail);
    }

    for (std::uint64_t F = 0; F <= C + 1; ++F)
        r.sweep.push_back({"F=" + std::to_string(F), sat.satisfied >= F, best.delta <= b2tok_delta(J, C, F)});
    check_sweep(r, true);
    return r;
}

EquivalenceReport verify_d1tok_equivalence(const VcInstance& inst, const HarnessOptions& options) {
    inst.validate();
    if (inst.n > options.max_vc_vertices)
        throw ValidationError("vertex-cover pipeline capped at n = " + std::to_string(options.max_vc_vertices));
    EquivalenceReport r;
    r.instance = "vc n=" + std::to_string(inst.n) + " m=" + std::to_string(inst.edges.size()) +
                 " k=" + std::to_string(inst.k);
    r.reduction = "d1tok";
    r.methods.push_back(Method::restricted_oracle);
    r.notes.push_back("unary oracle candidates are the target lengths");
    auto cover = solve_vc_exact(inst);
    r.source_optimum = "min-cover=" + std::to_string(cover.size());

    std::vector<std::string> deltas;
    for (std::uint32_t k = 0; k <= inst.n; ++k) {
        VcInstance ik = inst;
        ik.k = k;
        auto red = reduce_vc_to_d1tok(ik);
        auto sol = solve_unary_direct_exact(red.instance.dataset, red.instance.kappa, std::nullopt, options.budget,
                                            options.exec);
        bool src = cover.size() <= k, dst = sol.delta <= red.instance.delta;
        r.sweep.push_back({"k=" + std::to_string(k), src, dst});
        deltas.push_back("k=" + std::to_string(k) + ":" + sol.delta.str() + "/" + red.instance.delta.str());
        if (src) {
            auto cert = make_unary_certificate(red.instance.dataset, build_vc_witness(ik, cover.cover));
            auto check = verify_unary_certificate(red.instance.dataset, cert, red.instance.kappa, red.instance.delta);
            if (!check.accepted)
                r.failures.push_back("cover witness rejected at k=" + std::to_string(k) + ": " +
                                     join(check.reasons, "; "));
        }
        if (dst && !src) {
            try {
                extract_cover(sol.lengths, ik);
            } catch (const ValidationError& e) {
                r.failures.push_back("k=" + std::to_string(k) + ": " + e.what());
            }
        }
    }
    r.reduced_optimum = "delta*/delta " + join(deltas, " ");
    r.predicted = "delta(k)=3n+2m+1-k";
    check_sweep(r, false);
    return r;
}

std::uint64_t minimal_ope_merges(const AddChainInstance& inst, const SearchBudget& budget, Exec exec) {
    auto red = reduce_addchain_to_uope(inst);
    for (std::uint64_t kappa = 0;; ++kappa) {
        auto sol = solve_ope_exact(red.dataset, kappa, budget, exec);
        if (sol.delta <= red.delta) return kappa;
    }
}

EquivalenceReport verify_uope_equivalence(const AddChainInstance& inst, const HarnessOptions& options) {
    inst.validate();
    if (inst.max_target() > options.max_chain_target)
        throw ValidationError("addition-chain pipeline capped at target " + std::to_string(options.max_chain_target));
    if (inst.zeta > options.max_zeta)
        throw ValidationError("addition-chain pipeline capped at zeta " + std::to_string(options.max_zeta));
    EquivalenceReport r;
    std::vector<std::string> ts;
    for (auto t : inst.targets) ts.push_back(std::to_string(t));
    r.instance = "addchain targets={" + join(ts, ",") + "} zeta=" + std::to_string(inst.zeta);
    r.reduction = "uope";
    r.methods.push_back(Method::full_oracle);

    auto chain = solve_addchain_exact(inst, options.budget);
    auto minimal = minimal_ope_merges(inst, options.budget, options.exec);
    r.source_optimum = "min-chain=" + std::to_string(chain.length());
    r.reduced_optimum = "min-merges=" + std::to_string(minimal);
    r.predicted = "min-merges=min-chain";
    if (minimal != chain.length())
        r.failures.push_back("minimal merge count " + std::to_string(minimal) + " differs from chain length " +
                             std::to_string(chain.length()));

    // The chain's witness must reach every target with one token each.
    auto red = reduce_addchain_to_uope(inst);
    auto witness = build_addchain_witness(chain.chain);
    if (ope_objective(witness, red.dataset, options.exec) != red.delta)
        r.failures.push_back("chain witness does not encode every target as one token");
    if (extract_addchain(witness) != chain.chain) r.failures.push_back("chain does not round-trip through its merges");

    for (std::uint64_t z = 0; z <= options.max_zeta; ++z) {
        auto sol = solve_ope_exact(red.dataset, z, options.budget, options.exec);
        r.sweep.push_back({"zeta=" + std::to_string(z), chain.length() <= z, sol.delta <= red.delta});
    }
    check_sweep(r, false);
    return r;
}

GreedyResult greedy_bpe_train(const Dataset& dataset, std::uint64_t kappa) {
    Dataset ds = dataset.representation() == Representation::lengths ? dataset.to_explicit(1'000'000) : dataset;
    std::vector<std::vector<Token>> seqs;
    for (const auto& e : ds.entries()) {
        std::vector<Token> t;
        for (char g : e.text) t.emplace_back(1, g);
        seqs.push_back(std::move(t));
    }
    GreedyResult out;
    for (std::uint64_t step = 0; step < kappa; ++step) {
        std::map<std::pair<Token, Token>, std::uint64_t> freq;
        for (std::size_t e = 0; e < seqs.size(); ++e)
            for (std::size_t i = 0; i + 1 < seqs[e].size(); ++i) freq[{seqs[e][i], seqs[e][i + 1]}] += ds[e].multiplicity;
        if (freq.empty()) {
            // Every string is a single token already, so any merge is a no-op.
            const Token g(1, ds.alphabet().glyph(0));
            out.merges.push_back({g, g});
            ++out.noop_padding;
            continue;
        }
        // std::map iterates pairs in lexicographic order, so the first maximum
        // is the smallest pair.
        auto best = freq.begin();
        for (auto it = freq.begin(); it != freq.end(); ++it)
            if (it->second > best->second) best = it;
        Merge m{best->first.first, best->first.second};
        out.merges.push_back(m);
        for (auto& seq : seqs) {
            std::vector<Token> next;
            for (std::size_t i = 0; i < seq.size();) {
                if (i + 1 < seq.size() && seq[i] == m.left && seq[i + 1] == m.right) {
                    next.push_back(m.product());
                    i += 2;
                } else {
                    next.push_back(std::move(seq[i++]));
                }
            }
            seq = std::move(next);
        }
    }
    return out;
}

std::string RatioReport::render_text() const {
    std::ostringstream out;
    out << "mode:         " << to_string(mode) << "\n";
    out << "raw size:     " << raw_size << "\n";
    out << "greedy:       " << achieved << "\n";
    out << "optimum:      " << (optimal ? optimal->str() : std::string("unknown (budget exhausted)")) << " ["
        << optimum_source << "]\n";
    if (length_ratio) out << "length ratio: " << rational_str(*length_ratio) << "\n";
    if (reduce_ratio) out << "reduce ratio: " << rational_str(*reduce_ratio) << "\n";
    if (noop_padding) out << "no-op merges: " << noop_padding << "\n";
    if (lower_bound_only()) out << "lower bound only\n";
    return out.str();
}

std::string RatioReport::render_kv() const {
    std::ostringstream out;
    out << "mode=" << to_string(mode) << "\n";
    out << "raw_size=" << raw_size << "\n";
    out << "achieved=" << achieved << "\n";
    out << "optimal=" << (optimal ? optimal->str() : std::string("unknown")) << "\n";
    out << "optimum_source=" << optimum_source << "\n";
    if (length_ratio) out << "length_ratio=" << rational_str(*length_ratio) << "\n";
    if (reduce_ratio) out << "reduce_ratio=" << rational_str(*reduce_ratio) << "\n";
    out << "noop_padding=" << noop_padding << "\n";
    out << "lower_bound_only=" << (lower_bound_only() ? 1 : 0) << "\n";
    return out.str();
}

RatioReport bench_ratio(const Dataset& dataset, std::uint64_t kappa, Mode mode,
                        const std::optional<BigInt>& known_optimum, const SearchBudget& budget) {
    RatioReport r;
    r.mode = mode;
    r.raw_size = dataset.raw_size();
    auto greedy = greedy_bpe_train(dataset, kappa);
    r.noop_padding = greedy.noop_padding;
    const bool lengths = dataset.representation() == Representation::lengths;
    const Dataset& work = dataset;
    Dataset expl = lengths ? dataset.to_explicit(1'000'000) : dataset;

    switch (mode) {
    case Mode::direct: {
        auto vocab = ope_vocab(greedy.merges, expl.alphabet());
        r.achieved = direct_objective(vocab, expl);
        break;
    }
    case Mode::bottomup: r.achieved = bottomup_objective(greedy.merges, expl); break;
    case Mode::ope: r.achieved = ope_objective(greedy.merges, expl); break;
    }

    if (known_optimum) {
        r.optimal = *known_optimum;
        r.optimum_source = "supplied";
    } else {
        try {
            switch (mode) {
            case Mode::direct:
                if (lengths) {
                    // Every length up to the longest entry is a candidate when
                    // that is small; otherwise only the entry lengths are.
                    BigInt top = 0;
                    for (const auto& e : work.entries()) top = std::max(top, e.length);
                    std::optional<std::vector<BigInt>> cands;
                    if (top <= 4096) {
                        cands.emplace();
                        for (BigInt l = 2; l <= top; ++l) cands->push_back(l);
                    }
                    r.optimal = solve_unary_direct_exact(work, kappa, cands, budget).delta;
                    if (!cands) r.optimum_source = "restricted-oracle";
                } else {
                    r.optimal = solve_direct_exact(work, kappa, std::nullopt, budget).delta;
                }
                break;
            case Mode::bottomup: r.optimal = solve_bottomup_exact(expl, kappa, budget).delta; break;
            case Mode::ope: r.optimal = solve_ope_exact(work, kappa, budget).delta; break;
            }
            if (r.optimum_source.empty()) r.optimum_source = "oracle";
        } catch (const BudgetExhausted&) {
            r.optimum_source = "none";
        }
    }
    if (r.optimal) {
        r.length_ratio = approximation_ratio(r.achieved, *r.optimal, Objective::length);
        BigInt got = r.raw_size - r.achieved, best = r.raw_size - *r.optimal;
        if (got == 0 && best == 0)
            r.reduce_ratio = Rational(1);
        else if (got > 0)
            r.reduce_ratio = approximation_ratio(got, best, Objective::reduce);
    }
    return r;
}

Max2SatInstance random_3occ_instance(std::uint32_t J, std::mt19937_64& rng) {
    if (J == 0 || J % 2 != 0) throw ValidationError("3-occurrence instances need an even, positive J");
    std::vector<std::uint32_t> slots;
    for (std::uint32_t j = 1; j <= J; ++j) slots.insert(slots.end(), {j, j, j});
    while (true) {
        // Fisher-Yates with explicit draws so the sequence does not depend on
        // the standard library's shuffle.
        for (std::size_t i = slots.size() - 1; i > 0; --i) std::swap(slots[i], slots[rng() % (i + 1)]);
        bool ok = true;
        for (std::size_t i = 0; i < slots.size() && ok; i += 2) ok = slots[i] != slots[i + 1];
        if (!ok) continue;
        Max2SatInstance inst;
        inst.num_vars = J;
        for (std::size_t i = 0; i < slots.size(); i += 2) {
            int a = static_cast<int>(slots[i]), b = static_cast<int>(slots[i + 1]);
            inst.clauses.push_back({(rng() & 1) ? a : -a, (rng() & 1) ? b : -b});
        }
        return inst;
    }
}

std::vector<ClauseRow> replay_clause_shapes() {
    // Any valid J = 2 instance: the witness merges depend only on J and s.
    Max2SatInstance inst{2, {{1, 2}, {-1, 2}, {1, -2}}, 0};
    const auto g1 = variable_gadget(1), g2 = variable_gadget(2);
    const std::vector<std::pair<char, CharString>> shapes{
        {'A', "1" + g1.yes + "1" + g2.no + "1"},
        {'B', "1" + g2.yes + "1" + g1.no + "1"},
        {'C', "11" + g1.no + "1" + g2.no + "1"},
        {'D', "1" + g1.yes + "1" + g2.yes + "11"},
    };
    const std::map<char, Clause> clause{{'A', {1, -2}}, {'B', {-1, 2}}, {'C', {-1, -2}}, {'D', {1, 2}}};
    std::vector<ClauseRow> rows;
    for (const auto& [shape, text] : shapes)
        for (int v = 0; v < 4; ++v) {
            Assignment s{(v & 1) != 0, (v & 2) != 0};
            ClauseRow row;
            row.shape = shape;
            row.s1 = s[0];
            row.s2 = s[1];
            row.clause = text;
            row.tokens = bottomup_apply(build_bottomup_witness(inst, s), text);
            row.expected = inst.satisfied(clause.at(shape), s) ? 2 : 3;
            rows.push_back(std::move(row));
        }
    return rows;
}

}  // namespace tokhard
