#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "tokhard/encoders.hpp"
#include "tokhard/formats.hpp"
#include "tokhard/harness.hpp"
#include "tokhard/oracles.hpp"
#include "tokhard/reductions.hpp"
#include "tokhard/witnesses.hpp"

using namespace tokhard;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFail = 2, kBudget = 3 };

struct Globals {
    std::uint64_t budget_nodes = SearchBudget{}.max_nodes;
    double budget_seconds = SearchBudget{}.time_limit_seconds;
    std::string report = "text";
    std::uint64_t seed = 1;
    std::string output;

    SearchBudget budget() const {
        SearchBudget b;
        b.max_nodes = budget_nodes;
        b.time_limit_seconds = budget_seconds;
        b.validate();
        return b;
    }
};

// Ordered key/value output, rendered as aligned text or key=value lines.
class Report {
public:
    explicit Report(bool kv) : kv_(kv) {}
    template <class T>
    Report& add(const std::string& key, const T& value) {
        std::ostringstream ss;
        ss << value;
        rows_.emplace_back(key, ss.str());
        return *this;
    }
    std::string str() const {
        std::ostringstream out;
        for (const auto& [k, v] : rows_) {
            if (kv_)
                out << k << "=" << v << "\n";
            else
                out << k << ":" << std::string(k.size() < 16 ? 16 - k.size() : 1, ' ') << v << "\n";
        }
        return out.str();
    }

private:
    bool kv_;
    std::vector<std::pair<std::string, std::string>> rows_;
};

SourceFile load(const std::string& path) {
    std::istringstream in(read_file(path));
    return parse_any(in);
}

void emit(const Globals& g, const std::string& text) {
    if (g.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw Error("cannot write " + g.output);
    out << text;
}

std::string ratstr(const Rational& r) {
    std::ostringstream out;
    out << numerator(r);
    if (denominator(r) != 1) out << "/" << denominator(r);
    return out.str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    auto dot = s.find('.');
    auto digits = [&](const std::string& t) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("bad rational '" + s + "'");
        return BigInt(t);
    };
    if (slash != std::string::npos) {
        BigInt den = digits(s.substr(slash + 1));
        if (den == 0) throw ValidationError("zero denominator in '" + s + "'");
        return Rational(digits(s.substr(0, slash)), den);
    }
    if (dot != std::string::npos) {
        std::string frac = s.substr(dot + 1);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        return Rational(digits(s.substr(0, dot).empty() ? "0" : s.substr(0, dot)) * scale + digits(frac), scale);
    }
    return Rational(digits(s));
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw ValidationError("bad list item '" + item + "'");
        out.push_back(std::stoull(item));
    }
    return out;
}

Assignment parse_assignment(const std::string& s, std::uint32_t J) {
    if (s.size() != J) throw ValidationError("assignment needs " + std::to_string(J) + " letters (T/F)");
    Assignment a;
    for (char c : s) {
        if (c != 'T' && c != 'F' && c != '1' && c != '0') throw ValidationError("assignment letters are T/F or 1/0");
        a.push_back(c == 'T' || c == '1');
    }
    return a;
}

std::string assignment_str(const Assignment& s) {
    std::string out;
    for (bool b : s) out += b ? 'T' : 'F';
    return out;
}

template <class T>
const T& expect(const SourceFile& f, const char* what) {
    if (auto p = std::get_if<T>(&f)) return *p;
    throw ValidationError(std::string("expected ") + what + " input");
}

// ---- subcommands ----

int cmd_reduce(const Globals& g, const std::string& path, const std::string& to) {
    auto src = load(path);
    if (to == "d2tok") {
        emit(g, render(reduce_max2sat_to_d2tok(expect<Max2SatInstance>(src, "a .m2s"))));
    } else if (to == "b2tok") {
        emit(g, render(reduce_max2sat_to_b2tok(expect<Max2SatInstance>(src, "a .m2s"))));
    } else if (to == "d1tok") {
        emit(g, render(reduce_vc_to_d1tok(expect<VcInstance>(src, "a .vc")).instance));
    } else if (to == "uope") {
        emit(g, render(reduce_addchain_to_uope(expect<AddChainInstance>(src, "an .ac"))));
    } else {
        throw ValidationError("unknown reduction '" + to + "'");
    }
    return kOk;
}

int cmd_encode(const Globals& g, const std::string& path, const std::string& witness_path) {
    auto tok = expect<TokFile>(load(path), "a .tok");
    std::istringstream win(read_file(witness_path));
    auto w = parse_witness(win);
    const auto& inst = tok.instance;
    const auto& ds = inst.dataset;
    Report r(g.report == "kv");
    std::vector<BigInt> counts;
    std::size_t size = 0;
    if (inst.mode == Mode::direct) {
        if (w.has_merges()) throw ValidationError("direct instances take a vocabulary witness (v lines)");
        if (ds.representation() == Representation::lengths) {
            std::vector<BigInt> lengths;
            for (const auto& v : w.vocab) lengths.emplace_back(v);
            counts = unary_counts(lengths, ds);
            size = std::count_if(lengths.begin(), lengths.end(), [](const BigInt& l) { return l != 1; });
        } else {
            Vocabulary vocab(ds.alphabet(), w.vocab);
            counts = direct_counts(vocab, ds);
            size = vocab.kappa();
        }
    } else {
        if (w.has_vocab()) throw ValidationError("merge-based instances take a merge witness (m lines)");
        Dataset expl = ds.representation() == Representation::lengths ? ds.to_explicit(1'000'000) : ds;
        size = w.merges.size();
        if (inst.mode == Mode::bottomup) {
            counts = bottomup_counts(w.merges, expl);
        } else {
            auto vocab = ope_vocab(w.merges, expl.alphabet());
            counts = direct_counts(vocab, expl);
        }
    }
    auto total = objective_length(counts, ds);
    r.add("mode", to_string(inst.mode)).add("tokens", size).add("kappa", inst.kappa);
    r.add("objective", total).add("reduce", objective_reduce(counts, ds)).add("delta", inst.delta);
    bool yes = total <= inst.delta && size <= inst.kappa;
    r.add("decision", yes ? "YES" : "NO");
    std::cout << r.str();
    return kOk;
}

void write_witness(const std::string& path, const WitnessFile& w) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << render(w);
}

int cmd_solve(const Globals& g, const std::string& path, const std::string& witness_out) {
    auto src = load(path);
    Report r(g.report == "kv");
    auto budget = g.budget();
    if (auto m = std::get_if<Max2SatInstance>(&src)) {
        auto sol = solve_max2sat_exact(*m);
        r.add("problem", "max2sat").add("optimum", sol.satisfied).add("assignment", assignment_str(sol.assignment));
        r.add("threshold", m->target).add("decision", sol.satisfied >= m->target ? "YES" : "NO");
    } else if (auto v = std::get_if<VcInstance>(&src)) {
        auto sol = solve_vc_exact(*v);
        std::string cover;
        for (auto x : sol.cover) cover += (cover.empty() ? "" : ",") + std::to_string(x);
        r.add("problem", "vc").add("optimum", sol.size()).add("cover", cover.empty() ? "-" : cover);
        r.add("threshold", v->k).add("decision", sol.size() <= v->k ? "YES" : "NO");
    } else if (auto a = std::get_if<AddChainInstance>(&src)) {
        auto sol = solve_addchain_exact(*a, budget);
        std::string chain;
        for (auto x : sol.chain) chain += (chain.empty() ? "" : ",") + std::to_string(x);
        r.add("problem", "addchain").add("optimum", sol.length()).add("chain", chain);
        r.add("threshold", a->zeta).add("decision", sol.length() <= a->zeta ? "YES" : "NO");
    } else {
        const auto& tok = std::get<TokFile>(src);
        const auto& inst = tok.instance;
        const auto& ds = inst.dataset;
        BigInt delta;
        std::uint64_t nodes = 0;
        WitnessFile w;
        const char* method = "full-oracle";
        if (inst.mode == Mode::direct && ds.representation() == Representation::lengths) {
            auto sol = solve_unary_direct_exact(ds, inst.kappa, std::nullopt, budget);
            delta = sol.delta;
            nodes = sol.nodes;
            method = "restricted-oracle (candidates = entry lengths)";
            for (const auto& l : sol.lengths) w.vocab.push_back(l.str());
        } else if (inst.mode == Mode::direct) {
            auto sol = solve_direct_exact(ds, inst.kappa, std::nullopt, budget);
            delta = sol.delta;
            nodes = sol.nodes;
            w.vocab = sol.vocabulary.non_alphabet_tokens();
        } else if (inst.mode == Mode::bottomup) {
            auto expl = ds.representation() == Representation::lengths ? ds.to_explicit(1'000'000) : ds;
            auto sol = solve_bottomup_exact(expl, inst.kappa, budget);
            delta = sol.delta;
            nodes = sol.nodes;
            w.merges = sol.merges;
        } else {
            auto sol = solve_ope_exact(ds, inst.kappa, budget);
            delta = sol.delta;
            nodes = sol.nodes;
            w.merges = sol.merges;
        }
        r.add("problem", std::string("tok/") + to_string(inst.mode)).add("method", method);
        r.add("optimum", delta).add("nodes", nodes).add("threshold", inst.delta);
        r.add("decision", delta <= inst.delta ? "YES" : "NO");
        if (tok.gap) {
            const char* side = delta <= tok.gap->delta_plus    ? "YES (<= delta_plus)"
                               : delta >= tok.gap->delta_minus ? "NO (>= delta_minus)"
                                                               : "inside the gap";
            r.add("gap", side);
        }
        write_witness(witness_out, w);
    }
    std::cout << r.str();
    return kOk;
}

int cmd_witness(const Globals& g, const std::string& path, const std::string& assignment, const std::string& cover,
                const std::string& chain, const std::string& to) {
    auto src = load(path);
    WitnessFile w;
    if (auto m = std::get_if<Max2SatInstance>(&src)) {
        if (assignment.empty()) throw ValidationError("--assignment is required for .m2s input");
        auto s = parse_assignment(assignment, m->num_vars);
        if (to == "b2tok")
            w.merges = build_bottomup_witness(*m, s);
        else if (to == "d2tok")
            w.vocab = build_direct_witness(*m, s).non_alphabet_tokens();
        else
            throw ValidationError("--to must be d2tok or b2tok");
    } else if (auto v = std::get_if<VcInstance>(&src)) {
        if (cover.empty()) throw ValidationError("--cover is required for .vc input");
        std::vector<std::uint32_t> c;
        for (auto x : parse_list(cover)) c.push_back(static_cast<std::uint32_t>(x));
        for (const auto& l : build_vc_witness(*v, c)) w.vocab.push_back(l.str());
    } else if (std::get_if<AddChainInstance>(&src)) {
        if (chain.empty()) throw ValidationError("--chain is required for .ac input");
        w.merges = build_addchain_witness(parse_list(chain));
    } else {
        throw ValidationError("witness takes a source instance (.m2s, .vc or .ac)");
    }
    emit(g, render(w));
    return kOk;
}

int cmd_verify(const Globals& g, const std::string& path, const std::string& to, bool no_probe) {
    auto src = load(path);
    HarnessOptions opts;
    opts.budget = g.budget();
    opts.swap_probe = !no_probe;
    std::vector<EquivalenceReport> reports;
    if (auto m = std::get_if<Max2SatInstance>(&src)) {
        if (to != "b2tok") reports.push_back(verify_d2tok_equivalence(*m, opts));
        if (to != "d2tok") reports.push_back(verify_b2tok_equivalence(*m, opts));
    } else if (auto v = std::get_if<VcInstance>(&src)) {
        reports.push_back(verify_d1tok_equivalence(*v, opts));
    } else if (auto a = std::get_if<AddChainInstance>(&src)) {
        reports.push_back(verify_uope_equivalence(*a, opts));
    } else {
        throw ValidationError("verify takes a source instance (.m2s, .vc or .ac)");
    }
    bool ok = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) std::cout << "\n";
        std::cout << (g.report == "kv" ? reports[i].render_kv() : reports[i].render_text());
        ok = ok && reports[i].passed();
    }
    return ok ? kOk : kFail;
}

int cmd_gap(const Globals& g, const std::string& path, const std::string& eps_text, const std::string& to) {
    auto inst = expect<Max2SatInstance>(load(path), "a .m2s");
    auto eps = parse_rational(eps_text);
    if (eps < 0 || eps > Rational(1, 2)) throw ValidationError("epsilon must lie in [0, 1/2]");
    Report r(g.report == "kv");
    const bool bu = to == "b2tok";
    if (!bu && to != "d2tok") throw ValidationError("--to must be d2tok or b2tok");
    auto bound = bu ? gap_ratio_bound_b2tok(eps) : gap_ratio_bound_d2tok(eps);
    r.add("reduction", to).add("epsilon", ratstr(eps)).add("ratio_bound", ratstr(bound));
    const std::size_t C = inst.clauses.size();
    if (C == 0 || C % 2016 != 0) {
        r.add("instance", "not emitted: C = " + std::to_string(C) + " is not a positive multiple of 2016");
        std::cout << r.str();
        return kOk;
    }
    auto gap = bu ? make_gap_b2tok(inst, C / 2016, eps) : make_gap_d2tok(inst, C / 2016, eps);
    r.add("n", C / 2016).add("delta_minus", ratstr(gap.delta_minus)).add("delta_plus", ratstr(gap.delta_plus));
    r.add("instance_ratio", ratstr(gap.instance_ratio));
    if (denominator(gap.delta_minus) == 1 && denominator(gap.delta_plus) == 1) {
        auto text = render(gap.emit());
        if (g.output.empty()) {
            r.add("instance", "use -o to write the gap instance");
        } else {
            emit(g, text);
            r.add("instance", g.output);
        }
    } else {
        r.add("instance", "not emitted: thresholds are not integers at this epsilon");
    }
    std::cout << r.str();
    return kOk;
}

int cmd_bench(const Globals& g, const std::string& path, const std::string& optimum) {
    auto tok = expect<TokFile>(load(path), "a .tok");
    std::optional<BigInt> known;
    if (!optimum.empty()) known = BigInt(optimum);
    auto rep = bench_ratio(tok.instance.dataset, tok.instance.kappa, tok.instance.mode, known, g.budget());
    std::cout << (g.report == "kv" ? rep.render_kv() : rep.render_text());
    return kOk;
}

int cmd_gen(const Globals& g, std::uint32_t J) {
    std::mt19937_64 rng(g.seed);
    auto inst = random_3occ_instance(J, rng);
    inst.target = solve_max2sat_exact(inst).satisfied;
    emit(g, render(inst));
    return kOk;
}

int cmd_selftest(const Globals& g, std::uint64_t bound) {
    Report r(g.report == "kv");
    bool ok = true;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        r.add(name, std::string(pass ? "PASS" : "FAIL") + (detail.empty() ? "" : "  " + detail));
        ok = ok && pass;
    };

    std::size_t good = 0;
    auto rows = replay_clause_shapes();
    for (const auto& row : rows) good += row.ok();
    check("clause-shapes", good == rows.size(), std::to_string(good) + "/" + std::to_string(rows.size()) + " rows");

    bool constants = d2tok::c1 == 2 * (d2tok::c2 + 3) + 1 && d2tok::c0 == 2 * (d2tok::c1 + d2tok::c2 + 3) + 1 &&
                     b2tok::c2 == 2 * (2 * b2tok::c3 + 3) + 1 &&
                     b2tok::c1 == 2 * (2 * b2tok::c2 + 2 * b2tok::c3 + 3) + 1 &&
                     b2tok::c0 == 2 * (2 * b2tok::c1 + 2 * b2tok::c2 + 2 * b2tok::c3 + 3) + 1;
    constants = constants && gap_ratio_bound_d2tok(0) == Rational(446213, 446212) &&
                gap_ratio_bound_b2tok(0) == Rational(7258949, 7258948);
    check("constants", constants, "multiplicities and gap ratios");

    bool runs = true;
    for (std::uint32_t J = 1; J <= 16 && runs; ++J) {
        auto m = build_zero_run_merges(J);
        runs = m.size() == 2 * J - 1;
        for (std::uint32_t j = 1; j <= 2 * J && runs; ++j) runs = bottomup_apply(m, std::string(j, '0')).size() == 1;
    }
    check("zero-runs", runs, "J = 1..16");

    Max2SatInstance sample{2, {{1, 2}, {-1, 2}, {1, -2}}, 3};
    HarnessOptions opts;
    opts.budget = g.budget();
    check("d2tok", verify_d2tok_equivalence(sample, opts).passed(), "J=2 sample");
    check("b2tok", verify_b2tok_equivalence(sample, opts).passed(), "J=2 sample");
    check("d1tok", verify_d1tok_equivalence({3, {{1, 2}, {2, 3}, {1, 3}}, 2}, opts).passed(), "triangle");
    check("uope", verify_uope_equivalence({{15}, 5}, opts).passed(), "targets {15}");

    auto sums = check_sum_identities(bound);
    check("sum-identities", sums.empty(), "bound " + std::to_string(bound));
    auto weak = check_sum_identities(std::min<std::uint64_t>(bound, 20), {true});
    check("sweeper-sensitivity", !weak.empty(), "weakened identities yield counterexamples");

    std::cout << r.str();
    return ok ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tokenisation hardness toolkit: reductions, exact oracles and witnesses"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    if (const char* env = std::getenv("TOKHARD_BUDGET_SECONDS")) {
        try {
            g.budget_seconds = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "error: TOKHARD_BUDGET_SECONDS is not a number\n";
            return kUsage;
        }
    }
    app.add_option("--budget-nodes", g.budget_nodes, "Search node budget");
    app.add_option("--budget-seconds", g.budget_seconds, "Search time budget (also TOKHARD_BUDGET_SECONDS)");
    app.add_option("--report", g.report, "Report format")->check(CLI::IsMember({"text", "kv"}));
    app.add_option("--seed", g.seed, "Seed for randomised commands");
    app.add_option("-o,--output", g.output, "Write the main output to a file");

    std::string path, to, witness, assignment, cover, chain, epsilon = "0", optimum, witness_out;
    bool no_probe = false;
    std::uint32_t vars = 2;
    std::uint64_t bound = 100;

    auto* reduce = app.add_subcommand("reduce", "Reduce a source instance to a tokenisation instance");
    reduce->add_option("source", path)->required();
    reduce->add_option("--to", to)->required()->check(CLI::IsMember({"d2tok", "b2tok", "d1tok", "uope"}));

    auto* encode = app.add_subcommand("encode", "Evaluate a witness on a .tok instance");
    encode->add_option("tok", path)->required();
    encode->add_option("--witness", witness)->required();

    auto* solve = app.add_subcommand("solve", "Solve any instance exactly");
    solve->add_option("file", path)->required();
    solve->add_option("--witness-out", witness_out, "Write the optimal tokeniser as a witness file");

    auto* wit = app.add_subcommand("witness", "Build the forward witness of a source instance");
    wit->add_option("source", path)->required();
    wit->add_option("--assignment", assignment, "T/F per variable (.m2s)");
    wit->add_option("--cover", cover, "Comma-separated vertices (.vc)");
    wit->add_option("--chain", chain, "Comma-separated addition chain starting at 1 (.ac)");
    wit->add_option("--to", to, "d2tok or b2tok for .m2s input")->default_val("d2tok");

    auto* verify = app.add_subcommand("verify", "Run the equivalence pipeline on a source instance");
    verify->add_option("source", path)->required();
    verify->add_option("--to", to, "d2tok, b2tok or both for .m2s input")
        ->default_val("both")
        ->check(CLI::IsMember({"d2tok", "b2tok", "both"}));
    verify->add_flag("--no-probe", no_probe, "Skip the 1-swap local probe");

    auto* gap = app.add_subcommand("gap", "Gap construction and its inapproximability ratio");
    gap->add_option("source", path)->required();
    gap->add_option("--epsilon", epsilon, "Rational in [0, 1/2], e.g. 0, 1/1000, 0.001");
    gap->add_option("--to", to, "d2tok or b2tok")->default_val("d2tok");

    auto* bench = app.add_subcommand("bench", "Greedy BPE against the exact optimum");
    bench->add_option("tok", path)->required();
    bench->add_flag("--greedy", "Greedy BPE baseline (the only one available)");
    bench->add_option("--optimum", optimum, "Known optimum; skips the oracle");

    auto* gen = app.add_subcommand("gen", "Random 3-occurrence MAX2SAT instance (F set to the optimum)");
    gen->add_option("--vars", vars, "Number of variables (even)");

    auto* selftest = app.add_subcommand("selftest", "Clause-shape replay, constants, pipelines and sum identities");
    selftest->add_option("--bound", bound, "Bound for the sum-identity sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*reduce) return cmd_reduce(g, path, to);
        if (*encode) return cmd_encode(g, path, witness);
        if (*solve) return cmd_solve(g, path, witness_out);
        if (*wit) return cmd_witness(g, path, assignment, cover, chain, to);
        if (*verify) return cmd_verify(g, path, to, no_probe);
        if (*gap) return cmd_gap(g, path, epsilon, to);
        if (*bench) return cmd_bench(g, path, optimum);
        if (*gen) return cmd_gen(g, vars);
        if (*selftest) return cmd_selftest(g, bound);
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
