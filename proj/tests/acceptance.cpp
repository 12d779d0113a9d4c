// Acceptance run: one PASS/FAIL line per criterion, each under its time limit.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracle_support.hpp"
#include "tokhard/encoders.hpp"
#include "tokhard/harness.hpp"
#include "tokhard/oracles.hpp"
#include "tokhard/reductions.hpp"
#include "tokhard/witnesses.hpp"

using namespace tokhard;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void fail(const std::string& why) {
        if (ok) detail << "first failure: " << why << "; ";
        ok = false;
    }
};

std::string render_assignment(const Assignment& s) {
    std::string out;
    for (bool b : s) out += b ? 'T' : 'F';
    return out;
}

std::vector<Assignment> all_assignments(std::uint32_t J) {
    std::vector<Assignment> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << J); ++mask) {
        Assignment s(J);
        for (std::uint32_t j = 0; j < J; ++j) s[j] = (mask >> j) & 1;
        out.push_back(s);
    }
    return out;
}

std::vector<std::pair<int, int>> plain(const Max2SatInstance& inst) {
    std::vector<std::pair<int, int>> out;
    for (const auto& c : inst.clauses) out.push_back({c.lit1, c.lit2});
    return out;
}

std::vector<Max2SatInstance> twenty_j2_instances() {
    std::mt19937_64 rng(2024);
    std::vector<Max2SatInstance> out;
    for (int i = 0; i < 20; ++i) out.push_back(random_3occ_instance(2, rng));
    return out;
}

// Every simple graph on 1..4 vertices with at most 4 edges.
std::vector<VcInstance> small_graphs() {
    std::vector<VcInstance> out;
    for (std::uint32_t n = 1; n <= 4; ++n) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> all;
        for (std::uint32_t u = 1; u <= n; ++u)
            for (std::uint32_t v = u + 1; v <= n; ++v) all.push_back({u, v});
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << all.size()); ++mask) {
            if (__builtin_popcountll(mask) > 4) continue;
            VcInstance g;
            g.n = n;
            for (std::size_t e = 0; e < all.size(); ++e)
                if ((mask >> e) & 1) g.edges.push_back(all[e]);
            out.push_back(g);
        }
    }
    return out;
}

std::set<std::string> as_set(const Vocabulary& v) { return {v.tokens().begin(), v.tokens().end()}; }

std::vector<brute::Pair> plain(const MergeSequence& m) {
    std::vector<brute::Pair> out;
    for (const auto& x : m) out.push_back({x.left, x.right});
    return out;
}

void c1(Outcome& o) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Token> extra;
        for (int t = 0, n = rng() % 7; t < n; ++t) {
            std::string s;
            for (int k = 0, len = 2 + rng() % 5; k < len; ++k) s += char('0' + rng() % 2);
            extra.push_back(s);
        }
        Vocabulary v(Alphabet::binary(), std::span<const Token>(extra));
        std::string c;
        for (int k = 0, len = 1 + rng() % 12; k < len; ++k) c += char('0' + rng() % 2);
        auto got = direct_encode(v, c).size();
        auto want = brute::min_segmentation(as_set(v), c);
        if (got != want) o.fail("string " + c + ": " + std::to_string(got) + " vs " + std::to_string(want));
    }
    o.detail << "200 strings";
}

void c2(Outcome& o) {
    auto rows = replay_clause_shapes();
    if (rows.size() != 16) o.fail("row count " + std::to_string(rows.size()));
    Max2SatInstance host{2, {{1, 2}, {-1, 2}, {1, -2}}, 0};
    std::size_t good = 0;
    for (const auto& r : rows) {
        bool lit1 = (r.shape == 'A' || r.shape == 'D') ? r.s1 : !r.s1;
        bool lit2 = (r.shape == 'B' || r.shape == 'D') ? r.s2 : !r.s2;
        std::size_t printed = (lit1 || lit2) ? 2 : 3;
        auto replay = brute::apply_merges(plain(build_bottomup_witness(host, {r.s1, r.s2})), r.clause);
        if (r.tokens.size() != printed || replay.size() != printed)
            o.fail(std::string(1, r.shape) + (r.s1 ? "T" : "F") + (r.s2 ? "T" : "F"));
        else
            ++good;
    }
    o.detail << good << "/16 rows";
}

void c3(Outcome& o) {
    for (const auto& inst : twenty_j2_instances()) {
        auto red = reduce_max2sat_to_d2tok(inst);
        for (const auto& s : all_assignments(2)) {
            auto got = direct_objective(build_direct_witness(inst, s), red.dataset);
            auto want = BigInt(329 * 2 + 3 * 3) - inst.count_satisfied(s);
            if (got != want) o.fail(render_assignment(s) + " gives " + got.str() + " vs " + want.str());
        }
    }
    o.detail << "20 instances x 4 assignments";
}

void c4(Outcome& o) {
    for (const auto& inst : twenty_j2_instances()) {
        auto red = reduce_max2sat_to_b2tok(inst);
        for (const auto& s : all_assignments(2)) {
            auto m = build_bottomup_witness(inst, s);
            auto got = bottomup_objective(m, red.dataset);
            BigInt replay = 0;
            for (const auto& e : red.dataset.entries())
                replay += brute::apply_merges(plain(m), e.text).size() * e.multiplicity;
            auto want = BigInt(5398 * 2 + 575 + 3 * 3) - inst.count_satisfied(s);
            if (got != want || replay != want)
                o.fail(render_assignment(s) + " gives " + got.str() + " vs " + want.str());
        }
    }
    o.detail << "20 instances x 4 assignments";
}

void c5(Outcome& o) {
    std::size_t full = 0;
    for (const auto& inst : twenty_j2_instances()) {
        auto fstar = brute::max2sat(2, plain(inst));
        auto d = reduce_max2sat_to_d2tok(inst);
        auto cd = compliant_direct_optimum(inst, d.dataset);
        if (cd.delta != BigInt(329 * 2 + 9) - fstar) o.fail("direct compliant optimum " + cd.delta.str());
        if (one_swap_probe(build_direct_witness(inst, cd.assignment), d.dataset).improved)
            o.fail("direct swap improved");
        // the unrestricted direct oracle happens to be cheap at J = 2
        auto exact = solve_direct_exact(d.dataset, d.kappa);
        if (exact.delta != cd.delta) o.fail("full direct oracle " + exact.delta.str());
        ++full;

        auto b = reduce_max2sat_to_b2tok(inst);
        auto cb = compliant_bottomup_optimum(inst, b.dataset);
        if (cb.delta != BigInt(5398 * 2 + 575 + 9) - fstar) o.fail("bottom-up compliant optimum " + cb.delta.str());
        if (one_swap_probe_merges(build_bottomup_witness(inst, cb.assignment), b.dataset).improved)
            o.fail("bottom-up swap improved");
    }
    o.detail << "20 instances; full direct oracle agreed on " << full;
}

void c6(Outcome& o) {
    std::size_t checked = 0;
    for (auto g : small_graphs()) {
        auto mc = solve_vc_exact(g).size();
        if (mc != brute::min_cover(g.n, g.edges)) o.fail("vertex cover oracle");
        for (std::uint32_t k = 0; k <= g.n; ++k) {
            g.k = k;
            auto red = reduce_vc_to_d1tok(g);
            if (red.instance.delta != BigInt(3 * g.n + 2 * g.edges.size() + 1) - k) o.fail("delta formula");
            auto sol = solve_unary_direct_exact(red.instance.dataset, red.instance.kappa);
            bool src = mc <= k, dst = sol.delta <= red.instance.delta;
            if (src != dst) o.fail("n=" + std::to_string(g.n) + " m=" + std::to_string(g.edges.size()) + " k=" + std::to_string(k));
            ++checked;
        }
    }
    o.detail << checked << " (graph, k) pairs";
}

void c7(Outcome& o) {
    std::vector<std::vector<std::uint64_t>> sets;
    for (std::uint64_t a = 1; a <= 24; ++a) {
        sets.push_back({a});
        for (std::uint64_t b = a + 1; b <= 24; ++b) sets.push_back({a, b});
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        std::set<std::uint64_t> s;
        while (s.size() < 3) s.insert(1 + rng() % 24);
        sets.push_back({s.begin(), s.end()});
    }
    for (const auto& t : sets) {
        AddChainInstance inst{t, 0};
        auto got = minimal_ope_merges(inst);
        auto want = brute::chain_length(t);
        if (got != want) o.fail("targets ending " + std::to_string(t.back()) + ": " + std::to_string(got) + " vs " + std::to_string(want));
    }
    o.detail << sets.size() << " target sets";
}

void c8(Outcome& o) {
    for (std::uint32_t J = 1; J <= 64; ++J) {
        auto m = build_zero_run_merges(J);
        if (m.size() != 2 * J - 1) o.fail("J=" + std::to_string(J) + " size");
        for (std::uint32_t j = 1; j <= 2 * J; ++j)
            if (brute::apply_merges(plain(m), std::string(j, '0')).size() != 1)
                o.fail("J=" + std::to_string(J) + " run " + std::to_string(j));
    }
    for (std::uint32_t J = 1; J <= 3; ++J) {
        std::vector<std::pair<CharString, std::uint64_t>> es;
        brute::Strings bs;
        for (std::uint32_t j = 1; j <= 2 * J; ++j) {
            es.push_back({std::string(j, '0'), 1});
            bs.push_back({std::string(j, '0'), 1});
        }
        auto ds = Dataset::from_strings(Alphabet::binary(), es);
        auto best = solve_bottomup_exact(ds, 2 * J - 2).delta;
        if (best <= 2 * J || brute::bottomup_optimum(bs, "01", 2 * J - 2) != best)
            o.fail("J=" + std::to_string(J) + " with 2J-2 merges reaches " + best.str());
        o.detail << "J=" << J << ":" << best << " ";
    }
    o.detail << "(2J-2 merges, need " << "2J)";
}

void c9(Outcome& o) {
    std::mt19937_64 rng(9);
    auto inst = random_3occ_instance(1344, rng);  // C = 2016 = 2016 * n_bk
    auto d = make_gap_d2tok(inst, 1, 0);
    auto b = make_gap_b2tok(inst, 1, 0);
    if (d.ratio_bound != Rational(446213, 446212)) o.fail("d2tok ratio");
    if (!(d.ratio_bound > Rational(1000002, 1000000))) o.fail("d2tok ratio not above 1.000002");
    if (b.ratio_bound != Rational(7258949, 7258948)) o.fail("b2tok ratio");
    if (!(b.ratio_bound > Rational(10000001, 10000000))) o.fail("b2tok ratio not above 1.0000001");
    if (d.delta_minus - d.delta_plus != 1 || b.delta_minus - b.delta_plus != 1) o.fail("gap width");
    o.detail << d.ratio_bound << " and " << b.ratio_bound;
}

void c10(Outcome& o) {
    auto r = check_sum_identities(300);
    if (!r.empty()) o.fail(std::to_string(r.counterexamples.size()) + " counterexamples");
    SumIdentityOptions weak;
    weak.weakened = true;
    if (check_sum_identities(20, weak).empty()) o.fail("weakened sweep found nothing");
    o.detail << r.checked << " tuples";
}

BigInt flip_bit(const BigInt& x, unsigned bit) {
    BigInt y = x;
    boost::multiprecision::bit_flip(y, bit);
    return y;
}

void c11(Outcome& o) {
    struct Case {
        Dataset ds;
        UnaryCertificate cert;
        std::uint64_t kappa;
        BigInt delta;
    };
    std::vector<Case> yes;
    for (auto g : small_graphs()) {
        auto cover = solve_vc_exact(g).cover;
        for (std::uint32_t k = cover.size(); k <= g.n; ++k) {
            g.k = k;
            auto red = reduce_vc_to_d1tok(g);
            auto cert = make_unary_certificate(red.instance.dataset, build_vc_witness(g, cover));
            if (!verify_unary_certificate(red.instance.dataset, cert, red.instance.kappa, red.instance.delta).accepted)
                o.fail("witness certificate rejected");
            yes.push_back({red.instance.dataset, cert, red.instance.kappa, red.instance.delta});
        }
    }
    std::mt19937_64 rng(11);
    std::size_t rejected = 0;
    for (int t = 0; t < 100; ++t) {
        auto c = yes[rng() % yes.size()];
        auto& cert = c.cert;
        if (rng() % 2) {
            auto& len = cert.vocab_lengths[rng() % cert.vocab_lengths.size()];
            len = flip_bit(len, rng() % (boost::multiprecision::msb(len) + 1));
        } else {
            auto& row = cert.coin_assignments[rng() % cert.coin_assignments.size()];
            auto& n = row[rng() % row.size()];
            n = flip_bit(n, rng() % (n == 0 ? 1 : boost::multiprecision::msb(n) + 2));
        }
        if (verify_unary_certificate(c.ds, cert, c.kappa, c.delta).accepted)
            o.fail("tampering " + std::to_string(t) + " accepted");
        else
            ++rejected;
    }
    o.detail << yes.size() << " certificates accepted, " << rejected << "/100 tamperings rejected";
}

void c12(Outcome& o) {
    std::size_t checked = 0;
    for (auto g : small_graphs()) {
        auto red = reduce_vc_to_d1tok(g);
        try {
            check_vc_structure(red, g);
        } catch (const Error& e) {
            o.fail(e.what());
        }
        // independent digit check with machine integers
        const std::uint64_t m = g.edges.size();
        std::uint64_t N = 1;
        for (int i = 0; i < 4; ++i) N *= (g.n + m + 1);
        std::vector<std::array<std::uint64_t, 5>> want;
        for (std::uint64_t j = 1; j <= g.n; ++j) want.push_back({0, 0, j * j * j, j * j, j});
        want.push_back({1, 0, 0, 0, 0});
        for (std::uint64_t j = 1; j <= g.n; ++j) want.push_back({1, 0, j * j * j, j * j, j});
        for (auto [u, v] : g.edges)
            want.push_back({1, 0, std::uint64_t(u) * u * u + std::uint64_t(v) * v * v, std::uint64_t(u) * u + std::uint64_t(v) * v, std::uint64_t(u) + v});
        std::set<BigInt> seen;
        for (std::size_t i = 0; i < want.size(); ++i) {
            BigInt len = 0;
            for (auto d : want[i]) {
                if (d >= N) o.fail("digit overflow");
                len = len * N + d;
            }
            if (red.instance.dataset[i].length != len) o.fail("length " + std::to_string(i));
            if (!seen.insert(len).second) o.fail("duplicate length");
        }
        ++checked;
    }
    o.detail << checked << " graphs";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit;
        std::function<void(Outcome&)> run;
    };
    std::vector<Criterion> all{
        {1, "encoder oracle equivalence", 10, c1},
        {2, "clause-shape replay", 1, c2},
        {3, "forward witness, direct", 5, c3},
        {4, "forward witness, bottom-up", 10, c4},
        {5, "backward consistency, binary", 60, c5},
        {6, "unary direct vs vertex cover", 120, c6},
        {7, "unary ope vs addition chains", 120, c7},
        {8, "zero-run merges", 30, c8},
        {9, "gap constants", 1, c9},
        {10, "sum identity sweep", 30, c10},
        {11, "certificate verification", 10, c11},
        {12, "unary reduction structure", 5, c12},
    };
    int failed = 0;
    for (auto& c : all) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit) o.fail("over time limit");
        std::printf("criterion %2d %-32s %s  %.3fs/%gs  %s\n", c.id, c.name, o.ok ? "PASS" : "FAIL", secs, c.limit,
                    o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
