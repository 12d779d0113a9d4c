#include "doctest.h"

#include <random>

#include "oracle_support.hpp"
#include "tokhard/encoders.hpp"
#include "tokhard/harness.hpp"
#include "tokhard/oracles.hpp"
#include "tokhard/reductions.hpp"
#include "tokhard/witnesses.hpp"

using namespace tokhard;

namespace {

const Max2SatInstance kJ2{2, {{1, 2}, {-1, 2}, {1, -2}}, 3};

const ThresholdRow& row(const EquivalenceReport& r, const std::string& t) {
    for (const auto& x : r.sweep)
        if (x.threshold == t) return x;
    FAIL("missing sweep row " << t);
    return r.sweep.front();
}

void check_monotone(const EquivalenceReport& r) {
    // thresholds are listed from weakest to strongest
    for (std::size_t i = 1; i < r.sweep.size(); ++i) {
        if (r.sweep[i].source_yes) CHECK(r.sweep[i - 1].source_yes);
        if (r.sweep[i].reduced_yes) CHECK(r.sweep[i - 1].reduced_yes);
    }
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("d2tok pipeline") {
    auto r = verify_d2tok_equivalence(kJ2);
    CHECK_MESSAGE(r.passed(), r.render_text());
    CHECK(r.reduced_optimum == "delta*=664");
    CHECK(row(r, "F=3").reduced_yes);
    CHECK_FALSE(row(r, "F=4").reduced_yes);
    CHECK_FALSE(row(r, "F=4").source_yes);
    CHECK(row(r, "F=0").reduced_yes);
    check_monotone(r);
}

TEST_CASE("b2tok pipeline") {
    auto r = verify_b2tok_equivalence(kJ2);
    CHECK_MESSAGE(r.passed(), r.render_text());
    CHECK(r.reduced_optimum == "delta*=11377");
    CHECK_FALSE(row(r, "F=4").reduced_yes);
    CHECK(row(r, "F=0").reduced_yes);
    check_monotone(r);
}

TEST_CASE("d1tok pipeline") {
    auto r = verify_d1tok_equivalence(VcInstance{3, {{1, 2}, {2, 3}, {1, 3}}, 2});
    CHECK_MESSAGE(r.passed(), r.render_text());
    CHECK(row(r, "k=2").source_yes);
    CHECK(row(r, "k=2").reduced_yes);
    CHECK_FALSE(row(r, "k=1").source_yes);
    CHECK_FALSE(row(r, "k=1").reduced_yes);

    auto e = verify_d1tok_equivalence(VcInstance{3, {}, 0});
    CHECK(e.passed());
    for (const auto& x : e.sweep) CHECK((x.source_yes && x.reduced_yes));
}

TEST_CASE("uope pipeline") {
    auto f = verify_uope_equivalence(AddChainInstance{{15}, 5});
    CHECK_MESSAGE(f.passed(), f.render_text());
    CHECK(f.source_optimum == "min-chain=5");
    CHECK(f.reduced_optimum == "min-merges=5");
    CHECK(minimal_ope_merges(AddChainInstance{{1}, 0}) == 0);
    CHECK(minimal_ope_merges(AddChainInstance{{2, 4}, 2}) == 2);
    CHECK(brute::chain_length({2, 4}) == 2);
}

TEST_CASE("reports render") {
    auto r = verify_uope_equivalence(AddChainInstance{{3, 5}, 3});
    CHECK(r.render_text().find("PASS") != std::string::npos);
    CHECK(r.render_kv().find("result=PASS") != std::string::npos);
}

TEST_CASE("compliant optima match the formula") {
    auto d = reduce_max2sat_to_d2tok(kJ2);
    auto cd = compliant_direct_optimum(kJ2, d.dataset);
    CHECK(cd.delta == 664);
    CHECK(kJ2.count_satisfied(cd.assignment) == 3);
    CHECK(compliant_direct_optimum(kJ2, d.dataset, Exec::serial).delta == cd.delta);
    auto b = reduce_max2sat_to_b2tok(kJ2);
    CHECK(compliant_bottomup_optimum(kJ2, b.dataset).delta == 11377);
}

TEST_CASE("swap probes find nothing at the witness but find a bad token") {
    auto d = reduce_max2sat_to_d2tok(kJ2);
    auto cd = compliant_direct_optimum(kJ2, d.dataset);
    auto v = build_direct_witness(kJ2, cd.assignment);
    CHECK_FALSE(one_swap_probe(v, d.dataset).improved);

    // replacing a required gadget token by junk is undone by the probe
    auto spoiled = v.without("10").with("0000000");
    auto p = one_swap_probe(spoiled, d.dataset);
    CHECK(p.improved);
    CHECK(p.best < direct_objective(spoiled, d.dataset));
}

TEST_CASE("clause-shape replay") {
    auto rows = replay_clause_shapes();
    CHECK(rows.size() == 16);
    for (const auto& r : rows) {
        CHECK_MESSAGE(r.ok(), r.shape << r.s1 << r.s2);
        CHECK(concat(r.tokens) == r.clause);
        bool lit1 = (r.shape == 'A' || r.shape == 'D') ? r.s1 : !r.s1;
        bool lit2 = (r.shape == 'B' || r.shape == 'D') ? r.s2 : !r.s2;
        CHECK(r.expected == ((lit1 || lit2) ? 2u : 3u));
    }
}

TEST_CASE("greedy bpe") {
    auto four = Dataset::from_strings(Alphabet::binary(), {{"0000", 1}});
    CHECK(greedy_bpe_train(four, 1).merges == MergeSequence{{"0", "0"}});

    auto abc = Dataset::from_strings(Alphabet(3), {{"ab", 3}, {"bc", 2}});
    CHECK(greedy_bpe_train(abc, 1).merges == MergeSequence{{"a", "b"}});

    // ties go to the smallest pair
    auto tie = Dataset::from_strings(Alphabet(3), {{"ab", 2}, {"bc", 2}});
    CHECK(greedy_bpe_train(tie, 1).merges == MergeSequence{{"a", "b"}});

    auto pad = greedy_bpe_train(Dataset::from_strings(Alphabet::binary(), {{"01", 1}}), 3);
    CHECK(pad.merges.size() == 3);
    CHECK(pad.noop_padding == 2);

    auto d = reduce_max2sat_to_d2tok(kJ2);
    CHECK(greedy_bpe_train(d.dataset, 10).merges == greedy_bpe_train(d.dataset, 10).merges);
}

TEST_CASE("bench ratio") {
    auto aaa = Dataset::from_strings(Alphabet::unary(), {{"aaa", 1}});
    auto r = bench_ratio(aaa, 1, Mode::direct);
    REQUIRE(r.optimal.has_value());
    CHECK(*r.length_ratio == Rational(2, 1));  // greedy (a,a) leaves aa a
    auto r2 = bench_ratio(aaa, 1, Mode::bottomup);
    CHECK(*r2.length_ratio == Rational(1));

    auto d = reduce_max2sat_to_d2tok(kJ2);
    auto b = bench_ratio(d.dataset, 10, Mode::direct, BigInt(664));
    CHECK(b.optimum_source == "supplied");
    CHECK(*b.length_ratio >= 1);
    CHECK(*b.reduce_ratio >= 1);

    SearchBudget tiny;
    tiny.max_nodes = 3;
    auto lb = bench_ratio(d.dataset, 10, Mode::direct, std::nullopt, tiny);
    CHECK(lb.lower_bound_only());
    CHECK(lb.optimum_source == "none");
}

TEST_CASE("random 3-occurrence instances are valid and seeded") {
    std::mt19937_64 a(99), b(99);
    for (std::uint32_t J : {2u, 4u, 10u}) {
        auto x = random_3occ_instance(J, a);
        auto y = random_3occ_instance(J, b);
        CHECK(x == y);
        CHECK_NOTHROW(x.validate());
        CHECK(x.clauses.size() == 3 * J / 2);
    }
    CHECK_THROWS(random_3occ_instance(3, a));
}

}
