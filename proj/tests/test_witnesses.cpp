#include "doctest.h"

#include <random>

#include "oracle_support.hpp"
#include "tokhard/encoders.hpp"
#include "tokhard/oracles.hpp"
#include "tokhard/reductions.hpp"
#include "tokhard/witnesses.hpp"

using namespace tokhard;

namespace {

const Max2SatInstance kJ2{2, {{1, 2}, {-1, 2}, {1, -2}}, 3};

std::vector<Assignment> all_assignments(std::uint32_t J) {
    std::vector<Assignment> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << J); ++mask) {
        Assignment s(J);
        for (std::uint32_t j = 0; j < J; ++j) s[j] = (mask >> j) & 1;
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_SUITE("witnesses") {

TEST_CASE("direct witness reaches 329J + 3C - F(s)") {
    auto red = reduce_max2sat_to_d2tok(kJ2);
    for (const auto& s : all_assignments(2)) {
        auto v = build_direct_witness(kJ2, s);
        CHECK(v.kappa() == 10);
        auto counts = direct_counts(v, red.dataset);
        BigInt gadgets = 0, clauses = 0;
        for (std::size_t i = 0; i < counts.size(); ++i)
            (red.dataset[i].multiplicity == 1 ? clauses : gadgets) += counts[i] * red.dataset[i].multiplicity;
        CHECK(gadgets == 329 * 2);
        CHECK(clauses == 3 * 3 - kJ2.count_satisfied(s));
        CHECK(check_sat_compliance(v, 2, Variant::direct).compliant);
        CHECK(extract_assignment(v, 2) == s);
    }
}

TEST_CASE("bottom-up witness reaches 5398J + 575 + 3C - F(s)") {
    auto red = reduce_max2sat_to_b2tok(kJ2);
    for (const auto& s : all_assignments(2)) {
        auto m = build_bottomup_witness(kJ2, s);
        CHECK(m.size() == 20);
        CHECK(bottomup_objective(m, red.dataset) == b2tok_delta(2, 3, kJ2.count_satisfied(s)));
        // every D1 string is one token
        for (const auto& e : red.dataset.entries())
            if (e.multiplicity == b2tok::c0) CHECK(bottomup_apply(m, e.text).size() == 1);
        auto v = ope_vocab(m, Alphabet::binary());
        CHECK(check_sat_compliance(v, 2, Variant::bottomup).compliant);
        CHECK(extract_assignment(v, 2, Variant::bottomup) == s);
    }
}

TEST_CASE("witness at the best assignment meets delta") {
    auto best = solve_max2sat_exact(kJ2);
    auto red = reduce_max2sat_to_d2tok(kJ2);
    CHECK(direct_objective(build_direct_witness(kJ2, best.assignment), red.dataset) == red.delta);
}

TEST_CASE("zero-run merges") {
    CHECK(build_zero_run_merges(1) == MergeSequence{{"0", "0"}});
    for (std::uint32_t J : {2u, 8u, 33u}) {
        auto m = build_zero_run_merges(J);
        CHECK(m.size() == 2 * J - 1);
        for (std::uint32_t j = 1; j <= 2 * J; ++j) CHECK(bottomup_apply(m, std::string(j, '0')).size() == 1);
    }
    CHECK(build_zero_run_merges(8).size() == 15);
}

TEST_CASE("compliance diagnoses") {
    auto v = build_direct_witness(kJ2, {true, false});
    auto neither = v.without("1" "0" "1").without("1" "00" "1");
    auto r = check_sat_compliance(neither, 2, Variant::direct);
    CHECK_FALSE(r.compliant);
    CHECK(r.choices[0] == Choice::neither);
    CHECK_THROWS(extract_assignment(neither, 2));

    auto both = v.with("1" "0" "1").with("1" "00" "1");
    auto b = check_sat_compliance(both, 2, Variant::direct);
    CHECK_FALSE(b.compliant);
    CHECK(b.choices[0] == Choice::both);
}

TEST_CASE("vc witness") {
    VcInstance tri{3, {{1, 2}, {2, 3}, {1, 3}}, 2};
    auto red = reduce_vc_to_d1tok(tri);
    auto lens = build_vc_witness(tri, {1, 2});
    CHECK(lens.size() == 3 + 1 + 2);
    std::vector<BigInt> with_one = lens;
    with_one.push_back(1);
    auto counts = unary_counts(with_one, red.instance.dataset);
    BigInt total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) total += counts[i];
    CHECK(total == 14);
    CHECK(total == red.instance.delta);
    for (std::uint32_t j = 1; j <= 3; ++j) CHECK(counts[j - 1] == 1);

    auto cover = extract_cover(lens, tri);
    CHECK(tri.is_cover(cover));
    CHECK(cover.size() <= 2);
    CHECK_THROWS(build_vc_witness(tri, {1}));

    VcInstance edgeless{3, {}, 0};
    CHECK(extract_cover(build_vc_witness(edgeless, {}), edgeless).empty());

    VcInstance edge{2, {{1, 2}}, 1};
    auto code = vc_encoding(edge);
    std::vector<BigInt> v{code.enc(1), code.enc(2), code.big, code.cover(1)};
    CHECK(extract_cover(v, edge) == std::vector<std::uint32_t>{1});
}

TEST_CASE("unary certificate") {
    VcInstance tri{3, {{1, 2}, {2, 3}, {1, 3}}, 2};
    auto red = reduce_vc_to_d1tok(tri);
    const auto& ds = red.instance.dataset;
    auto cert = make_unary_certificate(ds, build_vc_witness(tri, {1, 3}));
    CHECK(verify_unary_certificate(ds, cert, red.instance.kappa, red.instance.delta).accepted);

    auto off = cert;
    off.coin_assignments[0][0] += 1;
    CHECK_FALSE(verify_unary_certificate(ds, off, red.instance.kappa, red.instance.delta).accepted);

    // delta below one token per entry never verifies
    CHECK_FALSE(verify_unary_certificate(ds, cert, red.instance.kappa, ds.total_multiplicity() - 1).accepted);
    CHECK_FALSE(verify_unary_certificate(ds, cert, red.instance.kappa - 1, red.instance.delta).accepted);
}

TEST_CASE("addition chain witnesses") {
    CHECK(build_addchain_witness({1, 2, 4}) == MergeSequence{{"a", "a"}, {"aa", "aa"}});
    auto m = build_addchain_witness({1, 2, 3, 6, 12, 15});
    CHECK(m.size() == 5);
    auto back = extract_addchain(m);
    CHECK(back == std::vector<std::uint64_t>{1, 2, 3, 6, 12, 15});
    CHECK_THROWS_AS(build_addchain_witness({1, 2, 5}), ValidationError);
    CHECK_THROWS_AS(build_addchain_witness({2, 4}), ValidationError);

    // (aaa, aaa) uses a part that was never built
    MergeSequence pruned{{"a", "a"}, {"aaa", "aaa"}, {"aa", "aa"}};
    CHECK(extract_addchain(pruned) == std::vector<std::uint64_t>{1, 2, 4});
}

TEST_CASE("sum identities") {
    auto r = check_sum_identities(50);
    CHECK(r.empty());
    CHECK(r.checked > 0);
    CHECK(check_sum_identities(1).empty());

    SumIdentityOptions weak;
    weak.weakened = true;
    auto w = check_sum_identities(10, weak);
    CHECK_FALSE(w.empty());
    bool saw_112 = false;
    for (const auto& c : w.counterexamples)
        if (c.identity == "pair-sum" && c.values == std::vector<std::uint64_t>{1, 1, 2}) saw_112 = true;
    CHECK(saw_112);

    SumIdentityOptions serial;
    serial.exec = Exec::serial;
    CHECK(check_sum_identities(60, serial).checked == check_sum_identities(60).checked);
}

}
