#include "doctest.h"

#include <random>

#include "tokhard/encoders.hpp"
#include "tokhard/harness.hpp"
#include "tokhard/oracles.hpp"
#include "tokhard/reductions.hpp"
#include "tokhard/witnesses.hpp"

using namespace tokhard;

// Parallel kernels must return exactly what their serial twins return,
// including which of several optimal answers is reported.
TEST_SUITE("parallel") {

TEST_CASE("oracles report the same optimum object") {
    auto ds = Dataset::from_strings(Alphabet::binary(), {{"0110100110", 2}, {"1001", 3}, {"111000", 1}, {"0101", 2}});
    for (std::uint64_t kappa = 1; kappa <= 3; ++kappa) {
        auto a = solve_direct_exact(ds, kappa, std::nullopt, {}, Exec::serial);
        auto b = solve_direct_exact(ds, kappa, std::nullopt, {}, Exec::parallel);
        CHECK(a.delta == b.delta);
        CHECK(a.vocabulary == b.vocabulary);
        auto c = solve_bottomup_exact(ds, kappa, {}, Exec::serial);
        auto d = solve_bottomup_exact(ds, kappa, {}, Exec::parallel);
        CHECK(c.delta == d.delta);
        CHECK(c.merges == d.merges);
        auto e = solve_ope_exact(ds, kappa, {}, Exec::serial);
        auto f = solve_ope_exact(ds, kappa, {}, Exec::parallel);
        CHECK(e.delta == f.delta);
        CHECK(e.merges == f.merges);
    }
    auto lens = Dataset::from_lengths({{7, 1}, {12, 2}, {30, 1}, {31, 1}});
    for (std::uint64_t kappa = 1; kappa <= 3; ++kappa) {
        auto a = solve_unary_direct_exact(lens, kappa, std::nullopt, {}, Exec::serial);
        auto b = solve_unary_direct_exact(lens, kappa, std::nullopt, {}, Exec::parallel);
        CHECK(a.delta == b.delta);
        CHECK(a.lengths == b.lengths);
    }
}

TEST_CASE("max2sat and sum sweeps") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        auto inst = random_3occ_instance(8, rng);
        auto a = solve_max2sat_exact(inst, Exec::serial);
        auto b = solve_max2sat_exact(inst, Exec::parallel);
        CHECK(a.satisfied == b.satisfied);
        CHECK(a.assignment == b.assignment);
    }
    SumIdentityOptions s, p, ws, wp;
    s.exec = Exec::serial;
    ws.exec = Exec::serial;
    ws.weakened = wp.weakened = true;
    auto rs = check_sum_identities(40, ws);
    auto rp = check_sum_identities(40, wp);
    CHECK(rs.checked == rp.checked);
    REQUIRE(rs.counterexamples.size() == rp.counterexamples.size());
    for (std::size_t i = 0; i < rs.counterexamples.size(); ++i) {
        CHECK(rs.counterexamples[i].identity == rp.counterexamples[i].identity);
        CHECK(rs.counterexamples[i].values == rp.counterexamples[i].values);
    }
}

TEST_CASE("harness reports agree") {
    Max2SatInstance j2{2, {{1, 2}, {-1, 2}, {1, -2}}, 3};
    HarnessOptions serial, parallel;
    serial.exec = Exec::serial;
    serial.full_oracle_max_vars = parallel.full_oracle_max_vars = 0;
    auto a = verify_d2tok_equivalence(j2, serial);
    auto b = verify_d2tok_equivalence(j2, parallel);
    CHECK(a.reduced_optimum == b.reduced_optimum);
    CHECK(a.render_kv() == b.render_kv());
}

TEST_CASE("budget tracker") {
    SearchBudget b;
    b.max_nodes = 10;
    BudgetTracker t(b);
    CHECK(t.charge(5));
    CHECK_FALSE(t.charge(6));
    CHECK(t.exhausted());
    CHECK_THROWS_AS(t.check("test"), BudgetExhausted);
    SearchBudget bad;
    bad.time_limit_seconds = -1;
    CHECK_THROWS(bad.validate());
}

}
