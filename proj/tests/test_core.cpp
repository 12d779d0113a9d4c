#include "doctest.h"

#include "tokhard/core.hpp"

using namespace tokhard;

TEST_SUITE("core") {

TEST_CASE("alphabet glyphs") {
    CHECK(Alphabet::unary().glyphs() == "a");
    CHECK(Alphabet::binary().glyphs() == "01");
    CHECK(Alphabet(3).glyphs() == "abc");
    CHECK(Alphabet::binary().valid("0110"));
    CHECK_FALSE(Alphabet::binary().valid("012"));
    CHECK_THROWS_AS(Alphabet::binary().check("a"), ValidationError);
}

TEST_CASE("vocabulary always holds the alphabet") {
    Vocabulary v(Alphabet::binary(), {"10", "101"});
    CHECK(v.contains("0"));
    CHECK(v.contains("1"));
    CHECK(v.size() == 4);
    CHECK(v.kappa() == 2);
    CHECK(v.max_token_length() == 3);
    CHECK(v.with("01").kappa() == 3);
    CHECK(v.without("10").kappa() == 1);
    CHECK_THROWS(Vocabulary(Alphabet::binary(), {"12"}));
}

TEST_CASE("concat") {
    std::vector<Token> a{"a", "aa"};
    CHECK(concat(a) == "aaa");
    CHECK(concat(std::vector<Token>{}) == "");
    std::vector<Token> b{"10", "01"};
    CHECK(concat(b) == "1001");
}

TEST_CASE("objectives") {
    auto one = Dataset::from_strings(Alphabet::unary(), {{"aaa", 1}});
    std::vector<BigInt> c1{1};
    CHECK(objective_length(c1, one) == 1);
    CHECK(objective_reduce(c1, one) == 2);

    auto five = Dataset::from_strings(Alphabet::unary(), {{"aaa", 5}});
    std::vector<BigInt> c3{3};
    CHECK(objective_length(c3, five) == 15);
    CHECK(objective_reduce(c3, five) == 0);

    auto thousand = Dataset::from_lengths({{1000, 1}});
    std::vector<BigInt> c200{200};
    CHECK(objective_reduce(c200, thousand) == 800);

    std::vector<BigInt> wrong{1, 2};
    CHECK_THROWS(objective_length(wrong, one));
}

TEST_CASE("approximation ratio") {
    CHECK(approximation_ratio(200, 100, Objective::length) == Rational(2));
    CHECK(approximation_ratio(800, 900, Objective::reduce) == Rational(9, 8));
    CHECK(approximation_ratio(17, 17, Objective::length) == Rational(1));
    CHECK_THROWS(approximation_ratio(5, 0, Objective::length));
    CHECK_THROWS(approximation_ratio(0, 5, Objective::reduce));
}

TEST_CASE("dataset construction and conversion") {
    auto ds = Dataset::from_strings(Alphabet::unary(), {{"aa", 3}, {"aaaaa", 2}});
    CHECK(ds.total_multiplicity() == 5);
    CHECK(ds.raw_size() == 16);
    CHECK(ds.max_length() == 5);
    auto lens = ds.to_lengths();
    CHECK(lens.representation() == Representation::lengths);
    CHECK(lens[1].length == 5);
    CHECK(lens.raw_size() == 16);
    CHECK(lens.to_explicit(10) == ds);
    CHECK_THROWS(lens.to_explicit(4));
    CHECK_THROWS(Dataset::from_strings(Alphabet::binary(), {{"", 1}}));
    CHECK_THROWS(Dataset::from_strings(Alphabet::binary(), {{"01", 0}}));
    CHECK_THROWS(Dataset::from_lengths({{0, 1}}));
}

TEST_CASE("max2sat instance validation") {
    Max2SatInstance ok{2, {{1, 2}, {-1, 2}, {1, -2}}, 3};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.count_satisfied({true, true}) == 3);
    CHECK(ok.count_satisfied({false, false}) == 2);

    Max2SatInstance bad_occ{2, {{1, 2}, {-1, 2}}, 0};
    CHECK_THROWS_AS(bad_occ.validate(), ValidationError);
    Max2SatInstance bad_lit{2, {{1, 3}, {-1, 2}, {1, -2}}, 0};
    CHECK_THROWS_AS(bad_lit.validate(), ValidationError);
    Max2SatInstance empty{0, {}, 0};
    CHECK_NOTHROW(empty.validate());
}

TEST_CASE("vc and addchain validation") {
    VcInstance tri{3, {{1, 2}, {2, 3}, {1, 3}}, 2};
    CHECK_NOTHROW(tri.validate());
    CHECK(tri.is_cover({1, 2}));
    CHECK_FALSE(tri.is_cover({1}));
    VcInstance loop{2, {{1, 1}}, 1};
    CHECK_THROWS_AS(loop.validate(), ValidationError);
    VcInstance dup{2, {{1, 2}, {2, 1}}, 1};
    CHECK_THROWS_AS(dup.validate(), ValidationError);

    AddChainInstance ac{{3, 5}, 3};
    CHECK_NOTHROW(ac.validate());
    CHECK(ac.max_target() == 5);
    AddChainInstance unsorted{{5, 3}, 3};
    CHECK_THROWS_AS(unsorted.validate(), ValidationError);
}

TEST_CASE("gap instance ordering") {
    auto ds = Dataset::from_strings(Alphabet::binary(), {{"01", 1}});
    GapInstance g{ds, 1, 5, 4, Mode::direct};
    CHECK_NOTHROW(g.validate());
    GapInstance bad{ds, 1, 3, 4, Mode::direct};
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("floor check") {
    TokenisationInstance t{Dataset::from_strings(Alphabet::binary(), {{"01", 3}}), 1, 2, Mode::direct};
    CHECK(t.below_floor());
    t.delta = 3;
    CHECK_FALSE(t.below_floor());
}

}
