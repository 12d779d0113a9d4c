#include "doctest.h"

#include <sstream>

#include "tokhard/formats.hpp"
#include "tokhard/reductions.hpp"

using namespace tokhard;

namespace {

template <class F>
auto parse(F f, const std::string& text) {
    std::istringstream in(text);
    return f(in);
}

std::size_t error_line(const std::string& text) {
    try {
        std::istringstream in(text);
        parse_any(in);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_SUITE("formats") {

TEST_CASE("m2s round trip") {
    auto inst = parse(parse_m2s, "c sample\np m2s 2 3 3\n1 2\n-1 2\n\n1 -2\n");
    CHECK(inst == Max2SatInstance{2, {{1, 2}, {-1, 2}, {1, -2}}, 3});
    CHECK(parse(parse_m2s, render(inst)) == inst);
}

TEST_CASE("sample data files parse") {
    auto text = read_file(TOKHARD_DATA_DIR "/j2.m2s");
    auto m = parse(parse_m2s, text);
    CHECK(m.num_vars == 2);
    auto tri = parse(parse_vc, read_file(TOKHARD_DATA_DIR "/triangle.vc"));
    CHECK(tri.edges.size() == 3);
    auto ac = parse(parse_ac, read_file(TOKHARD_DATA_DIR "/fifteen.ac"));
    CHECK(ac.targets == std::vector<std::uint64_t>{15});
    CHECK(ac.zeta == 5);
}

TEST_CASE("tok round trips") {
    Max2SatInstance j2{2, {{1, 2}, {-1, 2}, {1, -2}}, 3};
    for (auto t : {reduce_max2sat_to_d2tok(j2), reduce_max2sat_to_b2tok(j2)}) {
        auto back = parse(parse_tok, render(t));
        CHECK(back.instance == t);
        CHECK_FALSE(back.gap.has_value());
    }
    auto vc = reduce_vc_to_d1tok(VcInstance{3, {{1, 2}, {2, 3}, {1, 3}}, 2}).instance;
    CHECK(parse(parse_tok, render(vc)).instance == vc);

    auto ds = Dataset::from_strings(Alphabet::binary(), {{"0101", 2}});
    GapInstance g{ds, 2, 9, 7, Mode::bottomup};
    auto gb = parse(parse_tok, render(g));
    REQUIRE(gb.gap.has_value());
    CHECK(*gb.gap == g);
    CHECK(gb.instance.delta == 7);
}

TEST_CASE("witness files") {
    WitnessFile w;
    w.vocab = {"10", "101"};
    w.merges = {{"1", "0"}, {"10", "1"}};
    auto back = parse(parse_witness, render(w));
    CHECK(back.vocab == w.vocab);
    CHECK(back.merges == w.merges);
    CHECK_THROWS_AS(parse(parse_witness, "x 1 0\n"), ParseError);
}

TEST_CASE("parse_any dispatch") {
    std::istringstream a("p vc 2 1 1\n1 2\n");
    CHECK(std::holds_alternative<VcInstance>(parse_any(a)));
    std::istringstream b("p ac 2 3\n3 5\n");
    CHECK(std::holds_alternative<AddChainInstance>(parse_any(b)));
    std::istringstream c("p tok 1 1 0 3 direct length\n1 3\n");
    CHECK(std::holds_alternative<TokFile>(parse_any(c)));
}

TEST_CASE("errors carry line numbers") {
    CHECK(error_line("p tok 2 1 1 3 greedy explicit\n1 01\n") == 1);  // unknown mode
    CHECK(error_line("c\nc\np tok 2 1 1 3 direct explicit\n1 012\n") == 4);
    CHECK(error_line("p m2s 2 3 3\n1 2\n-1 x\n1 -2\n") == 3);
    CHECK(error_line("p m2s 2 2 0\n1 2\n-1 2\n") == 1);  // occurrence counts
    CHECK(error_line("p vc 2 1 1\n1 1\n") == 1);
    CHECK(error_line("p vc 2 1 1\n1 2\n2 1\n") == 3);  // trailing line
    CHECK(error_line("p m2s 2 3 3\n1 2\n") == 3);      // truncated
    CHECK(error_line("p zzz 1\n") == 1);
    CHECK(error_line("") == 1);
    CHECK(error_line("p tok 2 1 1 3 direct explicit\n0 01\n") == 2);
    CHECK(error_line("p tok 2 1 1 3 direct length\n1 5\n") == 1);
}

}
