#include "tokhard/reductions.hpp"

#include <algorithm>
#include <set>

namespace tokhard {

static_assert(d2tok::c1 == 2 * (d2tok::c2 + 3) + 1);
static_assert(d2tok::c0 == 2 * (d2tok::c1 + d2tok::c2 + 3) + 1);
static_assert(b2tok::c2 == 2 * (2 * b2tok::c3 + 3) + 1);
static_assert(b2tok::c1 == 2 * (2 * b2tok::c2 + 2 * b2tok::c3 + 3) + 1);
static_assert(b2tok::c0 == 2 * (2 * b2tok::c1 + 2 * b2tok::c2 + 2 * b2tok::c3 + 3) + 1);

VariableGadget variable_gadget(std::uint32_t j) {
    if (j == 0) throw ValidationError("variables are 1-based");
    return {j, std::string(2 * j - 1, '0'), std::string(2 * j, '0')};
}

const CharString& literal_string(const std::vector<VariableGadget>& gadgets, int lit) {
    const auto& g = gadgets.at(static_cast<std::size_t>(std::abs(lit)) - 1);
    return lit > 0 ? g.yes : g.no;
}

namespace {

std::vector<VariableGadget> gadgets_for(const Max2SatInstance& inst) {
    std::vector<VariableGadget> out;
    for (std::uint32_t j = 1; j <= inst.num_vars; ++j) out.push_back(variable_gadget(j));
    return out;
}

using Entries = std::vector<std::pair<CharString, std::uint64_t>>;

}  // namespace

BigInt d2tok_delta(std::uint32_t J, std::size_t C, std::uint64_t F) {
    return BigInt(329) * J + BigInt(3) * C - F;
}

BigInt b2tok_delta(std::uint32_t J, std::size_t C, std::uint64_t F) {
    return BigInt(5398) * J + 575 + BigInt(3) * C - F;
}

TokenisationInstance reduce_max2sat_to_d2tok(const Max2SatInstance& inst) {
    inst.validate();
    auto gadgets = gadgets_for(inst);
    Entries d;
    for (const auto& g : gadgets)
        for (auto s : {"1" + g.yes, g.yes + "1", "1" + g.no, g.no + "1"}) d.emplace_back(s, d2tok::c0);
    for (const auto& g : gadgets) {
        d.emplace_back("1" + g.yes + "1", d2tok::c1);
        d.emplace_back("1" + g.no + "1", d2tok::c1);
    }
    for (const auto& g : gadgets) d.emplace_back("1" + g.yes + "1" + g.no + "1", d2tok::c2);
    for (const auto& c : inst.clauses)
        d.emplace_back("1" + literal_string(gadgets, c.lit1) + "1" + literal_string(gadgets, c.lit2) + "1", 1);

    TokenisationInstance out{Dataset::from_strings(Alphabet::binary(), std::move(d)), 5ull * inst.num_vars,
                             d2tok_delta(inst.num_vars, inst.clauses.size(), inst.target), Mode::direct};
    return out;
}

TokenisationInstance reduce_max2sat_to_b2tok(const Max2SatInstance& inst) {
    inst.validate();
    auto gadgets = gadgets_for(inst);
    const std::string sp = "1", sp2 = "11";
    Entries d;
    d.emplace_back(sp2, b2tok::c0);
    for (const auto& g : gadgets) {
        const auto &y = g.yes, &n = g.no;
        for (auto s : {y, n, sp + y, y + sp, sp + n, n + sp, y + sp2, sp2 + n}) d.emplace_back(s, b2tok::c0);
    }
    for (const auto& g : gadgets) {
        const auto &y = g.yes, &n = g.no;
        for (auto s : {sp + y + sp, sp + n + sp, sp + y + sp2, sp2 + n + sp}) d.emplace_back(s, b2tok::c1);
    }
    for (const auto& g : gadgets) {
        const auto &y = g.yes, &n = g.no;
        d.emplace_back(sp + y + sp + n + sp, b2tok::c2);
        d.emplace_back(sp2 + n + sp + y + sp2, b2tok::c2);
    }
    for (const auto& g : gadgets) {
        const auto &y = g.yes, &n = g.no;
        d.emplace_back(sp + n + sp + y + sp2, b2tok::c3);
        d.emplace_back(sp2 + n + sp + y + sp, b2tok::c3);
    }
    // One string per clause; which gadget comes first depends on the polarities.
    for (const auto& c : inst.clauses) {
        const auto& a = gadgets[std::abs(c.lit1) - 1];
        const auto& b = gadgets[std::abs(c.lit2) - 1];
        std::string s;
        if (c.lit1 > 0 && c.lit2 < 0)
            s = sp + a.yes + sp + b.no + sp;
        else if (c.lit1 < 0 && c.lit2 > 0)
            s = sp + b.yes + sp + a.no + sp;
        else if (c.lit1 < 0 && c.lit2 < 0)
            s = sp2 + a.no + sp + b.no + sp;
        else
            s = sp + a.yes + sp + b.yes + sp2;
        d.emplace_back(s, 1);
    }
    TokenisationInstance out{Dataset::from_strings(Alphabet::binary(), std::move(d)), 10ull * inst.num_vars,
                             b2tok_delta(inst.num_vars, inst.clauses.size(), inst.target), Mode::bottomup};
    return out;
}

BigInt VcEncoding::enc(std::uint32_t j) const {
    BigInt bj = j;
    return bj + bj * bj * base + bj * bj * bj * base * base;
}

VcEncoding vc_encoding(const VcInstance& inst) {
    BigInt u = BigInt(inst.n) + inst.edges.size() + 1;
    BigInt n = u * u * u * u;
    return {n, n * n * n * n};
}

VcReduction reduce_vc_to_d1tok(const VcInstance& inst) {
    inst.validate();
    auto code = vc_encoding(inst);
    std::vector<std::pair<UnaryLength, std::uint64_t>> d;
    for (std::uint32_t j = 1; j <= inst.n; ++j) d.emplace_back(code.vertex(j), 1);
    d.emplace_back(code.big, 1);
    for (std::uint32_t j = 1; j <= inst.n; ++j) d.emplace_back(code.cover(j), 1);
    for (auto [u, v] : inst.edges) d.emplace_back(code.edge(u, v), 1);
    BigInt delta = BigInt(3) * inst.n + BigInt(2) * inst.edges.size() + 1 - inst.k;
    VcReduction out{{Dataset::from_lengths(std::move(d)), std::uint64_t(inst.n) + 1 + inst.k, delta, Mode::direct},
                    code};
    check_vc_structure(out, inst);
    return out;
}

std::vector<BigInt> base_digits(const BigInt& x, const BigInt& base, std::size_t width) {
    std::vector<BigInt> digits(width);
    BigInt rest = x;
    for (std::size_t i = width; i-- > 0;) {
        digits[i] = rest % base;
        rest /= base;
    }
    if (rest != 0) throw ValidationError("value does not fit in the requested number of digits");
    return digits;
}

void check_vc_structure(const VcReduction& red, const VcInstance& inst) {
    const auto& code = red.encoding;
    const auto& entries = red.instance.dataset.entries();
    std::set<BigInt> seen;
    for (const auto& e : entries)
        if (!seen.insert(e.length).second) throw ValidationError("reduced lengths are not pairwise distinct");

    if (inst.n == 0) return;  // only B = 1 is emitted

    // Digits (B, N^3, N^2, N, 1) with B = N^4.
    auto expect = [&](const BigInt& x, std::vector<BigInt> want, const std::string& what) {
        if (base_digits(x, code.base, 5) != want) throw ValidationError("digit pattern mismatch for " + what);
    };
    // Every digit must stay below N for the patterns to be unambiguous.
    std::uint32_t top = inst.n;
    if (BigInt(2) * top * top * top >= code.base) throw ValidationError("base too small for digit patterns");
    std::size_t pos = 0;
    for (std::uint32_t j = 1; j <= inst.n; ++j) {
        BigInt b = j;
        expect(entries[pos++].length, {0, 0, b * b * b, b * b, b}, "vertex " + std::to_string(j));
    }
    expect(entries[pos++].length, {1, 0, 0, 0, 0}, "B");
    for (std::uint32_t j = 1; j <= inst.n; ++j) {
        BigInt b = j;
        expect(entries[pos++].length, {1, 0, b * b * b, b * b, b}, "cover " + std::to_string(j));
    }
    for (auto [u, v] : inst.edges) {
        BigInt a = u, b = v;
        expect(entries[pos++].length, {1, 0, a * a * a + b * b * b, a * a + b * b, a + b},
               "edge " + std::to_string(u) + "-" + std::to_string(v));
    }
}

TokenisationInstance reduce_addchain_to_uope(const AddChainInstance& inst) {
    inst.validate();
    std::vector<std::pair<UnaryLength, std::uint64_t>> d;
    for (auto t : inst.targets) d.emplace_back(BigInt(t), 1);
    return {Dataset::from_lengths(std::move(d)), inst.zeta, BigInt(inst.targets.size()), Mode::ope};
}

GapInstance GapConstruction::emit() const {
    auto integral = [](const Rational& r, const char* what) {
        if (denominator(r) != 1) throw ValidationError(std::string(what) + " is not an integer; no decision instance");
        return BigInt(numerator(r));
    };
    GapInstance g{dataset, kappa, integral(delta_minus, "delta_minus"), integral(delta_plus, "delta_plus"), mode};
    g.validate();
    return g;
}

Rational gap_ratio_bound_d2tok(const Rational& epsilon) {
    return (Rational(446213) - epsilon) / (Rational(446212) + epsilon);
}

Rational gap_ratio_bound_b2tok(const Rational& epsilon) {
    return (Rational(7258949) - epsilon) / (Rational(7258948) + epsilon);
}

namespace {

GapConstruction make_gap(const Max2SatInstance& inst, std::uint64_t n_bk, const Rational& epsilon, bool bottomup) {
    inst.validate();
    if (n_bk == 0) throw ValidationError("n_bk must be positive");
    if (inst.clauses.size() != 2016 * n_bk)
        throw ValidationError("gap construction needs C = 2016 * n_bk; got C = " + std::to_string(inst.clauses.size()));
    if (epsilon < 0 || epsilon > Rational(1, 2)) throw ValidationError("epsilon must lie in [0, 1/2]");
    GapConstruction g;
    g.f_minus = (Rational(2011) + epsilon) * n_bk;
    g.f_plus = (Rational(2012) - epsilon) * n_bk;
    Rational fixed = bottomup ? Rational(BigInt(5398) * inst.num_vars + 575 + BigInt(3) * inst.clauses.size())
                              : Rational(BigInt(329) * inst.num_vars + BigInt(3) * inst.clauses.size());
    g.delta_minus = fixed - g.f_minus;
    g.delta_plus = fixed - g.f_plus;
    g.instance_ratio = g.delta_minus / g.delta_plus;
    g.ratio_bound = bottomup ? gap_ratio_bound_b2tok(epsilon) : gap_ratio_bound_d2tok(epsilon);
    auto reduced = bottomup ? reduce_max2sat_to_b2tok(inst) : reduce_max2sat_to_d2tok(inst);
    g.dataset = std::move(reduced.dataset);
    g.kappa = reduced.kappa;
    g.mode = reduced.mode;
    return g;
}

}  // namespace

GapConstruction make_gap_d2tok(const Max2SatInstance& inst, std::uint64_t n_bk, const Rational& epsilon) {
    return make_gap(inst, n_bk, epsilon, false);
}

GapConstruction make_gap_b2tok(const Max2SatInstance& inst, std::uint64_t n_bk, const Rational& epsilon) {
    return make_gap(inst, n_bk, epsilon, true);
}

}  // namespace tokhard
