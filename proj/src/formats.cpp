#include "tokhard/formats.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tokhard {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> fields;
};

class Reader {
public:
    explicit Reader(std::istream& in) {
        std::string raw;
        std::size_t n = 0;
        while (std::getline(in, raw)) {
            ++n;
            std::istringstream ss(raw);
            std::vector<std::string> fields;
            for (std::string f; ss >> f;) fields.push_back(f);
            if (fields.empty() || fields[0][0] == 'c') continue;
            lines_.push_back({n, std::move(fields)});
        }
        last_ = n;
    }

    bool done() const { return pos_ == lines_.size(); }
    const Line& peek() const { return lines_.at(pos_); }
    const Line& next(const char* what) {
        if (done()) throw ParseError(last_ + 1, std::string("unexpected end of input, expected ") + what);
        return lines_[pos_++];
    }

    const Line& header(const char* tag, std::size_t fields) {
        const auto& l = next("header");
        if (l.fields[0] != "p" || l.fields.size() < 2 || l.fields[1] != tag)
            throw ParseError(l.number, std::string("expected header 'p ") + tag + " ...'");
        if (l.fields.size() != fields + 2)
            throw ParseError(l.number, "header needs " + std::to_string(fields) + " fields after 'p " + tag + "'");
        return l;
    }

    void expect_end() {
        if (!done()) throw ParseError(peek().number, "unexpected trailing line");
    }

private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    std::size_t last_ = 0;
};

template <class Int>
Int parse_int(const Line& l, std::size_t i, const char* what) {
    const auto& s = l.fields.at(i);
    Int v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError(l.number, std::string("bad ") + what + " '" + s + "'");
    return v;
}

BigInt parse_big(const Line& l, std::size_t i, const char* what) {
    const auto& s = l.fields.at(i);
    bool ok = !s.empty();
    for (std::size_t k = 0; k < s.size(); ++k)
        ok = ok && (std::isdigit(static_cast<unsigned char>(s[k])) || (k == 0 && s[k] == '-' && s.size() > 1));
    if (!ok) throw ParseError(l.number, std::string("bad ") + what + " '" + s + "'");
    return BigInt(s);
}

void arity(const Line& l, std::size_t n) {
    if (l.fields.size() != n)
        throw ParseError(l.number, "expected " + std::to_string(n) + " fields, got " + std::to_string(l.fields.size()));
}

// Semantic checks are reported against the header line.
template <class T>
T validated(T inst, std::size_t line) {
    try {
        inst.validate();
    } catch (const ValidationError& e) {
        throw ParseError(line, e.what());
    }
    return inst;
}

Mode parse_mode(const Line& l, std::size_t i) {
    const auto& s = l.fields.at(i);
    if (s == "direct") return Mode::direct;
    if (s == "bottomup") return Mode::bottomup;
    if (s == "ope") return Mode::ope;
    throw ParseError(l.number, "unknown mode '" + s + "'");
}

Max2SatInstance read_m2s(Reader& r) {
    const auto& h = r.header("m2s", 3);
    Max2SatInstance inst;
    inst.num_vars = parse_int<std::uint32_t>(h, 2, "J");
    auto C = parse_int<std::size_t>(h, 3, "C");
    inst.target = parse_int<std::uint64_t>(h, 4, "F");
    for (std::size_t c = 0; c < C; ++c) {
        const auto& l = r.next("clause line");
        arity(l, 2);
        inst.clauses.push_back({parse_int<int>(l, 0, "literal"), parse_int<int>(l, 1, "literal")});
    }
    r.expect_end();
    return validated(std::move(inst), h.number);
}

VcInstance read_vc(Reader& r) {
    const auto& h = r.header("vc", 3);
    VcInstance inst;
    inst.n = parse_int<std::uint32_t>(h, 2, "n");
    auto m = parse_int<std::size_t>(h, 3, "m");
    inst.k = parse_int<std::uint32_t>(h, 4, "k");
    for (std::size_t e = 0; e < m; ++e) {
        const auto& l = r.next("edge line");
        arity(l, 2);
        inst.edges.emplace_back(parse_int<std::uint32_t>(l, 0, "vertex"), parse_int<std::uint32_t>(l, 1, "vertex"));
    }
    r.expect_end();
    return validated(std::move(inst), h.number);
}

AddChainInstance read_ac(Reader& r) {
    const auto& h = r.header("ac", 2);
    AddChainInstance inst;
    auto T = parse_int<std::size_t>(h, 2, "T");
    inst.zeta = parse_int<std::uint64_t>(h, 3, "zeta");
    const auto& l = r.next("target line");
    arity(l, T);
    for (std::size_t i = 0; i < T; ++i) inst.targets.push_back(parse_int<std::uint64_t>(l, i, "target"));
    r.expect_end();
    return validated(std::move(inst), l.number);
}

TokFile read_tok(Reader& r) {
    const auto& h = r.header("tok", 6);
    auto asize = parse_int<std::size_t>(h, 2, "alphabet size");
    auto count = parse_int<std::size_t>(h, 3, "entry count");
    auto kappa = parse_int<std::uint64_t>(h, 4, "kappa");
    auto delta = parse_big(h, 5, "delta");
    auto mode = parse_mode(h, 6);
    const auto& repr = h.fields[7];
    if (repr != "explicit" && repr != "length") throw ParseError(h.number, "unknown representation '" + repr + "'");

    TokFile out;
    try {
        Alphabet alphabet(asize);
        if (repr == "length") {
            if (asize != 1) throw ParseError(h.number, "length representation needs alphabet size 1");
            std::vector<std::pair<UnaryLength, std::uint64_t>> es;
            for (std::size_t i = 0; i < count; ++i) {
                const auto& l = r.next("entry line");
                arity(l, 2);
                auto len = parse_big(l, 1, "length");
                if (len <= 0) throw ParseError(l.number, "lengths must be positive");
                es.emplace_back(len, parse_int<std::uint64_t>(l, 0, "multiplicity"));
            }
            out.instance.dataset = Dataset::from_lengths(std::move(es));
        } else {
            std::vector<std::pair<CharString, std::uint64_t>> es;
            for (std::size_t i = 0; i < count; ++i) {
                const auto& l = r.next("entry line");
                arity(l, 2);
                if (!alphabet.valid(l.fields[1]))
                    throw ParseError(l.number, "string '" + l.fields[1] + "' uses symbols outside the alphabet");
                auto mult = parse_int<std::uint64_t>(l, 0, "multiplicity");
                if (mult == 0) throw ParseError(l.number, "multiplicity must be positive");
                es.emplace_back(l.fields[1], mult);
            }
            out.instance.dataset = Dataset::from_strings(alphabet, std::move(es));
        }
    } catch (const ValidationError& e) {
        throw ParseError(h.number, e.what());
    }
    out.instance.kappa = kappa;
    out.instance.delta = delta;
    out.instance.mode = mode;
    if (!r.done() && r.peek().fields[0] == "g") {
        const auto& l = r.next("gap line");
        arity(l, 3);
        GapInstance g{out.instance.dataset, kappa, parse_big(l, 1, "delta_minus"), parse_big(l, 2, "delta_plus"), mode};
        out.gap = validated(std::move(g), l.number);
    }
    r.expect_end();
    return out;
}

}  // namespace

Max2SatInstance parse_m2s(std::istream& in) {
    Reader r(in);
    return read_m2s(r);
}

VcInstance parse_vc(std::istream& in) {
    Reader r(in);
    return read_vc(r);
}

AddChainInstance parse_ac(std::istream& in) {
    Reader r(in);
    return read_ac(r);
}

TokFile parse_tok(std::istream& in) {
    Reader r(in);
    return read_tok(r);
}

WitnessFile parse_witness(std::istream& in) {
    Reader r(in);
    WitnessFile w;
    while (!r.done()) {
        const auto& l = r.next("witness line");
        if (l.fields[0] == "v") {
            arity(l, 2);
            w.vocab.push_back(l.fields[1]);
        } else if (l.fields[0] == "m") {
            arity(l, 3);
            w.merges.push_back({l.fields[1], l.fields[2]});
        } else {
            throw ParseError(l.number, "witness lines start with 'v' or 'm'");
        }
    }
    return w;
}

SourceFile parse_any(std::istream& in) {
    Reader r(in);
    if (r.done()) throw ParseError(1, "empty input");
    const auto& h = r.peek();
    if (h.fields[0] != "p" || h.fields.size() < 2) throw ParseError(h.number, "expected a 'p <format> ...' header");
    const auto& tag = h.fields[1];
    if (tag == "m2s") return read_m2s(r);
    if (tag == "vc") return read_vc(r);
    if (tag == "ac") return read_ac(r);
    if (tag == "tok") return read_tok(r);
    throw ParseError(h.number, "unknown format '" + tag + "'");
}

std::string render(const Max2SatInstance& inst) {
    std::ostringstream out;
    out << "p m2s " << inst.num_vars << " " << inst.clauses.size() << " " << inst.target << "\n";
    for (const auto& c : inst.clauses) out << c.lit1 << " " << c.lit2 << "\n";
    return out.str();
}

std::string render(const VcInstance& inst) {
    std::ostringstream out;
    out << "p vc " << inst.n << " " << inst.edges.size() << " " << inst.k << "\n";
    for (auto [u, v] : inst.edges) out << u << " " << v << "\n";
    return out.str();
}

std::string render(const AddChainInstance& inst) {
    std::ostringstream out;
    out << "p ac " << inst.targets.size() << " " << inst.zeta << "\n";
    for (std::size_t i = 0; i < inst.targets.size(); ++i) out << (i ? " " : "") << inst.targets[i];
    out << "\n";
    return out.str();
}

namespace {

std::string render_tok(const Dataset& ds, std::uint64_t kappa, const BigInt& delta, Mode mode) {
    std::ostringstream out;
    const bool lengths = ds.representation() == Representation::lengths;
    out << "p tok " << ds.alphabet().size() << " " << ds.size() << " " << kappa << " " << delta << " "
        << to_string(mode) << " " << to_string(ds.representation()) << "\n";
    for (const auto& e : ds.entries()) {
        out << e.multiplicity << " ";
        if (lengths)
            out << e.length;
        else
            out << e.text;
        out << "\n";
    }
    return out.str();
}

}  // namespace

std::string render(const TokenisationInstance& inst) {
    return render_tok(inst.dataset, inst.kappa, inst.delta, inst.mode);
}

// The header delta of a gap file is the YES threshold delta_plus.
std::string render(const GapInstance& gap) {
    return render_tok(gap.dataset, gap.kappa, gap.delta_plus, gap.mode) + "g " + gap.delta_minus.str() + " " +
           gap.delta_plus.str() + "\n";
}

std::string render(const WitnessFile& w) {
    std::ostringstream out;
    for (const auto& t : w.vocab) out << "v " << t << "\n";
    for (const auto& m : w.merges) out << "m " << m.left << " " << m.right << "\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace tokhard
