#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "parallel.hpp"
#include "tokhard/encoders.hpp"
#include "tokhard/oracles.hpp"
#include "trie.hpp"

namespace tokhard {

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

struct SharedBest {
    std::atomic<std::uint64_t> value{kInf};
    void offer(std::uint64_t v) {
        auto cur = value.load(std::memory_order_relaxed);
        while (v < cur && !value.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
        }
    }
    std::uint64_t get() const { return value.load(std::memory_order_relaxed); }
};

struct SearchResult {
    std::uint64_t value = kInf;
    MergeSequence merges;
};

std::size_t pick_best(const std::vector<SearchResult>& results) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].value < results[arg].value) arg = i;
    return arg;
}

// ---- bottom-up ------------------------------------------------------------

// Tokens are interned per worker; ids are only meaningful inside one worker.
class BottomUpWorker {
public:
    BottomUpWorker(const Dataset& dataset, SharedBest& shared, BudgetTracker& tracker)
        : shared_(shared), tracker_(tracker) {
        for (const auto& e : dataset.entries()) {
            std::vector<int> seq;
            for (char g : e.text) seq.push_back(intern(std::string(1, g)));
            corpus_.push_back(std::move(seq));
            mult_.push_back(e.multiplicity);
        }
    }

    using Corpus = std::vector<std::vector<int>>;
    using Pair = std::pair<int, int>;

    // Distinct adjacent pairs by weighted frequency, then by content.
    std::vector<Pair> candidates(const Corpus& corpus) {
        std::map<Pair, std::uint64_t> freq;
        for (std::size_t e = 0; e < corpus.size(); ++e)
            for (std::size_t i = 0; i + 1 < corpus[e].size(); ++i) freq[{corpus[e][i], corpus[e][i + 1]}] += mult_[e];
        std::vector<std::pair<Pair, std::uint64_t>> ranked(freq.begin(), freq.end());
        std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            const auto& [al, ar] = a.first;
            const auto& [bl, br] = b.first;
            if (names_[al] != names_[bl]) return names_[al] < names_[bl];
            return names_[ar] < names_[br];
        });
        std::vector<Pair> out;
        for (auto& r : ranked) out.push_back(r.first);
        return out;
    }

    Corpus apply(const Corpus& corpus, Pair p) {
        int product = intern(names_[p.first] + names_[p.second]);
        Corpus out(corpus.size());
        for (std::size_t e = 0; e < corpus.size(); ++e) {
            const auto& src = corpus[e];
            auto& dst = out[e];
            dst.reserve(src.size());
            for (std::size_t i = 0; i < src.size();) {
                if (i + 1 < src.size() && src[i] == p.first && src[i + 1] == p.second) {
                    dst.push_back(product);
                    i += 2;
                } else {
                    dst.push_back(src[i++]);
                }
            }
        }
        return out;
    }

    std::uint64_t value(const Corpus& corpus) const {
        std::uint64_t v = 0;
        for (std::size_t e = 0; e < corpus.size(); ++e) v += corpus[e].size() * mult_[e];
        return v;
    }

    // Each merge at most halves a string's token count.
    std::uint64_t bound(const Corpus& corpus, std::uint64_t remaining) const {
        std::uint64_t lb = 0;
        for (std::size_t e = 0; e < corpus.size(); ++e) {
            std::uint64_t n = corpus[e].size();
            std::uint64_t reduced = remaining >= 63 ? 1 : (n + (std::uint64_t(1) << remaining) - 1) >> remaining;
            lb += std::max<std::uint64_t>(std::min<std::uint64_t>(reduced, n), n ? 1 : 0) * mult_[e];
        }
        return lb;
    }

    void search(const Corpus& corpus, std::uint64_t remaining) {
        if (!tracker_.charge()) return;
        std::uint64_t v = value(corpus);
        auto cands = remaining ? candidates(corpus) : std::vector<Pair>{};
        // No adjacent pair left: further merges would be no-ops.
        if (cands.empty()) {
            if (v < result.value) {
                result.value = v;
                result.merges = path_;
                shared_.offer(v);
            }
            return;
        }
        std::uint64_t lb = bound(corpus, remaining);
        if (lb >= result.value || lb > shared_.get()) return;
        for (auto p : cands) {
            if (tracker_.exhausted()) return;
            descend(corpus, p, remaining);
        }
    }

    void descend(const Corpus& corpus, Pair p, std::uint64_t remaining) {
        path_.push_back({names_[p.first], names_[p.second]});
        search(apply(corpus, p), remaining - 1);
        path_.pop_back();
    }

    const Corpus& corpus() const { return corpus_; }

    SearchResult result;

private:
    int intern(const std::string& s) {
        auto [it, fresh] = ids_.try_emplace(s, static_cast<int>(names_.size()));
        if (fresh) names_.push_back(s);
        return it->second;
    }

    SharedBest& shared_;
    BudgetTracker& tracker_;
    std::unordered_map<std::string, int> ids_;
    std::vector<std::string> names_;
    Corpus corpus_;
    std::vector<std::uint64_t> mult_;
    MergeSequence path_;
};

// ---- OPE ------------------------------------------------------------------

// Entries grouped by distinct string, used by the OPE bound.
struct Grouped {
    std::vector<std::string> text;
    std::vector<std::uint64_t> mult;
};

Grouped group(const Dataset& dataset) {
    std::map<std::string, std::uint64_t> m;
    for (const auto& e : dataset.entries()) m[e.text] += e.multiplicity;
    Grouped g;
    for (auto& [t, c] : m) {
        g.text.push_back(t);
        g.mult.push_back(c);
    }
    return g;
}

// A string that is not yet a token needs two tokens unless a later merge
// produces it, and r merges produce at most r strings.
std::uint64_t ope_bound(const Grouped& g, const std::vector<char>& present, std::uint64_t remaining) {
    std::uint64_t lb = 0;
    std::vector<std::uint64_t> missing;
    for (std::size_t i = 0; i < g.text.size(); ++i) {
        if (present[i]) {
            lb += g.mult[i];
        } else {
            lb += 2 * g.mult[i];
            missing.push_back(g.mult[i]);
        }
    }
    std::sort(missing.rbegin(), missing.rend());
    for (std::size_t i = 0; i < missing.size() && i < remaining; ++i) lb -= missing[i];
    return lb;
}

class OpeWorker {
public:
    OpeWorker(const Dataset& dataset, const Grouped& grouped, SharedBest& shared, BudgetTracker& tracker)
        : dataset_(dataset), grouped_(grouped), shared_(shared), tracker_(tracker) {
        for (const auto& e : dataset.entries())
            for (std::size_t i = 0; i < e.text.size(); ++i)
                for (std::size_t len = 2; i + len <= e.text.size(); ++len) substrings_.insert(e.text.substr(i, len));
    }

    using State = std::vector<std::string>;  // sorted token set

    std::uint64_t value(const State& s) const {
        detail::TokenTrie trie(dataset_.alphabet());
        for (const auto& t : s) trie.insert(t);
        std::uint64_t v = 0;
        for (const auto& e : dataset_.entries()) v += detail::suffix_costs(trie, e.text)[0] * e.multiplicity;
        return v;
    }

    // New products, each with its first decomposition in sorted order.
    std::vector<Merge> products(const State& s) const {
        std::map<std::string, Merge> out;
        for (const auto& a : s)
            for (const auto& b : s) {
                std::string p = a + b;
                if (!substrings_.count(p) || std::binary_search(s.begin(), s.end(), p)) continue;
                out.try_emplace(p, Merge{a, b});
            }
        std::vector<Merge> v;
        for (auto& [p, m] : out) v.push_back(m);
        return v;
    }

    void search(const State& s, std::uint64_t remaining) {
        if (!tracker_.charge()) return;
        auto key = join(s);
        auto [it, fresh] = seen_.try_emplace(key, remaining);
        if (!fresh) {
            if (it->second >= remaining) return;
            it->second = remaining;
        }
        std::uint64_t v = value(s);
        if (v < result.value) {
            result.value = v;
            result.merges = path_;
            shared_.offer(v);
        }
        if (remaining == 0) return;
        std::vector<char> present(grouped_.text.size());
        for (std::size_t i = 0; i < present.size(); ++i)
            present[i] = grouped_.text[i].size() <= 1 || std::binary_search(s.begin(), s.end(), grouped_.text[i]);
        std::uint64_t lb = ope_bound(grouped_, present, remaining);
        if (lb >= result.value || lb > shared_.get()) return;
        for (const auto& m : products(s)) {
            if (tracker_.exhausted()) return;
            descend(s, m, remaining);
        }
    }

    void descend(const State& s, const Merge& m, std::uint64_t remaining) {
        State next = s;
        next.insert(std::lower_bound(next.begin(), next.end(), m.product()), m.product());
        path_.push_back(m);
        search(next, remaining - 1);
        path_.pop_back();
    }

    SearchResult result;

private:
    static std::string join(const State& s) {
        std::string k;
        for (const auto& t : s) {
            k += t;
            k += '|';
        }
        return k;
    }

    const Dataset& dataset_;
    const Grouped& grouped_;
    SharedBest& shared_;
    BudgetTracker& tracker_;
    std::unordered_set<std::string> substrings_;
    std::unordered_map<std::string, std::uint64_t> seen_;
    MergeSequence path_;
};

// Unary datasets with lengths below 64: token sets are bitmasks of lengths.
class UnaryOpeWorker {
public:
    UnaryOpeWorker(const std::vector<std::uint64_t>& lengths, const std::vector<std::uint64_t>& mult,
                   SharedBest& shared, BudgetTracker& tracker)
        : lengths_(lengths), mult_(mult), shared_(shared), tracker_(tracker) {
        for (auto l : lengths_) max_len_ = std::max(max_len_, l);
    }

    std::uint64_t value(std::uint64_t mask) const {
        std::vector<std::uint32_t> cost(max_len_ + 1, 0);
        for (std::uint64_t x = 1; x <= max_len_; ++x) {
            std::uint32_t b = cost[x - 1] + 1;
            for (std::uint64_t m = mask & ~std::uint64_t(3); m; m &= m - 1) {
                auto d = static_cast<std::uint64_t>(std::countr_zero(m));
                if (d > x) break;
                b = std::min(b, cost[x - d] + 1);
            }
            cost[x] = b;
        }
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < lengths_.size(); ++i) v += cost[lengths_[i]] * mult_[i];
        return v;
    }

    std::vector<std::pair<std::uint64_t, std::uint64_t>> products(std::uint64_t mask) const {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
        std::uint64_t seen = 0;
        for (std::uint64_t a = 1; a <= max_len_; ++a) {
            if (!(mask >> a & 1)) continue;
            for (std::uint64_t b = a; a + b <= max_len_; ++b) {
                if (!(mask >> b & 1)) continue;
                std::uint64_t p = a + b;
                if ((mask >> p & 1) || (seen >> p & 1)) continue;
                seen |= std::uint64_t(1) << p;
                out.emplace_back(a, b);
            }
        }
        std::sort(out.begin(), out.end(), [](auto x, auto y) { return x.first + x.second < y.first + y.second; });
        return out;
    }

    void search(std::uint64_t mask, std::uint64_t remaining) {
        if (!tracker_.charge()) return;
        auto [it, fresh] = seen_.try_emplace(mask, remaining);
        if (!fresh) {
            if (it->second >= remaining) return;
            it->second = remaining;
        }
        std::uint64_t v = value(mask);
        if (v < result_value) {
            result_value = v;
            result_path = path_;
            shared_.offer(v);
        }
        if (remaining == 0) return;
        std::uint64_t lb = 0;
        std::vector<std::uint64_t> missing;
        for (std::size_t i = 0; i < lengths_.size(); ++i) {
            if (lengths_[i] <= 1 || (mask >> lengths_[i] & 1)) {
                lb += mult_[i];
            } else {
                lb += 2 * mult_[i];
                missing.push_back(mult_[i]);
            }
        }
        std::sort(missing.rbegin(), missing.rend());
        for (std::size_t i = 0; i < missing.size() && i < remaining; ++i) lb -= missing[i];
        if (lb >= result_value || lb > shared_.get()) return;
        for (auto [a, b] : products(mask)) {
            if (tracker_.exhausted()) return;
            descend(mask, a, b, remaining);
        }
    }

    void descend(std::uint64_t mask, std::uint64_t a, std::uint64_t b, std::uint64_t remaining) {
        path_.emplace_back(a, b);
        search(mask | std::uint64_t(1) << (a + b), remaining - 1);
        path_.pop_back();
    }

    std::uint64_t result_value = kInf;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> result_path;

private:
    const std::vector<std::uint64_t>& lengths_;
    const std::vector<std::uint64_t>& mult_;
    SharedBest& shared_;
    BudgetTracker& tracker_;
    std::uint64_t max_len_ = 0;
    std::unordered_map<std::uint64_t, std::uint64_t> seen_;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> path_;
};

Dataset explicit_view(const Dataset& dataset) {
    if (dataset.representation() == Representation::explicit_strings) return dataset;
    return dataset.to_explicit(4096);
}

MergeSolution ope_unary(const Dataset& dataset, std::uint64_t kappa, BudgetTracker& tracker, Exec exec) {
    std::vector<std::uint64_t> lengths, mult;
    for (const auto& e : dataset.entries()) {
        lengths.push_back(static_cast<std::uint64_t>(e.length));
        mult.push_back(e.multiplicity);
    }
    SharedBest shared;
    UnaryOpeWorker root(lengths, mult, shared, tracker);
    std::uint64_t base = root.value(2);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> firsts;
    if (kappa > 0) firsts = root.products(2);

    struct Local {
        std::uint64_t value = kInf;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> path;
    };
    std::vector<Local> results(firsts.size());
    shared.offer(base);
    detail::for_each_index(firsts.size(), exec, [&](std::size_t i) {
        UnaryOpeWorker w(lengths, mult, shared, tracker);
        w.result_value = base;
        w.descend(2, firsts[i].first, firsts[i].second, kappa);
        results[i] = {w.result_value, w.result_path};
    });
    tracker.check("solve_ope_exact");

    MergeSolution out;
    out.delta = base;
    const Local* best = nullptr;
    for (const auto& r : results)
        if (r.value < (best ? best->value : base)) best = &r;
    if (best) {
        out.delta = best->value;
        for (auto [a, b] : best->path) out.merges.push_back({std::string(a, 'a'), std::string(b, 'a')});
    }
    out.nodes = tracker.nodes();
    return out;
}

}  // namespace

MergeSolution solve_bottomup_exact(const Dataset& dataset, std::uint64_t kappa, const SearchBudget& budget, Exec exec) {
    if (dataset.representation() != Representation::explicit_strings)
        throw ValidationError("solve_bottomup_exact needs an explicit dataset");
    BudgetTracker tracker(budget);
    SharedBest shared;
    BottomUpWorker root(dataset, shared, tracker);
    auto firsts = kappa ? root.candidates(root.corpus()) : std::vector<BottomUpWorker::Pair>{};
    if (firsts.empty()) {
        MergeSolution out;
        out.delta = root.value(root.corpus());
        return out;
    }
    // Pair ids in `firsts` are valid in every worker: workers intern the
    // alphabet in the same order before anything else.
    std::vector<SearchResult> results(firsts.size());
    detail::for_each_index(firsts.size(), exec, [&](std::size_t i) {
        BottomUpWorker w(dataset, shared, tracker);
        w.descend(w.corpus(), firsts[i], kappa);
        results[i] = std::move(w.result);
    });
    tracker.check("solve_bottomup_exact");
    auto& best = results[pick_best(results)];
    return {best.merges, best.value, tracker.nodes()};
}

MergeSolution solve_ope_exact(const Dataset& dataset, std::uint64_t kappa, const SearchBudget& budget, Exec exec) {
    BudgetTracker tracker(budget);
    if (dataset.alphabet().size() == 1) {
        BigInt longest = 0;
        for (const auto& e : dataset.entries()) longest = std::max(longest, e.length);
        if (longest < 64) return ope_unary(dataset, kappa, tracker, exec);
    }
    Dataset data = explicit_view(dataset);
    Grouped grouped = group(data);
    SharedBest shared;
    OpeWorker root(data, grouped, shared, tracker);
    OpeWorker::State start;
    for (char g : data.alphabet().glyphs()) start.emplace_back(1, g);
    std::uint64_t base = root.value(start);
    shared.offer(base);
    auto firsts = kappa ? root.products(start) : std::vector<Merge>{};

    std::vector<SearchResult> results(firsts.size());
    detail::for_each_index(firsts.size(), exec, [&](std::size_t i) {
        OpeWorker w(data, grouped, shared, tracker);
        w.result.value = base;
        w.descend(start, firsts[i], kappa);
        results[i] = std::move(w.result);
    });
    tracker.check("solve_ope_exact");

    MergeSolution out;
    out.delta = base;
    if (!results.empty()) {
        auto& best = results[pick_best(results)];
        if (best.value < base) {
            out.delta = best.value;
            out.merges = best.merges;
        }
    }
    out.nodes = tracker.nodes();
    return out;
}

}  // namespace tokhard
