#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>

#include "coins.hpp"
#include "parallel.hpp"
#include "tokhard/encoders.hpp"
#include "tokhard/oracles.hpp"

namespace tokhard {

std::vector<Token> substring_candidates(const Dataset& dataset) {
    if (dataset.representation() != Representation::explicit_strings)
        throw ValidationError("substring candidates need an explicit dataset");
    std::set<Token> out;
    for (const auto& e : dataset.entries())
        for (std::size_t i = 0; i < e.text.size(); ++i)
            for (std::size_t len = 2; i + len <= e.text.size(); ++len) out.insert(e.text.substr(i, len));
    return {out.begin(), out.end()};
}

namespace {

constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

// Leftmost greedy yields the maximum number of disjoint occurrences.
std::uint64_t disjoint_occurrences(const std::string& text, const std::string& t) {
    std::uint64_t n = 0;
    for (std::size_t pos = text.find(t); pos != std::string::npos; pos = text.find(t, pos + t.size())) ++n;
    return n;
}

struct Match {
    std::uint32_t len;
    std::uint32_t cand;
};

// Incumbent shared across workers of one search: workers publish leaf values
// and prune against it only with a strict comparison, so ties found by other
// workers never cut a subtree and the result matches the serial order.
struct SharedBest {
    std::atomic<std::uint64_t> value{kInf};

    void offer(std::uint64_t v) {
        auto cur = value.load(std::memory_order_relaxed);
        while (v < cur && !value.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
        }
    }
    std::uint64_t get() const { return value.load(std::memory_order_relaxed); }
};

class DirectSearch {
public:
    DirectSearch(const Dataset& dataset, std::vector<Token> live, std::size_t picks)
        : dataset_(dataset), cands_(std::move(live)), picks_(picks) {
        matches_.resize(dataset.size());
        for (std::size_t e = 0; e < dataset.size(); ++e) {
            const auto& text = dataset[e].text;
            matches_[e].resize(text.size());
            for (std::uint32_t c = 0; c < cands_.size(); ++c) {
                const auto& t = cands_[c];
                for (auto pos = text.find(t); pos != std::string::npos; pos = text.find(t, pos + 1))
                    matches_[e][pos].push_back({static_cast<std::uint32_t>(t.size()), c});
            }
        }
        ub_prefix_.assign(cands_.size() + 1, 0);
        floor_ = dataset.total_multiplicity();
    }

    // Candidates must already be ordered by descending bound; ub[i] is the
    // bound of cands_[i].
    void set_bounds(const std::vector<std::uint64_t>& ub) {
        for (std::size_t i = 0; i < ub.size(); ++i) ub_prefix_[i + 1] = ub_prefix_[i] + ub[i];
    }

    std::uint64_t evaluate(const std::vector<char>& active) const {
        std::uint64_t total = 0;
        std::vector<std::uint32_t> best;
        for (std::size_t e = 0; e < dataset_.size(); ++e) {
            const auto& ms = matches_[e];
            std::size_t n = ms.size();
            best.assign(n + 1, 0);
            for (std::size_t i = n; i-- > 0;) {
                std::uint32_t b = best[i + 1] + 1;
                for (const auto& m : ms[i])
                    if (active[m.cand]) b = std::min(b, best[i + m.len] + 1);
                best[i] = b;
            }
            total += static_cast<std::uint64_t>(best[0]) * dataset_[e].multiplicity;
        }
        return total;
    }

    struct Result {
        std::uint64_t value = kInf;
        std::vector<std::uint32_t> picks;
    };

    // Explores every combination whose smallest index is `first`.
    Result run_subtree(std::size_t first, SharedBest& shared, BudgetTracker& tracker) const {
        Worker w{*this, shared, tracker, {}, {}, {}};
        w.active.assign(cands_.size(), 0);
        w.try_pick(first, 0);
        return w.result;
    }

    std::size_t size() const { return cands_.size(); }
    std::size_t picks() const { return picks_; }
    const std::vector<Token>& candidates() const { return cands_; }

private:
    struct Worker {
        const DirectSearch& s;
        SharedBest& shared;
        BudgetTracker& tracker;
        std::vector<char> active;
        std::vector<std::uint32_t> chosen;
        Result result;

        std::uint64_t bound(std::uint64_t value, std::size_t from, std::size_t remaining) const {
            std::uint64_t gain = s.ub_prefix_[from + remaining] - s.ub_prefix_[from];
            std::uint64_t lb = gain >= value ? 0 : value - gain;
            return std::max(lb, s.floor_);
        }

        bool cut(std::uint64_t lb) const { return lb >= result.value || lb > shared.get(); }

        void try_pick(std::size_t i, std::uint64_t) {
            if (!tracker.charge()) return;
            active[i] = 1;
            chosen.push_back(static_cast<std::uint32_t>(i));
            std::uint64_t v = s.evaluate(active);
            extend(i + 1, v);
            chosen.pop_back();
            active[i] = 0;
        }

        void extend(std::size_t start, std::uint64_t value) {
            std::size_t remaining = s.picks_ - chosen.size();
            if (remaining == 0) {
                if (value < result.value) {
                    result.value = value;
                    result.picks = chosen;
                    shared.offer(value);
                }
                return;
            }
            for (std::size_t i = start; i + remaining <= s.cands_.size(); ++i) {
                if (tracker.exhausted()) return;
                // Suffix bounds are sorted, so later i only weaken the gain.
                if (cut(bound(value, i, remaining))) break;
                try_pick(i, value);
            }
        }
    };

    const Dataset& dataset_;
    std::vector<Token> cands_;
    std::size_t picks_;
    std::vector<std::vector<std::vector<Match>>> matches_;
    std::vector<std::uint64_t> ub_prefix_;
    std::uint64_t floor_ = 0;
};

}  // namespace

DirectSolution solve_direct_exact(const Dataset& dataset, std::uint64_t kappa,
                                  const std::optional<std::vector<Token>>& candidates, const SearchBudget& budget,
                                  Exec exec) {
    if (dataset.representation() != Representation::explicit_strings)
        throw ValidationError("solve_direct_exact needs an explicit dataset; use solve_unary_direct_exact");
    BudgetTracker tracker(budget);
    const auto& alphabet = dataset.alphabet();

    std::vector<Token> pool = candidates ? *candidates : substring_candidates(dataset);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::erase_if(pool, [&](const Token& t) {
        if (t.empty()) throw ValidationError("empty candidate token");
        alphabet.check(t);
        return t.size() == 1;
    });
    if (pool.size() > budget.max_candidates)
        throw BudgetExhausted("candidate pool of " + std::to_string(pool.size()) + " exceeds max_candidates");

    // Rank by an upper bound on what the token can ever save: k disjoint uses
    // of t replace at most k*|t| unit tokens by k tokens.
    struct Ranked {
        Token token;
        std::uint64_t ub;
    };
    std::vector<Ranked> live;
    std::vector<Token> dead;
    for (auto& t : pool) {
        std::uint64_t ub = 0;
        for (const auto& e : dataset.entries()) ub += disjoint_occurrences(e.text, t) * (t.size() - 1) * e.multiplicity;
        if (ub == 0)
            dead.push_back(std::move(t));
        else
            live.push_back({std::move(t), ub});
    }
    std::stable_sort(live.begin(), live.end(), [](const Ranked& a, const Ranked& b) {
        return a.ub != b.ub ? a.ub > b.ub : a.token < b.token;
    });

    std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(kappa, live.size() + dead.size()));
    std::size_t picks = std::min(want, live.size());
    std::vector<Token> ordered;
    std::vector<std::uint64_t> ubs;
    for (auto& r : live) {
        ordered.push_back(r.token);
        ubs.push_back(r.ub);
    }
    DirectSearch search(dataset, ordered, picks);
    search.set_bounds(ubs);

    std::vector<Token> chosen;
    std::uint64_t best_value;
    if (picks == 0) {
        best_value = search.evaluate(std::vector<char>(ordered.size(), 0));
    } else {
        SharedBest shared;
        std::size_t roots = ordered.size() - picks + 1;
        std::vector<DirectSearch::Result> results(roots);
        detail::for_each_index(roots, exec,
                               [&](std::size_t i) { results[i] = search.run_subtree(i, shared, tracker); });
        tracker.check("solve_direct_exact");
        std::size_t arg = 0;
        for (std::size_t i = 1; i < roots; ++i)
            if (results[i].value < results[arg].value) arg = i;
        best_value = results[arg].value;
        for (auto idx : results[arg].picks) chosen.push_back(ordered[idx]);
    }
    // Unused slots go to dead candidates, which never change the objective.
    for (std::size_t i = 0; chosen.size() < want && i < dead.size(); ++i) chosen.push_back(dead[i]);
    for (std::size_t i = 0; chosen.size() < want; ++i) {
        const auto& t = ordered[i];
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    return {Vocabulary(alphabet, chosen), best_value, tracker.nodes()};
}

namespace {

Dataset as_lengths(const Dataset& dataset) {
    if (dataset.alphabet().size() != 1) throw ValidationError("unary oracle needs a unary dataset");
    return dataset.representation() == Representation::lengths ? dataset : dataset.to_lengths();
}

template <class Int>
UnarySolution unary_search(const Dataset& data, std::size_t picks, const std::vector<BigInt>& cands,
                           BudgetTracker& tracker, Exec exec) {
    std::vector<Int> targets;
    std::vector<std::uint64_t> mult;
    for (const auto& e : data.entries()) {
        targets.push_back(static_cast<Int>(e.length));
        mult.push_back(e.multiplicity);
    }
    std::vector<Int> pool;
    for (const auto& c : cands) pool.push_back(static_cast<Int>(c));
    std::uint64_t floor = data.total_multiplicity();

    // Objective of `chosen`, or kInf if it cannot get below `limit`. Each
    // count is searched only below what the limit leaves for it, taking one
    // token per remaining entry as their floor.
    auto evaluate = [&](const std::vector<std::uint32_t>& chosen, std::uint64_t limit) {
        detail::CoinSolver<Int> solver;
        for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) solver.desc.push_back(pool[*it]);
        if (solver.desc.empty() || solver.desc.back() != Int(1)) solver.desc.push_back(Int(1));
        std::uint64_t total = 0, rest = floor;
        for (std::size_t t = 0; t < targets.size(); ++t) {
            rest -= mult[t];
            if (limit != kInf) {
                if (total + rest + mult[t] >= limit) return kInf;
                solver.capped = true;
                solver.cap = Int((limit - total - rest - 1) / mult[t] + 1);
            }
            solver.run(targets[t]);
            if (!solver.found) {
                if (!solver.capped) throw ValidationError("length is not representable");
                return kInf;
            }
            total += static_cast<std::uint64_t>(solver.best_count) * mult[t];
        }
        return total;
    };

    // Candidates are ascending, so building `chosen` in index order and reading
    // it backwards gives the descending coin list.
    struct Result {
        std::uint64_t value = kInf;
        std::vector<std::uint32_t> picks;
    };
    SharedBest shared;
    std::size_t roots = picks == 0 ? 1 : pool.size() - picks + 1;
    std::vector<Result> results(roots);
    std::exception_ptr error;

    detail::for_each_index(roots, exec, [&](std::size_t root) {
        Result local;
        std::vector<std::uint32_t> chosen;
        auto visit = [&](auto&& self, std::size_t start) -> void {
            if (tracker.exhausted() || shared.get() == floor) return;
            if (chosen.size() == picks) {
                if (!tracker.charge()) return;
                // Ties with other roots are kept so the lowest root wins them.
                std::uint64_t other = shared.get();
                auto v = evaluate(chosen, std::min(local.value, other == kInf ? kInf : other + 1));
                if (v < local.value) {
                    local.value = v;
                    local.picks = chosen;
                    shared.offer(v);
                }
                return;
            }
            for (std::size_t i = start; i + (picks - chosen.size()) <= pool.size(); ++i) {
                chosen.push_back(static_cast<std::uint32_t>(i));
                self(self, i + 1);
                chosen.pop_back();
            }
        };
        try {
            if (picks == 0) {
                visit(visit, 0);
            } else {
                chosen.push_back(static_cast<std::uint32_t>(root));
                visit(visit, root + 1);
            }
        } catch (...) {
#pragma omp critical(tokhard_unary_error)
            if (!error) error = std::current_exception();
        }
        results[root] = std::move(local);
    });
    if (error) std::rethrow_exception(error);
    tracker.check("solve_unary_direct_exact");

    std::size_t arg = 0;
    for (std::size_t i = 1; i < roots; ++i)
        if (results[i].value < results[arg].value) arg = i;
    UnarySolution out;
    out.delta = results[arg].value;
    for (auto idx : results[arg].picks) out.lengths.push_back(cands[idx]);
    return out;
}

}  // namespace

UnarySolution solve_unary_direct_exact(const Dataset& dataset, std::uint64_t kappa,
                                       const std::optional<std::vector<BigInt>>& candidates,
                                       const SearchBudget& budget, Exec exec) {
    BudgetTracker tracker(budget);
    Dataset data = as_lengths(dataset);
    std::vector<BigInt> cands;
    if (candidates) {
        cands = *candidates;
    } else {
        for (const auto& e : data.entries()) cands.push_back(e.length);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::erase_if(cands, [](const BigInt& c) {
        if (c <= 0) throw ValidationError("candidate lengths must be positive");
        return c == 1;
    });
    if (cands.size() > budget.max_candidates) throw BudgetExhausted("unary candidate pool exceeds max_candidates");
    std::size_t picks = static_cast<std::size_t>(std::min<std::uint64_t>(kappa, cands.size()));

    BigInt largest = 0;
    for (const auto& e : data.entries()) largest = std::max(largest, e.length);
    if (!cands.empty()) largest = std::max(largest, cands.back());
    UnarySolution out = largest < (BigInt(1) << 62)
                            ? unary_search<std::uint64_t>(data, picks, cands, tracker, exec)
                            : unary_search<BigInt>(data, picks, cands, tracker, exec);
    out.nodes = tracker.nodes();
    return out;
}

}  // namespace tokhard
