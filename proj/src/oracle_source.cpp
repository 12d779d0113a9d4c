#include <algorithm>
#include <bit>
#include <limits>

#include "parallel.hpp"
#include "tokhard/oracles.hpp"

namespace tokhard {

Max2SatSolution solve_max2sat_exact(const Max2SatInstance& inst, Exec exec) {
    inst.validate();
    const std::uint32_t J = inst.num_vars;
    if (J > 40) throw ValidationError("solve_max2sat_exact enumerates 2^J assignments; J > 40 refused");

    // Clauses as bit tests on the assignment mask (bit j-1 = x_j).
    struct Lit {
        std::uint64_t bit;
        bool positive;
    };
    std::vector<std::pair<Lit, Lit>> clauses;
    for (const auto& c : inst.clauses) {
        auto lit = [](int l) { return Lit{std::uint64_t(1) << (std::abs(l) - 1), l > 0}; };
        clauses.emplace_back(lit(c.lit1), lit(c.lit2));
    }
    auto count = [&](std::uint64_t mask) {
        std::uint64_t n = 0;
        for (const auto& [a, b] : clauses)
            n += (((mask & a.bit) != 0) == a.positive) || (((mask & b.bit) != 0) == b.positive);
        return n;
    };

    // Chunks of the mask space; each keeps its lowest-mask maximiser.
    const std::uint64_t total = std::uint64_t(1) << J;
    const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> best(chunks, {0, 0});
    detail::for_each_index(chunks, exec, [&](std::size_t c) {
        std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
        std::pair<std::uint64_t, std::uint64_t> b{0, lo};
        bool any = false;
        for (std::uint64_t m = lo; m < hi; ++m) {
            auto v = count(m);
            if (!any || v > b.first) b = {v, m}, any = true;
        }
        best[c] = b;
    });
    auto arg = best.front();
    for (const auto& b : best)
        if (b.first > arg.first) arg = b;

    Max2SatSolution out;
    out.satisfied = arg.first;
    out.assignment.resize(J);
    for (std::uint32_t j = 0; j < J; ++j) out.assignment[j] = (arg.second >> j) & 1;
    return out;
}

CoverSolution solve_vc_exact(const VcInstance& inst) {
    inst.validate();
    const std::uint32_t n = inst.n;
    if (n > 40) throw ValidationError("solve_vc_exact enumerates vertex subsets; n > 40 refused");
    std::vector<std::uint32_t> pick;
    // Lexicographic combinations of each size, smallest size first.
    for (std::uint32_t size = 0; size <= n; ++size) {
        pick.resize(size);
        for (std::uint32_t i = 0; i < size; ++i) pick[i] = i + 1;
        while (true) {
            if (inst.is_cover(pick)) return {pick};
            std::int64_t i = static_cast<std::int64_t>(size) - 1;
            while (i >= 0 && pick[i] == n - size + i + 1) --i;
            if (i < 0) break;
            ++pick[i];
            for (std::uint32_t k = static_cast<std::uint32_t>(i) + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
        }
    }
    throw Error("unreachable: the full vertex set is always a cover");
}

namespace {

class ChainSearch {
public:
    ChainSearch(const std::vector<std::uint64_t>& targets, BudgetTracker& tracker)
        : targets_(targets), tracker_(tracker), top_(targets.back()) {}

    bool run(std::size_t length) {
        chain_ = {1};
        limit_ = length;
        return dfs();
    }

    const std::vector<std::uint64_t>& chain() const { return chain_; }

private:
    bool dfs() {
        if (!tracker_.charge()) return false;
        std::uint64_t last = chain_.back();
        std::size_t missing = 0;
        for (auto t : targets_) {
            if (t > last) {
                ++missing;
            } else if (!std::binary_search(chain_.begin(), chain_.end(), t)) {
                return false;  // chain is increasing; t can no longer appear
            }
        }
        if (missing == 0) return true;
        std::size_t steps = chain_.size() - 1;
        if (steps >= limit_) return false;
        std::size_t left = limit_ - steps;
        if (missing > left) return false;
        // Doubling is the fastest possible growth.
        if (left < 64 && (last << left) < top_ && std::bit_width(last) + left < 64) return false;

        std::vector<std::uint64_t> next;
        for (std::size_t i = chain_.size(); i-- > 0;)
            for (std::size_t k = i + 1; k-- > 0;) {
                std::uint64_t s = chain_[i] + chain_[k];
                if (s > last && s <= top_) next.push_back(s);
            }
        std::sort(next.rbegin(), next.rend());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        for (auto s : next) {
            chain_.push_back(s);
            if (dfs()) return true;
            chain_.pop_back();
            if (tracker_.exhausted()) return false;
        }
        return false;
    }

    const std::vector<std::uint64_t>& targets_;
    BudgetTracker& tracker_;
    std::uint64_t top_;
    std::size_t limit_ = 0;
    std::vector<std::uint64_t> chain_;
};

}  // namespace

ChainSolution solve_addchain_exact(const AddChainInstance& inst, const SearchBudget& budget) {
    inst.validate();
    if (inst.max_target() > (std::uint64_t(1) << 62)) throw ValidationError("addition-chain targets above 2^62");
    BudgetTracker tracker(budget);
    ChainSearch search(inst.targets, tracker);
    // Lower bound: doublings needed to reach the largest target.
    std::size_t length = static_cast<std::size_t>(std::bit_width(inst.max_target()) - 1);
    for (;; ++length) {
        if (search.run(length)) return {search.chain()};
        tracker.check("solve_addchain_exact");
    }
}

}  // namespace tokhard
