#pragma once

#include <cstdint>
#include <vector>

#include "tokhard/core.hpp"

namespace tokhard::detail {

// Exact change-making by branch and bound over coin counts, largest coin
// first. The first leaf is the greedy solution, so the incumbent is good early
// and the count loop can stop as soon as its lower bound reaches it.
template <class Int>
struct CoinSolver {
    std::vector<Int> desc;  // strictly decreasing denominations
    std::uint64_t max_nodes = 50'000'000;
    // With `capped`, only counts below `cap` are searched for; `found` stays
    // false when none exists.
    bool capped = false;
    Int cap{};
    std::uint64_t nodes = 0;
    Int best_count{};
    std::vector<Int> best, cur;
    bool found = false;

    void run(const Int& L) {
        found = false;
        nodes = 0;
        cur.assign(desc.size(), Int(0));
        best.assign(desc.size(), Int(0));
        if (capped) best_count = cap;
        if (L == 0) {
            if (capped && cap <= 0) return;
            found = true;
            best_count = 0;
            return;
        }
        if (!desc.empty()) dfs(0, L, Int(0));
    }

private:
    void dfs(std::size_t idx, const Int& rem, const Int& used) {
        if (++nodes > max_nodes) throw BudgetExhausted("change-making search exceeded its node budget");
        if (rem == 0) {
            take(used);
            return;
        }
        if (idx == desc.size()) return;
        const Int& d = desc[idx];
        if (idx + 1 == desc.size()) {
            if (rem % d == 0) {
                cur[idx] = rem / d;
                take(used + cur[idx]);
                cur[idx] = 0;
            }
            return;
        }
        const Int& next = desc[idx + 1];
        for (Int c = rem / d;; --c) {
            Int left = rem - c * d;
            Int lb = used + c + (left + next - 1) / next;
            // lb never decreases as c shrinks, since d > next.
            if ((found || capped) && lb >= best_count) break;
            cur[idx] = c;
            dfs(idx + 1, left, used + c);
            cur[idx] = 0;
            if (c == 0) break;
        }
    }

    void take(const Int& count) {
        if ((!found && !capped) || count < best_count) {
            found = true;
            best_count = count;
            best = cur;
        }
    }
};

}  // namespace tokhard::detail
