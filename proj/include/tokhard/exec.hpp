#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>

namespace tokhard {

// Every parallel kernel keeps a serial twin; tests compare the two.
enum class Exec { serial, parallel };

struct SearchBudget {
    std::uint64_t max_candidates = 4096;
    std::uint64_t max_nodes = 200'000'000;
    double time_limit_seconds = 120.0;

    void validate() const;
};

// Shared by all workers of one search. Workers poll `charge`; once it returns
// false they unwind and the caller throws BudgetExhausted outside any parallel
// region.
class BudgetTracker {
public:
    explicit BudgetTracker(const SearchBudget& budget);

    bool charge(std::uint64_t nodes = 1);
    bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
    std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }
    // Throws BudgetExhausted naming `what` if the budget ran out.
    void check(const std::string& what) const;

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> exhausted_{false};
};

}  // namespace tokhard
