#include "tokhard/exec.hpp"

#include "tokhard/core.hpp"

namespace tokhard {

void SearchBudget::validate() const {
    if (max_candidates == 0 || max_nodes == 0 || !(time_limit_seconds > 0))
        throw ValidationError("search budget limits must be positive");
}

BudgetTracker::BudgetTracker(const SearchBudget& budget)
    : budget_(budget), start_(std::chrono::steady_clock::now()) {
    budget_.validate();
}

bool BudgetTracker::charge(std::uint64_t nodes) {
    if (exhausted()) return false;
    auto total = nodes_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
    if (total > budget_.max_nodes) {
        exhausted_ = true;
        return false;
    }
    // Clock reads are comparatively slow; sample them.
    if ((total & 0x3ff) < nodes) {
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        if (elapsed.count() > budget_.time_limit_seconds) {
            exhausted_ = true;
            return false;
        }
    }
    return true;
}

void BudgetTracker::check(const std::string& what) const {
    if (exhausted())
        throw BudgetExhausted(what + ": search budget exhausted after " + std::to_string(nodes()) + " nodes");
}

}  // namespace tokhard
