#pragma once

#include <cstddef>
#include <exception>

#include "tokhard/exec.hpp"

namespace tokhard::detail {

template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < n; ++i) f(i);
    } else {
        for (std::size_t i = 0; i < n; ++i) f(i);
    }
}

// Exceptions may not cross an OpenMP region boundary; the first one is kept
// and rethrown after the loop.
template <class F>
void for_each_index_checked(std::size_t n, Exec exec, F&& f) {
    std::exception_ptr error;
    for_each_index(n, exec, [&](std::size_t i) {
        try {
            f(i);
        } catch (...) {
#pragma omp critical(tokhard_parallel_error)
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
}

}  // namespace tokhard::detail
