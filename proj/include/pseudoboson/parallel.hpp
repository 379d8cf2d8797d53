#pragma once

#include <cstddef>
#include <span>
#include <type_traits>

namespace pseudoboson {

enum class Exec { serial, parallel };

// Data-parallel index map.  Bodies must write only to their own slot so that
// serial and parallel execution produce bitwise-identical buffers.
template <class F>
void parallel_for(Exec exec, std::size_t n, F&& body) {
#ifdef _OPENMP
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)exec;
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// Pairwise reduction with a fixed association order; the result depends only
// on the element order, not on the thread count that filled the buffer.
template <class T>
T pairwise_sum(std::span<const T> v) {
    if (v.empty()) return T{};
    if (v.size() <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < v.size(); ++i) s += v[i];
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace pseudoboson
