#pragma once

#include <cstddef>
#include <functional>

namespace miniweyl {

/// Worker cap: MINIWEYL_THREADS if set (>= 1), else hardware concurrency.
std::size_t threadBudget();

/// Runs body(i) for i in [0, n).  Items must be independent; results should
/// be written to preallocated slots so the outcome is order-independent.
/// Serial when the budget is 1 or n is small.  The first exception thrown
/// by any item is rethrown on the calling thread.
void parallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace miniweyl
