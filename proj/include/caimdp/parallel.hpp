#pragma once

#include <exception>
#include <vector>

namespace caimdp {

enum class Execution { Serial, Parallel };

/// Runs fn(0..n-1). In parallel mode the iterations are spread over OpenMP
/// threads; the exception of the lowest failing index is rethrown, as in the
/// serial loop.
template <class Fn>
void parallel_for(int n, Execution exec, Fn&& fn) {
  if (exec == Execution::Serial || n < 2) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace caimdp
