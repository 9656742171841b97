// Deterministic data parallelism.
//
// Work is cut into chunks whose boundaries depend only on the problem size and
// the grain, never on the number of threads, and each chunk writes a disjoint
// slice of the output. Results are therefore bitwise identical for any thread
// count.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dunkl {

// 0 means "all cores".
void set_thread_count(int n);
int thread_count();

// Calls body(begin, end) over [0, n) in fixed chunks of at most `grain`.
void parallel_for(std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

// Sum in a fixed binary tree order.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

} // namespace dunkl
