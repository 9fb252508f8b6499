#pragma once

// Deterministic parallelism helpers.  Work is distributed over threads by
// fixed striding into preallocated slots, so results are identical for any
// thread count.

#include <Eigen/Core>
#include <functional>

namespace ultraslow {

// Process-wide default worker count (set once by the CLI).
void set_default_threads(int n);
int default_threads();

// Runs body(i) for i in [0, n).  Each index writes only to its own output
// slot; the partition of indices over threads never affects the numbers.
void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index)>& body,
                  int threads = 0);

// Pairwise (cascade) summation; deterministic for a fixed operand order.
double pairwise_sum(const double* x, Eigen::Index n);
double pairwise_sum(const Eigen::ArrayXd& x);

}  // namespace ultraslow
