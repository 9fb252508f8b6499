#include "ultraslow/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace ultraslow {

namespace {
std::atomic<int> g_threads{1};
}

void set_default_threads(int n) { g_threads.store(n > 0 ? n : 1); }

int default_threads() { return g_threads.load(); }

void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index)>& body,
                  int threads) {
  if (threads <= 0) threads = default_threads();
  if (threads == 1 || n <= 1) {
    for (Eigen::Index i = 0; i < n; ++i) body(i);
    return;
  }
  const int workers = static_cast<int>(std::min<Eigen::Index>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (Eigen::Index i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

double pairwise_sum(const double* x, Eigen::Index n) {
  if (n <= 4) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const Eigen::Index half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double pairwise_sum(const Eigen::ArrayXd& x) { return pairwise_sum(x.data(), x.size()); }

}  // namespace ultraslow
