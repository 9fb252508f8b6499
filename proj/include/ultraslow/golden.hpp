#pragma once

// Golden-value regression: a frozen manifest of kernel, spectral-density,
// normalization and Mittag-Leffler values recomputed and compared at stored
// tolerances.

#include <string>
#include <vector>

namespace ultraslow::golden {

struct Entry {
  std::string name;
  std::string kind;    // k_kernel | g_kernel | spectral_G | normalization | ml
  std::string weight;  // catalog key, when applicable
  double lambda = 0.0;
  double t = 0.0;      // also r for spectral_G
  double alpha = 0.0;  // ml
  double x = 0.0;      // ml
  double value = 0.0;
  double tol = 0.0;
};

// The canonical entry set with freshly computed values.
std::vector<Entry> compute_canonical();

// Recompute the quantity an entry describes.
double recompute(const Entry& e);

void write_manifest(const std::string& path, const std::vector<Entry>& entries);
std::vector<Entry> read_manifest(const std::string& path);

struct CheckResult {
  std::string name;
  double stored = 0.0;
  double computed = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Compare the stored manifest (golden_dir/catalog.json) against recomputed
// values.
std::vector<CheckResult> check(const std::string& golden_dir);

// ULTRASLOW_GOLDEN_DIR when set, otherwise the given fallback.
std::string golden_dir_or(const std::string& fallback);

}  // namespace ultraslow::golden
