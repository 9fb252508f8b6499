#pragma once

// Shared test fixtures: catalog lookup and cached kernel pairs (the g-table
// build is the expensive part, so tests share instances).

#include "ultraslow/laplace.hpp"
#include "ultraslow/weight.hpp"

namespace testutil {

inline const ultraslow::WeightFunction& weight(const std::string& name) {
  for (const auto& [key, w] : ultraslow::catalog()) {
    if (key == name) return w;
  }
  throw std::runtime_error("unknown catalog weight " + name);
}

inline const ultraslow::laplace::KernelPair& pair_const1() {
  static const auto kp = ultraslow::laplace::KernelPair::make(weight("const1"));
  return kp;
}

inline const ultraslow::laplace::KernelPair& pair_ind_half() {
  static const auto kp = ultraslow::laplace::KernelPair::make(weight("ind_half"));
  return kp;
}

}  // namespace testutil
