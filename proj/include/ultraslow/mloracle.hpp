#pragma once

// Mittag-Leffler oracle E_alpha(-x) for the single-order limit checks:
// power series for small arguments, the completely monotone spectral
// integral for large ones.

#include <Eigen/Core>

#include "ultraslow/weight.hpp"

namespace ultraslow::ml {

// E_alpha(-x) for alpha in (0,1], x >= 0.
double mittag_leffler_neg(double alpha, double x);

// sup over the grid of |v_box - E_alpha0(-lambda t^alpha0)| where v_box is
// the branch-cut relaxation solution for the normalized box weight of the
// given width centered at alpha0.
double single_order_limit_gap(double alpha0, double width, double lambda,
                              const Eigen::ArrayXd& t_grid, double rel_tol = 1e-9,
                              int threads = 0);

}  // namespace ultraslow::ml
