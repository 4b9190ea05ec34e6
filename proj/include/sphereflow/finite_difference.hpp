#pragma once

#include <array>
#include <span>
#include <vector>

namespace sphereflow {

/// Fornberg's algorithm: weights c[k][j] such that
///   f^{(k)}(x0) ~ sum_j c[k][j] f(nodes[j]),  k = 0..max_order.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes,
                                                  int max_order);

/// Centered five-point stencils with truncation error O(h^4).
template <class T, class F>
T central_d1(F&& f, T x, T h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

template <class T, class F>
T central_d2(F&& f, T x, T h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

}  // namespace sphereflow
