#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mnsl {

struct NelderMeadOptions {
  std::size_t max_evaluations = 300;
  double initial_step = 1.0;
  double value_tolerance = 1e-10;  // stop when the simplex values span less
  double step_tolerance = 1e-8;    // or its vertices lie this close together
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free minimization with the standard reflection (1),
/// expansion (2), contraction (1/2) and shrink (1/2) coefficients. The
/// initial simplex is `start` plus `initial_step` along each axis.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace mnsl
