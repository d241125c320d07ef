#include "mnsl/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mnsl/error.hpp"

namespace mnsl {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t d = start.size();
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "nelder_mead: empty start point");

  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return objective(x);
  };

  std::vector<std::vector<double>> simplex(d + 1, start);
  for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(d + 1);
  for (std::size_t i = 0; i <= d; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), reflected(d), trial(d);
  auto point = [&](double t, std::vector<double>& out) {
    // centroid + t·(centroid − worst)
    const auto& worst = simplex[order[d]];
    for (std::size_t k = 0; k < d; ++k) out[k] = centroid[k] + t * (centroid[k] - worst[k]);
  };

  while (evals < options.max_evaluations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const double best = values[order[0]];
    const double worst = values[order[d]];
    double spread = 0.0;
    for (std::size_t i = 1; i <= d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        spread = std::max(spread, std::abs(simplex[order[i]][k] - simplex[order[0]][k]));
    if (worst - best <= options.value_tolerance && spread <= options.step_tolerance) break;
    if (spread <= options.step_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[order[i]][k] / static_cast<double>(d);

    point(1.0, reflected);
    const double fr = eval(reflected);
    const double second_worst = values[order[d - 1]];
    if (fr < best) {
      point(2.0, trial);
      const double fe = eval(trial);
      if (fe < fr) {
        simplex[order[d]] = trial;
        values[order[d]] = fe;
      } else {
        simplex[order[d]] = reflected;
        values[order[d]] = fr;
      }
      continue;
    }
    if (fr < second_worst) {
      simplex[order[d]] = reflected;
      values[order[d]] = fr;
      continue;
    }
    if (fr < worst) {
      point(0.5, trial);  // outside contraction
      const double fc = eval(trial);
      if (fc <= fr) {
        simplex[order[d]] = trial;
        values[order[d]] = fc;
        continue;
      }
    } else {
      point(-0.5, trial);  // inside contraction
      const double fc = eval(trial);
      if (fc < worst) {
        simplex[order[d]] = trial;
        values[order[d]] = fc;
        continue;
      }
    }
    const auto& anchor = simplex[order[0]];
    for (std::size_t i = 1; i <= d; ++i) {
      auto& v = simplex[order[i]];
      for (std::size_t k = 0; k < d; ++k) v[k] = anchor[k] + 0.5 * (v[k] - anchor[k]);
      values[order[i]] = eval(v);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto bi = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[bi], values[bi], evals};
}

}  // namespace mnsl
