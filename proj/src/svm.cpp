#include "mnsl/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <string>

#include "mnsl/error.hpp"

namespace mnsl {
namespace {

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double d = a[c] - b[c];
    s += d * d;
  }
  return std::exp(-gamma * s);
}

// LRU cache of kernel columns K(·, i), stored as float.
class KernelCache {
 public:
  KernelCache(const Matrix& x, double gamma, std::size_t budget_bytes)
      : x_(x), gamma_(gamma), slot_of_(x.rows(), -1) {
    const std::size_t n = x.rows();
    const std::size_t column_bytes = std::max<std::size_t>(1, n * sizeof(float));
    capacity_ = std::clamp<std::size_t>(budget_bytes / column_bytes, 2, std::max<std::size_t>(n, 2));
  }

  const float* column(std::size_t i) {
    if (slot_of_[i] >= 0) {
      auto& entry = entries_[static_cast<std::size_t>(slot_of_[i])];
      lru_.splice(lru_.begin(), lru_, entry.where);
      return entry.values.data();
    }
    std::size_t slot;
    if (entries_.size() < capacity_) {
      slot = entries_.size();
      entries_.emplace_back();
      entries_[slot].values.resize(x_.rows());
    } else {
      slot = lru_.back();
      lru_.pop_back();
      slot_of_[entries_[slot].owner] = -1;
    }
    auto& entry = entries_[slot];
    entry.owner = i;
    const auto xi = x_.row(i);
    for (std::size_t k = 0; k < x_.rows(); ++k)
      entry.values[k] = static_cast<float>(rbf(xi, x_.row(k), gamma_));
    lru_.push_front(slot);
    entry.where = lru_.begin();
    slot_of_[i] = static_cast<long>(slot);
    return entry.values.data();
  }

 private:
  struct Entry {
    std::vector<float> values;
    std::size_t owner = 0;
    std::list<std::size_t>::iterator where;
  };

  const Matrix& x_;
  double gamma_;
  std::size_t capacity_ = 2;
  std::vector<long> slot_of_;
  std::vector<Entry> entries_;
  std::list<std::size_t> lru_;
};

}  // namespace

SvmModel SvmModel::fit(const Dataset& d, const SvmOptions& options) {
  d.validate(true);
  if (!(options.cost > 0.0)) throw Error(ErrorKind::InvalidArgument, "svm: cost must be positive");
  if (!(options.gamma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "svm: gamma must be positive");
  const std::size_t n = d.size();
  const std::size_t p = d.dimension();

  SvmModel m;
  m.scaler_ = FeatureScaler::fit(d.features);
  m.gamma_ = options.gamma > 0.0 ? options.gamma : 1.0 / static_cast<double>(p);
  const Matrix x = m.scaler_.apply(d.features);
  const double c = options.cost;
  constexpr double kTau = 1e-12;

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = d.labels[i] == 1 ? 1.0 : -1.0;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // ∇(½αᵀQα − eᵀα) with Q_ij = y_i y_j K_ij
  KernelCache cache(x, m.gamma_, options.cache_bytes);

  auto in_up = [&](std::size_t t) { return y[t] > 0 ? alpha[t] < c : alpha[t] > 0.0; };
  auto in_low = [&](std::size_t t) { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < c; };

  std::uint64_t iter = 0;
  for (;; ++iter) {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t)
      if (in_up(t) && -y[t] * grad[t] >= gmax) {
        gmax = -y[t] * grad[t];
        i = t;
      }
    if (i == n) break;
    const float* ki = cache.column(i);

    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(t)) continue;
      const double yg = y[t] * grad[t];
      gmax2 = std::max(gmax2, yg);
      const double diff = gmax + yg;
      if (diff > 0.0) {
        double quad = 2.0 - 2.0 * static_cast<double>(ki[t]);
        if (quad <= 0.0) quad = kTau;
        const double obj = -(diff * diff) / quad;
        if (obj <= best_obj) {
          best_obj = obj;
          j = t;
        }
      }
    }
    if (gmax + gmax2 < options.tolerance || j == n) break;
    if (iter >= options.max_iterations)
      throw Error(ErrorKind::NonConvergence,
                  "svm: no convergence after " + std::to_string(options.max_iterations) +
                      " iterations");

    ki = cache.column(i);
    const float* kj = cache.column(j);
    const double kij = static_cast<double>(ki[j]);
    const double old_ai = alpha[i], old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = 2.0 - 2.0 * kij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = 2.0 - 2.0 * kij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }

    const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t)
      grad[t] += y[t] * (y[i] * static_cast<double>(ki[t]) * dai +
                         y[j] * static_cast<double>(kj[t]) * daj);
  }
  m.iterations_ = iter;

  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0)
        ub = std::min(ub, yg);
      else
        lb = std::max(lb, yg);
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0)
        ub = std::min(ub, yg);
      else
        lb = std::max(lb, yg);
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  m.rho_ = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);

  m.support_ = Matrix(0, p);
  for (std::size_t t = 0; t < n; ++t)
    if (alpha[t] > 0.0) {
      m.support_.append_row(x.row(t));
      m.coef_.push_back(alpha[t] * y[t]);
    }
  return m;
}

double SvmModel::decision_value(std::span<const double> x) const {
  const auto q = scaler_.apply(x);
  double f = -rho_;
  for (std::size_t s = 0; s < support_.rows(); ++s) f += coef_[s] * rbf(support_.row(s), q, gamma_);
  return f;
}

double SvmModel::score(std::span<const double> x) const {
  return 1.0 / (1.0 + std::exp(-decision_value(x)));
}

}  // namespace mnsl
