#include "mnsl/logistic.hpp"

#include <cmath>

#include "mnsl/error.hpp"

namespace mnsl {

bool solve_spd(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * n + k] * a[j * n + k];
    if (!(diag > 0.0)) return false;
    const double l = std::sqrt(diag);
    a[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / l;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
    b[i] = s / a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[k * n + i] * b[k];
    b[i] = s / a[i * n + i];
  }
  return true;
}

namespace {

double sigmoid(double eta) {
  return eta >= 0 ? 1.0 / (1.0 + std::exp(-eta)) : std::exp(eta) / (1.0 + std::exp(eta));
}

// log(1 + exp(eta)) without overflow.
double softplus(double eta) { return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta)); }

}  // namespace

LogisticModel LogisticModel::fit(const Dataset& d, const LogisticOptions& options) {
  d.validate(true);
  const std::size_t n = d.size();
  const std::size_t p = d.dimension();
  const std::size_t q = p + 1;  // intercept first

  LogisticModel m;
  m.scaler_ = FeatureScaler::fit(d.features);
  const Matrix x = m.scaler_.apply(d.features);
  std::vector<double> beta(q, 0.0);

  auto eta_of = [&](const std::vector<double>& b, std::size_t r) {
    double eta = b[0];
    const auto row = x.row(r);
    for (std::size_t c = 0; c < p; ++c) eta += b[c + 1] * row[c];
    return eta;
  };
  auto objective = [&](const std::vector<double>& b) {
    double nll = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double eta = eta_of(b, r);
      nll += softplus(eta) - (d.labels[r] == 1 ? eta : 0.0);
    }
    double pen = 0.0;
    for (std::size_t c = 1; c < q; ++c) pen += b[c] * b[c];
    return nll + 0.5 * options.ridge * pen;
  };

  double current = objective(beta);
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    std::vector<double> hess(q * q, 0.0);
    std::vector<double> grad(q, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const double mu = sigmoid(eta_of(beta, r));
      const double w = std::max(mu * (1.0 - mu), 1e-12);
      const double resid = (d.labels[r] == 1 ? 1.0 : 0.0) - mu;
      const auto row = x.row(r);
      for (std::size_t a = 0; a < q; ++a) {
        const double xa = a == 0 ? 1.0 : row[a - 1];
        grad[a] += xa * resid;
        for (std::size_t b = 0; b <= a; ++b) {
          const double xb = b == 0 ? 1.0 : row[b - 1];
          hess[a * q + b] += w * xa * xb;
        }
      }
    }
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = a + 1; b < q; ++b) hess[a * q + b] = hess[b * q + a];
    for (std::size_t c = 1; c < q; ++c) {
      hess[c * q + c] += options.ridge;
      grad[c] -= options.ridge * beta[c];
    }
    if (!solve_spd(hess, grad, q))
      throw Error(ErrorKind::NonConvergence, "logistic: singular information matrix");

    // Step halving guards against overshooting on near-separable data.
    double step = 1.0;
    std::vector<double> trial(q);
    double next = current;
    for (int halvings = 0; halvings < 30; ++halvings, step *= 0.5) {
      for (std::size_t c = 0; c < q; ++c) trial[c] = beta[c] + step * grad[c];
      next = objective(trial);
      if (next <= current) break;
    }
    double max_change = 0.0;
    for (std::size_t c = 0; c < q; ++c) max_change = std::max(max_change, std::abs(trial[c] - beta[c]));
    if (next > current) break;
    beta = trial;
    const double improvement = current - next;
    current = next;
    if (max_change < options.tolerance || improvement < options.tolerance * (1.0 + std::abs(current)))
      break;
  }

  m.intercept_ = beta[0];
  m.coef_.assign(beta.begin() + 1, beta.end());
  return m;
}

double LogisticModel::linear_predictor(std::span<const double> x) const {
  const auto z = scaler_.apply(x);
  double eta = intercept_;
  for (std::size_t c = 0; c < coef_.size(); ++c) eta += coef_[c] * z[c];
  return eta;
}

double LogisticModel::score(std::span<const double> x) const { return sigmoid(linear_predictor(x)); }

}  // namespace mnsl
