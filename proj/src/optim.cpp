// Copyright 2026 The qcost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcost/optim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "qcost/error.hpp"

namespace qcost {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sanitize(double v) { return std::isnan(v) ? kInf : v; }

struct LocalResult {
  double value = kInf;
  std::vector<double> params;
  std::size_t evals = 0;
};

std::vector<double> uniform_start(CounterRng& rng, std::size_t dim, double radius) {
  std::vector<double> x(dim);
  for (auto& v : x) v = rng.uniform(-radius, radius);
  return x;
}

template <typename Local>
OptResult run_starts(std::size_t dim, const OptimizerConfig& cfg,
                     std::span<const std::vector<double>> seeded, const StartSampler& sampler,
                     Local&& local) {
  if (dim == 0) throw InputError("optimization dimension must be positive");
  cfg.validate();
  for (const auto& s : seeded) {
    if (s.size() != dim) throw InputError("seeded start has wrong dimension");
  }
  const std::size_t starts = std::max(cfg.restarts, seeded.size());
  OptResult out;
  out.best_value = kInf;
  out.per_start_values.reserve(starts);
  for (std::size_t j = 0; j < starts; ++j) {
    std::vector<double> x0;
    if (j < seeded.size()) {
      x0 = seeded[j];
    } else {
      CounterRng rng(cfg.seed, RngDomain::kOptimizerStart, j);
      x0 = sampler ? sampler(rng, dim) : uniform_start(rng, dim, cfg.start_radius);
    }
    LocalResult r = local(std::move(x0));
    out.evals_used += r.evals;
    out.per_start_values.push_back(r.value);
    if (out.best_params.empty() || r.value < out.best_value) {
      out.best_value = r.value;
      out.best_params = std::move(r.params);
      out.best_start = j;
    }
  }
  return out;
}

// Nelder-Mead with dimension-adaptive coefficients (Gao & Han). After the
// simplex collapses it is rebuilt once around the best vertex; the search ends
// when a rebuild no longer improves the value by more than ftol.
LocalResult nelder_mead(const Objective& f, std::vector<double> x0, const OptimizerConfig& cfg) {
  const std::size_t n = x0.size();
  const double nd = static_cast<double>(n);
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / nd;
  const double gamma = 0.75 - 1.0 / (2.0 * nd);
  const double delta = 1.0 - 1.0 / nd;

  LocalResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evals;
    return sanitize(f(x));
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  auto build = [&](const std::vector<double>& base, double step) {
    simplex.assign(n + 1, base);
    values[0] = eval(base);
    for (std::size_t i = 0; i < n; ++i) {
      const double h = base[i] != 0.0 ? step * std::max(1.0, std::abs(base[i])) : step;
      simplex[i + 1][i] += h;
      values[i + 1] = eval(simplex[i + 1]);
    }
  };

  const double step = 0.5;
  build(x0, step);
  double last_converged = kInf;
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  while (res.evals < cfg.max_evals_per_start) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double fspread = 0.0, xspread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      if (std::isfinite(values[i]) && std::isfinite(values[best])) {
        fspread = std::max(fspread, std::abs(values[i] - values[best]));
      } else if (values[i] != values[best]) {
        fspread = kInf;
      }
      for (std::size_t k = 0; k < n; ++k) {
        xspread = std::max(xspread, std::abs(simplex[i][k] - simplex[best][k]));
      }
    }
    if ((fspread <= cfg.ftol && xspread <= cfg.xtol) || xspread <= 1e-3 * cfg.xtol) {
      if (!(values[best] < last_converged - cfg.ftol)) break;
      last_converged = values[best];
      const auto base = simplex[best];
      build(base, std::max(100.0 * cfg.xtol, 1e-3));
      continue;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / nd;
    }
    for (std::size_t k = 0; k < n; ++k) xr[k] = centroid[k] + alpha * (centroid[k] - simplex[worst][k]);
    const double fr = eval(xr);
    if (fr < values[best]) {
      for (std::size_t k = 0; k < n; ++k) xe[k] = centroid[k] + beta * (xr[k] - centroid[k]);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    for (std::size_t k = 0; k < n; ++k) {
      xc[k] = outside ? centroid[k] + gamma * (xr[k] - centroid[k])
                      : centroid[k] - gamma * (centroid[k] - simplex[worst][k]);
    }
    const double fc = eval(xc);
    if (outside ? fc <= fr : fc < values[worst]) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[best][k] + delta * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const auto it = std::min_element(values.begin(), values.end());
  res.value = *it;
  res.params = simplex[static_cast<std::size_t>(it - values.begin())];
  return res;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

LocalResult lbfgs(const SmoothObjective& f, std::vector<double> x, const OptimizerConfig& cfg) {
  constexpr std::size_t kMemory = 12;
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxHalvings = 50;
  constexpr int kStallLimit = 5;
  const std::size_t n = x.size();

  LocalResult res;
  std::vector<double> g(n), g_new(n), x_new(n), d(n);
  auto eval = [&](const std::vector<double>& at, std::vector<double>& grad) {
    ++res.evals;
    return sanitize(f(at, grad));
  };

  double fx = eval(x, g);
  res.value = fx;
  res.params = x;
  if (!std::isfinite(fx)) return res;

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  int stall = 0;
  bool first = true;

  while (res.evals < cfg.max_evals_per_start) {
    // Two-loop recursion for d = -H g.
    d = g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] * dot(s_hist[k], d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * y_hist[k][i];
    }
    if (!s_hist.empty()) {
      const double scale = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (auto& v : d) v *= scale;
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * dot(y_hist[k], d);
      for (std::size_t i = 0; i < n; ++i) d[i] += s_hist[k][i] * (alpha[k] - beta);
    }
    for (auto& v : d) v = -v;
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = dot(g, d);
      if (!(slope < 0.0)) break;  // zero gradient
    }

    double step = 1.0;
    if (first || s_hist.empty()) step = std::min(1.0, 1.0 / std::max(inf_norm(g), 1e-300));
    double f_new = kInf;
    bool accepted = false;
    for (int h = 0; h < kMaxHalvings && res.evals < cfg.max_evals_per_start; ++h) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
      f_new = eval(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= fx + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (s_hist.empty()) break;
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      continue;
    }
    first = false;

    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - x[i];
      y[i] = g_new[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    const double improvement = fx - f_new;
    const double step_size = step * inf_norm(d);
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;

    if (improvement <= cfg.ftol * std::max(1.0, std::abs(fx))) {
      if (++stall >= kStallLimit) break;
    } else {
      stall = 0;
    }
    if (step_size <= cfg.xtol && stall > 0) break;
  }

  res.value = fx;
  res.params = std::move(x);
  return res;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1 || max_evals_per_start < 1) throw InputError("optimizer counts must be >= 1");
  if (!(xtol > 0.0) || !(ftol > 0.0)) throw InputError("optimizer tolerances must be positive");
  if (!(start_radius > 0.0)) throw InputError("start radius must be positive");
}

OptResult minimize(const Objective& objective, std::size_t dim, const OptimizerConfig& cfg,
                   std::span<const std::vector<double>> seeded_starts, const StartSampler& sampler) {
  return run_starts(dim, cfg, seeded_starts, sampler,
                    [&](std::vector<double> x0) { return nelder_mead(objective, std::move(x0), cfg); });
}

OptResult minimize_smooth(const SmoothObjective& objective, std::size_t dim,
                          const OptimizerConfig& cfg,
                          std::span<const std::vector<double>> seeded_starts,
                          const StartSampler& sampler) {
  return run_starts(dim, cfg, seeded_starts, sampler,
                    [&](std::vector<double> x0) { return lbfgs(objective, std::move(x0), cfg); });
}

ComplexMatrix param_to_unitary(std::span<const double> params, std::size_t d) {
  if (d == 0 || params.size() != d * d) {
    throw InputError("unitary parameterization needs d*d parameters");
  }
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = params[k++];
  const std::size_t off = d * (d - 1) / 2;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex z(params[k], params[k + off]);
      h(i, j) = z;
      h(j, i) = std::conj(z);
      ++k;
    }
  }
  RealVector values;
  ComplexMatrix vectors;
  kernel::eigensystem(h, values, vectors);
  ComplexVector phases(n);
  for (Eigen::Index i = 0; i < n; ++i) phases(i) = std::polar(1.0, values(i));
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

std::vector<double> param_to_simplex(std::span<const double> params) {
  if (params.empty()) return {};
  const double top = *std::max_element(params.begin(), params.end());
  std::vector<double> p(params.size());
  double total = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    p[i] = std::exp(params[i] - top);
    total += p[i];
  }
  for (auto& v : p) v /= total;
  return p;
}

ComplexVector param_to_unit_vector(std::span<const double> params, std::size_t d) {
  if (params.size() != 2 * d) throw InputError("unit vector parameterization needs 2*d parameters");
  ComplexVector v(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i)) = Complex(params[2 * i], params[2 * i + 1]);
  const double norm = v.norm();
  if (norm <= 1e-14) throw InputError("unit vector parameters are all zero");
  return v / norm;
}

}  // namespace qcost
