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

#include "qcost/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "qcost/error.hpp"

namespace qcost {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinLogit = -60.0;

std::vector<std::string> frame_order(const Bipartition& cut) {
  auto order = cut.left;
  order.insert(order.end(), cut.right.begin(), cut.right.end());
  return order;
}

std::vector<std::string> all_but(const std::vector<std::string>& labels, const std::string& skip) {
  std::vector<std::string> out;
  for (const auto& l : labels) {
    if (l != skip) out.push_back(l);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SeparableEnsemble

void SeparableEnsemble::validate() const {
  if (weights.empty()) throw InputError("separable ensemble is empty");
  if (left_vectors.size() != weights.size() || right_vectors.size() != weights.size()) {
    throw InputError("separable ensemble has inconsistent lengths");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InputError("separable ensemble has a negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("separable ensemble weights do not sum to 1");
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (std::abs(left_vectors[k].norm() - 1.0) > 1e-10 || std::abs(right_vectors[k].norm() - 1.0) > 1e-10) {
      throw InputError("separable ensemble vectors must be unit vectors");
    }
  }
}

DensityMatrix ensemble_to_state(const SeparableEnsemble& e, const SubsystemDims& dims) {
  e.validate();
  e.cut.validate(dims);
  const auto dx = static_cast<Eigen::Index>(dims.dim_of(e.cut.left));
  const auto dy = static_cast<Eigen::Index>(dims.dim_of(e.cut.right));
  ComplexMatrix sigma = ComplexMatrix::Zero(dx * dy, dx * dy);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e.left_vectors[k].size() != dx || e.right_vectors[k].size() != dy) {
      throw InputError("separable ensemble vector dimension does not match the cut");
    }
    const ComplexVector v = tensor_product(e.left_vectors[k], e.right_vectors[k]);
    sigma.noalias() += e.weights[k] * (v * v.adjoint());
  }
  const auto order = frame_order(e.cut);
  const SubsystemDims frame = dims.select(order);
  return DensityMatrix(permute_subsystems(sigma, frame, dims.labels()), dims);
}

std::size_t default_ensemble_size(const SubsystemDims& dims, const Bipartition& cut) {
  cut.validate(dims);
  const std::size_t d = dims.dim_of(cut.left) * dims.dim_of(cut.right);
  return d * d;
}

// ---------------------------------------------------------------------------
// Objective

namespace detail {

EnsembleObjective::EnsembleObjective(ComplexMatrix rho_xy, std::size_t dx, std::size_t dy,
                                     std::size_t terms, DistanceKind kind)
    : rho_(std::move(rho_xy)), dx_(dx), dy_(dy), terms_(terms), kind_(kind) {
  if (terms_ == 0) throw InputError("ensemble size must be >= 1");
  kernel::eigensystem(rho_, rho_values_, rho_vectors_);
  if (kind_ == DistanceKind::kBures) rho_sqrt_ = kernel::sqrt_psd(rho_);
}

ComplexMatrix EnsembleObjective::state(std::span<const double> params) const {
  const auto weights = param_to_simplex(params.subspan(0, terms_));
  const auto d = static_cast<Eigen::Index>(dx_ * dy_);
  ComplexMatrix v(d, static_cast<Eigen::Index>(terms_));
  const std::size_t a_off = terms_;
  const std::size_t b_off = terms_ + terms_ * 2 * dx_;
  for (std::size_t k = 0; k < terms_; ++k) {
    const ComplexVector a = param_to_unit_vector(params.subspan(a_off + k * 2 * dx_, 2 * dx_), dx_);
    const ComplexVector b = param_to_unit_vector(params.subspan(b_off + k * 2 * dy_, 2 * dy_), dy_);
    v.col(static_cast<Eigen::Index>(k)) = tensor_product(a, b);
  }
  const Eigen::Map<const RealVector> p(weights.data(), static_cast<Eigen::Index>(terms_));
  return v * p.cast<Complex>().asDiagonal() * v.adjoint();
}

double EnsembleObjective::operator()(std::span<const double> params, std::span<double> grad) const {
  const std::size_t K = terms_;
  const auto d = static_cast<Eigen::Index>(dx_ * dy_);
  const auto weights = param_to_simplex(params.subspan(0, K));
  const std::size_t a_off = K;
  const std::size_t b_off = K + K * 2 * dx_;

  std::vector<ComplexVector> as(K), bs(K);
  std::vector<double> a_norm(K), b_norm(K);
  ComplexMatrix v(d, static_cast<Eigen::Index>(K));
  for (std::size_t k = 0; k < K; ++k) {
    ComplexVector x(static_cast<Eigen::Index>(dx_)), y(static_cast<Eigen::Index>(dy_));
    for (std::size_t i = 0; i < dx_; ++i) {
      x(static_cast<Eigen::Index>(i)) = Complex(params[a_off + k * 2 * dx_ + 2 * i], params[a_off + k * 2 * dx_ + 2 * i + 1]);
    }
    for (std::size_t i = 0; i < dy_; ++i) {
      y(static_cast<Eigen::Index>(i)) = Complex(params[b_off + k * 2 * dy_ + 2 * i], params[b_off + k * 2 * dy_ + 2 * i + 1]);
    }
    a_norm[k] = x.norm();
    b_norm[k] = y.norm();
    if (a_norm[k] <= 1e-14 || b_norm[k] <= 1e-14) return kInf;
    as[k] = x / a_norm[k];
    bs[k] = y / b_norm[k];
    v.col(static_cast<Eigen::Index>(k)) = tensor_product(as[k], bs[k]);
  }
  const Eigen::Map<const RealVector> p(weights.data(), static_cast<Eigen::Index>(K));
  ComplexMatrix sigma = v * p.cast<Complex>().asDiagonal() * v.adjoint();
  sigma = 0.5 * (sigma + sigma.adjoint());

  // value and G = dD/dsigma (Hermitian, dD = tr(G dsigma))
  double value = 0.0;
  ComplexMatrix g_mat;
  const bool want_grad = !grad.empty();
  switch (kind_) {
    case DistanceKind::kRelativeEntropy: {
      RealVector mu;
      ComplexMatrix w;
      kernel::eigensystem(sigma, mu, w);
      ComplexMatrix rho_t = w.adjoint() * rho_ * w;
      double self = 0.0;
      for (double l : rho_values_) {
        if (l > kSupportCutoff) self += l * std::log2(l);
      }
      double cross = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        const double weight = rho_t(j, j).real();
        if (mu(j) <= kSupportCutoff) {
          if (weight > kSupportCutoff) return kInf;
          continue;
        }
        cross += weight * std::log2(mu(j));
      }
      value = self - cross;
      if (want_grad) {
        const RealVector mc = mu.cwiseMax(kSupportCutoff);
        Eigen::MatrixXd l(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
          for (Eigen::Index j = 0; j < d; ++j) {
            const double gap = mc(i) - mc(j);
            l(i, j) = std::abs(gap) > 1e-9 * std::max(mc(i), mc(j))
                          ? (std::log(mc(i)) - std::log(mc(j))) / gap
                          : 2.0 / (mc(i) + mc(j));
          }
        }
        rho_t.array() *= l.cast<Complex>().array();
        g_mat = -(w * rho_t * w.adjoint()) / std::numbers::ln2;
      }
      break;
    }
    case DistanceKind::kTrace: {
      RealVector lam;
      ComplexMatrix u;
      kernel::eigensystem(rho_ - sigma, lam, u);
      value = 0.5 * lam.cwiseAbs().sum();
      if (want_grad) {
        RealVector sgn(d);
        for (Eigen::Index i = 0; i < d; ++i) sgn(i) = lam(i) > 0.0 ? 1.0 : (lam(i) < 0.0 ? -1.0 : 0.0);
        g_mat = -0.5 * (u * sgn.cast<Complex>().asDiagonal() * u.adjoint());
      }
      break;
    }
    case DistanceKind::kBures: {
      ComplexMatrix m = rho_sqrt_ * sigma * rho_sqrt_;
      m = 0.5 * (m + m.adjoint());
      RealVector nu;
      ComplexMatrix q;
      kernel::eigensystem(m, nu, q);
      double root_f = 0.0;
      RealVector inv_root(d);
      for (Eigen::Index i = 0; i < d; ++i) {
        root_f += nu(i) > kRootDust ? std::sqrt(nu(i)) : 0.0;
        inv_root(i) = nu(i) > kSupportCutoff ? 1.0 / std::sqrt(nu(i)) : 0.0;
      }
      value = 2.0 * (1.0 - std::min(root_f, 1.0));
      if (want_grad) {
        g_mat = -(rho_sqrt_ * (q * inv_root.cast<Complex>().asDiagonal() * q.adjoint()) * rho_sqrt_);
      }
      break;
    }
  }
  if (!std::isfinite(value)) return kInf;
  if (!want_grad) return value;

  const ComplexMatrix gv = g_mat * v;
  std::vector<double> gk(K);
  double gbar = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    gk[k] = v.col(kk).dot(gv.col(kk)).real();
    gbar += weights[k] * gk[k];
  }
  for (std::size_t k = 0; k < K; ++k) {
    grad[k] = weights[k] * (gk[k] - gbar);
    const auto kk = static_cast<Eigen::Index>(k);
    // gv column k reshaped as dx x dy: w(x, y) = gv(x*dy + y, k)
    ComplexVector ma = ComplexVector::Zero(static_cast<Eigen::Index>(dx_));
    ComplexVector mb = ComplexVector::Zero(static_cast<Eigen::Index>(dy_));
    for (std::size_t x = 0; x < dx_; ++x) {
      for (std::size_t y = 0; y < dy_; ++y) {
        const Complex wxy = gv(static_cast<Eigen::Index>(x * dy_ + y), kk);
        ma(static_cast<Eigen::Index>(x)) += wxy * std::conj(bs[k](static_cast<Eigen::Index>(y)));
        mb(static_cast<Eigen::Index>(y)) += wxy * std::conj(as[k](static_cast<Eigen::Index>(x)));
      }
    }
    const ComplexVector ra = (ma - gk[k] * as[k]) / a_norm[k];
    const ComplexVector rb = (mb - gk[k] * bs[k]) / b_norm[k];
    for (std::size_t i = 0; i < dx_; ++i) {
      grad[a_off + k * 2 * dx_ + 2 * i] = 2.0 * weights[k] * ra(static_cast<Eigen::Index>(i)).real();
      grad[a_off + k * 2 * dx_ + 2 * i + 1] = 2.0 * weights[k] * ra(static_cast<Eigen::Index>(i)).imag();
    }
    for (std::size_t i = 0; i < dy_; ++i) {
      grad[b_off + k * 2 * dy_ + 2 * i] = 2.0 * weights[k] * rb(static_cast<Eigen::Index>(i)).real();
      grad[b_off + k * 2 * dy_ + 2 * i + 1] = 2.0 * weights[k] * rb(static_cast<Eigen::Index>(i)).imag();
    }
  }
  return value;
}

std::vector<double> EnsembleObjective::encode(const SeparableEnsemble& e) const {
  if (e.size() > terms_) throw InputError("warm start has more terms than the ensemble");
  std::vector<double> params(num_params(), 0.0);
  const std::size_t a_off = terms_;
  const std::size_t b_off = terms_ + terms_ * 2 * dx_;
  for (std::size_t k = 0; k < terms_; ++k) {
    const bool real_term = k < e.size();
    params[k] = real_term && e.weights[k] > 0.0 ? std::max(std::log(e.weights[k]), kMinLogit) : kMinLogit;
    for (std::size_t i = 0; i < dx_; ++i) {
      const Complex c = real_term ? e.left_vectors[k](static_cast<Eigen::Index>(i)) : Complex(i == 0 ? 1.0 : 0.0);
      params[a_off + k * 2 * dx_ + 2 * i] = c.real();
      params[a_off + k * 2 * dx_ + 2 * i + 1] = c.imag();
    }
    for (std::size_t i = 0; i < dy_; ++i) {
      const Complex c = real_term ? e.right_vectors[k](static_cast<Eigen::Index>(i)) : Complex(i == 0 ? 1.0 : 0.0);
      params[b_off + k * 2 * dy_ + 2 * i] = c.real();
      params[b_off + k * 2 * dy_ + 2 * i + 1] = c.imag();
    }
  }
  return params;
}

SeparableEnsemble EnsembleObjective::decode(std::span<const double> params, const Bipartition& cut) const {
  SeparableEnsemble e;
  e.cut = cut;
  e.weights = param_to_simplex(params.subspan(0, terms_));
  const std::size_t a_off = terms_;
  const std::size_t b_off = terms_ + terms_ * 2 * dx_;
  for (std::size_t k = 0; k < terms_; ++k) {
    e.left_vectors.push_back(param_to_unit_vector(params.subspan(a_off + k * 2 * dx_, 2 * dx_), dx_));
    e.right_vectors.push_back(param_to_unit_vector(params.subspan(b_off + k * 2 * dy_, 2 * dy_), dy_));
  }
  return e;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bounds

ReeResult ree_upper(const DensityMatrix& rho, const Bipartition& cut, DistanceKind kind,
                    std::size_t terms, const OptimizerConfig& cfg,
                    std::span<const SeparableEnsemble> warm_starts) {
  const SubsystemDims& dims = rho.dims();
  cut.validate(dims);
  if (terms == 0) terms = default_ensemble_size(dims, cut);
  const auto order = frame_order(cut);
  const SubsystemDims frame = dims.select(order);
  const std::size_t dx = dims.dim_of(cut.left);
  const std::size_t dy = dims.dim_of(cut.right);
  const ComplexMatrix rho_xy = permute_subsystems(rho.mat(), dims, order);

  const detail::EnsembleObjective objective(rho_xy, dx, dy, terms, kind);

  std::vector<std::vector<double>> seeded;
  for (const auto& w : warm_starts) {
    if (w.cut.left != cut.left || w.cut.right != cut.right) {
      throw InputError("warm start was built for a different cut");
    }
    seeded.push_back(objective.encode(w));
  }

  // Product of the marginals, written in their eigenbases; its support always
  // contains that of rho.
  {
    RealVector lx, ly;
    ComplexMatrix ux, uy;
    kernel::eigensystem(kernel::partial_trace(rho_xy, frame, cut.right), lx, ux);
    kernel::eigensystem(kernel::partial_trace(rho_xy, frame, cut.left), ly, uy);
    struct Term {
      double w;
      Eigen::Index i, j;
    };
    std::vector<Term> product_terms;
    for (Eigen::Index i = 0; i < lx.size(); ++i) {
      for (Eigen::Index j = 0; j < ly.size(); ++j) {
        product_terms.push_back({std::max(lx(i), 0.0) * std::max(ly(j), 0.0), i, j});
      }
    }
    std::stable_sort(product_terms.begin(), product_terms.end(),
                     [](const Term& a, const Term& b) { return a.w > b.w; });
    SeparableEnsemble start;
    start.cut = cut;
    CounterRng rng(cfg.seed, RngDomain::kOptimizerStart, std::uint64_t{1} << 40);
    const std::size_t filler = terms > product_terms.size() ? terms - product_terms.size() : 0;
    for (std::size_t k = 0; k < terms; ++k) {
      if (k < product_terms.size()) {
        start.weights.push_back(std::max(product_terms[k].w, 1e-14));
        start.left_vectors.push_back(ux.col(product_terms[k].i));
        start.right_vectors.push_back(uy.col(product_terms[k].j));
      } else {
        start.weights.push_back(1e-3 / static_cast<double>(filler));
        ComplexVector a(static_cast<Eigen::Index>(dx)), b(static_cast<Eigen::Index>(dy));
        for (auto& c : a) c = Complex(rng.normal(), rng.normal());
        for (auto& c : b) c = Complex(rng.normal(), rng.normal());
        start.left_vectors.push_back(a.normalized());
        start.right_vectors.push_back(b.normalized());
      }
    }
    seeded.push_back(objective.encode(start));
  }

  const StartSampler sampler = [&](CounterRng& rng, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t k = 0; k < terms; ++k) x[k] = rng.uniform(-1.0, 1.0);
    for (std::size_t k = terms; k < n; ++k) x[k] = rng.normal();
    return x;
  };
  auto fn = [&](std::span<const double> x, std::span<double> g) { return objective(x, g); };
  OptResult search = minimize_smooth(fn, objective.num_params(), cfg, seeded, sampler);

  SeparableEnsemble sigma = objective.decode(search.best_params, cut);
  const DensityMatrix sigma_state = ensemble_to_state(sigma, dims);
  const double value = distance(kind, rho, sigma_state);
  return ReeResult{value, std::move(sigma), std::move(search)};
}

double pure_state_entanglement(const ComplexVector& psi, const Bipartition& cut, const SubsystemDims& dims) {
  cut.validate(dims);
  if (psi.size() != static_cast<Eigen::Index>(dims.total())) {
    throw InputError("state vector dimension does not match dims");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw InputError("state vector is not normalized");
  const ComplexMatrix rho = psi * psi.adjoint();
  return kernel::vn_entropy(kernel::partial_trace(rho, dims, cut.right));
}

double coherent_info_lower(const DensityMatrix& rho, const Bipartition& cut) {
  cut.validate(rho.dims());
  const double s = vn_entropy(rho);
  const double sx = kernel::vn_entropy(kernel::partial_trace(rho.mat(), rho.dims(), cut.right));
  const double sy = kernel::vn_entropy(kernel::partial_trace(rho.mat(), rho.dims(), cut.left));
  return std::max({0.0, sx - s, sy - s});
}

double ppt_min_eigenvalue(const DensityMatrix& rho, const Bipartition& cut) {
  cut.validate(rho.dims());
  return kernel::eigenvalues(partial_transpose(rho, cut.left)).minCoeff();
}

double measured_separable_upper(const DensityMatrix& rho, const DensityMatrix& sigma,
                                const MeasurementBasis& basis, const Bipartition& sigma_cut) {
  if (rho.dims() != sigma.dims()) throw InputError("rho and sigma have different subsystems");
  const double lowest = ppt_min_eigenvalue(sigma, sigma_cut);
  if (lowest < -1e-6) {
    throw InputError("sigma is not PPT across " + sigma_cut.to_string() +
                     " (min eigenvalue " + std::to_string(lowest) + ")");
  }
  return relative_entropy(rho, measure_channel(sigma, basis));
}

double measured_separable_upper(const DensityMatrix& rho, const DensityMatrix& sigma,
                                const MeasurementBasis& basis) {
  const auto& labels = rho.labels();
  if (labels.size() != 3) throw InputError("tripartite state expected");
  if (basis.subsystem() != labels[2]) throw InputError("basis must act on the third subsystem");
  const Bipartition cut{all_but(labels, labels[1]), {labels[1]}};
  return measured_separable_upper(rho, sigma, basis, cut);
}

}  // namespace qcost
