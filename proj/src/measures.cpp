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

#include "qcost/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcost/error.hpp"

namespace qcost {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_dims(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims().dims() != b.dims().dims()) {
    throw InputError("states have different subsystem dimensions");
  }
}

}  // namespace

std::string to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::kRelativeEntropy: return "relative_entropy";
    case DistanceKind::kTrace: return "trace";
    case DistanceKind::kBures: return "bures";
  }
  return "unknown";
}

DistanceKind parse_distance_kind(std::string_view text) {
  if (text == "relative_entropy" || text == "relative-entropy" || text == "re") {
    return DistanceKind::kRelativeEntropy;
  }
  if (text == "trace") return DistanceKind::kTrace;
  if (text == "bures") return DistanceKind::kBures;
  throw InputError("unknown distance kind: " + std::string(text));
}

namespace kernel {

double entropy_of_spectrum(const RealVector& values) {
  double s = 0.0;
  for (double v : values) {
    if (v > kSupportCutoff) s -= v * std::log2(v);
  }
  return std::max(s, 0.0);
}

double vn_entropy(const ComplexMatrix& rho) { return entropy_of_spectrum(eigenvalues(rho)); }

double relative_entropy(const RealVector& rho_values, const ComplexMatrix& rho_vectors,
                        const ComplexMatrix& sigma) {
  RealVector mu;
  ComplexMatrix w;
  eigensystem(sigma, mu, w);
  // overlap(i, j) = |<u_i|w_j>|^2
  const Eigen::MatrixXd overlap = (rho_vectors.adjoint() * w).cwiseAbs2();
  double cross = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    double weight = 0.0;
    for (Eigen::Index i = 0; i < rho_values.size(); ++i) {
      if (rho_values(i) > kSupportCutoff) weight += rho_values(i) * overlap(i, j);
    }
    if (mu(j) <= kSupportCutoff) {
      if (weight > kSupportCutoff) return kInf;
      continue;
    }
    cross += weight * std::log2(mu(j));
  }
  double self = 0.0;
  for (double v : rho_values) {
    if (v > kSupportCutoff) self += v * std::log2(v);
  }
  return self - cross;
}

double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  RealVector lambda;
  ComplexMatrix u;
  eigensystem(rho, lambda, u);
  return relative_entropy(lambda, u, sigma);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix diff = a - b;
  return 0.5 * eigenvalues(diff).cwiseAbs().sum();
}

double fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  const ComplexMatrix root = sqrt_psd(a);
  const ComplexMatrix inner = root * b * root;
  double tr = 0.0;
  for (double v : eigenvalues(0.5 * (inner + inner.adjoint()))) {
    if (v > kRootDust) tr += std::sqrt(v);
  }
  return std::clamp(tr * tr, 0.0, 1.0);
}

double bures_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 2.0 * (1.0 - std::sqrt(fidelity(a, b)));
}

double distance(DistanceKind kind, const ComplexMatrix& a, const ComplexMatrix& b) {
  switch (kind) {
    case DistanceKind::kRelativeEntropy: return relative_entropy(a, b);
    case DistanceKind::kTrace: return trace_distance(a, b);
    case DistanceKind::kBures: return bures_distance(a, b);
  }
  throw InputError("unknown distance kind");
}

}  // namespace kernel

double vn_entropy(const DensityMatrix& rho) { return kernel::vn_entropy(rho.mat()); }

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dims(rho, sigma);
  return kernel::relative_entropy(rho.mat(), sigma.mat());
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dims(a, b);
  return kernel::trace_distance(a.mat(), b.mat());
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dims(a, b);
  return kernel::fidelity(a.mat(), b.mat());
}

double bures_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dims(a, b);
  return kernel::bures_distance(a.mat(), b.mat());
}

double distance(DistanceKind kind, const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dims(a, b);
  return kernel::distance(kind, a.mat(), b.mat());
}

}  // namespace qcost
