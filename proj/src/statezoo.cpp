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

#include "qcost/statezoo.hpp"

#include <cmath>

#include <Eigen/QR>

#include "qcost/error.hpp"
#include "qcost/random.hpp"

namespace qcost {

EnsembleFamily parse_ensemble_family(std::string_view text) {
  if (text == "haar-pure" || text == "haar_pure") return EnsembleFamily::kHaarPure;
  if (text == "ginibre" || text == "ginibre-mixed" || text == "ginibre_mixed") {
    return EnsembleFamily::kGinibreMixed;
  }
  throw InputError("unknown ensemble family: " + std::string(text));
}

std::string to_string(EnsembleFamily family) {
  return family == EnsembleFamily::kHaarPure ? "haar-pure" : "ginibre";
}

void EnsembleSpec::validate() const {
  if (samples < 1) throw InputError("ensemble needs at least one sample");
  if (ginibre_rank > dims.total()) throw InputError("ginibre rank exceeds total dimension");
}

DensityMatrix EnsembleSpec::sample(std::size_t index) const {
  if (family == EnsembleFamily::kHaarPure) {
    return DensityMatrix::pure(haar_pure(dims, seed, index), dims);
  }
  return ginibre_mixed(dims, ginibre_rank == 0 ? dims.total() : ginibre_rank, seed, index);
}

ComplexVector ghz_vector() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v;
}

DensityMatrix ghz_state() { return DensityMatrix::pure(ghz_vector(), SubsystemDims({2, 2, 2})); }

DensityMatrix bell_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v, SubsystemDims({2, 2}));
}

DensityMatrix eta_state() {
  const ComplexVector ghz = ghz_vector();
  ComplexMatrix m = ghz * ghz.adjoint() / 3.0;
  // |abc> has index 4a + 2b + c.
  for (int idx : {0b001, 0b010, 0b101, 0b110}) m(idx, idx) += 1.0 / 6.0;
  return DensityMatrix(m, SubsystemDims({2, 2, 2}));
}

ComplexVector basis_vector(const SubsystemDims& dims, const std::vector<std::size_t>& digits) {
  if (digits.size() != dims.size()) throw InputError("one digit per subsystem is required");
  std::size_t index = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= dims.dims()[k]) throw InputError("basis digit out of range");
    index = index * dims.dims()[k] + digits[k];
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dims.total()));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

ComplexVector haar_pure(const SubsystemDims& dims, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, RngDomain::kHaarPure, index);
  ComplexVector v(static_cast<Eigen::Index>(dims.total()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

DensityMatrix ginibre_mixed(const SubsystemDims& dims, std::size_t rank, std::uint64_t seed,
                            std::uint64_t index) {
  if (rank < 1 || rank > dims.total()) throw InputError("ginibre rank must be in [1, dim]");
  CounterRng rng(seed, RngDomain::kGinibre, index);
  ComplexMatrix g(static_cast<Eigen::Index>(dims.total()), static_cast<Eigen::Index>(rank));
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(re, im);
    }
  }
  ComplexMatrix m = g * g.adjoint();
  m = 0.5 * (m + m.adjoint());
  m /= m.trace().real();
  return DensityMatrix(std::move(m), dims);
}

ComplexMatrix haar_unitary(std::size_t d, std::uint64_t seed, std::uint64_t index) {
  if (d < 1) throw InputError("unitary dimension must be positive");
  CounterRng rng(seed, RngDomain::kUnitary, index);
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix g(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

}  // namespace qcost
