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

#include "qcost/quantumness.hpp"

#include <cmath>

#include "qcost/error.hpp"

namespace qcost {

MeasurementBasis::MeasurementBasis(std::string subsystem, ComplexMatrix unitary)
    : subsystem_(std::move(subsystem)), unitary_(std::move(unitary)) {
  if (unitary_.rows() != unitary_.cols() || unitary_.rows() < 2) {
    throw InputError("measurement basis needs a square unitary of size >= 2");
  }
  const auto n = unitary_.rows();
  const double defect = (unitary_.adjoint() * unitary_ - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw InputError("measurement basis matrix is not unitary");
}

ComplexMatrix MeasurementBasis::projector(std::size_t i) const {
  const auto col = unitary_.col(static_cast<Eigen::Index>(i));
  return col * col.adjoint();
}

std::vector<ComplexMatrix> MeasurementBasis::projectors() const {
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(projector(i));
  return out;
}

MeasurementBasis computational_basis(const std::string& subsystem, std::size_t d) {
  if (d < 2) throw InputError("basis dimension must be >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  return MeasurementBasis(subsystem, ComplexMatrix::Identity(n, n));
}

namespace kernel {

ComplexMatrix measure_channel(const ComplexMatrix& rho, const SubsystemDims& dims,
                              const std::string& subsystem, const ComplexMatrix& unitary) {
  const std::size_t t = dims.index_of(subsystem);
  const std::size_t d = dims.dims()[t];
  if (static_cast<std::size_t>(unitary.rows()) != d) {
    throw InputError("basis dimension does not match subsystem " + subsystem);
  }
  std::size_t after = 1;
  for (std::size_t k = t + 1; k < dims.size(); ++k) after *= dims.dims()[k];

  // Rotate into the measurement basis, drop coherences between different
  // outcomes of the measured digit, rotate back.
  const ComplexMatrix w = embed_local(unitary.adjoint(), subsystem, dims);
  ComplexMatrix rotated = w * rho * w.adjoint();
  const auto n = rotated.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto dc = (static_cast<std::size_t>(c) / after) % d;
    for (Eigen::Index r = 0; r < n; ++r) {
      if ((static_cast<std::size_t>(r) / after) % d != dc) rotated(r, c) = 0.0;
    }
  }
  return w.adjoint() * rotated * w;
}

}  // namespace kernel

DensityMatrix measure_channel(const DensityMatrix& rho, const MeasurementBasis& basis) {
  return DensityMatrix(kernel::measure_channel(rho.mat(), rho.dims(), basis.subsystem(), basis.unitary()),
                       rho.dims());
}

double deficit_for_basis(const DensityMatrix& rho, const MeasurementBasis& basis, DistanceKind kind) {
  return distance(kind, rho, measure_channel(rho, basis));
}

DeficitResult one_way_deficit(const DensityMatrix& rho, const std::string& subsystem,
                              DistanceKind kind, const OptimizerConfig& cfg) {
  const std::size_t d = rho.dims().dim_of(subsystem);
  const SubsystemDims& dims = rho.dims();

  // For the relative entropy the deficit is S(rho') - S(rho); only the
  // spectrum of rho' is needed per evaluation.
  const double s_rho = vn_entropy(rho);
  auto objective = [&](std::span<const double> params) {
    const ComplexMatrix u = param_to_unitary(params, d);
    const ComplexMatrix measured = kernel::measure_channel(rho.mat(), dims, subsystem, u);
    if (kind == DistanceKind::kRelativeEntropy) return kernel::vn_entropy(measured) - s_rho;
    return kernel::distance(kind, rho.mat(), measured);
  };

  const std::vector<std::vector<double>> seeded{std::vector<double>(d * d, 0.0)};
  OptResult search = minimize(objective, d * d, cfg, seeded);

  MeasurementBasis basis(subsystem, param_to_unitary(search.best_params, d));
  double value = deficit_for_basis(rho, basis, kind);
  // The computational basis is always a candidate.
  MeasurementBasis comp = computational_basis(subsystem, d);
  const double comp_value = deficit_for_basis(rho, comp, kind);
  if (comp_value < value) {
    value = comp_value;
    basis = comp;
  }
  return DeficitResult{value, std::move(basis), std::move(search)};
}

}  // namespace qcost
