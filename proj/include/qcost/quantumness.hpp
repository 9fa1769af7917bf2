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

// Local rank-1 von Neumann measurements and the one-way information deficit
//
//   Delta^{X|Y}(rho) = min_{Pi^X} D(rho, sum_i Pi_i^X rho Pi_i^X).

#pragma once

#include <string>
#include <vector>

#include "qcost/measures.hpp"
#include "qcost/optim.hpp"
#include "qcost/qmat.hpp"

namespace qcost {

/// Complete set of rank-1 orthogonal projectors on one subsystem, Pi_i = |u_i><u_i|
/// for the columns u_i of `unitary`.
class MeasurementBasis {
 public:
  /// Throws InputError unless `unitary` is square and unitary within 1e-10.
  MeasurementBasis(std::string subsystem, ComplexMatrix unitary);

  const std::string& subsystem() const { return subsystem_; }
  const ComplexMatrix& unitary() const { return unitary_; }
  std::size_t dim() const { return static_cast<std::size_t>(unitary_.rows()); }
  ComplexMatrix projector(std::size_t i) const;
  std::vector<ComplexMatrix> projectors() const;

 private:
  std::string subsystem_;
  ComplexMatrix unitary_;
};

MeasurementBasis computational_basis(const std::string& subsystem, std::size_t d);

/// sum_i Pi_i rho Pi_i with Pi_i embedded on the basis subsystem.
DensityMatrix measure_channel(const DensityMatrix& rho, const MeasurementBasis& basis);

/// D(rho, measure_channel(rho, basis)).
double deficit_for_basis(const DensityMatrix& rho, const MeasurementBasis& basis, DistanceKind kind);

struct DeficitResult {
  double value = 0.0;  // upper bound on the deficit
  MeasurementBasis basis;
  OptResult search;
};

/// Upper bound on the one-way deficit with the measurement on `subsystem`.
/// Restart 0 starts at the computational basis, so the value never exceeds
/// the computational-basis deficit.
DeficitResult one_way_deficit(const DensityMatrix& rho, const std::string& subsystem,
                              DistanceKind kind, const OptimizerConfig& cfg);

namespace kernel {

/// Dephasing in the basis given by the columns of `unitary` on `subsystem`.
ComplexMatrix measure_channel(const ComplexMatrix& rho, const SubsystemDims& dims,
                              const std::string& subsystem, const ComplexMatrix& unitary);

}  // namespace kernel

}  // namespace qcost
