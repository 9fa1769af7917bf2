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

// Relative entropy of entanglement (and its trace/Bures analogues) as upper
// bounds from explicit separable ensembles, plus cheap certified lower bounds
// and the PPT test.

#pragma once

#include <span>
#include <vector>

#include "qcost/measures.hpp"
#include "qcost/optim.hpp"
#include "qcost/qmat.hpp"
#include "qcost/quantumness.hpp"

namespace qcost {

/// sum_k p_k |a_k><a_k| ⊗ |b_k><b_k| across `cut`. The a_k live on the
/// tensor product of cut.left (in that order), the b_k on cut.right.
struct SeparableEnsemble {
  Bipartition cut;
  std::vector<double> weights;
  std::vector<ComplexVector> left_vectors;
  std::vector<ComplexVector> right_vectors;

  std::size_t size() const { return weights.size(); }
  /// Weights form a distribution (1e-12), vectors are unit (1e-10).
  void validate() const;
};

/// Materializes the ensemble in the canonical label order of `dims`.
DensityMatrix ensemble_to_state(const SeparableEnsemble& e, const SubsystemDims& dims);

/// (d_X d_Y)^2, enough terms to represent any separable state.
std::size_t default_ensemble_size(const SubsystemDims& dims, const Bipartition& cut);

struct ReeResult {
  double value = 0.0;  // upper bound on the entanglement across the cut
  SeparableEnsemble sigma;
  OptResult search;
};

/// Minimizes D(rho, sigma) over separable ensembles with `terms` members
/// (0 selects default_ensemble_size). Warm starts with fewer terms are padded
/// with negligible-weight members, so the result never exceeds their value.
ReeResult ree_upper(const DensityMatrix& rho, const Bipartition& cut, DistanceKind kind,
                    std::size_t terms, const OptimizerConfig& cfg,
                    std::span<const SeparableEnsemble> warm_starts = {});

/// Entropy of the reduced state on cut.left; exact for pure states.
double pure_state_entanglement(const ComplexVector& psi, const Bipartition& cut, const SubsystemDims& dims);

/// max(0, S(rho_X) - S(rho), S(rho_Y) - S(rho)): a lower bound on the
/// relative entropy of entanglement across the cut.
double coherent_info_lower(const DensityMatrix& rho, const Bipartition& cut);

/// Smallest eigenvalue of the partial transpose on cut.left.
double ppt_min_eigenvalue(const DensityMatrix& rho, const Bipartition& cut);

/// S(rho || sum_i Pi_i sigma Pi_i). `sigma` must be PPT across `sigma_cut`
/// (InputError below -1e-6); the measured state is then an upper-bound witness
/// for the entanglement across (basis subsystem)|rest when sigma is separable.
double measured_separable_upper(const DensityMatrix& rho, const DensityMatrix& sigma,
                                const MeasurementBasis& basis, const Bipartition& sigma_cut);

/// Tripartite form: labels (A,B,C), basis on C, sigma PPT across AC|B.
double measured_separable_upper(const DensityMatrix& rho, const DensityMatrix& sigma,
                                const MeasurementBasis& basis);

namespace detail {

/// Objective and gradient of D(rho, sigma(params)) in the frame where rho's
/// factors are ordered (left..., right...). Exposed for gradient tests.
class EnsembleObjective {
 public:
  EnsembleObjective(ComplexMatrix rho_xy, std::size_t dx, std::size_t dy, std::size_t terms,
                    DistanceKind kind);

  std::size_t num_params() const { return terms_ * (1 + 2 * dx_ + 2 * dy_); }
  double operator()(std::span<const double> params, std::span<double> grad) const;
  ComplexMatrix state(std::span<const double> params) const;

  std::vector<double> encode(const SeparableEnsemble& e) const;
  SeparableEnsemble decode(std::span<const double> params, const Bipartition& cut) const;

 private:
  ComplexMatrix rho_;
  std::size_t dx_, dy_, terms_;
  DistanceKind kind_;
  RealVector rho_values_;
  ComplexMatrix rho_vectors_;
  ComplexMatrix rho_sqrt_;
};

}  // namespace detail

}  // namespace qcost
