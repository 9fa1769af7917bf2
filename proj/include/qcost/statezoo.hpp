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

// Named states and seeded random-state ensembles.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qcost/qmat.hpp"

namespace qcost {

enum class EnsembleFamily { kHaarPure, kGinibreMixed };

EnsembleFamily parse_ensemble_family(std::string_view text);
std::string to_string(EnsembleFamily family);

struct EnsembleSpec {
  EnsembleFamily family = EnsembleFamily::kGinibreMixed;
  SubsystemDims dims{{2, 2, 2}};
  std::size_t samples = 1;
  std::uint64_t seed = 42;
  /// GINIBRE_MIXED only; 0 means the total dimension.
  std::size_t ginibre_rank = 0;

  void validate() const;
  /// Sample `index` of the ensemble as a density matrix.
  DensityMatrix sample(std::size_t index) const;
};

/// (|000> + |111>)/sqrt(2) as a vector on (2,2,2).
ComplexVector ghz_vector();
DensityMatrix ghz_state();

/// |Phi+> = (|00> + |11>)/sqrt(2) on labels (A,B).
DensityMatrix bell_state();

/// The three-qubit state mixing 1/3 GHZ with weight 1/6 on each of
/// |001>, |010>, |101>, |110>. Separable across AC|B and AB|C.
DensityMatrix eta_state();

/// Computational basis product |i_0 i_1 ...>.
ComplexVector basis_vector(const SubsystemDims& dims, const std::vector<std::size_t>& digits);

/// Normalized i.i.d. standard complex Gaussian vector from stream (seed, index).
ComplexVector haar_pure(const SubsystemDims& dims, std::uint64_t seed, std::uint64_t index);

/// G G† / tr(G G†) with G a (dim x rank) complex Gaussian matrix.
DensityMatrix ginibre_mixed(const SubsystemDims& dims, std::size_t rank, std::uint64_t seed,
                            std::uint64_t index);

/// Haar-random d x d unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix haar_unitary(std::size_t d, std::uint64_t seed, std::uint64_t index);

}  // namespace qcost
