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

// Entropy and distance functionals. Logarithms are base 2 throughout.

#pragma once

#include <string>
#include <string_view>

#include "qcost/qmat.hpp"

namespace qcost {

/// RELATIVE_ENTROPY is asymmetric (argument order matters); TRACE and BURES
/// are symmetric.
enum class DistanceKind { kRelativeEntropy, kTrace, kBures };

std::string to_string(DistanceKind kind);
/// Accepts "relative_entropy" / "relative-entropy" / "re", "trace", "bures".
DistanceKind parse_distance_kind(std::string_view text);

/// Eigenvalues below this are treated as exactly zero in logarithms.
inline constexpr double kSupportCutoff = 1e-12;

/// Eigenvalues of sqrt(rho) sigma sqrt(rho) (norm <= 1) at or below this are
/// rounding noise and excluded from tr sqrt(.), where they would add ~3e-8.
inline constexpr double kRootDust = 1e-14;

double vn_entropy(const DensityMatrix& rho);

/// S(rho||sigma) in bits; +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
/// (tr sqrt(sqrt(a) b sqrt(a)))^2, clipped to [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
/// 2 (1 - sqrt(F)).
double bures_distance(const DensityMatrix& a, const DensityMatrix& b);

/// D(a, b) for the chosen functional.
double distance(DistanceKind kind, const DensityMatrix& a, const DensityMatrix& b);

namespace kernel {

double vn_entropy(const ComplexMatrix& rho);
double entropy_of_spectrum(const RealVector& values);
double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);
/// S(rho||sigma) with the spectral data of rho supplied by the caller.
double relative_entropy(const RealVector& rho_values, const ComplexMatrix& rho_vectors,
                        const ComplexMatrix& sigma);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double fidelity(const ComplexMatrix& a, const ComplexMatrix& b);
double bures_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double distance(DistanceKind kind, const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace kernel

}  // namespace qcost
