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

// Dense complex linear algebra on composite Hilbert spaces.
//
// Global basis index convention for ordered labels (X_0, X_1, ..., X_{n-1})
// with dimensions (d_0, ..., d_{n-1}):
//
//   i = x_0 * (d_1 * ... * d_{n-1}) + x_1 * (d_2 * ... * d_{n-1}) + ... + x_{n-1}
//
// i.e. the last label varies fastest. For (A,B,C) this is
// i = a*(d_B*d_C) + b*d_C + c. Every routine and file format uses it.

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qcost {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr std::size_t kDefaultMaxTotalDim = 64;

inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kNegativeEigTol = 1e-9;

/// Ordered subsystem dimensions with unique labels.
class SubsystemDims {
 public:
  /// Labels default to "A", "B", "C", ... when omitted.
  explicit SubsystemDims(std::vector<std::size_t> dims,
                         std::vector<std::string> labels = {},
                         std::size_t max_total_dim = kDefaultMaxTotalDim);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t total() const { return total_; }

  /// Position of `label`; throws InputError if absent.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const;
  std::size_t dim_of(std::string_view label) const { return dims_[index_of(label)]; }

  /// Product of the dimensions of `labels`.
  std::size_t dim_of(const std::vector<std::string>& labels) const;

  /// Sub-dims restricted to `labels`, in the order given.
  SubsystemDims select(const std::vector<std::string>& labels) const;

  friend bool operator==(const SubsystemDims& a, const SubsystemDims& b) {
    return a.dims_ == b.dims_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::size_t total_ = 1;
};

/// Validated density operator: Hermitian, unit trace, positive semidefinite.
///
/// Construction symmetrizes the input, clips eigenvalues in [-1e-9, 0) to zero
/// and renormalizes. More negative eigenvalues, a trace off by more than 1e-9
/// or a Hermiticity defect above 1e-9 raise InputError.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix mat, SubsystemDims dims);

  static DensityMatrix pure(const ComplexVector& psi, SubsystemDims dims);
  static DensityMatrix maximally_mixed(SubsystemDims dims);

  const ComplexMatrix& mat() const { return mat_; }
  const SubsystemDims& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return dims_.labels(); }
  std::size_t dim() const { return dims_.total(); }

  double purity() const;

 private:
  ComplexMatrix mat_;
  SubsystemDims dims_;
};

/// A grouping X|Y of all labels of a state into two nonempty sides.
struct Bipartition {
  std::vector<std::string> left;
  std::vector<std::string> right;

  /// Throws InputError unless left and right partition dims' labels.
  void validate(const SubsystemDims& dims) const;

  /// Parses "AC|B". With a comma anywhere ("A,C|B") sides are comma lists;
  /// otherwise each character is a label when all labels are one character
  /// long, and each side is a single label when they are not.
  static Bipartition parse(std::string_view text, const SubsystemDims& dims);

  std::string to_string() const;
};

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // orthonormal columns, matching `values`
};

// ---------------------------------------------------------------------------
// Operations

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Traces out `traced`; the remaining labels keep their original order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& traced);
DensityMatrix reduced_state(const DensityMatrix& rho, const std::vector<std::string>& kept);

/// Transpose on the tensor factors named in `part`. Hermitian, maybe not PSD.
ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& part);
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemDims& dims,
                                const std::vector<std::string>& part);

/// Reorders tensor factors so that the result's labels are `new_order`.
/// Pure entry reshuffling, so the inverse permutation restores the input bit for bit.
DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::string>& new_order);
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 const std::vector<std::string>& new_order);
ComplexVector permute_subsystems(const ComplexVector& v, const SubsystemDims& dims,
                                 const std::vector<std::string>& new_order);

/// Throws InputError when `m` is not Hermitian within 1e-9.
EigenSystem eig_hermitian(const ComplexMatrix& m);

/// I ⊗ ... ⊗ op ⊗ ... ⊗ I with `op` in the slot of `target`.
ComplexMatrix embed_local(const ComplexMatrix& op, std::string_view target, const SubsystemDims& dims);

// ---------------------------------------------------------------------------
// Unchecked kernels shared by the optimizers. Inputs are assumed Hermitian.

namespace kernel {

/// Eigenvalues ascending.
RealVector eigenvalues(const ComplexMatrix& m);

/// Eigen-decomposition, eigenvalues ascending.
void eigensystem(const ComplexMatrix& m, RealVector& values, ComplexMatrix& vectors);

/// V f(Λ) V† for Hermitian m.
template <typename F>
ComplexMatrix apply_function(const ComplexMatrix& m, F&& f) {
  RealVector values;
  ComplexMatrix vectors;
  eigensystem(m, values, vectors);
  RealVector fv(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) fv(i) = f(values(i));
  return vectors * fv.asDiagonal() * vectors.adjoint();
}

/// Positive square root after clipping negative dust.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

/// Partial trace over the factors named in `traced`, remaining order kept.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                            const std::vector<std::string>& traced);

}  // namespace kernel

}  // namespace qcost
