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

#include "qcost/qmat.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "qcost/error.hpp"

namespace qcost {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 26) {
      labels.emplace_back(1, static_cast<char>('A' + i));
    } else {
      labels.push_back("S" + std::to_string(i));
    }
  }
  return labels;
}

// Row-major strides: stride[k] = prod_{j>k} dims[j].
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

// For each index of the permuted space, the index it came from.
// perm[k] is the old position of the factor placed at new position k.
std::vector<Eigen::Index> permutation_map(const std::vector<std::size_t>& old_dims,
                                          const std::vector<std::size_t>& perm) {
  const auto old_strides = strides_of(old_dims);
  std::vector<std::size_t> new_dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = old_dims[perm[k]];
  const std::size_t total =
      std::accumulate(old_dims.begin(), old_dims.end(), std::size_t{1}, std::multiplies<>());
  std::vector<Eigen::Index> map(total);
  std::vector<std::size_t> digits(perm.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t old = 0;
    for (std::size_t k = 0; k < perm.size(); ++k) old += digits[k] * old_strides[perm[k]];
    map[n] = static_cast<Eigen::Index>(old);
    for (std::size_t k = perm.size(); k-- > 0;) {
      if (++digits[k] < new_dims[k]) break;
      digits[k] = 0;
    }
  }
  return map;
}

std::vector<std::size_t> permutation_of(const SubsystemDims& dims,
                                        const std::vector<std::string>& new_order) {
  if (new_order.size() != dims.size()) {
    throw InputError("permutation must list every label exactly once");
  }
  std::vector<std::size_t> perm;
  std::vector<bool> seen(dims.size(), false);
  for (const auto& label : new_order) {
    const std::size_t i = dims.index_of(label);
    if (seen[i]) throw InputError("label repeated in permutation: " + label);
    seen[i] = true;
    perm.push_back(i);
  }
  return perm;
}

std::vector<std::string> permuted_labels(const SubsystemDims& dims,
                                         const std::vector<std::string>& new_order) {
  (void)permutation_of(dims, new_order);
  return new_order;
}

SubsystemDims permuted_dims(const SubsystemDims& dims, const std::vector<std::string>& new_order) {
  std::vector<std::size_t> d;
  for (const auto& label : new_order) d.push_back(dims.dim_of(label));
  return SubsystemDims(std::move(d), permuted_labels(dims, new_order), dims.total());
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

// ---------------------------------------------------------------------------
// SubsystemDims

SubsystemDims::SubsystemDims(std::vector<std::size_t> dims, std::vector<std::string> labels,
                             std::size_t max_total_dim)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) throw InputError("at least one subsystem is required");
  if (labels_.empty()) labels_ = default_labels(dims_.size());
  if (labels_.size() != dims_.size()) {
    throw InputError("labels and dims have different lengths");
  }
  std::set<std::string> unique;
  for (const auto& l : labels_) {
    if (l.empty()) throw InputError("empty subsystem label");
    if (!unique.insert(l).second) throw InputError("duplicate subsystem label: " + l);
  }
  for (std::size_t d : dims_) {
    if (d < 2) throw InputError("subsystem dimensions must be >= 2");
    total_ *= d;
    if (total_ > max_total_dim) {
      throw InputError("total dimension exceeds cap of " + std::to_string(max_total_dim));
    }
  }
}

std::size_t SubsystemDims::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw InputError("unknown subsystem label: " + std::string(label));
}

bool SubsystemDims::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SubsystemDims::dim_of(const std::vector<std::string>& labels) const {
  std::size_t d = 1;
  for (const auto& l : labels) d *= dim_of(l);
  return d;
}

SubsystemDims SubsystemDims::select(const std::vector<std::string>& labels) const {
  std::vector<std::size_t> d;
  for (const auto& l : labels) d.push_back(dim_of(l));
  return SubsystemDims(std::move(d), labels, total_);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix mat, SubsystemDims dims)
    : mat_(std::move(mat)), dims_(std::move(dims)) {
  const auto n = static_cast<Eigen::Index>(dims_.total());
  if (mat_.rows() != n || mat_.cols() != n) {
    throw InputError("matrix is " + std::to_string(mat_.rows()) + "x" +
                     std::to_string(mat_.cols()) + ", dims require " + std::to_string(n));
  }
  if (!mat_.allFinite()) throw InputError("matrix has non-finite entries");
  if (max_abs(mat_ - mat_.adjoint()) > kHermitianTol) {
    throw InputError("matrix is not Hermitian");
  }
  mat_ = (0.5 * (mat_ + mat_.adjoint())).eval();
  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InputError("trace is " + std::to_string(tr) + ", expected 1");
  }
  RealVector values;
  ComplexMatrix vectors;
  kernel::eigensystem(mat_, values, vectors);
  const double lowest = values.size() ? values.minCoeff() : 0.0;
  if (lowest < -kNegativeEigTol) {
    throw InputError("matrix is not positive semidefinite (eigenvalue " +
                     std::to_string(lowest) + ")");
  }
  // Eigenvalues in [-1e-13, 0) and trace defects below 1e-13 are round-off
  // and kept as is.
  if (lowest < -1e-13) {
    values = values.cwiseMax(0.0);
    mat_ = vectors * values.asDiagonal() * vectors.adjoint();
  }
  const double clipped_trace = mat_.trace().real();
  if (std::abs(clipped_trace - 1.0) > 1e-13) mat_ /= clipped_trace;
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, SubsystemDims dims) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-9) throw InputError("state vector is not normalized");
  const ComplexVector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint(), std::move(dims));
}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemDims dims) {
  const auto n = static_cast<Eigen::Index>(dims.total());
  return DensityMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n), std::move(dims));
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

// ---------------------------------------------------------------------------
// Bipartition

void Bipartition::validate(const SubsystemDims& dims) const {
  if (left.empty() || right.empty()) throw InputError("both sides of a cut must be nonempty");
  std::vector<bool> seen(dims.size(), false);
  for (const auto* side : {&left, &right}) {
    for (const auto& label : *side) {
      const std::size_t i = dims.index_of(label);
      if (seen[i]) throw InputError("label appears twice in cut: " + label);
      seen[i] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError("cut " + to_string() + " does not cover every label");
  }
}

Bipartition Bipartition::parse(std::string_view text, const SubsystemDims& dims) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
    throw InputError("cut must have the form X|Y: " + std::string(text));
  }
  // Comma lists when any comma is present; otherwise one character per label
  // if all labels are single characters, else the whole side is one label.
  const bool commas = text.find(',') != std::string_view::npos;
  const bool chars = std::all_of(dims.labels().begin(), dims.labels().end(),
                                 [](const std::string& l) { return l.size() == 1; });
  auto split_side = [&](std::string_view side) {
    std::vector<std::string> out;
    if (!commas && !chars) {
      out.emplace_back(side);
    } else if (commas) {
      std::size_t start = 0;
      while (start <= side.size()) {
        const auto comma = side.find(',', start);
        const auto piece = side.substr(start, comma == std::string_view::npos ? side.npos : comma - start);
        if (piece.empty()) throw InputError("empty label in cut: " + std::string(text));
        out.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else {
      for (char c : side) out.emplace_back(1, c);
    }
    return out;
  };
  Bipartition cut{split_side(text.substr(0, bar)), split_side(text.substr(bar + 1))};
  cut.validate(dims);
  return cut;
}

std::string Bipartition::to_string() const {
  auto join = [](const std::vector<std::string>& v) {
    bool single = std::all_of(v.begin(), v.end(), [](const auto& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i && !single) out += ',';
      out += v[i];
    }
    return out;
  };
  return join(left) + "|" + join(right);
}

// ---------------------------------------------------------------------------
// Operations

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  auto dims = a.dims().dims();
  auto labels = a.labels();
  dims.insert(dims.end(), b.dims().dims().begin(), b.dims().dims().end());
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return DensityMatrix(tensor_product(a.mat(), b.mat()), SubsystemDims(dims, labels));
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 const std::vector<std::string>& new_order) {
  const auto perm = permutation_of(dims, new_order);
  const auto map = permutation_map(dims.dims(), perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = m(map[r], map[c]);
  }
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, const SubsystemDims& dims,
                                 const std::vector<std::string>& new_order) {
  const auto perm = permutation_of(dims, new_order);
  const auto map = permutation_map(dims.dims(), perm);
  ComplexVector out(static_cast<Eigen::Index>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(map[i]);
  return out;
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, const std::vector<std::string>& new_order) {
  return DensityMatrix(permute_subsystems(rho.mat(), rho.dims(), new_order),
                       permuted_dims(rho.dims(), new_order));
}

namespace kernel {

RealVector eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void eigensystem(const ComplexMatrix& m, RealVector& values, ComplexMatrix& vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  values = solver.eigenvalues();
  vectors = solver.eigenvectors();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  return apply_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                            const std::vector<std::string>& traced) {
  std::vector<std::string> kept;
  for (const auto& l : dims.labels()) {
    if (std::find(traced.begin(), traced.end(), l) == traced.end()) kept.push_back(l);
  }
  for (const auto& l : traced) (void)dims.index_of(l);
  if (kept.empty() || kept.size() + traced.size() != dims.size()) {
    throw InputError("traced labels must be a proper subset of the state's labels");
  }
  auto order = kept;
  order.insert(order.end(), traced.begin(), traced.end());
  const ComplexMatrix p = permute_subsystems(m, dims, order);
  const auto dk = static_cast<Eigen::Index>(dims.dim_of(kept));
  const auto dt = static_cast<Eigen::Index>(dims.dim_of(traced));
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index t = 0; t < dt; ++t) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      for (Eigen::Index i = 0; i < dk; ++i) out(i, j) += p(i * dt + t, j * dt + t);
    }
  }
  return out;
}

}  // namespace kernel

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& traced) {
  if (traced.empty()) throw InputError("nothing to trace out");
  std::vector<std::string> kept;
  for (const auto& l : rho.labels()) {
    if (std::find(traced.begin(), traced.end(), l) == traced.end()) kept.push_back(l);
  }
  ComplexMatrix out = kernel::partial_trace(rho.mat(), rho.dims(), traced);
  return DensityMatrix(std::move(out), rho.dims().select(kept));
}

DensityMatrix reduced_state(const DensityMatrix& rho, const std::vector<std::string>& kept) {
  std::vector<std::string> traced;
  for (const auto& l : kept) (void)rho.dims().index_of(l);
  for (const auto& l : rho.labels()) {
    if (std::find(kept.begin(), kept.end(), l) == kept.end()) traced.push_back(l);
  }
  if (traced.empty()) return rho;
  return partial_trace(rho, traced);
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemDims& dims,
                                const std::vector<std::string>& part) {
  if (part.empty()) throw InputError("partial transpose needs at least one label");
  std::vector<bool> flip(dims.size(), false);
  for (const auto& l : part) flip[dims.index_of(l)] = true;
  const auto strides = strides_of(dims.dims());
  const auto n = static_cast<Eigen::Index>(dims.total());
  ComplexMatrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      Eigen::Index r2 = 0, c2 = 0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        const auto s = static_cast<Eigen::Index>(strides[k]);
        const auto d = static_cast<Eigen::Index>(dims.dims()[k]);
        const Eigen::Index dr = (r / s) % d;
        const Eigen::Index dc = (c / s) % d;
        r2 += (flip[k] ? dc : dr) * s;
        c2 += (flip[k] ? dr : dc) * s;
      }
      out(r2, c2) = m(r, c);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<std::string>& part) {
  return partial_transpose(rho.mat(), rho.dims(), part);
}

EigenSystem eig_hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("eig_hermitian needs a square matrix");
  if (max_abs(m - m.adjoint()) > kHermitianTol) {
    throw InputError("eig_hermitian input is not Hermitian");
  }
  RealVector values;
  ComplexMatrix vectors;
  kernel::eigensystem(m, values, vectors);
  const Eigen::Index n = values.size();
  EigenSystem out{std::vector<double>(static_cast<std::size_t>(n)), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values[static_cast<std::size_t>(i)] = values(n - 1 - i);
    out.vectors.col(i) = vectors.col(n - 1 - i);
  }
  return out;
}

ComplexMatrix embed_local(const ComplexMatrix& op, std::string_view target, const SubsystemDims& dims) {
  const std::size_t t = dims.index_of(target);
  const auto d = static_cast<Eigen::Index>(dims.dims()[t]);
  if (op.rows() != d || op.cols() != d) {
    throw InputError("operator dimension does not match subsystem " + std::string(target));
  }
  std::size_t before = 1, after = 1;
  for (std::size_t k = 0; k < t; ++k) before *= dims.dims()[k];
  for (std::size_t k = t + 1; k < dims.size(); ++k) after *= dims.dims()[k];
  const auto ib = static_cast<Eigen::Index>(before);
  const auto ia = static_cast<Eigen::Index>(after);
  return tensor_product(tensor_product(ComplexMatrix::Identity(ib, ib), op),
                        ComplexMatrix::Identity(ia, ia));
}

}  // namespace qcost
