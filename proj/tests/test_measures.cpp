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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "qcost/error.hpp"
#include "qcost/measures.hpp"
#include "qcost/quantumness.hpp"
#include "qcost/statezoo.hpp"

using namespace qcost;

namespace {

const SubsystemDims kQubit({2});
const SubsystemDims k222({2, 2, 2});

DensityMatrix diag_qubit(double p) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  return DensityMatrix(m, kQubit);
}

DensityMatrix basis_qubit(int i) {
  ComplexVector v = ComplexVector::Zero(2);
  v(i) = 1.0;
  return DensityMatrix::pure(v, kQubit);
}

}  // namespace

TEST_CASE("distance kind names") {
  CHECK(parse_distance_kind("relative_entropy") == DistanceKind::kRelativeEntropy);
  CHECK(parse_distance_kind("re") == DistanceKind::kRelativeEntropy);
  CHECK(parse_distance_kind("trace") == DistanceKind::kTrace);
  CHECK(parse_distance_kind("bures") == DistanceKind::kBures);
  CHECK(parse_distance_kind(to_string(DistanceKind::kBures)) == DistanceKind::kBures);
  CHECK_THROWS_AS(parse_distance_kind("hilbert-schmidt"), InputError);
}

TEST_CASE("vn_entropy") {
  CHECK(vn_entropy(basis_qubit(0)) == doctest::Approx(0.0));
  CHECK(std::abs(vn_entropy(DensityMatrix::maximally_mixed(kQubit)) - 1.0) < 1e-12);
  CHECK(std::abs(vn_entropy(DensityMatrix::maximally_mixed(k222)) - 3.0) < 1e-12);
  const double eta_expected = std::log2(3.0) / 3.0 + 2.0 * std::log2(6.0) / 3.0;
  CHECK(std::abs(vn_entropy(eta_state()) - eta_expected) < 1e-12);
  CHECK(std::abs(vn_entropy(eta_state()) - 2.251629167) < 1e-9);

  oracle::Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho(rng.density(6), SubsystemDims({2, 3}));
    const double s = vn_entropy(rho);
    CHECK(std::abs(s - oracle::entropy(rho.mat())) < 1e-9);
    CHECK(s >= 0.0);
    CHECK(s <= std::log2(6.0) + 1e-12);
  }
}

TEST_CASE("relative_entropy") {
  oracle::Rng rng(12);
  const DensityMatrix rho(rng.density(8), k222);
  CHECK(std::abs(relative_entropy(rho, rho)) < 1e-9);

  const DensityMatrix eta = eta_state();
  const DensityMatrix eta_m = measure_channel(eta, computational_basis("C", 2));
  CHECK(std::abs(relative_entropy(eta, eta_m) - 1.0 / 3.0) < 1e-9);

  CHECK(relative_entropy(basis_qubit(0), basis_qubit(1)) == std::numeric_limits<double>::infinity());
  // Support of rho inside that of sigma: finite.
  CHECK(std::isfinite(relative_entropy(basis_qubit(0), diag_qubit(0.5))));
  CHECK(std::abs(relative_entropy(basis_qubit(0), diag_qubit(0.5)) - 1.0) < 1e-12);

  // Classical pair: Kullback-Leibler divergence.
  const double p = 0.3, q = 0.8;
  const double kl = p * std::log2(p / q) + (1 - p) * std::log2((1 - p) / (1 - q));
  CHECK(std::abs(relative_entropy(diag_qubit(p), diag_qubit(q)) - kl) < 1e-12);

  for (int t = 0; t < 20; ++t) {
    const DensityMatrix a(rng.density(4), SubsystemDims({2, 2}));
    const DensityMatrix b(rng.density(4), SubsystemDims({2, 2}));
    CHECK(std::abs(relative_entropy(a, b) - oracle::relative_entropy_full_rank(a.mat(), b.mat())) < 1e-9);
  }

  CHECK_THROWS_AS(relative_entropy(rho, DensityMatrix::maximally_mixed(SubsystemDims({2, 4}))), InputError);
}

TEST_CASE("trace_distance") {
  oracle::Rng rng(13);
  const DensityMatrix rho(rng.density(4), SubsystemDims({2, 2}));
  CHECK(trace_distance(rho, rho) < 1e-12);
  CHECK(std::abs(trace_distance(basis_qubit(0), basis_qubit(1)) - 1.0) < 1e-12);
  CHECK(std::abs(trace_distance(diag_qubit(0.2), diag_qubit(0.65)) - 0.45) < 1e-12);
  CHECK_THROWS_AS(trace_distance(rho, basis_qubit(0)), InputError);
}

TEST_CASE("fidelity and bures_distance") {
  oracle::Rng rng(14);
  const DensityMatrix rho(rng.density(4), SubsystemDims({2, 2}));
  CHECK(std::abs(fidelity(rho, rho) - 1.0) < 1e-9);
  CHECK(bures_distance(rho, rho) < 1e-9);

  for (int t = 0; t < 10; ++t) {
    const ComplexVector a = rng.unit_vector(4), b = rng.unit_vector(4);
    const DensityMatrix pa = DensityMatrix::pure(a, SubsystemDims({2, 2}));
    const DensityMatrix pb = DensityMatrix::pure(b, SubsystemDims({2, 2}));
    CHECK(std::abs(fidelity(pa, pb) - std::norm(a.dot(b))) < 1e-9);
  }

  const double p = 0.3, q = 0.9;
  const double bhatt = std::sqrt(p * q) + std::sqrt((1 - p) * (1 - q));
  CHECK(std::abs(fidelity(diag_qubit(p), diag_qubit(q)) - bhatt * bhatt) < 1e-12);

  CHECK(std::abs(fidelity(basis_qubit(0), basis_qubit(1))) < 1e-12);
  CHECK(std::abs(bures_distance(basis_qubit(0), basis_qubit(1)) - 2.0) < 1e-12);

  for (int t = 0; t < 10; ++t) {
    const DensityMatrix a(rng.density(4), SubsystemDims({2, 2}));
    const DensityMatrix b(rng.density(4), SubsystemDims({2, 2}));
    // Independent fidelity: (sum of singular values of sqrt(a) sqrt(b))^2.
    auto sq = [](const ComplexMatrix& m) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
      return ComplexMatrix(es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                           es.eigenvectors().adjoint());
    };
    Eigen::JacobiSVD<ComplexMatrix> svd(sq(a.mat()) * sq(b.mat()));
    const double f = std::pow(svd.singularValues().sum(), 2);
    CHECK(std::abs(fidelity(a, b) - f) < 1e-9);
    CHECK(std::abs(bures_distance(a, b) - 2.0 * (1.0 - std::sqrt(f))) < 1e-9);
    CHECK(fidelity(a, b) >= 0.0);
    CHECK(fidelity(a, b) <= 1.0);
  }
}

TEST_CASE("distance dispatch") {
  const DensityMatrix a = diag_qubit(0.3), b = diag_qubit(0.6);
  CHECK(distance(DistanceKind::kRelativeEntropy, a, b) == relative_entropy(a, b));
  CHECK(distance(DistanceKind::kTrace, a, b) == trace_distance(a, b));
  CHECK(distance(DistanceKind::kBures, a, b) == bures_distance(a, b));
}

TEST_CASE("property: nonnegativity and the zero set of the relative entropy") {
  oracle::Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix a(rng.density(4), SubsystemDims({2, 2}));
    const DensityMatrix b(rng.density(4), SubsystemDims({2, 2}));
    const double s = relative_entropy(a, b);
    CHECK(s >= -1e-9);
    CHECK((std::abs(s) <= 1e-9) == (trace_distance(a, b) <= 1e-6));
    CHECK(std::abs(relative_entropy(a, a)) <= 1e-9);
    CHECK(trace_distance(a, a) <= 1e-6);
  }
}

TEST_CASE("property: Pinsker bound") {
  oracle::Rng rng(16);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix a(rng.density(8), k222);
    const DensityMatrix b(rng.density(8), k222);
    const double dt = trace_distance(a, b);
    CHECK(relative_entropy(a, b) >= 2.0 / std::log(2.0) * dt * dt - 1e-9);
  }
}

TEST_CASE("property: unitary invariance") {
  oracle::Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const SubsystemDims d({2, 2});
    const DensityMatrix a(rng.density(4), d);
    const DensityMatrix b(rng.density(4), d);
    const ComplexMatrix u = rng.unitary(4);
    const DensityMatrix ua(u * a.mat() * u.adjoint(), d);
    const DensityMatrix ub(u * b.mat() * u.adjoint(), d);
    CHECK(std::abs(vn_entropy(a) - vn_entropy(ua)) < 1e-9);
    CHECK(std::abs(relative_entropy(a, b) - relative_entropy(ua, ub)) < 1e-9);
    CHECK(std::abs(trace_distance(a, b) - trace_distance(ua, ub)) < 1e-9);
    CHECK(std::abs(fidelity(a, b) - fidelity(ua, ub)) < 1e-9);
    CHECK(std::abs(bures_distance(a, b) - bures_distance(ua, ub)) < 1e-9);
  }
}

TEST_CASE("property: trace distance triangle inequality") {
  oracle::Rng rng(18);
  for (int t = 0; t < 200; ++t) {
    const DensityMatrix a(rng.density(4), SubsystemDims({2, 2}));
    const DensityMatrix b(rng.density(4), SubsystemDims({2, 2}));
    const DensityMatrix c(rng.density(4), SubsystemDims({2, 2}));
    CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-9);
  }
}

TEST_CASE("property: Bures form triangle statistics") {
  // 2(1 - sqrt F) is not a metric in general; its square root is. Only the
  // root form is asserted, the plain form is tallied.
  oracle::Rng rng(19);
  int plain_violations = 0;
  for (int t = 0; t < 200; ++t) {
    const DensityMatrix a(rng.density(2), kQubit);
    const DensityMatrix b(rng.density(2), kQubit);
    const DensityMatrix c(rng.density(2), kQubit);
    const double ab = bures_distance(a, b), bc = bures_distance(b, c), ac = bures_distance(a, c);
    CHECK(std::sqrt(ac) <= std::sqrt(ab) + std::sqrt(bc) + 1e-9);
    if (ac > ab + bc + 1e-9) ++plain_violations;
  }
  MESSAGE("plain Bures-form triangle violations: " << plain_violations << " / 200");
}
