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

#include "oracles.hpp"
#include "qcost/entanglement.hpp"
#include "qcost/error.hpp"
#include "qcost/measures.hpp"
#include "qcost/quantumness.hpp"
#include "qcost/statezoo.hpp"

using namespace qcost;

namespace {

const SubsystemDims k222({2, 2, 2});
const SubsystemDims k22({2, 2});

OptimizerConfig quick() {
  OptimizerConfig c;
  c.restarts = 4;
  return c;
}

SeparableEnsemble random_ensemble(oracle::Rng& rng, const Bipartition& cut, Eigen::Index dx, Eigen::Index dy,
                                  std::size_t k) {
  SeparableEnsemble e{cut, {}, {}, {}};
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    e.weights.push_back(rng.uniform(0.05, 1.0));
    total += e.weights.back();
    e.left_vectors.push_back(rng.unit_vector(dx));
    e.right_vectors.push_back(rng.unit_vector(dy));
  }
  for (auto& w : e.weights) w /= total;
  return e;
}

}  // namespace

TEST_CASE("SeparableEnsemble validation") {
  const Bipartition cut{{"A"}, {"B"}};
  SeparableEnsemble e{cut, {0.5, 0.5}, {ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1)},
                      {ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1)}};
  CHECK_NOTHROW(e.validate());
  e.weights = {0.6, 0.5};
  CHECK_THROWS_AS(e.validate(), InputError);
  e.weights = {1.2, -0.2};
  CHECK_THROWS_AS(e.validate(), InputError);
  e.weights = {0.5, 0.5};
  e.left_vectors[0] *= 2.0;
  CHECK_THROWS_AS(e.validate(), InputError);
  e.left_vectors.pop_back();
  CHECK_THROWS_AS(e.validate(), InputError);
}

TEST_CASE("ensemble_to_state") {
  const Bipartition ab{{"A"}, {"B"}};
  const SeparableEnsemble one{ab, {1.0}, {ComplexVector::Unit(2, 0)}, {ComplexVector::Unit(2, 0)}};
  const DensityMatrix s1 = ensemble_to_state(one, k22);
  CHECK(std::abs(s1.mat()(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(s1.mat().trace() - 1.0) < 1e-15);

  const SeparableEnsemble corr{ab, {0.5, 0.5}, {ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1)},
                               {ComplexVector::Unit(2, 0), ComplexVector::Unit(2, 1)}};
  CHECK(std::abs(vn_entropy(ensemble_to_state(corr, k22)) - 1.0) < 1e-12);

  // A non-contiguous cut lands back in canonical order.
  oracle::Rng rng(41);
  const Bipartition acb{{"A", "C"}, {"B"}};
  const SeparableEnsemble e = random_ensemble(rng, acb, 4, 2, 5);
  ComplexMatrix frame = ComplexMatrix::Zero(8, 8);  // order (A, C, B)
  for (std::size_t k = 0; k < e.size(); ++k) {
    const ComplexVector v = oracle::kron(e.left_vectors[k], e.right_vectors[k]);
    frame += e.weights[k] * v * v.adjoint();
  }
  // Position p of the canonical order (A, B, C) holds frame subsystem {0, 2, 1}[p].
  const ComplexMatrix expect = oracle::permute(frame, {2, 2, 2}, {0, 2, 1});
  CHECK((ensemble_to_state(e, k222).mat() - expect).cwiseAbs().maxCoeff() < 1e-14);

  const SeparableEnsemble wrong{ab, {1.0}, {ComplexVector::Unit(3, 0)}, {ComplexVector::Unit(2, 0)}};
  CHECK_THROWS_AS(ensemble_to_state(wrong, k22), InputError);
}

TEST_CASE("property: ensemble states are PPT across their cut") {
  oracle::Rng rng(42);
  for (int t = 0; t < 100; ++t) {
    const Bipartition cut = t % 2 ? Bipartition{{"A", "C"}, {"B"}} : Bipartition{{"A"}, {"B", "C"}};
    const Eigen::Index dx = cut.left.size() == 2 ? 4 : 2;
    const SeparableEnsemble e = random_ensemble(rng, cut, dx, 8 / dx, 1 + t % 9);
    CHECK(ppt_min_eigenvalue(ensemble_to_state(e, k222), cut) >= -1e-9);
  }
}

TEST_CASE("default_ensemble_size") {
  CHECK(default_ensemble_size(k22, Bipartition{{"A"}, {"B"}}) == 16);
  CHECK(default_ensemble_size(k222, Bipartition{{"A"}, {"B", "C"}}) == 64);
}

TEST_CASE("ensemble objective gradient matches finite differences") {
  oracle::Rng rng(43);
  const ComplexMatrix rho = rng.density(4);
  for (auto kind : {DistanceKind::kRelativeEntropy, DistanceKind::kTrace, DistanceKind::kBures}) {
    const detail::EnsembleObjective f(rho, 2, 2, 5, kind);
    std::vector<double> x(f.num_params());
    for (auto& v : x) v = rng.normal();
    std::vector<double> g(x.size());
    const double f0 = f(x, g);
    REQUIRE(std::isfinite(f0));
    std::vector<double> scratch(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double h = 1e-6;
      std::vector<double> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (f(xp, scratch) - f(xm, scratch)) / (2 * h);
      CHECK(std::abs(fd - g[i]) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
    CHECK(std::abs(f0 - kernel::distance(kind, rho, f.state(x))) < 1e-10);
  }
}

TEST_CASE("ensemble objective encode and decode") {
  oracle::Rng rng(44);
  const Bipartition cut{{"A"}, {"B"}};
  const SeparableEnsemble e = random_ensemble(rng, cut, 2, 2, 3);
  const detail::EnsembleObjective f(rng.density(4), 2, 2, 3, DistanceKind::kRelativeEntropy);
  const std::vector<double> x = f.encode(e);
  CHECK((f.state(x) - ensemble_to_state(e, k22).mat()).cwiseAbs().maxCoeff() < 1e-12);
  const SeparableEnsemble back = f.decode(x, cut);
  CHECK((ensemble_to_state(back, k22).mat() - ensemble_to_state(e, k22).mat()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ree_upper") {
  const auto re = DistanceKind::kRelativeEntropy;
  const Bipartition ab{{"A"}, {"B"}};

  SUBCASE("separable input") {
    oracle::Rng rng(45);
    const DensityMatrix sep = ensemble_to_state(random_ensemble(rng, ab, 2, 2, 3), k22);
    const ReeResult r = ree_upper(sep, ab, re, 0, quick());
    CHECK(r.value <= 1e-4);
    CHECK(r.value >= -1e-9);
  }
  SUBCASE("Bell state, all kinds") {
    const DensityMatrix bell = bell_state();
    const ReeResult r = ree_upper(bell, ab, re, 0, quick());
    CHECK(r.value >= 1.0 - 1e-9);
    CHECK(r.value <= 1.0 + 1e-3);
    CHECK(r.sigma.size() == 16);
    CHECK_NOTHROW(r.sigma.validate());
    CHECK(std::abs(relative_entropy(bell, ensemble_to_state(r.sigma, bell.dims())) - r.value) < 1e-12);

    // Known distances from a maximally entangled qubit pair to the separable set.
    const ReeResult t = ree_upper(bell, ab, DistanceKind::kTrace, 0, quick());
    CHECK(t.value >= 0.5 - 1e-9);
    CHECK(t.value <= 0.5 + 1e-3);
    const ReeResult b = ree_upper(bell, ab, DistanceKind::kBures, 0, quick());
    CHECK(b.value >= 2.0 - std::sqrt(2.0) - 1e-9);
    CHECK(b.value <= 2.0 - std::sqrt(2.0) + 1e-3);
  }
  SUBCASE("eta across its separable cuts") {
    CHECK(ree_upper(eta_state(), Bipartition::parse("AC|B", k222), re, 0, OptimizerConfig{}).value <= 1e-3);
    CHECK(ree_upper(eta_state(), Bipartition::parse("AB|C", k222), re, 0, OptimizerConfig{}).value <= 1e-3);
  }
  SUBCASE("product state with a bad cut") {
    CHECK_THROWS_AS(ree_upper(bell_state(), Bipartition{{"A"}, {"Q"}}, re, 0, quick()), InputError);
  }
}

TEST_CASE("pure_state_entanglement") {
  const ComplexVector prod = basis_vector(k222, {0, 1, 1});
  CHECK(pure_state_entanglement(prod, Bipartition::parse("A|BC", k222), k222) == doctest::Approx(0.0));
  CHECK(std::abs(pure_state_entanglement(ghz_vector(), Bipartition::parse("A|BC", k222), k222) - 1.0) < 1e-12);

  oracle::Rng rng(46);
  const SubsystemDims d({2, 3, 2});
  for (int t = 0; t < 20; ++t) {
    const ComplexVector psi = rng.unit_vector(12);
    // A|BC is contiguous in the canonical order.
    CHECK(std::abs(pure_state_entanglement(psi, Bipartition::parse("A|BC", d), d) - oracle::schmidt_entropy(psi, 2, 6)) <
          1e-9);
    const ComplexMatrix rho = psi * psi.adjoint();
    const double s_b = oracle::entropy(oracle::partial_trace(rho, {2, 3, 2}, {true, false, true}));
    CHECK(std::abs(pure_state_entanglement(psi, Bipartition::parse("AC|B", d), d) - s_b) < 1e-9);
  }
  CHECK_THROWS_AS(pure_state_entanglement(2.0 * ghz_vector(), Bipartition::parse("A|BC", k222), k222), InputError);
}

TEST_CASE("coherent_info_lower") {
  const Bipartition ab{{"A"}, {"B"}};
  CHECK(coherent_info_lower(DensityMatrix::maximally_mixed(k22), ab) == 0.0);
  CHECK(std::abs(coherent_info_lower(bell_state(), ab) - 1.0) < 1e-12);

  oracle::Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    const ComplexVector psi = rng.unit_vector(8);
    const DensityMatrix rho = DensityMatrix::pure(psi, k222);
    const Bipartition cut = Bipartition::parse("A|BC", k222);
    CHECK(std::abs(coherent_info_lower(rho, cut) - pure_state_entanglement(psi, cut, k222)) < 1e-9);
    const DensityMatrix mixed(rng.density(8), k222);
    CHECK(coherent_info_lower(mixed, cut) >= 0.0);
  }
}

TEST_CASE("ppt_min_eigenvalue") {
  CHECK(ppt_min_eigenvalue(eta_state(), Bipartition::parse("AB|C", k222)) >= -1e-9);
  CHECK(ppt_min_eigenvalue(eta_state(), Bipartition::parse("AC|B", k222)) >= -1e-9);
  CHECK(ppt_min_eigenvalue(eta_state(), Bipartition::parse("A|BC", k222)) < -1e-6);
  CHECK(std::abs(ppt_min_eigenvalue(bell_state(), Bipartition{{"A"}, {"B"}}) + 0.5) < 1e-12);
  oracle::Rng rng(48);
  const DensityMatrix prod = tensor_product(DensityMatrix(rng.density(2), SubsystemDims({2}, {"A"})),
                                            DensityMatrix(rng.density(4), SubsystemDims({2, 2}, {"B", "C"})));
  CHECK(ppt_min_eigenvalue(prod, Bipartition::parse("A|BC", k222)) >= -1e-12);
}

TEST_CASE("measured_separable_upper") {
  const MeasurementBasis comp_c = computational_basis("C", 2);
  const DensityMatrix eta = eta_state();
  CHECK(std::abs(measured_separable_upper(eta, measure_channel(eta, comp_c), comp_c) - 1.0 / 3.0) < 1e-8);
  CHECK(std::abs(measured_separable_upper(eta, eta, comp_c) - 1.0 / 3.0) < 1e-8);

  // A state already invariant under the measurement, used as its own sigma.
  oracle::Rng rng(49);
  const Bipartition acb = Bipartition::parse("AC|B", k222);
  const DensityMatrix sep = ensemble_to_state(random_ensemble(rng, acb, 4, 2, 4), k222);
  const DensityMatrix fixed = measure_channel(sep, comp_c);
  CHECK(std::abs(measured_separable_upper(fixed, fixed, comp_c)) < 1e-9);

  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho(rng.density(8), k222);
    const DensityMatrix sigma = ensemble_to_state(random_ensemble(rng, acb, 4, 2, 8), k222);
    const MeasurementBasis b("C", rng.unitary(2));
    const DensityMatrix rm = measure_channel(rho, b), sm = measure_channel(sigma, b);
    const double lhs = measured_separable_upper(rho, sigma, b);
    CHECK(std::abs(lhs - (relative_entropy(rho, rm) + relative_entropy(rm, sm))) <= 1e-8);
  }
  CHECK_THROWS_AS(measured_separable_upper(eta, ghz_state(), comp_c), InputError);
  CHECK_THROWS_AS(measured_separable_upper(eta, eta, computational_basis("A", 2)), InputError);
}

TEST_CASE("property: certified lower bound never exceeds the upper bound") {
  const auto re = DistanceKind::kRelativeEntropy;
  for (std::uint64_t i = 0; i < 4; ++i) {
    const DensityMatrix rho = ginibre_mixed(k222, 2, 5, i);
    for (const char* c : {"A|BC", "AC|B"}) {
      const Bipartition cut = Bipartition::parse(c, k222);
      CHECK(coherent_info_lower(rho, cut) <= ree_upper(rho, cut, re, 0, quick()).value + 1e-6);
    }
  }
  CHECK(coherent_info_lower(bell_state(), Bipartition{{"A"}, {"B"}}) <=
        ree_upper(bell_state(), Bipartition{{"A"}, {"B"}}, re, 0, quick()).value + 1e-6);
}

TEST_CASE("property: random pure states converge to the entropy of entanglement") {
  const Bipartition cut = Bipartition::parse("A|BC", k222);
  for (std::uint64_t i = 0; i < 3; ++i) {
    const ComplexVector psi = haar_pure(k222, 6, i);
    const double exact = oracle::schmidt_entropy(psi, 2, 4);
    const double upper = ree_upper(DensityMatrix::pure(psi, k222), cut, DistanceKind::kRelativeEntropy, 0,
                                   OptimizerConfig{})
                             .value;
    CHECK(upper >= exact - 1e-9);
    CHECK(upper <= exact + 2e-3);
  }
}

TEST_CASE("property: enlarging the ensemble never raises the bound") {
  const Bipartition cut = Bipartition::parse("A|BC", k222);
  const DensityMatrix rho = ginibre_mixed(k222, 3, 8, 0);
  OptimizerConfig cfg = quick();
  const ReeResult small = ree_upper(rho, cut, DistanceKind::kRelativeEntropy, 2, cfg);
  const std::vector<SeparableEnsemble> warm{small.sigma};
  for (std::size_t k : {3u, 8u, 0u}) {
    const ReeResult big = ree_upper(rho, cut, DistanceKind::kRelativeEntropy, k, cfg, warm);
    CHECK(big.value <= small.value + 1e-9);
  }
}

TEST_CASE("determinism") {
  const Bipartition cut = Bipartition::parse("A|BC", k222);
  const DensityMatrix rho = ginibre_mixed(k222, 4, 9, 1);
  const ReeResult a = ree_upper(rho, cut, DistanceKind::kRelativeEntropy, 0, quick());
  const ReeResult b = ree_upper(rho, cut, DistanceKind::kRelativeEntropy, 0, quick());
  CHECK(a.value == b.value);
  CHECK(a.sigma.weights == b.sigma.weights);
}
