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

// Multi-start local minimization and the parameterizations used by the
// measure optimizers (unitaries, probability simplices, unit vectors).

#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "qcost/qmat.hpp"
#include "qcost/random.hpp"

namespace qcost {

struct OptimizerConfig {
  std::size_t restarts = 20;
  std::size_t max_evals_per_start = 20000;
  double xtol = 1e-8;
  double ftol = 1e-10;
  std::uint64_t seed = 42;
  /// Random starting points are drawn uniformly from [-start_radius, start_radius]^dim
  /// unless the caller supplies its own sampler.
  double start_radius = std::numbers::pi;

  /// Throws InputError on zero counts or non-positive tolerances.
  void validate() const;
};

struct OptResult {
  double best_value = 0.0;
  std::vector<double> best_params;
  std::size_t evals_used = 0;
  std::vector<double> per_start_values;
  std::size_t best_start = 0;
};

/// Objective values may be +infinity (infeasible); NaN is treated as +infinity.
using Objective = std::function<double(std::span<const double>)>;

/// Returns f(x) and writes the gradient into `grad` when f(x) is finite.
using SmoothObjective = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Draws a starting point for random start `j` from a dedicated stream.
using StartSampler = std::function<std::vector<double>(CounterRng& rng, std::size_t dim)>;

/// Nelder-Mead from cfg.restarts starting points. The first starts are taken
/// from `seeded_starts`; the rest are drawn from the stream (cfg.seed, j).
/// Ties between starts go to the lowest start index.
OptResult minimize(const Objective& objective, std::size_t dim, const OptimizerConfig& cfg,
                   std::span<const std::vector<double>> seeded_starts = {},
                   const StartSampler& sampler = {});

/// Limited-memory BFGS with backtracking line search, same multi-start and
/// determinism contract as minimize(). For smooth objectives in many variables.
OptResult minimize_smooth(const SmoothObjective& objective, std::size_t dim,
                          const OptimizerConfig& cfg,
                          std::span<const std::vector<double>> seeded_starts = {},
                          const StartSampler& sampler = {});

/// exp(iH) with H Hermitian assembled from d diagonal reals, then the real
/// parts and then the imaginary parts of the strict upper triangle (row-major).
ComplexMatrix param_to_unitary(std::span<const double> params, std::size_t d);

/// Softmax.
std::vector<double> param_to_simplex(std::span<const double> params);

/// Pairs (re, im) normalized to a unit vector in C^d.
ComplexVector param_to_unit_vector(std::span<const double> params, std::size_t d);

}  // namespace qcost
