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

// JSON state files:
//
//   { "labels": ["A","B","C"], "dims": [2,2,2],
//     "matrix": [[[re,im], ...], ...] }
//
// Rows follow the global index convention of qmat.hpp.

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "qcost/qmat.hpp"

namespace qcost {

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j);

/// Throws InputError on unreadable files, bad JSON or invalid states.
DensityMatrix read_state_file(const std::filesystem::path& path);
void write_state_file(const DensityMatrix& rho, const std::filesystem::path& path);

}  // namespace qcost
