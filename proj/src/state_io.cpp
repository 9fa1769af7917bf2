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

#include "qcost/state_io.hpp"

#include <fstream>
#include <sstream>

#include "qcost/error.hpp"

namespace qcost {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
  const auto n_rows = static_cast<Eigen::Index>(j.size());
  const auto n_cols = static_cast<Eigen::Index>(j.front().is_array() ? j.front().size() : 0);
  ComplexMatrix m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw InputError("matrix rows must have equal length");
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      const auto& entry = row[static_cast<std::size_t>(c)];
      if (entry.is_number()) {
        m(r, c) = Complex(entry.get<double>(), 0.0);
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number()) {
        m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw InputError("matrix entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

nlohmann::json state_to_json(const DensityMatrix& rho) {
  return {{"labels", rho.labels()}, {"dims", rho.dims().dims()}, {"matrix", matrix_to_json(rho.mat())}};
}

DensityMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("matrix")) {
    throw InputError("state object needs \"dims\" and \"matrix\"");
  }
  std::vector<std::size_t> dims;
  std::vector<std::string> labels;
  try {
    dims = j.at("dims").get<std::vector<std::size_t>>();
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad dims/labels: ") + e.what());
  }
  return DensityMatrix(matrix_from_json(j.at("matrix")), SubsystemDims(dims, labels));
}

DensityMatrix read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return state_from_json(j);
}

void write_state_file(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  // nlohmann emits shortest round-trip doubles (up to 17 significant digits).
  out << state_to_json(rho).dump() << '\n';
}

}  // namespace qcost
