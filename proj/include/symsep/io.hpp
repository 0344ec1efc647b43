#pragma once

// JSON state files.
//
//   {
//     "dims": [dA, dB, ...]            computational basis, or
//     "qubits": N, "basis": "dicke"    symmetric N-qubit state,
//     "matrix": [[[re, im], ...], ...] row-major,
//     "metadata": { ... }              optional, free-form
//   }
//
// Doubles are written in shortest round-trip form, so write -> read is
// bit-exact.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "symsep/linalg.hpp"
#include "symsep/symspace.hpp"

namespace symsep {

using Json = nlohmann::json;

struct StateFile {
  DensityMatrix state;
  Json metadata = Json::object();

  bool dicke() const { return state.basis() == Basis::dicke; }
  SymmetricState symmetric() const { return SymmetricState(state); }
};

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::parse_error, "matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw Error(Errc::parse_error, "matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(Errc::parse_error, "matrix entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

inline Json state_to_json(const StateFile& f) {
  Json j;
  if (f.dicke()) {
    j["qubits"] = f.state.dims()[0];
    j["basis"] = "dicke";
  } else {
    j["dims"] = f.state.dims();
  }
  j["matrix"] = matrix_to_json(f.state.matrix());
  if (!f.metadata.empty()) j["metadata"] = f.metadata;
  return j;
}

inline StateFile state_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse_error, "state file must be a JSON object");
  if (!j.contains("matrix")) throw Error(Errc::parse_error, "missing 'matrix'");
  Matrix m = matrix_from_json(j.at("matrix"));
  Json meta = j.value("metadata", Json::object());
  const std::string basis = j.value("basis", std::string("computational"));
  try {
    if (basis == "dicke") {
      if (!j.contains("qubits") || !j.at("qubits").is_number_integer())
        throw Error(Errc::parse_error, "dicke state needs integer 'qubits'");
      const int n = j.at("qubits").get<int>();
      return {DensityMatrix(std::move(m), {n}, Basis::dicke), std::move(meta)};
    }
    if (basis != "computational") throw Error(Errc::parse_error, "unknown basis '" + basis + "'");
    if (!j.contains("dims") || !j.at("dims").is_array())
      throw Error(Errc::parse_error, "computational state needs 'dims'");
    return {DensityMatrix(std::move(m), j.at("dims").get<std::vector<int>>()), std::move(meta)};
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

inline StateFile parse_state(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::parse_error, e.what());
  }
  return state_from_json(j);
}

inline StateFile read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

inline void write_state_file(const std::string& path, const StateFile& f) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse_error, "cannot write '" + path + "'");
  out << state_to_json(f).dump(1) << '\n';
}

}  // namespace symsep
