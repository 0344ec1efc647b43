#include <catch_amalgamated.hpp>

#include <filesystem>

#include "samplers.hpp"
#include "symsep/criteria.hpp"
#include "symsep/io.hpp"
#include "symsep/states.hpp"

using namespace symsep;

namespace {

Errc parse_code(const std::string& text) {
  try {
    parse_state(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::bad_params;
}

}  // namespace

TEST_CASE("state files round-trip bit-exactly", "[io]") {
  Rng rng(1);
  const auto dir = std::filesystem::temp_directory_path() / "symsep_io_test";
  std::filesystem::create_directories(dir);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = samplers::random_invariant(3, rng);
    const StateFile f{rho, {{"name", "random"}, {"seed", 1}}};
    const std::string path = (dir / ("s" + std::to_string(trial) + ".json")).string();
    write_state_file(path, f);
    const StateFile g = read_state_file(path);
    CHECK(g.state.matrix() == rho.matrix());
    CHECK(g.state.dims() == rho.dims());
    CHECK(g.metadata["name"] == "random");
    // verdicts after the round trip are identical
    const EquivalenceReport a = equivalence_report(rho), b = equivalence_report(g.state);
    for (std::size_t i = 0; i < a.verdicts.size(); ++i) CHECK(a.verdicts[i].margin == b.verdicts[i].margin);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("dicke-basis files", "[io]") {
  const StateFile f{rho_be4().as_density(), {{"name", "be4"}}};
  const Json j = state_to_json(f);
  CHECK(j["basis"] == "dicke");
  CHECK(j["qubits"] == 4);
  CHECK_FALSE(j.contains("dims"));
  const StateFile g = state_from_json(j);
  CHECK(g.dicke());
  CHECK(g.symmetric().matrix() == rho_be4().matrix());
  CHECK(g.symmetric().qubits() == 4);
}

TEST_CASE("plain real entries are accepted", "[io]") {
  const StateFile f = parse_state(R"({"dims": [2], "matrix": [[0.5, 0], [0, [0.5, 0]]]})");
  CHECK(f.state.matrix()(0, 0).real() == 0.5);
  CHECK(f.state.matrix()(1, 1).real() == 0.5);
}

TEST_CASE("malformed files", "[io]") {
  CHECK(parse_code("{bad") == Errc::parse_error);
  CHECK(parse_code("[]") == Errc::parse_error);
  CHECK(parse_code(R"({"dims": [2]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims": [2], "matrix": [[1, 0]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims": [2], "matrix": [[1, 0], [0, "x"]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"matrix": [[1, 0], [0, 0]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"basis": "dicke", "matrix": [[1, 0], [0, 0]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"basis": "weird", "dims": [2], "matrix": [[1, 0], [0, 0]]})") == Errc::parse_error);
  CHECK(parse_code(R"({"dims": "two", "matrix": [[1, 0], [0, 0]]})") == Errc::parse_error);
  // well-formed but not a state
  CHECK(parse_code(R"({"dims": [2], "matrix": [[1, 1], [0, 0]]})") == Errc::non_hermitian);
  CHECK(parse_code(R"({"dims": [2], "matrix": [[2, 0], [0, 0]]})") == Errc::invalid_state);
  CHECK_THROWS_AS(read_state_file("/nonexistent/file.json"), Error);
}
