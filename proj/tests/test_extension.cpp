#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "symsep/extension.hpp"

using namespace symsep;
using Catch::Approx;

namespace {

struct Mixture {
  std::vector<double> weights;
  std::vector<Vector> qubits;  // single-qubit pure states

  Matrix power(int n) const {
    Matrix acc = Matrix::Zero(n + 1, n + 1);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const Vector v = dicke_product_vector(n, qubits[i](0), qubits[i](1));
      acc += weights[i] * projector(v);
    }
    return acc;
  }
};

Mixture random_mixture(int terms, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  Mixture m;
  double total = 0.0;
  for (int i = 0; i < terms; ++i) {
    m.weights.push_back(unit(rng));
    total += m.weights.back();
    m.qubits.push_back(Vector(ginibre(2, 1, rng)).normalized());
  }
  for (double& w : m.weights) w /= total;
  return m;
}

}  // namespace

TEST_CASE("Hermitian coordinates are an isometry", "[extension]") {
  Rng rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = oracle::random_hermitian(5, rng), b = oracle::random_hermitian(5, rng);
    const RealVector va = detail::herm_to_vec(a), vb = detail::herm_to_vec(b);
    CHECK((detail::vec_to_herm(va, 5) - a).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(va.dot(vb) == Approx((a * b).trace().real()).epsilon(1e-12));
  }
}

TEST_CASE("lifted maps", "[extension]") {
  Rng rng(2);
  const detail::ExtensionGeometry geo(3, 6);
  REQUIRE(geo.split_count() == 3);
  for (std::size_t k = 0; k < geo.split_count(); ++k) {
    const Matrix x = oracle::random_hermitian(7, rng);
    const Matrix y = geo.phi(x, k);
    CHECK(y.norm() == Approx(x.norm()).epsilon(1e-12));
    CHECK((geo.phi_adjoint(y, k) - x).cwiseAbs().maxCoeff() < 1e-13);
    // adjoint identity <phi(x), z> = <x, phi^*(z)>
    const Matrix z = oracle::random_hermitian(static_cast<int>(y.rows()), rng);
    CHECK((y.adjoint() * z).trace().real() ==
          Approx((x.adjoint() * geo.phi_adjoint(z, k)).trace().real()).epsilon(1e-11));
  }
  const Matrix target = random_density_hs_matrix(4, rng);
  const RealVector t = detail::herm_to_vec(target);
  const Matrix x = oracle::random_hermitian(7, rng);
  const Matrix px = geo.project_marginal(x, t);
  CHECK((dicke_partial_trace_matrix(px, 6, 3) - target).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((geo.project_marginal(px, t) - px).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("product target extends", "[extension]") {
  const SymmetricState target = dicke_ground_state(3);
  ExtensionProblem p{target, 5};
  const ExtensionResult r = find_extension(p);
  REQUIRE(r.status == ExtensionStatus::feasible);
  REQUIRE(r.witness);
  CHECK(r.witness->qubits() == 5);
  const ExtensionVerification v = verify_extension(*r.witness, target, 1e-7);
  CHECK(v.ok);
  CHECK(v.pt_min.size() == 2);
  // the obvious extension |0>^5 passes the same audit
  CHECK(verify_extension(dicke_ground_state(5), target, 1e-12).ok);
}

TEST_CASE("separable mixtures extend, with the product-power oracle", "[extension]") {
  Rng rng(3);
  for (int trial = 0; trial < 2; ++trial) {
    const Mixture mix = random_mixture(3, rng);
    const SymmetricState target(mix.power(3), 3);
    const SymmetricState oracle_ext(mix.power(5), 5);
    CHECK(verify_extension(oracle_ext, target, 1e-12).ok);
    const ExtensionResult r = find_extension({target, 4});
    REQUIRE(r.status == ExtensionStatus::feasible);
    CHECK(verify_extension(*r.witness, target, 1e-7).ok);
  }
}

TEST_CASE("verification rejects perturbed witnesses", "[extension]") {
  const SymmetricState target = dicke_ground_state(2);
  const SymmetricState good = dicke_ground_state(4);
  REQUIRE(verify_extension(good, target, 1e-7).ok);

  Matrix m = good.matrix() * 0.99;
  m(2, 2) += 0.01;  // still a state, wrong marginal
  const ExtensionVerification v = verify_extension(SymmetricState(m, 4), target, 1e-7);
  CHECK_FALSE(v.ok);
  CHECK(v.marginal_error > 1e-3);

  // |D_4^2> has the right size but is NPT and has a different marginal
  Matrix d = Matrix::Zero(5, 5);
  d(2, 2) = 1.0;
  const ExtensionVerification w = verify_extension(SymmetricState(d, 4), target, 1e-7);
  CHECK_FALSE(w.ok);
  bool saw_pt = false;
  for (auto [s, lm] : w.pt_min) saw_pt = saw_pt || lm < -1e-7;
  CHECK(saw_pt);
  CHECK_THROWS_AS(verify_extension(target, good, 1e-7), Error);
}

TEST_CASE("extension problem validation", "[extension]") {
  const SymmetricState t = dicke_ground_state(3);
  CHECK_THROWS_AS(find_extension({t, 3}), Error);
  ExtensionProblem bad{t, 5};
  bad.tol_feas = 0.0;
  CHECK_THROWS_AS(find_extension(bad), Error);
}

TEST_CASE("an NPT target has no PPT extension", "[extension]") {
  // the 3-qubit W state is NPT, so the marginal constraint cannot be met
  Matrix w = Matrix::Zero(4, 4);
  w(1, 1) = 1.0;
  ExtensionProblem p{SymmetricState(w, 3), 4};
  p.max_iter = 3000;
  const ExtensionResult r = find_extension(p);
  CHECK(r.status != ExtensionStatus::feasible);
  CHECK(r.residual_gap > 1e-3);
  CHECK(r.gap_history.size() == 3000);
}
