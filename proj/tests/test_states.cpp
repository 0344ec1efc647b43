#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "symsep/criteria.hpp"
#include "symsep/states.hpp"

using namespace symsep;
using Catch::Approx;

namespace {

double pt_min_oracle(const DensityMatrix& rho) {
  return oracle::eigenvalues(oracle::pt_first(rho.matrix(), rho.dims()[0], rho.dims()[1])).minCoeff();
}

// plain bisection on the oracle margin, independent of ppt_threshold
double bisect_oracle(const StateFamily& fam, double lo, double hi) {
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    (pt_min_oracle(fam(mid)) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::bad_params;
}

}  // namespace

TEST_CASE("singlet", "[states]") {
  const Vector s4 = singlet(4);
  CHECK(s4.norm() == Approx(1.0));
  CHECK(s4(0 * 4 + 3).real() == Approx(0.5));
  CHECK(s4(1 * 4 + 2).real() == Approx(-0.5));
  CHECK(s4(2 * 4 + 1).real() == Approx(0.5));
  CHECK(s4(3 * 4 + 0).real() == Approx(-0.5));
  for (int d : {4, 6, 8}) {
    const Vector s = singlet(d);
    CHECK((flip(d) * s + s).norm() < 1e-15);
    CHECK((antisym_projector(d) * s - s).norm() < 1e-15);
  }
  CHECK(error_of([] { singlet(5); }) == Errc::odd_dimension);
  CHECK(error_of([] { singlet(2); }) == Errc::odd_dimension);
}

TEST_CASE("breuer family", "[states]") {
  for (int d : {4, 6}) {
    const DensityMatrix rho = breuer(d, 0.1);
    CHECK(rho.dims() == std::vector<int>{d, d});
    CHECK(classify(rho) == Symmetry::invariant);
    // PT margin is affine in lambda and vanishes at 1/(d+2)
    const double at = pt_min_oracle(breuer(d, 1.0 / (d + 2)));
    CHECK(at == Approx(0.0).margin(1e-12));
    CHECK(pt_min_oracle(breuer(d, 1.0 / (d + 2) + 1e-3)) < 0.0);
  }
  // d = 4: margin = 0.05 - 0.3 lambda
  for (double l : {0.0, 0.1, 0.3}) CHECK(pt_min_oracle(breuer(4, l)) == Approx(0.05 - 0.3 * l).margin(1e-13));
  CHECK(error_of([] { breuer(5, 0.1); }) == Errc::odd_dimension);
  CHECK(error_of([] { breuer(4, 1.5); }) == Errc::bad_lambda);
  CHECK(error_of([] { breuer(4, -0.1); }) == Errc::bad_lambda);
}

TEST_CASE("ppt_threshold agrees with an independent bisection", "[states][oracle]") {
  for (int d : {4, 6}) {
    const StateFamily fam = [d](double l) { return breuer(d, l); };
    const double t = ppt_threshold(fam);
    CHECK(std::abs(t - 1.0 / (d + 2)) < 1e-8);
    CHECK(std::abs(t - bisect_oracle(fam, 0.0, 1.0)) < 1e-8);
  }
  const StateFamily hat = [](double l) { return embed_symmetric(2, 4, l); };
  const double t = ppt_threshold(hat);
  CHECK(std::abs(t - bisect_oracle(hat, 0.0, 1.0)) < 1e-8);
  CHECK(std::abs(t - 0.062) <= 0.002);
}

TEST_CASE("ppt_threshold preconditions", "[states]") {
  const StateFamily rising = [](double l) { return breuer(4, 1.0 - l); };
  CHECK(error_of([&] { ppt_threshold(rising); }) == Errc::not_monotone);
  const StateFamily flat = [](double l) { return breuer(4, 0.1 * l); };
  CHECK(error_of([&] { ppt_threshold(flat); }) == Errc::no_sign_change);
  ThresholdOptions bad;
  bad.lo = 0.5;
  bad.hi = 0.5;
  CHECK(error_of([&] { ppt_threshold(flat, bad); }) == Errc::bad_params);
}

TEST_CASE("embed_invariant", "[states]") {
  const DensityMatrix rho = breuer(4, 0.3);
  const DensityMatrix emb = embed_invariant(rho);
  CHECK(emb.dims() == std::vector<int>{8, 8});
  CHECK(classify(emb) == Symmetry::invariant);
  // block structure: PT spectrum is the union of those of rho^{T_A}/2 and (F rho F)^{T_A}/2
  CHECK(pt_min_oracle(emb) == Approx(pt_min_oracle(rho) / 2.0).margin(1e-13));
  // the A'B' = |10> block holds rho/2
  const int dims[4] = {2, 4, 2, 4};
  const int to_ancilla_first[4] = {0, 2, 1, 3};
  const Matrix raw = permute_factors(emb.matrix(), dims, to_ancilla_first);
  CHECK((raw.block(2 * 16, 2 * 16, 16, 16) - rho.matrix() / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(error_of([] { embed_invariant(DensityMatrix(Matrix::Identity(6, 6) / 6.0, {2, 3})); }) ==
        Errc::unequal_dims);
}

TEST_CASE("embed_symmetric", "[states]") {
  for (double l : {0.0, 0.05, 0.5, 1.0}) {
    const DensityMatrix rho = embed_symmetric(2, 4, l);
    CHECK(rho.dims() == std::vector<int>{8, 8});
    CHECK(classify(rho) == Symmetry::symmetric);
    CHECK(rho.matrix().trace().real() == Approx(1.0));
  }
  CHECK(pt_min_oracle(embed_symmetric(2, 4, 0.05)) >= 0.0);
  CHECK(pt_min_oracle(embed_symmetric(2, 4, 0.07)) < 0.0);
  // at 0.05 every criterion is satisfied
  const EquivalenceReport rep = equivalence_report(embed_symmetric(2, 4, 0.05));
  for (const auto& v : rep.verdicts) CHECK(v.satisfied);
  CHECK(error_of([] { embed_symmetric(1, 4, 0.1); }) == Errc::bad_params);
  CHECK(error_of([] { embed_symmetric(2, 3, 0.1); }) == Errc::odd_dimension);
}

TEST_CASE("rho_BE4", "[states]") {
  const SymmetricState s = rho_be4();
  CHECK(s.matrix().trace().real() == 1.0);
  CHECK(oracle::eigenvalues(s.matrix()).minCoeff() >= -1e-10);
  // full 16x16 PT over the first qubit / first two qubits
  const Matrix full = oracle::expand_dicke(s.matrix(), 4);
  CHECK(oracle::eigenvalues(oracle::pt_first_qubits(full, 4, 2)).minCoeff() >= -1e-10);
  CHECK(oracle::eigenvalues(oracle::pt_first_qubits(full, 4, 1)).minCoeff() < -1e-4);
  CHECK(compressed_pt_spectrum(s, {2, 2}).min() >= -1e-10);
  CHECK(compressed_pt_spectrum(s, {1, 3}).min() == Approx(-0.0184).margin(1e-4));
}

TEST_CASE("rho_BE5", "[states]") {
  const SymmetricState s = rho_be5();
  CHECK(std::abs(s.matrix().trace().real() - 1.0) < 1e-15);
  CHECK(oracle::eigenvalues(s.matrix()).minCoeff() >= -1e-10);
  const Matrix full = oracle::expand_dicke(s.matrix(), 5);
  for (int a : {1, 2}) {
    CHECK(oracle::eigenvalues(oracle::pt_first_qubits(full, 5, a)).minCoeff() >= -1e-10);
    CHECK(compressed_pt_spectrum(s, {a, 5 - a}).min() >= -1e-10);
  }
}
