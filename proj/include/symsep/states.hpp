#pragma once

// Explicit bound-entangled constructions and a PPT threshold finder for
// one-parameter families.

#include <functional>
#include <string>
#include <vector>

#include "symsep/linalg.hpp"
#include "symsep/symspace.hpp"

namespace symsep {

namespace detail {

inline void require_even_dim(int d) {
  if (d < 4 || d % 2 != 0)
    throw Error(Errc::odd_dimension, "dimension must be even and >= 4, got " + std::to_string(d));
}

inline void require_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(Errc::bad_lambda, "lambda must lie in [0, 1], got " + std::to_string(lambda));
}

// (A', B', A, B) -> (A', A | B', B)
inline constexpr int kPartyGrouping[4] = {0, 2, 1, 3};

}  // namespace detail

/// (1/sqrt d) sum_k (-1)^k |k>|d-1-k>. Antisymmetric under the flip for even d;
/// d = 4 gives (|03> - |12> + |21> - |30>)/2.
inline Vector singlet(int d) {
  detail::require_even_dim(d);
  Vector v = Vector::Zero(Eigen::Index(d) * d);
  for (int k = 0; k < d; ++k) v(k * d + (d - 1 - k)) = (k % 2 == 0 ? 1.0 : -1.0) / std::sqrt(double(d));
  return v;
}

/// Normalized projector onto the two-qudit symmetric subspace.
inline Matrix sym_state(int d) { return sym_projector(d) / (d * (d + 1) / 2.0); }

/// Normalized projector onto the two-qudit antisymmetric subspace.
inline Matrix antisym_state(int d) { return antisym_projector(d) / (d * (d - 1) / 2.0); }

/// lambda |Psi_0><Psi_0| + (1 - lambda) Pi_s. PPT for lambda <= 1/(d+2).
inline DensityMatrix breuer(int d, double lambda) {
  detail::require_even_dim(d);
  detail::require_lambda(lambda);
  Matrix m = lambda * projector(singlet(d)) + (1.0 - lambda) * sym_state(d);
  return DensityMatrix(std::move(m), {d, d});
}

/// 1/2 [ |10><10|_{A'B'} (x) rho + |01><01|_{A'B'} (x) F rho F ], returned with
/// each party holding (ancilla qubit, qudit).
inline DensityMatrix embed_invariant(const DensityMatrix& rho) {
  const int d = require_equal_bipartite(rho);
  const Matrix f = flip(d);
  Matrix p10 = Matrix::Zero(4, 4), p01 = Matrix::Zero(4, 4);
  p10(2, 2) = 1.0;  // |10> in (A', B')
  p01(1, 1) = 1.0;
  const Matrix raw = 0.5 * (kron(p10, rho.matrix()) + kron(p01, f * rho.matrix() * f));
  const int dims[4] = {2, 2, d, d};
  return DensityMatrix(permute_factors(raw, dims, detail::kPartyGrouping), {2 * d, 2 * d});
}

/// lambda Pi_a^D (x) |Psi_0^d><Psi_0^d| + (1 - lambda) Pi_s^D (x) Pi_s^d,
/// returned with each party holding (D-system, d-system). The result is
/// checked to lie in the symmetric subspace.
inline DensityMatrix embed_symmetric(int ancilla_dim, int d, double lambda) {
  if (ancilla_dim < 2) throw Error(Errc::bad_params, "ancilla dimension must be >= 2");
  detail::require_even_dim(d);
  detail::require_lambda(lambda);
  const Matrix raw = lambda * kron(antisym_state(ancilla_dim), projector(singlet(d))) +
                     (1.0 - lambda) * kron(sym_state(ancilla_dim), sym_state(d));
  const int dims[4] = {ancilla_dim, ancilla_dim, d, d};
  Matrix m = permute_factors(raw, dims, detail::kPartyGrouping);
  const int side = ancilla_dim * d;
  if (detail::max_abs(sym_projector(side) * m - m) > 1e-12)
    throw Error(Errc::invalid_state, "embedded state left the symmetric subspace");
  return DensityMatrix(std::move(m), {side, side});
}

/// Four-qubit symmetric state, PPT on the 2:2 cut and NPT on the 1:3 cut.
inline SymmetricState rho_be4() {
  Matrix m = Matrix::Zero(5, 5);
  const double diag[5] = {0.22, 0.176, 0.167, 0.254, 0.183};
  for (int i = 0; i < 5; ++i) m(i, i) = diag[i];
  m(3, 0) = m(0, 3) = -0.059;
  return SymmetricState(std::move(m), 4);
}

/// Five-qubit symmetric state, PPT on every cut, without a PPT symmetric
/// extension.
inline SymmetricState rho_be5() {
  Matrix m = Matrix::Zero(6, 6);
  const double diag[6] = {0.17, 0.174, 0.153, 0.182, 0.147, 0.174};
  for (int i = 0; i < 6; ++i) m(i, i) = diag[i];
  m(4, 0) = m(0, 4) = -0.0137;
  return SymmetricState(std::move(m), 5);
}

using StateFamily = std::function<DensityMatrix(double)>;

struct ThresholdOptions {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<int> transposed = {0};
  double tolerance = 1e-9;
  int samples = 20;
  double monotone_slack = 1e-12;
};

inline double pt_margin(const DensityMatrix& rho, std::span<const int> transposed) {
  return min_eigenvalue(partial_transpose(rho, transposed));
}

/// Largest lambda in [lo, hi] whose partial transpose is still PSD, by
/// bisection. The PT minimum eigenvalue must be nonincreasing in lambda; this
/// is checked on an even grid before bisecting.
inline double ppt_threshold(const StateFamily& family, const ThresholdOptions& opt = {}) {
  if (!(opt.lo < opt.hi) || opt.samples < 2 || !(opt.tolerance > 0))
    throw Error(Errc::bad_params, "invalid threshold search options");
  std::vector<double> grid(static_cast<std::size_t>(opt.samples));
  std::vector<double> margin(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = opt.lo + (opt.hi - opt.lo) * double(i) / double(grid.size() - 1);
    margin[i] = pt_margin(family(grid[i]), opt.transposed);
    if (i > 0 && margin[i] > margin[i - 1] + opt.monotone_slack)
      throw Error(Errc::not_monotone, "PT margin increases between lambda = " + std::to_string(grid[i - 1]) +
                                          " and " + std::to_string(grid[i]));
  }
  if (margin.front() < 0.0 || margin.back() >= 0.0)
    throw Error(Errc::no_sign_change, "PT margin does not change sign on the interval");
  // tightest bracket from the grid
  double lo = opt.lo, hi = opt.hi;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (margin[i] >= 0.0) lo = grid[i];
    else {
      hi = grid[i];
      break;
    }
  }
  while (hi - lo > opt.tolerance) {
    const double mid = 0.5 * (lo + hi);
    (pt_margin(family(mid), opt.transposed) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace symsep
