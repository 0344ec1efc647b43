#pragma once

// Reference computations used by the tests. They deliberately avoid the
// library's index arithmetic: everything is built from explicit basis
// operators, brute-force enumeration or plain Eigen calls.

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "symsep/linalg.hpp"

namespace oracle {

using symsep::Complex;
using symsep::Matrix;
using symsep::RealVector;
using symsep::Vector;

inline Matrix unit(int d, int i, int j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// rho^{T_A} = sum_{ij} (|i><j| (x) 1) ... written as sum over A-blocks: the
/// block (i,j) of the result is the block (j,i) of rho.
inline Matrix pt_first(const Matrix& rho, int da, int db) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) out += kron(unit(da, i, j), rho.block(j * db, i * db, db, db));
  return out;
}

inline Matrix ptrace_second(const Matrix& rho, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int k = 0; k < db; ++k) {
    Matrix bra = Matrix::Zero(da, da * db);  // (1 (x) <k|)
    for (int i = 0; i < da; ++i) bra(i, i * db + k) = 1.0;
    out += bra * rho * bra.adjoint();
  }
  return out;
}

inline RealVector eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

inline double svd_sum(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

inline Matrix random_hermitian(int n, symsep::Rng& rng) {
  std::normal_distribution<double> nd;
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(nd(rng), nd(rng));
  return (a + a.adjoint()) / 2.0;
}

inline Matrix random_pure(int n, symsep::Rng& rng) {
  std::normal_distribution<double> nd;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(nd(rng), nd(rng));
  v.normalize();
  return v * v.adjoint();
}

/// Full 2^N vector of the Dicke state with k excitations, built by summing
/// over all distinct permutations of the bit string 1^k 0^(N-k).
inline Vector dicke_by_permutation(int n, int k) {
  std::vector<int> bits(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < k; ++i) bits[static_cast<std::size_t>(n - 1 - i)] = 1;
  Vector v = Vector::Zero(Eigen::Index(1) << n);
  int count = 0;
  do {
    Eigen::Index idx = 0;
    for (int b : bits) idx = idx * 2 + b;
    v(idx) += 1.0;
    ++count;
  } while (std::next_permutation(bits.begin(), bits.end()));
  return v / std::sqrt(double(count));
}

inline Matrix expand_dicke(const Matrix& sigma, int n) {
  Matrix w(Eigen::Index(1) << n, n + 1);
  for (int k = 0; k <= n; ++k) w.col(k) = dicke_by_permutation(n, k);
  return w * sigma * w.adjoint();
}

/// Partial transpose of the first `a` qubits of a 2^N matrix.
inline Matrix pt_first_qubits(const Matrix& rho, int n, int a) {
  return pt_first(rho, 1 << a, 1 << (n - a));
}

/// Partial trace over the last `t` qubits of a 2^N matrix.
inline Matrix trace_last_qubits(const Matrix& rho, int n, int t) {
  return ptrace_second(rho, 1 << (n - t), 1 << t);
}

/// Sorted eigenvalues with the `drop` entries closest to zero removed.
inline std::vector<double> drop_nearest_zero(const RealVector& ev, int drop) {
  std::vector<double> v(ev.data(), ev.data() + ev.size());
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return std::abs(v[x]) < std::abs(v[y]); });
  std::vector<bool> gone(v.size(), false);
  for (int i = 0; i < drop; ++i) gone[order[static_cast<std::size_t>(i)]] = true;
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!gone[i]) out.push_back(v[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
