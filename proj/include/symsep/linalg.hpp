#pragma once

// Dense complex linear algebra for bipartite and multipartite density
// matrices. Tensor factors are ordered most-significant first: for dims
// (d0, d1, ..., dn) the basis index is ((i0 * d1 + i1) * d2 + i2) ...

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symsep/error.hpp"

namespace symsep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

namespace tol {
inline constexpr double herm = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double eig_residual = 1e-10;
}  // namespace tol

enum class Basis { computational, dicke };

inline std::string basis_name(Basis b) { return b == Basis::computational ? "computational" : "dicke"; }

struct Spectrum {
  RealVector values;  // descending
  std::optional<Matrix> vectors;

  double min() const { return values.size() ? values(values.size() - 1) : 0.0; }
  double max() const { return values.size() ? values(0) : 0.0; }
};

namespace detail {

inline double max_abs(const Matrix& a) {
  return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

inline double hermiticity_violation(const Matrix& a) {
  return max_abs(a - a.adjoint());
}

inline void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw Error(Errc::non_square, std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                                      std::to_string(a.cols()));
}

inline Eigen::Index product(std::span<const int> dims) {
  Eigen::Index p = 1;
  for (int d : dims) p *= d;
  return p;
}

// Mixed-radix digits of a flat index, most significant factor first.
inline void to_digits(Eigen::Index idx, std::span<const int> dims, std::span<int> out) {
  for (std::size_t f = dims.size(); f-- > 0;) {
    out[f] = static_cast<int>(idx % dims[f]);
    idx /= dims[f];
  }
}

inline Eigen::Index from_digits(std::span<const int> digits, std::span<const int> dims) {
  Eigen::Index idx = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) idx = idx * dims[f] + digits[f];
  return idx;
}

inline std::vector<bool> subset_mask(std::span<const int> subset, std::size_t nfactors) {
  std::vector<bool> mask(nfactors, false);
  for (int s : subset) {
    if (s < 0 || static_cast<std::size_t>(s) >= nfactors)
      throw Error(Errc::bad_subset, "factor index " + std::to_string(s) + " out of range");
    if (mask[s]) throw Error(Errc::bad_subset, "factor index " + std::to_string(s) + " repeated");
    mask[s] = true;
  }
  return mask;
}

}  // namespace detail

/// Symmetrizes A if it is Hermitian up to round-off, throws otherwise. The
/// threshold scales with the largest entry so unnormalized operators pass.
inline Matrix hermitian_part(const Matrix& a) {
  detail::require_square(a, "hermitian_part");
  const double scale = std::max(1.0, detail::max_abs(a));
  const double viol = detail::hermiticity_violation(a);
  if (viol > tol::herm * scale)
    throw Error(Errc::non_hermitian, "max |A - A^H| = " + std::to_string(viol));
  return (a + a.adjoint()) / 2.0;
}

inline Spectrum hermitian_eig(const Matrix& a, bool with_vectors = true) {
  const Matrix h = hermitian_part(a);
  Spectrum s;
  if (h.rows() == 0) {
    s.values = RealVector(0);
    if (with_vectors) s.vectors = Matrix(0, 0);
    return s;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, with_vectors ? Eigen::ComputeEigenvectors
                                                           : Eigen::EigenvaluesOnly);
  s.values = es.eigenvalues().reverse();
  if (with_vectors) s.vectors = es.eigenvectors().rowwise().reverse();
  return s;
}

inline RealVector hermitian_eigenvalues(const Matrix& a) { return hermitian_eig(a, false).values; }

inline double min_eigenvalue(const Matrix& a) { return hermitian_eig(a, false).min(); }

inline RealVector symmetric_eigenvalues(const RealMatrix& a) {
  const RealMatrix s = (a + a.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

inline double trace_norm(const Matrix& a) {
  detail::require_square(a, "trace_norm");
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

/// Sum of singular values for rectangular operands (realigned matrices).
inline double singular_value_sum(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

inline double singular_value_sum(const RealMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<RealMatrix> svd(a);
  return svd.singularValues().sum();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Matrix projector(const Vector& v) { return v * v.adjoint(); }

/// Nearest positive semidefinite matrix in Frobenius norm.
inline Matrix project_psd(const Matrix& a) {
  const Spectrum s = hermitian_eig(a, true);
  const Matrix& v = *s.vectors;
  const RealVector clipped = s.values.cwiseMax(0.0);
  return v * clipped.cast<Complex>().asDiagonal() * v.adjoint();
}

/// A density matrix together with its tensor structure. Construction
/// validates Hermiticity, unit trace and positivity.
class DensityMatrix {
 public:
  DensityMatrix(Matrix m, std::vector<int> dims, Basis basis = Basis::computational)
      : m_(std::move(m)), dims_(std::move(dims)), basis_(basis) {
    validate();
  }

  /// Skips validation; for callers that have just built a state by
  /// construction and will validate at a higher level.
  static DensityMatrix unchecked(Matrix m, std::vector<int> dims,
                                 Basis basis = Basis::computational) {
    DensityMatrix d;
    d.m_ = std::move(m);
    d.dims_ = std::move(dims);
    d.basis_ = basis;
    return d;
  }

  const Matrix& matrix() const noexcept { return m_; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  Basis basis() const noexcept { return basis_; }
  Eigen::Index side() const noexcept { return m_.rows(); }
  bool bipartite() const noexcept { return dims_.size() == 2; }

 private:
  DensityMatrix() = default;

  void validate() {
    detail::require_square(m_, "DensityMatrix");
    if (dims_.empty()) throw Error(Errc::invalid_state, "no tensor factors given");
    for (int d : dims_)
      if (d < 1) throw Error(Errc::invalid_state, "factor dimension < 1");
    if (basis_ == Basis::computational) {
      if (detail::product(dims_) != m_.rows())
        throw Error(Errc::invalid_state, "product of dims does not match matrix side");
    } else {
      if (dims_.size() != 1 || dims_[0] + 1 != m_.rows())
        throw Error(Errc::invalid_state, "dicke basis expects dims = {N} with side N+1");
    }
    const double viol = detail::hermiticity_violation(m_);
    if (viol > tol::herm) throw Error(Errc::non_hermitian, "density matrix: " + std::to_string(viol));
    m_ = (m_ + m_.adjoint()) / 2.0;
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol::trace)
      throw Error(Errc::invalid_state, "trace = " + std::to_string(tr));
    const double lmin = min_eigenvalue(m_);
    if (lmin < -tol::psd)
      throw Error(Errc::invalid_state, "minimum eigenvalue = " + std::to_string(lmin));
  }

  Matrix m_;
  std::vector<int> dims_;
  Basis basis_ = Basis::computational;
};

/// Transposes the listed tensor factors of a matrix with the given dims.
inline Matrix partial_transpose(const Matrix& a, std::span<const int> dims,
                                std::span<const int> subset) {
  detail::require_square(a, "partial_transpose");
  if (detail::product(dims) != a.rows()) throw Error(Errc::bad_subset, "dims do not match matrix");
  const auto mask = detail::subset_mask(subset, dims.size());
  const Eigen::Index n = a.rows();
  const std::size_t nf = dims.size();
  Matrix out(n, n);
  std::vector<int> rd(nf), cd(nf), rd2(nf), cd2(nf);
  for (Eigen::Index r = 0; r < n; ++r) {
    detail::to_digits(r, dims, rd);
    for (Eigen::Index c = 0; c < n; ++c) {
      detail::to_digits(c, dims, cd);
      for (std::size_t f = 0; f < nf; ++f) {
        rd2[f] = mask[f] ? cd[f] : rd[f];
        cd2[f] = mask[f] ? rd[f] : cd[f];
      }
      out(r, c) = a(detail::from_digits(rd2, dims), detail::from_digits(cd2, dims));
    }
  }
  return out;
}

inline Matrix partial_transpose(const DensityMatrix& rho, std::span<const int> subset) {
  if (rho.basis() == Basis::dicke)
    throw Error(Errc::dicke_basis_unsupported, "use compressed_pt_spectrum for Dicke-basis states");
  return partial_transpose(rho.matrix(), rho.dims(), subset);
}

/// Traces out the listed factors; the remaining factors keep their order.
inline Matrix partial_trace(const Matrix& a, std::span<const int> dims, std::span<const int> subset) {
  detail::require_square(a, "partial_trace");
  if (detail::product(dims) != a.rows()) throw Error(Errc::bad_subset, "dims do not match matrix");
  const auto mask = detail::subset_mask(subset, dims.size());
  std::vector<int> kept_dims, traced_dims;
  for (std::size_t f = 0; f < dims.size(); ++f) (mask[f] ? traced_dims : kept_dims).push_back(dims[f]);
  const Eigen::Index nk = detail::product(kept_dims);
  const Eigen::Index nt = detail::product(traced_dims);
  // flat index of (kept digits, traced digits) in the original ordering
  std::vector<Eigen::Index> index(static_cast<std::size_t>(nk * nt));
  std::vector<int> kd(kept_dims.size()), td(traced_dims.size()), full(dims.size());
  for (Eigen::Index k = 0; k < nk; ++k) {
    detail::to_digits(k, kept_dims, kd);
    for (Eigen::Index t = 0; t < nt; ++t) {
      detail::to_digits(t, traced_dims, td);
      std::size_t ik = 0, it = 0;
      for (std::size_t f = 0; f < dims.size(); ++f) full[f] = mask[f] ? td[it++] : kd[ik++];
      index[static_cast<std::size_t>(k * nt + t)] = detail::from_digits(full, dims);
    }
  }
  Matrix out = Matrix::Zero(nk, nk);
  for (Eigen::Index r = 0; r < nk; ++r)
    for (Eigen::Index c = 0; c < nk; ++c) {
      Complex acc = 0.0;
      for (Eigen::Index t = 0; t < nt; ++t)
        acc += a(index[static_cast<std::size_t>(r * nt + t)], index[static_cast<std::size_t>(c * nt + t)]);
      out(r, c) = acc;
    }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> subset) {
  if (rho.basis() == Basis::dicke)
    throw Error(Errc::dicke_basis_unsupported, "use dicke_partial_trace for Dicke-basis states");
  const auto mask = detail::subset_mask(subset, rho.dims().size());
  std::vector<int> kept;
  for (std::size_t f = 0; f < mask.size(); ++f)
    if (!mask[f]) kept.push_back(rho.dims()[f]);
  if (kept.empty()) throw Error(Errc::bad_subset, "cannot trace out every factor");
  return DensityMatrix(partial_trace(rho.matrix(), rho.dims(), subset), kept);
}

/// Reorders tensor factors: factor i of the result is factor perm[i] of the input.
inline Matrix permute_factors(const Matrix& a, std::span<const int> dims, std::span<const int> perm) {
  detail::require_square(a, "permute_factors");
  if (perm.size() != dims.size()) throw Error(Errc::bad_subset, "permutation length mismatch");
  const auto mask = detail::subset_mask(perm, dims.size());
  (void)mask;
  std::vector<int> new_dims(dims.size());
  for (std::size_t i = 0; i < perm.size(); ++i) new_dims[i] = dims[perm[i]];
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> map(static_cast<std::size_t>(n));
  std::vector<int> nd(dims.size()), od(dims.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    detail::to_digits(i, new_dims, nd);
    for (std::size_t f = 0; f < perm.size(); ++f) od[perm[f]] = nd[f];
    map[static_cast<std::size_t>(i)] = detail::from_digits(od, dims);
  }
  Matrix out(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      out(r, c) = a(map[static_cast<std::size_t>(r)], map[static_cast<std::size_t>(c)]);
  return out;
}

/// Realignment R(rho)_{(i j),(k l)} = <i k| rho |j l> for a dA x dB state;
/// the result is dA^2 x dB^2.
inline Matrix realign(const Matrix& a, int da, int db) {
  if (a.rows() != Eigen::Index(da) * db || a.cols() != a.rows())
    throw Error(Errc::not_bipartite, "matrix does not match dims");
  Matrix out(Eigen::Index(da) * da, Eigen::Index(db) * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) out(i * da + j, k * db + l) = a(i * db + k, j * db + l);
  return out;
}

inline Matrix realign(const DensityMatrix& rho) {
  if (!rho.bipartite() || rho.basis() != Basis::computational)
    throw Error(Errc::not_bipartite, "realign needs a bipartite computational-basis state");
  return realign(rho.matrix(), rho.dims()[0], rho.dims()[1]);
}

/// Inverse of realign.
inline Matrix unrealign(const Matrix& r, int da, int db) {
  if (r.rows() != Eigen::Index(da) * da || r.cols() != Eigen::Index(db) * db)
    throw Error(Errc::size_mismatch, "realigned matrix does not match dims");
  Matrix out(Eigen::Index(da) * db, Eigen::Index(da) * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) out(i * db + k, j * db + l) = r(i * da + j, k * db + l);
  return out;
}

/// d x d matrix of independent complex Gaussians, real and imaginary parts
/// each N(0, 1/2).
inline Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  return g;
}

/// Hilbert-Schmidt random density matrix G G^H / Tr(G G^H).
inline Matrix random_density_hs_matrix(int d, Rng& rng) {
  if (d <= 1) return Matrix::Ones(1, 1);
  const Matrix g = ginibre(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return (rho + rho.adjoint()) / 2.0;
}

inline DensityMatrix random_density_hs(int d, Rng& rng) {
  return DensityMatrix(random_density_hs_matrix(d, rng), {std::max(d, 1)});
}

inline DensityMatrix random_density_hs(std::vector<int> dims, Rng& rng) {
  const auto n = static_cast<int>(detail::product(dims));
  return DensityMatrix(random_density_hs_matrix(n, rng), std::move(dims));
}

}  // namespace symsep
