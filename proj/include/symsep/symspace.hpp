#pragma once

// Symmetric-subspace machinery. Dicke vectors |D_N^k> are the normalized
// equal superpositions of all N-qubit computational states with k ones, with
// all-positive real coefficients 1/sqrt(C(N,k)).

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "symsep/linalg.hpp"

namespace symsep {

enum class Symmetry { symmetric, invariant, neither };

inline std::string symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::symmetric: return "symmetric";
    case Symmetry::invariant: return "invariant";
    case Symmetry::neither: return "neither";
  }
  return "?";
}

/// Sizes (a, b) of a bipartition of N qubits, a + b = N.
struct Split {
  int a = 0;
  int b = 0;
  int total() const noexcept { return a + b; }
  bool balanced() const noexcept { return a == b; }
  friend bool operator==(const Split&, const Split&) = default;
};

inline std::string split_name(Split s) { return std::to_string(s.a) + ":" + std::to_string(s.b); }

/// Exact binomial coefficient; exact for every n <= 64.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(c);
}

inline Matrix flip(int d) {
  const Eigen::Index n = Eigen::Index(d) * d;
  Matrix f = Matrix::Zero(n, n);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) f(l * d + k, k * d + l) = 1.0;
  return f;
}

inline Matrix sym_projector(int d) {
  return (Matrix::Identity(Eigen::Index(d) * d, Eigen::Index(d) * d) + flip(d)) / 2.0;
}

inline Matrix antisym_projector(int d) {
  return Matrix::Identity(Eigen::Index(d) * d, Eigen::Index(d) * d) - sym_projector(d);
}

/// Orthonormal basis of the two-qudit symmetric subspace as columns:
/// |kk> for each k, then (|kl> + |lk>)/sqrt(2) for k < l.
inline Matrix sym_isometry(int d) {
  const Eigen::Index n = Eigen::Index(d) * d;
  Matrix v = Matrix::Zero(n, Eigen::Index(d) * (d + 1) / 2);
  Eigen::Index col = 0;
  for (int k = 0; k < d; ++k) v(k * d + k, col++) = 1.0;
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      v(k * d + l, col) = s;
      v(l * d + k, col) = s;
      ++col;
    }
  return v;
}

inline Symmetry classify(const Matrix& rho, int d, double tolerance = 1e-10) {
  const Matrix f = flip(d);
  if (detail::max_abs(rho * f - rho) <= tolerance) return Symmetry::symmetric;
  if (detail::max_abs(f * rho * f - rho) <= tolerance) return Symmetry::invariant;
  return Symmetry::neither;
}

inline int require_equal_bipartite(const DensityMatrix& rho) {
  if (!rho.bipartite() || rho.basis() != Basis::computational)
    throw Error(Errc::not_bipartite, "expected a bipartite computational-basis state");
  if (rho.dims()[0] != rho.dims()[1])
    throw Error(Errc::unequal_dims, std::to_string(rho.dims()[0]) + " vs " + std::to_string(rho.dims()[1]));
  return rho.dims()[0];
}

inline Symmetry classify(const DensityMatrix& rho) {
  const int d = require_equal_bipartite(rho);
  return classify(rho.matrix(), d);
}

/// Symmetric N-qubit state in the (N+1)-dimensional Dicke basis.
class SymmetricState {
 public:
  SymmetricState(Matrix m, int qubits) : m_(std::move(m)), n_(qubits) {
    if (n_ < 1) throw Error(Errc::invalid_state, "qubit count < 1");
    if (m_.rows() != n_ + 1 || m_.cols() != n_ + 1)
      throw Error(Errc::invalid_state, "expected a " + std::to_string(n_ + 1) + "x" +
                                           std::to_string(n_ + 1) + " Dicke-basis matrix");
    // shares DensityMatrix validation
    const DensityMatrix checked(m_, {n_}, Basis::dicke);
    m_ = checked.matrix();
  }

  explicit SymmetricState(const DensityMatrix& rho) : SymmetricState(rho.matrix(), rho.dims().at(0)) {
    if (rho.basis() != Basis::dicke) throw Error(Errc::invalid_state, "not a Dicke-basis state");
  }

  const Matrix& matrix() const noexcept { return m_; }
  int qubits() const noexcept { return n_; }

  DensityMatrix as_density() const { return DensityMatrix::unchecked(m_, {n_}, Basis::dicke); }

 private:
  Matrix m_;
  int n_;
};

struct DickeEmbedding {
  int qubits = 0;
  Split split;
  RealMatrix isometry;  // (a+1)(b+1) x (N+1)
};

inline void require_split(int n, Split split) {
  if (split.a < 1 || split.b < 1 || split.a + split.b != n)
    throw Error(Errc::bad_split, split_name(split) + " is not a bipartition of " + std::to_string(n) + " qubits");
}

/// Maps |D_N^k> into |D_a^i> (x) |D_b^{k-i}> with amplitudes
/// sqrt(C(a,i) C(b,k-i) / C(N,k)).
inline DickeEmbedding dicke_embedding(int n, Split split) {
  require_split(n, split);
  const int a = split.a, b = split.b;
  RealMatrix v = RealMatrix::Zero(Eigen::Index(a + 1) * (b + 1), n + 1);
  for (int k = 0; k <= n; ++k) {
    const long double denom = static_cast<long double>(binomial(n, k));
    for (int i = std::max(0, k - b); i <= std::min(a, k); ++i) {
      const long double num =
          static_cast<long double>(binomial(a, i)) * static_cast<long double>(binomial(b, k - i));
      v(i * (b + 1) + (k - i), k) = static_cast<double>(std::sqrt(num / denom));
    }
  }
  return {n, split, std::move(v)};
}

inline Matrix to_bipartite_matrix(const Matrix& sigma, int n, Split split) {
  const DickeEmbedding e = dicke_embedding(n, split);
  const Matrix v = e.isometry.cast<Complex>();
  return v * sigma * v.adjoint();
}

inline DensityMatrix to_bipartite(const SymmetricState& sigma, Split split) {
  Matrix m = to_bipartite_matrix(sigma.matrix(), sigma.qubits(), split);
  return DensityMatrix(std::move(m), {split.a + 1, split.b + 1});
}

/// Partial transpose of the first party of the embedded bipartite state.
inline Matrix compressed_pt(const Matrix& sigma, int n, Split split) {
  const Matrix bip = to_bipartite_matrix(sigma, n, split);
  const int dims[2] = {split.a + 1, split.b + 1};
  const int first[1] = {0};
  return partial_transpose(bip, dims, first);
}

/// The nonzero part of this spectrum equals that of the full 2^N-dimensional
/// partial transpose over any a of the qubits.
inline Spectrum compressed_pt_spectrum(const SymmetricState& sigma, Split split, bool with_vectors = false) {
  return hermitian_eig(compressed_pt(sigma.matrix(), sigma.qubits(), split), with_vectors);
}

/// Trace over M - N qubits, entirely in the Dicke basis.
inline Matrix dicke_partial_trace_matrix(const Matrix& sigma, int m, int keep) {
  if (keep < 1 || keep >= m)
    throw Error(Errc::bad_keep_count, "keep " + std::to_string(keep) + " of " + std::to_string(m));
  if (sigma.rows() != m + 1 || sigma.cols() != m + 1)
    throw Error(Errc::size_mismatch, "matrix side does not match qubit count");
  const Matrix bip = to_bipartite_matrix(sigma, m, {keep, m - keep});
  const int dims[2] = {keep + 1, m - keep + 1};
  const int second[1] = {1};
  return partial_trace(bip, dims, second);
}

inline SymmetricState dicke_partial_trace(const SymmetricState& sigma, int keep) {
  return SymmetricState(dicke_partial_trace_matrix(sigma.matrix(), sigma.qubits(), keep), keep);
}

/// |D_N^k> in the 2^N computational basis, qubit 0 most significant.
inline Vector dicke_vector(int n, int k) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Vector v = Vector::Zero(dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, k)));
  for (Eigen::Index x = 0; x < dim; ++x)
    if (__builtin_popcountll(static_cast<unsigned long long>(x)) == k) v(x) = amp;
  return v;
}

/// Expands a Dicke-basis matrix into the full 2^N-dimensional space.
inline Matrix expand_full(const Matrix& sigma, int n) {
  Matrix w(Eigen::Index(1) << n, n + 1);
  for (int k = 0; k <= n; ++k) w.col(k) = dicke_vector(n, k);
  return w * sigma * w.adjoint();
}

/// Coefficients of the symmetric product |psi>^{(x)N} in the Dicke basis,
/// for |psi> = alpha|0> + beta|1>.
inline Vector dicke_product_vector(int n, Complex alpha, Complex beta) {
  Vector v(n + 1);
  for (int k = 0; k <= n; ++k)
    v(k) = std::sqrt(static_cast<double>(binomial(n, k))) * std::pow(alpha, n - k) * std::pow(beta, k);
  return v;
}

inline SymmetricState dicke_ground_state(int n) {
  Matrix m = Matrix::Zero(n + 1, n + 1);
  m(0, 0) = 1.0;
  return SymmetricState(std::move(m), n);
}

/// One representative split per size class: (k, N-k) for k = 1..floor(N/2).
inline std::vector<Split> representative_splits(int n) {
  std::vector<Split> out;
  for (int k = 1; k <= n / 2; ++k) out.push_back({k, n - k});
  return out;
}

}  // namespace symsep
