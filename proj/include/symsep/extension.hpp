#pragma once

// PPT symmetric extension test for symmetric N-qubit states.
//
// Looks for a symmetric M-qubit state X whose N-qubit marginal is the target
// and whose partial transpose is PSD across every bipartition. Everything is
// stored in the Dicke basis: X is (M+1)x(M+1), the PT of split (k, M-k) is
// ((k+1)(M-k+1))^2.
//
// The solver runs Dykstra's alternating projections in a lifted space
// z = (X, Y_1, ..., Y_s), Y_k standing for the PT of split k:
//   A = { Y_k = Phi_k(X) for all k, Tr_{M-N}(X) = target }   (affine)
//   B = { X >= 0, Y_k >= 0 }                                  (PSD cones)
// Phi_k(X) = PT(V_k X V_k^T) is a Frobenius isometry, so projecting onto A
// reduces to averaging followed by a least-squares correction of the marginal.
//
// An empty intersection shows up as a residual gap that settles at a positive
// value. That is numerical evidence only; a certificate of infeasibility would
// need a dual witness, which this solver does not produce.

#include <optional>
#include <string>
#include <vector>

#include "symsep/linalg.hpp"
#include "symsep/symspace.hpp"

namespace symsep {

struct ExtensionProblem {
  SymmetricState target;
  int extension_qubits = 0;  // M
  double tol_feas = 1e-7;
  int max_iter = 50'000;

  void validate() const {
    if (extension_qubits <= target.qubits())
      throw Error(Errc::config_invalid, "extension must have more qubits than the target");
    if (extension_qubits > 40) throw Error(Errc::config_invalid, "extension size too large");
    if (!(tol_feas > 0.0)) throw Error(Errc::config_invalid, "tol_feas must be positive");
    if (max_iter < 10) throw Error(Errc::config_invalid, "max_iter must be >= 10");
  }
};

enum class ExtensionStatus { feasible, infeasible_evidence, inconclusive };

inline std::string status_name(ExtensionStatus s) {
  switch (s) {
    case ExtensionStatus::feasible: return "feasible";
    case ExtensionStatus::infeasible_evidence: return "infeasible_evidence";
    case ExtensionStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

struct ExtensionResult {
  ExtensionStatus status = ExtensionStatus::inconclusive;
  std::optional<SymmetricState> witness;
  double residual_gap = 0.0;
  int iterations = 0;
  std::vector<double> gap_history;  // one entry per iteration
  int nonmonotone_steps = 0;        // gap increases after burn-in
};

struct ExtensionVerification {
  bool ok = true;
  double marginal_error = 0.0;  // max |Tr_{M-N}(X) - target|
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<std::pair<Split, double>> pt_min;  // per representative split
  std::vector<std::string> violations;
};

/// Independent re-check of the three constraint families.
inline ExtensionVerification verify_extension(const SymmetricState& candidate, const SymmetricState& target,
                                              double tol) {
  const int m = candidate.qubits(), n = target.qubits();
  if (m <= n) throw Error(Errc::size_mismatch, "candidate must have more qubits than the target");
  ExtensionVerification v;
  auto fail = [&](std::string msg) {
    v.ok = false;
    v.violations.push_back(std::move(msg));
  };
  const Matrix& x = candidate.matrix();
  v.trace_error = std::abs(x.trace().real() - 1.0);
  if (v.trace_error > tol) fail("trace differs from 1 by " + std::to_string(v.trace_error));
  v.marginal_error = detail::max_abs(dicke_partial_trace_matrix(x, m, n) - target.matrix());
  if (v.marginal_error > tol) fail("marginal differs from target by " + std::to_string(v.marginal_error));
  v.min_eigenvalue = min_eigenvalue(x);
  if (v.min_eigenvalue < -tol) fail("candidate not PSD, min eigenvalue " + std::to_string(v.min_eigenvalue));
  for (Split s : representative_splits(m)) {
    const double lm = min_eigenvalue(compressed_pt(x, m, s));
    v.pt_min.emplace_back(s, lm);
    if (lm < -tol) fail("PT across " + split_name(s) + " not PSD, min eigenvalue " + std::to_string(lm));
  }
  return v;
}

namespace detail {

// Real coordinates of a Hermitian matrix in which the Frobenius inner product
// is the Euclidean one.
inline RealVector herm_to_vec(const Matrix& h) {
  const Eigen::Index n = h.rows();
  RealVector v(n * n);
  Eigen::Index p = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) v(p++) = h(i, i).real();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      v(p++) = r2 * h(i, j).real();
      v(p++) = r2 * h(i, j).imag();
    }
  return v;
}

inline Matrix vec_to_herm(const RealVector& v, Eigen::Index n) {
  Matrix h = Matrix::Zero(n, n);
  Eigen::Index p = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) = v(p++);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double re = v(p++) / r2;
      const double im = v(p++) / r2;
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  return h;
}

class ExtensionGeometry {
 public:
  ExtensionGeometry(int n, int m) : n_(n), m_(m) {
    for (Split s : representative_splits(m)) {
      splits_.push_back(s);
      embeddings_.push_back(dicke_embedding(m, s).isometry.cast<Complex>());
    }
    // marginal map in Hermitian coordinates, and its pseudoinverse
    const Eigen::Index in = Eigen::Index(m + 1) * (m + 1), out = Eigen::Index(n + 1) * (n + 1);
    RealMatrix lin(out, in);
    for (Eigen::Index c = 0; c < in; ++c) {
      RealVector e = RealVector::Zero(in);
      e(c) = 1.0;
      lin.col(c) = herm_to_vec(dicke_partial_trace_matrix(vec_to_herm(e, m + 1), m, n));
    }
    marginal_ = lin;
    marginal_pinv_ = lin.completeOrthogonalDecomposition().pseudoInverse();
  }

  std::size_t split_count() const { return splits_.size(); }
  const std::vector<Split>& splits() const { return splits_; }

  Matrix phi(const Matrix& x, std::size_t k) const {
    const Split s = splits_[k];
    const int dims[2] = {s.a + 1, s.b + 1};
    const int first[1] = {0};
    return partial_transpose(embeddings_[k] * x * embeddings_[k].adjoint(), dims, first);
  }

  Matrix phi_adjoint(const Matrix& y, std::size_t k) const {
    const Split s = splits_[k];
    const int dims[2] = {s.a + 1, s.b + 1};
    const int first[1] = {0};
    return embeddings_[k].adjoint() * partial_transpose(y, dims, first) * embeddings_[k];
  }

  /// Euclidean projection onto { X : Tr_{M-N}(X) = target }.
  Matrix project_marginal(const Matrix& x, const RealVector& target) const {
    const RealVector v = herm_to_vec(x);
    return vec_to_herm(v - marginal_pinv_ * (marginal_ * v - target), m_ + 1);
  }

 private:
  int n_, m_;
  std::vector<Split> splits_;
  std::vector<Matrix> embeddings_;
  RealMatrix marginal_;
  RealMatrix marginal_pinv_;
};

struct Lifted {
  Matrix x;
  std::vector<Matrix> y;

  Lifted& operator+=(const Lifted& o) {
    x += o.x;
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += o.y[k];
    return *this;
  }
  friend Lifted operator+(Lifted a, const Lifted& b) { return a += b; }
  friend Lifted operator-(const Lifted& a, const Lifted& b) {
    Lifted out{a.x - b.x, {}};
    for (std::size_t k = 0; k < a.y.size(); ++k) out.y.push_back(a.y[k] - b.y[k]);
    return out;
  }
  double norm() const {
    double s = x.squaredNorm();
    for (const auto& m : y) s += m.squaredNorm();
    return std::sqrt(s);
  }
};

inline Matrix hermitize(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

}  // namespace detail

inline ExtensionResult find_extension(const ExtensionProblem& problem) {
  problem.validate();
  const int n = problem.target.qubits(), m = problem.extension_qubits;
  const detail::ExtensionGeometry geo(n, m);
  const RealVector target = detail::herm_to_vec(problem.target.matrix());
  const std::size_t s = geo.split_count();

  auto project_a = [&](const detail::Lifted& z) {
    Matrix avg = z.x;
    for (std::size_t k = 0; k < s; ++k) avg += geo.phi_adjoint(z.y[k], k);
    avg /= double(s + 1);
    detail::Lifted out{detail::hermitize(geo.project_marginal(detail::hermitize(avg), target)), {}};
    for (std::size_t k = 0; k < s; ++k) out.y.push_back(detail::hermitize(geo.phi(out.x, k)));
    return out;
  };
  auto project_b = [&](const detail::Lifted& z) {
    detail::Lifted out{project_psd(z.x), {}};
    for (const auto& y : z.y) out.y.push_back(project_psd(y));
    return out;
  };
  // max over families of the distance from an affine point to its PSD cone
  auto family_gap = [&](const detail::Lifted& a) {
    double g = (a.x - project_psd(a.x)).norm();
    for (const auto& y : a.y) g = std::max(g, (y - project_psd(y)).norm());
    return g;
  };

  ExtensionResult res;
  res.gap_history.reserve(static_cast<std::size_t>(problem.max_iter));

  detail::Lifted start{Matrix::Identity(m + 1, m + 1) / double(m + 1), {}};
  for (std::size_t k = 0; k < s; ++k) start.y.push_back(geo.phi(start.x, k));
  detail::Lifted z = project_a(start);
  detail::Lifted q{Matrix::Zero(m + 1, m + 1), {}};
  for (std::size_t k = 0; k < s; ++k) q.y.push_back(Matrix::Zero(z.y[k].rows(), z.y[k].cols()));

  constexpr int kBurnIn = 100;
  constexpr int kCheckEvery = 10;
  for (int it = 1; it <= problem.max_iter; ++it) {
    // Dykstra: correction only on the cone; the affine set needs none.
    const detail::Lifted b = project_b(z + q);
    q = (z + q) - b;
    z = project_a(b);
    const double gap = std::max(family_gap(z), (z - b).norm());
    res.gap_history.push_back(gap);
    res.iterations = it;
    if (it > kBurnIn && gap > res.gap_history[static_cast<std::size_t>(it - 2)] * (1.0 + 1e-12))
      ++res.nonmonotone_steps;

    if (gap <= problem.tol_feas && (it % kCheckEvery == 0 || it == problem.max_iter)) {
      Matrix w = project_psd(z.x);
      w /= w.trace().real();
      try {
        SymmetricState witness(detail::hermitize(w), m);
        if (verify_extension(witness, problem.target, problem.tol_feas).ok) {
          res.status = ExtensionStatus::feasible;
          res.witness = std::move(witness);
          res.residual_gap = gap;
          return res;
        }
      } catch (const Error&) {
        // not yet a valid state; keep iterating
      }
    }
  }

  res.residual_gap = res.gap_history.back();
  const auto mark = static_cast<std::size_t>(0.9 * double(res.gap_history.size()));
  const double gap_at_mark = res.gap_history[std::min(mark, res.gap_history.size() - 1)];
  const bool stable = res.residual_gap >= (1.0 - 1e-3) * gap_at_mark;
  res.status = (res.residual_gap > 10.0 * problem.tol_feas && stable) ? ExtensionStatus::infeasible_evidence
                                                                       : ExtensionStatus::inconclusive;
  return res;
}

}  // namespace symsep
