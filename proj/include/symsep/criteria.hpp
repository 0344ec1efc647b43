#pragma once

// Separability criteria for bipartite states and the equivalence checks that
// tie them together on symmetric and permutationally invariant states.
//
// All criteria are necessary conditions for separability: a satisfied
// verdict proves nothing, a violated one certifies entanglement. Margins are
// signed distances to violation, negative meaning violated.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "symsep/linalg.hpp"
#include "symsep/symspace.hpp"

namespace symsep {

inline constexpr double kCriterionTolerance = 1e-10;
inline constexpr double kEquivalenceDeadBand = 1e-8;

/// d^2 Hermitian d x d observables, orthonormal under Tr(A B) and complete:
/// sum_k M_k (x) M_k equals the flip operator.
struct ObservableBasis {
  int dim = 0;
  std::vector<Matrix> observables;
};

/// Normalized identity followed by the generalized Gell-Mann matrices, each
/// scaled to unit Hilbert-Schmidt norm. Off-diagonal pairs come first (real
/// symmetric then imaginary antisymmetric for each j < k), then the diagonal
/// ones.
inline ObservableBasis gell_mann_basis(int d) {
  if (d < 1) throw Error(Errc::bad_params, "dimension must be >= 1");
  ObservableBasis basis{d, {}};
  basis.observables.reserve(static_cast<std::size_t>(d) * d);
  basis.observables.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = sym(k, j) = s;
      basis.observables.push_back(std::move(sym));
      Matrix asym = Matrix::Zero(d, d);
      asym(j, k) = Complex(0, -s);
      asym(k, j) = Complex(0, s);
      basis.observables.push_back(std::move(asym));
    }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    for (int i = 0; i < l; ++i) diag(i, i) = 1.0;
    diag(l, l) = -double(l);
    basis.observables.push_back(diag / std::sqrt(double(l) * (l + 1)));
  }
  return basis;
}

struct EtaMatrix {
  RealMatrix entries;
};

struct CorrelationMatrix {
  RealMatrix entries;
};

namespace detail {

// Column k holds (M_k)^T flattened row-major, so that
// Tr(rho (A (x) B)) = a^T R(rho) b with R the realigned matrix.
inline Matrix transposed_columns(const ObservableBasis& basis) {
  const int d = basis.dim;
  Matrix cols(Eigen::Index(d) * d, static_cast<Eigen::Index>(basis.observables.size()));
  for (std::size_t k = 0; k < basis.observables.size(); ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) cols(i * d + j, static_cast<Eigen::Index>(k)) = basis.observables[k](j, i);
  return cols;
}

inline RealVector local_expectations(const Matrix& local, const ObservableBasis& basis) {
  RealVector out(static_cast<Eigen::Index>(basis.observables.size()));
  for (std::size_t k = 0; k < basis.observables.size(); ++k)
    out(static_cast<Eigen::Index>(k)) = (local * basis.observables[k]).trace().real();
  return out;
}

inline void require_bipartite(const DensityMatrix& rho) {
  if (!rho.bipartite() || rho.basis() != Basis::computational)
    throw Error(Errc::not_bipartite, "expected a bipartite computational-basis state");
}

}  // namespace detail

/// eta_kl = <M_k (x) M_l> with separate local bases for the two parties.
inline EtaMatrix eta_matrix(const DensityMatrix& rho, const ObservableBasis& basis_a,
                            const ObservableBasis& basis_b) {
  detail::require_bipartite(rho);
  if (rho.dims()[0] != basis_a.dim || rho.dims()[1] != basis_b.dim)
    throw Error(Errc::size_mismatch, "observable bases do not match local dimensions");
  const Matrix r = realign(rho);
  const Matrix a = detail::transposed_columns(basis_a);
  const Matrix b = detail::transposed_columns(basis_b);
  return {(a.transpose() * r * b).real()};
}

inline EtaMatrix eta_matrix(const DensityMatrix& rho, const ObservableBasis& basis) {
  require_equal_bipartite(rho);
  return eta_matrix(rho, basis, basis);
}

inline Matrix reduced_a(const DensityMatrix& rho) {
  const int second[1] = {1};
  return partial_trace(rho.matrix(), rho.dims(), second);
}

inline Matrix reduced_b(const DensityMatrix& rho) {
  const int first[1] = {0};
  return partial_trace(rho.matrix(), rho.dims(), first);
}

inline double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

/// C_kl = <M_k (x) M_l> - <M_k (x) 1><1 (x) M_l>.
inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const ObservableBasis& basis_a,
                                            const ObservableBasis& basis_b) {
  const EtaMatrix eta = eta_matrix(rho, basis_a, basis_b);
  const RealVector u = detail::local_expectations(reduced_a(rho), basis_a);
  const RealVector v = detail::local_expectations(reduced_b(rho), basis_b);
  return {eta.entries - u * v.transpose()};
}

inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const ObservableBasis& basis) {
  require_equal_bipartite(rho);
  return correlation_matrix(rho, basis, basis);
}

enum class CriterionId { eta_psd, ppt, ccnr, corr_psd, cov_norm, cov_diag };

inline constexpr std::array<CriterionId, 6> kAllCriteria = {
    CriterionId::eta_psd, CriterionId::ppt,      CriterionId::ccnr,
    CriterionId::corr_psd, CriterionId::cov_norm, CriterionId::cov_diag};

inline std::string criterion_name(CriterionId id) {
  switch (id) {
    case CriterionId::eta_psd: return "eta_psd";
    case CriterionId::ppt: return "ppt";
    case CriterionId::ccnr: return "ccnr";
    case CriterionId::corr_psd: return "corr_psd";
    case CriterionId::cov_norm: return "cov_norm";
    case CriterionId::cov_diag: return "cov_diag";
  }
  return "?";
}

inline CriterionId parse_criterion(const std::string& name) {
  for (CriterionId id : kAllCriteria)
    if (criterion_name(id) == name) return id;
  throw Error(Errc::bad_params, "unknown criterion '" + name + "'");
}

struct CriterionVerdict {
  CriterionId id = CriterionId::ppt;
  bool satisfied = true;
  double margin = 0.0;
  double tolerance = kCriterionTolerance;
};

inline CriterionVerdict make_verdict(CriterionId id, double margin, double tolerance) {
  return {id, margin >= -tolerance, margin, tolerance};
}

namespace detail {

inline Symmetry require_invariant(const DensityMatrix& rho, const char* what) {
  const Symmetry s = classify(rho);
  if (s == Symmetry::neither)
    throw Error(Errc::not_invariant, std::string(what) + " applies to symmetric or invariant states only");
  return s;
}

}  // namespace detail

inline CriterionVerdict criterion_eta_psd(const DensityMatrix& rho, double tolerance = kCriterionTolerance) {
  detail::require_invariant(rho, "eta_psd");
  const EtaMatrix eta = eta_matrix(rho, gell_mann_basis(rho.dims()[0]));
  return make_verdict(CriterionId::eta_psd, symmetric_eigenvalues(eta.entries).minCoeff(), tolerance);
}

inline CriterionVerdict criterion_ppt(const DensityMatrix& rho, double tolerance = kCriterionTolerance) {
  detail::require_bipartite(rho);
  const int first[1] = {0};
  return make_verdict(CriterionId::ppt, min_eigenvalue(partial_transpose(rho, first)), tolerance);
}

inline CriterionVerdict criterion_ccnr(const DensityMatrix& rho, double tolerance = kCriterionTolerance) {
  detail::require_bipartite(rho);
  return make_verdict(CriterionId::ccnr, 1.0 - singular_value_sum(realign(rho)), tolerance);
}

inline CriterionVerdict criterion_corr_psd(const DensityMatrix& rho, double tolerance = kCriterionTolerance) {
  detail::require_invariant(rho, "corr_psd");
  const CorrelationMatrix c = correlation_matrix(rho, gell_mann_basis(rho.dims()[0]));
  return make_verdict(CriterionId::corr_psd, symmetric_eigenvalues(c.entries).minCoeff(), tolerance);
}

/// Two covariance-matrix inequalities:
///   ||C||_1^2 <= [1 - Tr rho_A^2][1 - Tr rho_B^2]
///   2 sum_i |C_ii| <= [1 - Tr rho_A^2] + [1 - Tr rho_B^2]
/// Each margin is RHS - LHS. Local Gell-Mann bases of the respective
/// dimensions are used; equal dimensions share one basis.
inline std::pair<CriterionVerdict, CriterionVerdict> criterion_covariance(
    const DensityMatrix& rho, double tolerance = kCriterionTolerance) {
  detail::require_bipartite(rho);
  const ObservableBasis ba = gell_mann_basis(rho.dims()[0]);
  const ObservableBasis bb = rho.dims()[0] == rho.dims()[1] ? ba : gell_mann_basis(rho.dims()[1]);
  const RealMatrix c = correlation_matrix(rho, ba, bb).entries;
  const double mixed_a = 1.0 - purity(reduced_a(rho));
  const double mixed_b = 1.0 - purity(reduced_b(rho));
  const double norm = singular_value_sum(c);
  const double diag = c.diagonal().cwiseAbs().sum();
  return {make_verdict(CriterionId::cov_norm, mixed_a * mixed_b - norm * norm, tolerance),
          make_verdict(CriterionId::cov_diag, mixed_a + mixed_b - 2.0 * diag, tolerance)};
}

/// rho = sum_k Lambda_k M'_k (x) M'_k for an invariant state. Lambda_k are the
/// eigenvalues of eta (descending); they may be negative.
struct SchmidtDecomposition {
  RealVector lambdas;
  std::vector<Matrix> observables;

  Matrix reconstruct() const {
    const Eigen::Index n = observables.empty() ? 0 : observables.front().rows();
    Matrix out = Matrix::Zero(n * n, n * n);
    for (std::size_t k = 0; k < observables.size(); ++k)
      out += lambdas(static_cast<Eigen::Index>(k)) * kron(observables[k], observables[k]);
    return out;
  }
};

inline SchmidtDecomposition schmidt_invariant(const DensityMatrix& rho, const ObservableBasis& basis) {
  detail::require_invariant(rho, "schmidt_invariant");
  const RealMatrix eta = eta_matrix(rho, basis).entries;
  const RealMatrix sym = (eta + eta.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym);
  const Eigen::Index n = sym.rows();
  SchmidtDecomposition out;
  out.lambdas = es.eigenvalues().reverse();
  const RealMatrix vecs = es.eigenvectors().rowwise().reverse();
  out.observables.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    Matrix m = Matrix::Zero(basis.dim, basis.dim);
    for (Eigen::Index l = 0; l < n; ++l) m += vecs(l, k) * basis.observables[static_cast<std::size_t>(l)];
    out.observables.push_back(std::move(m));
  }
  return out;
}

struct EquivalenceReport {
  Symmetry symmetry = Symmetry::neither;
  std::vector<CriterionVerdict> verdicts;
  std::vector<CriterionId> required;  // criteria that must agree for this class
  std::vector<std::pair<CriterionId, CriterionId>> disagreements;
  bool inconsistent = false;
  bool boundary = false;  // every required margin inside the dead band
  double realignment_gap = 0.0;  // | ||R(rho)||_1 - ||rho^{T_A}||_1 |
  double lambda_sum = 0.0;  // sum of Schmidt-like coefficients, = <F>

  const CriterionVerdict& verdict(CriterionId id) const {
    for (const auto& v : verdicts)
      if (v.id == id) return v;
    throw Error(Errc::not_applicable, criterion_name(id) + " not evaluated");
  }
};

/// -1, 0 or +1 with margins inside the dead band counted as 0.
inline int banded_sign(double margin, double band = kEquivalenceDeadBand) {
  if (margin > band) return 1;
  if (margin < -band) return -1;
  return 0;
}

/// Runs every criterion and checks the equivalences: all five for symmetric
/// states, only (i), (iv) and both (v) inequalities for invariant ones.
inline EquivalenceReport equivalence_report(const DensityMatrix& rho, double tolerance = kCriterionTolerance,
                                            double band = kEquivalenceDeadBand) {
  EquivalenceReport rep;
  rep.symmetry = detail::require_invariant(rho, "equivalence_report");
  rep.verdicts.push_back(criterion_eta_psd(rho, tolerance));
  rep.verdicts.push_back(criterion_ppt(rho, tolerance));
  rep.verdicts.push_back(criterion_ccnr(rho, tolerance));
  rep.verdicts.push_back(criterion_corr_psd(rho, tolerance));
  const auto [cov_norm, cov_diag] = criterion_covariance(rho, tolerance);
  rep.verdicts.push_back(cov_norm);
  rep.verdicts.push_back(cov_diag);

  if (rep.symmetry == Symmetry::symmetric)
    rep.required.assign(kAllCriteria.begin(), kAllCriteria.end());
  else
    rep.required = {CriterionId::eta_psd, CriterionId::corr_psd, CriterionId::cov_norm, CriterionId::cov_diag};

  rep.boundary = true;
  for (CriterionId id : rep.required)
    if (banded_sign(rep.verdict(id).margin, band) != 0) rep.boundary = false;
  for (std::size_t i = 0; i < rep.required.size(); ++i)
    for (std::size_t j = i + 1; j < rep.required.size(); ++j) {
      const int si = banded_sign(rep.verdict(rep.required[i]).margin, band);
      const int sj = banded_sign(rep.verdict(rep.required[j]).margin, band);
      if (si * sj < 0) rep.disagreements.emplace_back(rep.required[i], rep.required[j]);
    }
  rep.inconsistent = !rep.disagreements.empty();

  const int first[1] = {0};
  rep.realignment_gap =
      std::abs(singular_value_sum(realign(rho)) - trace_norm(partial_transpose(rho, first)));
  rep.lambda_sum = eta_matrix(rho, gell_mann_basis(rho.dims()[0])).entries.trace();
  return rep;
}

}  // namespace symsep
