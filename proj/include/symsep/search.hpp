#pragma once

// Randomized hill climb for symmetric N-qubit states that are PPT across the
// balanced cut but NPT across some other cut. Such a state is bound
// entangled across the balanced cut, since a symmetric state is either
// separable across every bipartition or entangled across every one.

#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "symsep/linalg.hpp"
#include "symsep/symspace.hpp"

namespace symsep {

/// Eigenvalues of a split's partial transpose that vanish for every
/// symmetric state. `compressed` counts them in the (a+1)(b+1)-dimensional
/// representation, `full` in the 2^N-dimensional one.
struct StructuralZeros {
  int compressed = 0;
  int full = 0;
};

/// Calibrated from one generic full-rank sample per (N, split) and cached.
inline StructuralZeros structural_zeros(int n, Split split) {
  require_split(n, split);
  static std::mutex mu;
  static std::map<std::pair<int, int>, StructuralZeros> cache;
  const std::pair<int, int> key{n, split.a};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Rng rng(0x5eedULL + static_cast<std::uint64_t>(n) * 131 + static_cast<std::uint64_t>(split.a));
  const Matrix sigma = random_density_hs_matrix(n + 1, rng);
  const RealVector ev = hermitian_eigenvalues(compressed_pt(sigma, n, split));
  const double scale = ev.cwiseAbs().maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > 1e-9 * scale) ++rank;
  StructuralZeros z{static_cast<int>(ev.size()) - rank,
                    n < 63 ? static_cast<int>((std::int64_t{1} << n) - rank) : -1};
  std::lock_guard lock(mu);
  cache.emplace(key, z);
  return z;
}

/// Drops up to `count` eigenvalues lying within tol_zero of zero (closest to
/// zero first). Eigenvalues below -tol_zero are never dropped.
inline std::vector<double> drop_structural_zeros(const RealVector& values, int count, double tol_zero) {
  std::vector<std::pair<double, Eigen::Index>> near;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (std::abs(values(i)) <= tol_zero) near.emplace_back(std::abs(values(i)), i);
  std::sort(near.begin(), near.end());
  std::vector<bool> drop(static_cast<std::size_t>(values.size()), false);
  for (int k = 0; k < count && k < static_cast<int>(near.size()); ++k) drop[near[k].second] = true;
  std::vector<double> out;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!drop[static_cast<std::size_t>(i)]) out.push_back(values(i));
  return out;
}

inline constexpr double kStructuralZeroTol = 1e-11;

/// Minimum nonstructural eigenvalue of the partial transposes over one
/// representative split per size class. With exclude_balanced the N/2:N/2
/// class is skipped. Returns +inf if no split is examined.
inline double lambda_min(const SymmetricState& sigma, bool exclude_balanced, double tol_zero = kStructuralZeroTol) {
  const int n = sigma.qubits();
  double best = std::numeric_limits<double>::infinity();
  for (Split s : representative_splits(n)) {
    if (exclude_balanced && s.balanced()) continue;
    const RealVector ev = compressed_pt_spectrum(sigma, s).values;
    for (double v : drop_structural_zeros(ev, structural_zeros(n, s).compressed, tol_zero))
      best = std::min(best, v);
  }
  return best;
}

/// Minimum PT eigenvalue across the balanced cut (N even).
inline double balanced_margin(const SymmetricState& sigma) {
  const int n = sigma.qubits();
  return compressed_pt_spectrum(sigma, {n / 2, n - n / 2}).min();
}

/// Hilbert-Schmidt sample on the (N+1)-dimensional symmetric subspace.
inline SymmetricState random_symmetric_state(int n, Rng& rng) {
  if (n < 1) throw Error(Errc::bad_params, "qubit count must be >= 1");
  return SymmetricState(random_density_hs_matrix(n + 1, rng), n);
}

/// Hilbert-Schmidt sample on the full 2^N-dimensional space, compressed onto
/// the symmetric subspace and renormalized. Much more concentrated around
/// I/(N+1) than random_symmetric_state.
inline SymmetricState random_symmetric_projected(int n, Rng& rng) {
  if (n < 1 || n > 20) throw Error(Errc::bad_params, "qubit count must lie in [1, 20]");
  Matrix w(Eigen::Index(1) << n, n + 1);
  for (int k = 0; k <= n; ++k) w.col(k) = dicke_vector(n, k);
  const Matrix g = w.adjoint() * ginibre(1 << n, 1 << n, rng);
  Matrix sigma = g * g.adjoint();
  sigma /= sigma.trace().real();
  return SymmetricState(std::move(sigma), n);
}

struct SearchConfig {
  int qubits = 4;
  double epsilon = 0.02;
  int max_iter = 10000;
  std::uint64_t seed = 1;
  double tol_zero = kStructuralZeroTol;
  double target_margin = -1e-9;
  bool decay = true;
  int decay_after = 500;  // consecutive rejections
  double decay_factor = 0.5;
  double epsilon_floor = 1e-4;
  long max_rejections = 1'000'000;  // initial rejection sampling

  void validate() const {
    if (qubits < 4 || qubits % 2 != 0) throw Error(Errc::config_invalid, "qubits must be even and >= 4");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(Errc::config_invalid, "epsilon must lie in (0, 1)");
    if (max_iter < 0) throw Error(Errc::config_invalid, "max_iter must be >= 0");
    if (!(tol_zero >= 0.0)) throw Error(Errc::config_invalid, "tol_zero must be >= 0");
    if (decay && !(decay_factor > 0.0 && decay_factor < 1.0 && decay_after > 0 && epsilon_floor > 0.0))
      throw Error(Errc::config_invalid, "invalid epsilon decay settings");
    if (max_rejections < 1) throw Error(Errc::config_invalid, "max_rejections must be >= 1");
  }
};

struct SearchReport {
  SymmetricState final_state;
  std::vector<double> lambda_trace;  // initial value, then one per accepted step
  std::vector<SymmetricState> accepted;  // initial state, then every accepted state
  int iterations = 0;
  bool success = false;
  long initial_rejections = 0;
  double final_epsilon = 0.0;
};

inline SearchReport hill_climb(const SearchConfig& config, std::optional<SymmetricState> initial = std::nullopt) {
  config.validate();
  Rng rng(config.seed);
  const int n = config.qubits;

  long rejections = 0;
  if (initial) {
    if (initial->qubits() != n) throw Error(Errc::config_invalid, "initial state has the wrong qubit count");
    if (balanced_margin(*initial) < -tol::psd)
      throw Error(Errc::config_invalid, "initial state is not PPT across the balanced cut");
  } else {
    while (true) {
      SymmetricState s = random_symmetric_projected(n, rng);
      if (balanced_margin(s) >= 0.0) {
        initial = std::move(s);
        break;
      }
      if (++rejections >= config.max_rejections)
        throw Error(Errc::rejection_limit, "no balanced-PPT initial state after " +
                                               std::to_string(rejections) + " draws");
    }
  }

  SymmetricState current = *initial;
  double current_lambda = lambda_min(current, true, config.tol_zero);
  SearchReport rep{current, {current_lambda}, {current}, 0, false, rejections, config.epsilon};
  double eps = config.epsilon;
  int streak = 0;

  while (!(current_lambda < config.target_margin) && rep.iterations < config.max_iter) {
    ++rep.iterations;
    const SymmetricState delta = random_symmetric_state(n, rng);
    Matrix mixed = (1.0 - eps) * current.matrix() + eps * delta.matrix();
    mixed = (mixed + mixed.adjoint()) / 2.0;
    mixed /= mixed.trace().real();
    const SymmetricState candidate(std::move(mixed), n);
    bool accept = false;
    double cand_lambda = 0.0;
    if (balanced_margin(candidate) >= 0.0) {
      cand_lambda = lambda_min(candidate, true, config.tol_zero);
      accept = cand_lambda < current_lambda - 1e-14;
    }
    if (accept) {
      current = candidate;
      current_lambda = cand_lambda;
      rep.lambda_trace.push_back(current_lambda);
      rep.accepted.push_back(current);
      streak = 0;
    } else if (config.decay && ++streak >= config.decay_after) {
      eps = std::max(config.epsilon_floor, eps * config.decay_factor);
      streak = 0;
    }
  }
  rep.final_state = current;
  rep.success = current_lambda < config.target_margin;
  rep.final_epsilon = eps;
  return rep;
}

struct SearchAudit {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Re-derives the report invariants from the stored states alone.
inline SearchAudit audit_search(const SearchReport& rep, double tol_zero = kStructuralZeroTol) {
  SearchAudit audit;
  auto fail = [&](std::string msg) {
    audit.ok = false;
    audit.violations.push_back(std::move(msg));
  };
  if (rep.accepted.size() != rep.lambda_trace.size()) fail("trace and accepted-state counts differ");
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.accepted.size(); ++i) {
    const SymmetricState& s = rep.accepted[i];
    const double lm = lambda_min(s, true, tol_zero);
    if (i > 0 && !(lm <= prev - 1e-14)) fail("lambda_min not strictly decreasing at step " + std::to_string(i));
    if (i < rep.lambda_trace.size() && std::abs(lm - rep.lambda_trace[i]) > 1e-12)
      fail("recorded lambda_min differs at step " + std::to_string(i));
    if (balanced_margin(s) < -tol::psd) fail("accepted state " + std::to_string(i) + " is not balanced-PPT");
    prev = lm;
  }
  if (rep.success) {
    if (balanced_margin(rep.final_state) < -tol::psd) fail("final state is not balanced-PPT");
    if (!(lambda_min(rep.final_state, true, tol_zero) < 0.0)) fail("success reported without a negative lambda_min");
  }
  return audit;
}

}  // namespace symsep
