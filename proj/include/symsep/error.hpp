#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symsep {

enum class Errc {
  non_hermitian,
  non_square,
  dicke_basis_unsupported,
  bad_subset,
  not_bipartite,
  unequal_dims,
  bad_split,
  bad_keep_count,
  not_invariant,
  odd_dimension,
  bad_lambda,
  not_monotone,
  no_sign_change,
  config_invalid,
  size_mismatch,
  invalid_state,
  parse_error,
  not_applicable,
  bad_params,
  rejection_limit,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::non_hermitian: return "NonHermitian";
    case Errc::non_square: return "NonSquare";
    case Errc::dicke_basis_unsupported: return "DickeBasisUnsupported";
    case Errc::bad_subset: return "BadSubset";
    case Errc::not_bipartite: return "NotBipartite";
    case Errc::unequal_dims: return "UnequalDims";
    case Errc::bad_split: return "BadSplit";
    case Errc::bad_keep_count: return "BadKeepCount";
    case Errc::not_invariant: return "NotInvariant";
    case Errc::odd_dimension: return "OddDimension";
    case Errc::bad_lambda: return "BadLambda";
    case Errc::not_monotone: return "NotMonotone";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::config_invalid: return "ConfigInvalid";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::invalid_state: return "InvalidState";
    case Errc::parse_error: return "ParseError";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::bad_params: return "BadParams";
    case Errc::rejection_limit: return "RejectionLimit";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception type. The
/// code identifies the contract that was violated; what() carries the detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace symsep
