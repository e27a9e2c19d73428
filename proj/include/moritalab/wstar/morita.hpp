#pragma once

#include <string>
#include <variant>
#include <vector>

#include "moritalab/wstar/fusion.hpp"

namespace moritalab::wstar {

struct MoritaCertificate {
  CorrespondencePtr h;
  CorrespondencePtr h_bar;
  /// Smallest singular value of x -> pi_l(x) on matrix units.
  double faithfulness_margin = 0;
  /// Mutual span residual of commutant(pi_l(M)) and pi_r(N).
  double commutant_residual = 0;
  FusionResult h_hbar;  // H (x)_N conj(H)
  FusionResult hbar_h;  // conj(H) (x)_M H
  Intertwiner to_l2_m;  // H (x)_N conj(H) -> L^2(M)
  Intertwiner to_l2_n;  // conj(H) (x)_M H -> L^2(N)
};

struct MoritaRefutation {
  enum class Reason { NotFaithful, CommutantMismatch, FusionNotStandard };
  std::vector<Reason> reasons;
  std::string detail;
};

std::string to_string(MoritaRefutation::Reason r);

using MoritaResult = std::variant<MoritaCertificate, MoritaRefutation>;

/// Checks that pi_l is faithful and that pi_l(M)' = pi_r(N); on success
/// also exhibits the unitaries H (x) conj(H) ~ L^2(M), conj(H) (x) H ~ L^2(N).
MoritaResult certify_morita_equivalent(const CorrespondencePtr& h, double tol = numeric::kDefaultTolerance);

}  // namespace moritalab::wstar
