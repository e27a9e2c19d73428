#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "moritalab/wstar/standard_form.hpp"

namespace moritalab::wstar {

/// An (M, N)-correspondence on C^d. pi_l is a unital *-representation of M,
/// pi_r a unital *-antirepresentation of N, both given on matrix units.
/// M and N carry their standard forms so fusion knows which state to use.
class Correspondence {
 public:
  /// Validates unitality, the matrix-unit relations, the *-property and
  /// commutation of the two actions within tol (InvalidArgument otherwise).
  Correspondence(StandardFormPtr left, StandardFormPtr right, Eigen::Index dim, std::vector<ComplexMatrix> pi_l,
                 std::vector<ComplexMatrix> pi_r, std::string name = {},
                 double tol = numeric::kDefaultTolerance);

  const StandardFormPtr& left() const noexcept { return left_; }
  const StandardFormPtr& right() const noexcept { return right_; }
  Eigen::Index dimension() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& left_units() const noexcept { return pi_l_; }
  const std::vector<ComplexMatrix>& right_units() const noexcept { return pi_r_; }
  const std::string& name() const noexcept { return name_; }

  ComplexMatrix pi_l(const ComplexMatrix& x) const;
  ComplexMatrix pi_r(const ComplexMatrix& y) const;

  /// Largest violation of the correspondence axioms.
  double axiom_residual() const;

 private:
  StandardFormPtr left_, right_;
  Eigen::Index dim_;
  std::vector<ComplexMatrix> pi_l_, pi_r_;
  std::string name_;
};

using CorrespondencePtr = std::shared_ptr<const Correspondence>;

/// Same algebra and the same density within 1e-12.
bool same_object(const StandardForm& a, const StandardForm& b);

/// A bounded bimodule map between correspondences over the same (M, N).
struct Intertwiner {
  CorrespondencePtr source;
  CorrespondencePtr target;
  ComplexMatrix matrix;  // target.dim x source.dim
};

/// Largest ||T pi_A(e) - pi_B(e) T|| over matrix units of both sides.
double intertwining_residual(const Intertwiner& t);
Intertwiner identity_intertwiner(const CorrespondencePtr& h);

/// L^2(M) with left multiplication and y -> J y^* J.
CorrespondencePtr identity_correspondence(const StandardFormPtr& m);

/// Conjugate space with n conj(eta) m = conj(m^* eta n^*), in the coordinates
/// conj(eta) -> conj(coordinates of eta).
CorrespondencePtr conjugate_correspondence(const CorrespondencePtr& h);

/// conj(conj(H)) -> H, the identity on coordinates.
Intertwiner double_conjugate_identification(const CorrespondencePtr& h, const CorrespondencePtr& hbarbar);

/// L^2(rho) = { xi in L^2(N) : xi rho(1) = xi } as an (N, M)-correspondence.
/// rho gives the image (an element of N) of every matrix unit of M.
CorrespondencePtr corr_from_homomorphism(const StandardFormPtr& m, const std::vector<ComplexMatrix>& rho,
                                         const StandardFormPtr& n, double tol = numeric::kDefaultTolerance);

/// Conditional expectation of X onto the bimodule maps A -> B:
/// sum over blocks of (1/n_k) sum_ij pi_B(e_ij) X pi_A(e_ji), on both sides.
ComplexMatrix project_to_intertwiners(const ComplexMatrix& x, const Correspondence& a, const Correspondence& b);

struct UnitaryIntertwinerResult {
  std::optional<Intertwiner> unitary;
  std::string reason;
};

/// A unitary bimodule map A -> B, found as the polar part of a projected
/// random matrix (deterministic in `seed`). Fails when the dimensions or
/// algebras differ, or when the projections stay singular, which for
/// isomorphic correspondences happens with probability zero.
UnitaryIntertwinerResult find_unitary_intertwiner(const CorrespondencePtr& a, const CorrespondencePtr& b,
                                                  std::uint64_t seed = 1, double tol = numeric::kDefaultTolerance);

}  // namespace moritalab::wstar
