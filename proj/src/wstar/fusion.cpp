#include "moritalab/wstar/fusion.hpp"

#include "moritalab/error.hpp"

namespace moritalab::wstar {

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Columns J Lambda(e_u^*), inverted: R_eta = W V^{-1}.
ComplexMatrix inverse_reference(const StandardForm& n) {
  const Eigen::Index d = n.dimension();
  ComplexMatrix v(d, d);
  for (Eigen::Index u = 0; u < d; ++u) v.col(u) = n.j().apply(n.lambda_unit(n.algebra().adjoint_index(u)));
  return v.inverse();
}

ComplexMatrix r_eta_with(const Correspondence& h, const ComplexVector& eta, const ComplexMatrix& v_inverse) {
  const Eigen::Index d = h.right()->dimension();
  ComplexMatrix w(h.dimension(), d);
  for (Eigen::Index u = 0; u < d; ++u) w.col(u) = h.right_units()[static_cast<std::size_t>(u)] * eta;
  return w * v_inverse;
}

ComplexMatrix combine(const std::vector<ComplexMatrix>& units, const ComplexVector& c, Eigen::Index dim) {
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t u = 0; u < units.size(); ++u) out += c[static_cast<Eigen::Index>(u)] * units[u];
  return out;
}

}  // namespace

ComplexMatrix r_eta(const Correspondence& h, const ComplexVector& eta) {
  if (eta.size() != h.dimension()) throw Error(ErrorKind::InvalidArgument, "vector is not in H");
  return r_eta_with(h, eta, inverse_reference(*h.right()));
}

ComplexVector FusionResult::class_of(const ComplexVector& eta, const ComplexVector& zeta) const {
  ComplexVector t(eta.size() * zeta.size());
  for (Eigen::Index a = 0; a < eta.size(); ++a) t.segment(a * zeta.size(), zeta.size()) = eta[a] * zeta;
  return projection * t;
}

FusionResult connes_fusion(const CorrespondencePtr& h, const CorrespondencePtr& k, double tol,
                           Eigen::Index max_ambient) {
  if (!same_object(*h->right(), *k->left()))
    throw Error(ErrorKind::AlgebraMismatch, "fusion over different algebras or states: " + h->right()->algebra().str() +
                                                " vs " + k->left()->algebra().str());
  const Eigen::Index dh = h->dimension(), dk = k->dimension();
  if (dh * dk > max_ambient)
    throw Error(ErrorKind::DimensionCap, "fusion ambient dimension " + std::to_string(dh * dk) + " exceeds " +
                                             std::to_string(max_ambient));
  const StandardForm& n = *h->right();
  const ComplexMatrix v_inverse = inverse_reference(n);
  const ComplexVector one = n.lambda(n.algebra().identity());

  std::vector<ComplexMatrix> r(static_cast<std::size_t>(dh));
  for (Eigen::Index a = 0; a < dh; ++a)
    r[static_cast<std::size_t>(a)] = r_eta_with(*h, ComplexVector::Unit(dh, a), v_inverse);

  // (e_a (x) f_b, e_c (x) f_d)_0 = <f_b, pi_K(n_ac) f_d> with
  // pi_{L^2}(n_ac) = R_a^* R_c, read off from its value on Lambda(1).
  ComplexMatrix gram(dh * dk, dh * dk);
  for (Eigen::Index a = 0; a < dh; ++a)
    for (Eigen::Index c = a; c < dh; ++c) {
      const ComplexVector coeffs =
          n.coefficients_of(r[static_cast<std::size_t>(a)].adjoint() * (r[static_cast<std::size_t>(c)] * one));
      const ComplexMatrix block = combine(k->left_units(), coeffs, dk);
      gram.block(a * dk, c * dk, dk, dk) = block;
      if (c != a) gram.block(c * dk, a * dk, dk, dk) = block.adjoint();
    }
  gram = numeric::hermitian_part(gram);
  const numeric::GramQuotient q = numeric::gram_quotient(gram, tol);

  const ComplexMatrix id_h = ComplexMatrix::Identity(dh, dh), id_k = ComplexMatrix::Identity(dk, dk);
  std::vector<ComplexMatrix> left, right;
  for (const auto& x : h->left_units()) left.push_back(q.projection * kron(x, id_k) * q.lift);
  for (const auto& y : k->right_units()) right.push_back(q.projection * kron(id_h, y) * q.lift);
  auto product = std::make_shared<const Correspondence>(h->left(), k->right(), q.rank, std::move(left),
                                                        std::move(right), h->name() + " [x] " + k->name(), tol);
  return FusionResult{h, k, std::move(product), std::move(gram), q.projection, q.lift};
}

Intertwiner left_unitor(const FusionResult& l2_k) {
  const StandardForm& m = *l2_k.h->left();
  const Correspondence& k = *l2_k.k;
  const Eigen::Index d = m.dimension(), dk = k.dimension();
  if (l2_k.h->dimension() != d) throw Error(ErrorKind::InvalidArgument, "left factor is not L^2(M)");
  ComplexMatrix amb(dk, d * dk);
  for (Eigen::Index a = 0; a < d; ++a)
    amb.block(0, a * dk, dk, dk) = combine(k.left_units(), m.coefficients_of(ComplexVector::Unit(d, a)), dk);
  return Intertwiner{l2_k.product, l2_k.k, amb * l2_k.lift};
}

ComplexMatrix twisted_right_multiplication(const FusionResult& h_l2, double t) {
  const StandardForm& n = *h_l2.k->right();
  const Correspondence& h = *h_l2.h;
  const Eigen::Index d = n.dimension(), dh = h.dimension();
  if (h_l2.k->dimension() != d) throw Error(ErrorKind::InvalidArgument, "right factor is not L^2(N)");
  const ComplexMatrix power = n.delta_power(t);
  ComplexMatrix amb(dh, dh * d);
  for (Eigen::Index b = 0; b < d; ++b) {
    // Lambda(Delta^t y Delta^{-t}) = Delta^t Lambda(y) since Delta^{-t} Lambda(1) = Lambda(1).
    const ComplexMatrix act = combine(h.right_units(), n.coefficients_of(power.col(b)), dh);
    for (Eigen::Index a = 0; a < dh; ++a) amb.col(a * d + b) = act.col(a);
  }
  return amb * h_l2.lift;
}

Intertwiner right_unitor(const FusionResult& h_l2) {
  return Intertwiner{h_l2.product, h_l2.h, twisted_right_multiplication(h_l2, -0.5)};
}

Intertwiner associator(const FusionResult& hk, const FusionResult& hk_l, const FusionResult& kl,
                       const FusionResult& h_kl) {
  if (hk_l.h != hk.product || h_kl.k != kl.product || hk.h != h_kl.h || hk.k != kl.h || kl.k != hk_l.k)
    throw Error(ErrorKind::NotComposable, "associator: fusions do not fit together");
  const Eigen::Index dh = hk.h->dimension(), dk = hk.k->dimension(), dl = kl.k->dimension();
  const Eigen::Index r_hk = hk.product->dimension(), r_kl = kl.product->dimension();
  ComplexMatrix amb = ComplexMatrix::Zero(dh * r_kl, r_hk * dl);
  for (Eigen::Index g = 0; g < r_hk; ++g)
    for (Eigen::Index c = 0; c < dl; ++c)
      for (Eigen::Index a = 0; a < dh; ++a)
        for (Eigen::Index b = 0; b < dk; ++b) {
          const Complex coef = hk.lift(a * dk + b, g);
          if (coef == Complex(0.0)) continue;
          amb.block(a * r_kl, g * dl + c, r_kl, 1) += coef * kl.projection.col(b * dl + c);
        }
  return Intertwiner{hk_l.product, h_kl.product, h_kl.projection * amb * hk_l.lift};
}

Intertwiner horizontal_composite(const Intertwiner& f, const Intertwiner& g, const FusionResult& source,
                                 const FusionResult& target) {
  if (source.h != f.source || source.k != g.source || target.h != f.target || target.k != g.target)
    throw Error(ErrorKind::NotComposable, "horizontal composite: fusions do not match the cells");
  return Intertwiner{source.product, target.product, target.projection * kron(f.matrix, g.matrix) * source.lift};
}

}  // namespace moritalab::wstar
