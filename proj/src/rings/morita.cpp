#include "moritalab/rings/morita.hpp"

#include <utility>

#include "moritalab/error.hpp"

namespace moritalab::rings {

namespace {

IntegerMatrix combine(const std::vector<IntegerMatrix>& mats, const Vector& coeffs, std::size_t n) {
  IntegerMatrix out(n, n);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) out(r, c) += coeffs[i] * mats[i](r, c);
  }
  return out;
}

SurjectivityCertificate surjectivity(const BimoduleMap& map) {
  SurjectivityCertificate cert;
  cert.surjective = map.is_surjective();
  if (!cert.surjective) return cert;
  const std::size_t n = map.target()->rank();
  for (std::size_t g = 0; g < n; ++g) {
    Vector e(n);
    e[g] = 1;
    cert.preimages.push_back(*map.preimage(e));
  }
  return cert;
}

// Inverse of a bijective additive map between groups of equal order.
IntegerMatrix invert_additive(const IntegerMatrix& map, const FiniteAbelianGroup& source,
                              const FiniteAbelianGroup& target) {
  IntegerMatrix inv(source.rank(), target.rank());
  for (std::size_t j = 0; j < target.rank(); ++j) {
    Vector e(target.rank());
    e[j] = 1;
    const auto sol = exact::solve_congruences(map, target.invariant_factors(), e);
    if (!sol) throw Error(ErrorKind::InvalidArgument, "additive map is not surjective");
    inv.set_column(j, source.reduce(sol->particular));
  }
  return inv;
}

}  // namespace

std::optional<Vector> MoritaContext::end_coordinates(const IntegerMatrix& map) const {
  return end_hom->coordinates(map);
}

MoritaContext morita_context(const BimodulePtr& p_in) {
  const Ring s = p_in->right_ring();
  const BimodulePtr p_right = underlying_right_module(p_in);
  const BimodulePtr s_reg = regular_bimodule(s);

  EndRing er = end_ring(p_right, Side::Right);
  auto end_hom = std::make_shared<const HomGroup>(er.hom);
  const Ring e = er.ring;
  auto dual_hom = std::make_shared<const HomGroup>(hom_group(p_right, s_reg, Side::Right));

  const std::size_t np = p_in->rank();
  const auto& end_basis = end_hom->basis();
  const auto& dual_basis = dual_hom->basis();
  const FiniteAbelianGroup dual_group = dual_hom->group();

  auto p_e = std::make_shared<const Bimodule>(e, s, p_in->carrier(), end_basis, p_in->right_actions(),
                                              p_in->label().empty() ? std::string() : p_in->label() + " over End");

  std::vector<IntegerMatrix> dual_left, dual_right;
  for (std::size_t g = 0; g < s->rank(); ++g) {
    const IntegerMatrix ls = s->left_multiplication(s->generator(g));
    IntegerMatrix m(dual_group.rank(), dual_group.rank());
    for (std::size_t c = 0; c < dual_basis.size(); ++c) m.set_column(c, *dual_hom->coordinates(ls * dual_basis[c]));
    dual_left.push_back(std::move(m));
  }
  for (std::size_t a = 0; a < end_basis.size(); ++a) {
    IntegerMatrix m(dual_group.rank(), dual_group.rank());
    for (std::size_t c = 0; c < dual_basis.size(); ++c)
      m.set_column(c, *dual_hom->coordinates(dual_basis[c] * end_basis[a]));
    dual_right.push_back(std::move(m));
  }
  auto p_star = std::make_shared<const Bimodule>(s, e, dual_group, std::move(dual_left), std::move(dual_right),
                                                 p_in->label().empty() ? std::string() : p_in->label() + "*");

  TensorProductResult t1 = tensor_product(p_star, p_e);
  IntegerMatrix alpha_values(s->rank(), dual_basis.size() * np);
  for (std::size_t c = 0; c < dual_basis.size(); ++c)
    for (std::size_t q = 0; q < np; ++q) alpha_values.set_column(c * np + q, dual_basis[c].column(q));
  BimoduleMap alpha = factor_through_tensor(BalancedMap{s_reg, alpha_values}, t1);

  TensorProductResult t2 = tensor_product(p_e, p_star);
  const BimodulePtr e_reg = regular_bimodule(e);
  IntegerMatrix beta_values(e->rank(), np * dual_basis.size());
  for (std::size_t q = 0; q < np; ++q) {
    for (std::size_t c = 0; c < dual_basis.size(); ++c) {
      // p' -> e_q * f_c(p')
      IntegerMatrix m(np, np);
      for (std::size_t q2 = 0; q2 < np; ++q2) {
        const Vector sval = dual_basis[c].column(q2);
        Vector ep(np);
        ep[q] = 1;
        m.set_column(q2, p_in->act_right(ep, sval));
      }
      const auto coords = end_hom->coordinates(m);
      if (!coords) throw Error(ErrorKind::InvalidArgument, "coevaluation is not S-linear");
      beta_values.set_column(q * dual_basis.size() + c, *coords);
    }
  }
  BimoduleMap beta = factor_through_tensor(BalancedMap{e_reg, beta_values}, t2);

  return MoritaContext{s,
                       e,
                       p_e,
                       p_star,
                       end_basis,
                       dual_basis,
                       std::move(t1),
                       std::move(t2),
                       std::move(alpha),
                       std::move(beta),
                       end_hom,
                       dual_hom};
}

SurjectivityCertificate is_generator(const MoritaContext& ctx) { return surjectivity(ctx.alpha); }

SurjectivityCertificate is_fg_projective(const MoritaContext& ctx) { return surjectivity(ctx.beta); }

bool is_progenerator(const MoritaContext& ctx) { return ctx.alpha.is_surjective() && ctx.beta.is_surjective(); }

SurjectivityCertificate is_generator(const BimodulePtr& p) {
  if (p->rank() == 0) return {};
  return is_generator(morita_context(p));
}

SurjectivityCertificate is_fg_projective(const BimodulePtr& p) {
  // The zero module is projective, but its end ring is the excluded zero ring.
  if (p->rank() == 0) return SurjectivityCertificate{true, {}};
  return is_fg_projective(morita_context(p));
}

bool is_progenerator(const BimodulePtr& p) { return p->rank() > 0 && is_progenerator(morita_context(p)); }

std::string to_string(Refutation::Reason r) {
  switch (r) {
    case Refutation::Reason::AlphaNotEpi: return "alpha is not surjective (P is not a generator)";
    case Refutation::Reason::BetaNotEpi: return "beta is not surjective (P is not finitely generated projective)";
    case Refutation::Reason::LeftActionNotIso: return "R -> End_S(P) is not bijective";
    case Refutation::Reason::RingsNotIsomorphic: return "R is not isomorphic to End_S(P)";
    case Refutation::Reason::NotBijective: return "candidate inverse does not give bijections";
  }
  return "unknown";
}

InvertibilityResult certify_invertible_bimodule(const BimodulePtr& p, const SearchOptions& options) {
  if (p->rank() == 0) return Refutation{{Refutation::Reason::AlphaNotEpi}, "the zero module is not a generator"};
  const MoritaContext ctx = morita_context(p);
  const Ring r = p->left_ring();
  const Ring s = p->right_ring();
  const Ring e = ctx.end;
  Refutation refutation;
  if (!ctx.alpha.is_surjective()) refutation.reasons.push_back(Refutation::Reason::AlphaNotEpi);
  if (!ctx.beta.is_surjective()) refutation.reasons.push_back(Refutation::Reason::BetaNotEpi);

  IntegerMatrix lambda(e->rank(), r->rank());
  for (std::size_t i = 0; i < r->rank(); ++i) lambda.set_column(i, *ctx.end_coordinates(p->left_action(i)));
  const bool lambda_bijective =
      r->order() == e->order() && image_order(lambda, e->additive()) == e->order();
  if (!lambda_bijective) {
    refutation.reasons.push_back(Refutation::Reason::LeftActionNotIso);
    try {
      const RingIsoResult iso = ring_iso_search(*r, *e, options);
      if (!iso.found()) {
        refutation.reasons.push_back(Refutation::Reason::RingsNotIsomorphic);
        refutation.detail = iso.reason;
      } else {
        refutation.detail = "R and End_S(P) are isomorphic, but not through the given action";
      }
    } catch (const Error& err) {
      refutation.detail = err.what();
    }
  }
  if (!refutation.reasons.empty()) {
    if (refutation.detail.empty()) refutation.detail = to_string(refutation.reasons.front());
    return refutation;
  }

  const IntegerMatrix lambda_inv = invert_additive(lambda, r->additive(), e->additive());
  std::vector<IntegerMatrix> q_right;
  for (std::size_t i = 0; i < r->rank(); ++i)
    q_right.push_back(combine(ctx.p_star->right_actions(), lambda.column(i), ctx.p_star->rank()));
  auto q = std::make_shared<const Bimodule>(s, r, ctx.p_star->carrier(), ctx.p_star->left_actions(),
                                            std::move(q_right),
                                            p->label().empty() ? std::string() : "Hom_S(" + p->label() + ", S)");

  TensorProductResult pq = tensor_product(p, q);
  const std::size_t np = p->rank(), nq = q->rank();
  IntegerMatrix unit_values(r->rank(), np * nq);
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t c = 0; c < nq; ++c) {
      Vector ep(np), fc(nq);
      ep[a] = 1;
      fc[c] = 1;
      const Vector beta_val = ctx.beta.apply(ctx.p_tensor_dual.tau(ep, fc));
      unit_values.set_column(a * nq + c, r->additive().reduce(lambda_inv * beta_val));
    }
  BimoduleMap unit_iso = factor_through_tensor(BalancedMap{regular_bimodule(r), unit_values}, pq);

  TensorProductResult qp = tensor_product(q, p);
  IntegerMatrix counit_values(s->rank(), nq * np);
  for (std::size_t c = 0; c < nq; ++c)
    for (std::size_t a = 0; a < np; ++a) counit_values.set_column(c * np + a, ctx.dual_basis[c].column(a));
  BimoduleMap counit_iso = factor_through_tensor(BalancedMap{regular_bimodule(s), counit_values}, qp);

  if (!unit_iso.is_bijective() || !counit_iso.is_bijective()) {
    refutation.reasons.push_back(Refutation::Reason::NotBijective);
    refutation.detail = to_string(Refutation::Reason::NotBijective);
    return refutation;
  }
  return InvertibilityCertificate{p,       q, std::move(pq), std::move(qp), std::move(unit_iso), std::move(counit_iso),
                                  lambda};
}

MoritaRoundTrip morita_round_trip(const MoritaContext& ctx, const BimodulePtr& u) {
  TensorProductResult inner = tensor_product(u, ctx.p_star);
  TensorProductResult outer = tensor_product(inner.product, ctx.p);
  const std::size_t nu = u->rank(), nd = ctx.p_star->rank(), np = ctx.p->rank();
  const std::size_t ni = inner.product->rank();
  IntegerMatrix values(nu, ni * np);
  for (std::size_t g = 0; g < ni; ++g) {
    for (std::size_t q = 0; q < np; ++q) {
      Vector acc(nu);
      for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t c = 0; c < nd; ++c) {
          const Integer& coeff = inner.lift(i * nd + c, g);
          if (coeff.is_zero()) continue;
          Vector ui(nu);
          ui[i] = 1;
          const Vector img = u->act_right(ui, ctx.dual_basis[c].column(q));
          for (std::size_t t = 0; t < nu; ++t) acc[t] += coeff * img[t];
        }
      }
      values.set_column(g * np + q, u->carrier().reduce(acc));
    }
  }
  BimoduleMap map = factor_through_tensor(BalancedMap{u, values}, outer);
  return MoritaRoundTrip{std::move(inner), std::move(outer), std::move(map)};
}

BimoduleMap round_trip_functor(const MoritaContext& ctx, const BimoduleMap& f, const MoritaRoundTrip& source,
                               const MoritaRoundTrip& target) {
  const BimoduleMap inner = tensor_maps(f, BimoduleMap::identity(ctx.p_star), source.inner, target.inner);
  return tensor_maps(inner, BimoduleMap::identity(ctx.p), source.outer, target.outer);
}

}  // namespace moritalab::rings
