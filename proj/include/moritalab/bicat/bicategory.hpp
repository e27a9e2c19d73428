#pragma once

#include <algorithm>
#include <concepts>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "moritalab/error.hpp"

namespace moritalab::bicat {

/// Bicategory data as seen by the coherence checks.
///
/// 1-cells compose diagrammatically: for P in (A, B) and Q in (B, C),
/// compose(P, Q) is P * Q in (A, C). Horizontal composition of 2-cells
/// f : P => P', g : Q => Q' gives f * g : P * Q => P' * Q'. The structure
/// cells are
///   associator(P, Q, R) : (P * Q) * R => P * (Q * R)
///   left_unitor(P)      : I_A * P => P
///   right_unitor(P)     : P * I_B => P
/// `discrepancy` compares parallel 2-cells: 0 means equal, and cells count
/// as equal when it does not exceed `tolerance()`.
template <class B>
concept BicategoryInstance = requires(B& b, const typename B::Object& a, const typename B::OneCell& p,
                                      const typename B::TwoCell& f) {
  { b.source(p) } -> std::convertible_to<typename B::Object>;
  { b.target(p) } -> std::convertible_to<typename B::Object>;
  { b.same_object(a, a) } -> std::convertible_to<bool>;
  { b.compose(p, p) } -> std::convertible_to<typename B::OneCell>;
  { b.unit(a) } -> std::convertible_to<typename B::OneCell>;
  { b.identity_cell(p) } -> std::convertible_to<typename B::TwoCell>;
  { b.vertical(f, f) } -> std::convertible_to<typename B::TwoCell>;
  { b.horizontal(f, f) } -> std::convertible_to<typename B::TwoCell>;
  { b.associator(p, p, p) } -> std::convertible_to<typename B::TwoCell>;
  { b.left_unitor(p) } -> std::convertible_to<typename B::TwoCell>;
  { b.right_unitor(p) } -> std::convertible_to<typename B::TwoCell>;
  { b.discrepancy(f, f) } -> std::convertible_to<double>;
  { b.tolerance() } -> std::convertible_to<double>;
  { b.is_invertible(f) } -> std::convertible_to<bool>;
  { b.find_invertible(p, p) } -> std::convertible_to<std::optional<typename B::TwoCell>>;
};

struct CheckResult {
  bool pass = false;
  /// Largest discrepancy seen (0 or 1 for exact instances).
  double discrepancy = 0;
  std::string detail;
};

namespace detail {

template <BicategoryInstance B>
void require_composable(B& b, const typename B::OneCell& p, const typename B::OneCell& q, const char* what) {
  if (!b.same_object(b.target(p), b.source(q)))
    throw Error(ErrorKind::NotComposable, std::string(what) + ": 1-cells are not composable");
}

template <BicategoryInstance B>
CheckResult compare(B& b, const typename B::TwoCell& lhs, const typename B::TwoCell& rhs, const char* what) {
  const double d = b.discrepancy(lhs, rhs);
  CheckResult res{d <= b.tolerance(), d, {}};
  if (!res.pass) res.detail = std::string(what) + " fails, discrepancy " + std::to_string(d);
  return res;
}

inline CheckResult merge(CheckResult a, const CheckResult& b) {
  a.discrepancy = std::max(a.discrepancy, b.discrepancy);
  if (!b.pass) {
    a.pass = false;
    if (a.detail.empty()) a.detail = b.detail;
  }
  return a;
}

}  // namespace detail

/// beta(P,Q,R*S) o beta(P*Q,R,S) against (id*beta(Q,R,S)) o beta(P,Q*R,S) o (beta(P,Q,R)*id).
template <BicategoryInstance B>
CheckResult verify_pentagon(B& b, const typename B::OneCell& p, const typename B::OneCell& q,
                            const typename B::OneCell& r, const typename B::OneCell& s) {
  detail::require_composable(b, p, q, "pentagon");
  detail::require_composable(b, q, r, "pentagon");
  detail::require_composable(b, r, s, "pentagon");
  const auto pq = b.compose(p, q);
  const auto qr = b.compose(q, r);
  const auto rs = b.compose(r, s);
  const auto top = b.vertical(b.associator(p, q, rs), b.associator(pq, r, s));
  const auto bottom =
      b.vertical(b.horizontal(b.identity_cell(p), b.associator(q, r, s)),
                 b.vertical(b.associator(p, qr, s), b.horizontal(b.associator(p, q, r), b.identity_cell(s))));
  return detail::compare(b, top, bottom, "pentagon");
}

/// R(P) * id_Q against (id_P * L(Q)) o beta(P, I_B, Q).
template <BicategoryInstance B>
CheckResult verify_triangle(B& b, const typename B::OneCell& p, const typename B::OneCell& q) {
  detail::require_composable(b, p, q, "triangle");
  const auto i = b.unit(b.target(p));
  const auto lhs = b.horizontal(b.right_unitor(p), b.identity_cell(q));
  const auto rhs = b.vertical(b.horizontal(b.identity_cell(p), b.left_unitor(q)), b.associator(p, i, q));
  return detail::compare(b, lhs, rhs, "triangle");
}

/// Naturality of the associator in f : P => P', g : Q => Q', h : R => R'.
template <BicategoryInstance B>
CheckResult verify_associator_naturality(B& b, const typename B::TwoCell& f, const typename B::TwoCell& g,
                                         const typename B::TwoCell& h, const typename B::OneCell& p,
                                         const typename B::OneCell& q, const typename B::OneCell& r,
                                         const typename B::OneCell& p2, const typename B::OneCell& q2,
                                         const typename B::OneCell& r2) {
  const auto lhs = b.vertical(b.associator(p2, q2, r2), b.horizontal(b.horizontal(f, g), h));
  const auto rhs = b.vertical(b.horizontal(f, b.horizontal(g, h)), b.associator(p, q, r));
  return detail::compare(b, lhs, rhs, "associator naturality");
}

/// Naturality of both unitors in f : P => P'.
template <BicategoryInstance B>
CheckResult verify_unitor_naturality(B& b, const typename B::TwoCell& f, const typename B::OneCell& p,
                                     const typename B::OneCell& p2) {
  const auto ia = b.unit(b.source(p));
  const auto ib = b.unit(b.target(p));
  const auto left = detail::compare(b, b.vertical(b.left_unitor(p2), b.horizontal(b.identity_cell(ia), f)),
                                    b.vertical(f, b.left_unitor(p)), "left unitor naturality");
  const auto right = detail::compare(b, b.vertical(b.right_unitor(p2), b.horizontal(f, b.identity_cell(ib))),
                                     b.vertical(f, b.right_unitor(p)), "right unitor naturality");
  return detail::merge(left, right);
}

template <BicategoryInstance B>
struct IsoCertificate {
  typename B::Object a, b;
  typename B::OneCell forward;   // (A, B)
  typename B::OneCell backward;  // (B, A)
  typename B::TwoCell unit_iso;    // forward * backward => I_A
  typename B::TwoCell counit_iso;  // backward * forward => I_B
};

struct IsoRefutation {
  enum class Side { ForwardBackward, BackwardForward, Endpoints };
  Side side = Side::Endpoints;
  std::string detail;
};

template <BicategoryInstance B>
using IsoResult = std::variant<IsoCertificate<B>, IsoRefutation>;

/// Look for invertible 2-cells P * P^-1 => I_A and P^-1 * P => I_B.
template <BicategoryInstance B>
IsoResult<B> certify_object_isomorphism(B& b, const typename B::Object& a, const typename B::Object& c,
                                        const typename B::OneCell& forward, const typename B::OneCell& backward) {
  if (!b.same_object(b.source(forward), a) || !b.same_object(b.target(forward), c) ||
      !b.same_object(b.source(backward), c) || !b.same_object(b.target(backward), a))
    return IsoRefutation{IsoRefutation::Side::Endpoints, "candidate 1-cells do not connect the objects"};
  auto unit_iso = b.find_invertible(b.compose(forward, backward), b.unit(a));
  if (!unit_iso || !b.is_invertible(*unit_iso))
    return IsoRefutation{IsoRefutation::Side::ForwardBackward, "P * P^-1 is not isomorphic to the identity on A"};
  auto counit_iso = b.find_invertible(b.compose(backward, forward), b.unit(c));
  if (!counit_iso || !b.is_invertible(*counit_iso))
    return IsoRefutation{IsoRefutation::Side::BackwardForward, "P^-1 * P is not isomorphic to the identity on B"};
  return IsoCertificate<B>{a, c, forward, backward, std::move(*unit_iso), std::move(*counit_iso)};
}

/// The certificate for (B, A, P^-1, P).
template <BicategoryInstance B>
IsoCertificate<B> swap_certificate(const IsoCertificate<B>& cert) {
  return IsoCertificate<B>{cert.b, cert.a, cert.backward, cert.forward, cert.counit_iso, cert.unit_iso};
}

}  // namespace moritalab::bicat
