#include "moritalab/bicat/rings_instance.hpp"

#include "moritalab/rings/search.hpp"

namespace moritalab::bicat {

using rings::BalancedMap;
using rings::BimoduleMap;
using rings::IntegerMatrix;
using rings::Vector;

const rings::TensorProductResult& RingsBicategory::tensor(const OneCell& p, const OneCell& q) {
  const Key key{p.get(), q.get()};
  auto it = tensors_.find(key);
  if (it == tensors_.end()) {
    if (!same_ring(p->right_ring(), q->left_ring()))
      throw Error(ErrorKind::NotComposable, "bimodules are not composable");
    it = tensors_.emplace(key, Entry{p, q, rings::tensor_product(p, q)}).first;
  }
  return it->second.result;
}

RingsBicategory::OneCell RingsBicategory::compose(const OneCell& p, const OneCell& q) { return tensor(p, q).product; }

RingsBicategory::OneCell RingsBicategory::unit(const Object& a) {
  auto it = units_.find(a.get());
  if (it == units_.end()) it = units_.emplace(a.get(), std::make_pair(a, rings::regular_bimodule(a))).first;
  return it->second.second;
}

RingsBicategory::TwoCell RingsBicategory::horizontal(const TwoCell& f, const TwoCell& g) {
  const auto& src = tensor(f.source(), g.source());
  const auto& tgt = tensor(f.target(), g.target());
  return rings::tensor_maps(f, g, src, tgt);
}

RingsBicategory::TwoCell RingsBicategory::associator(const OneCell& p, const OneCell& q, const OneCell& r) {
  const auto& pq = tensor(p, q);
  const auto& qr = tensor(q, r);
  const auto& dom = tensor(pq.product, r);
  const auto& cod = tensor(p, qr.product);
  const std::size_t np = p->rank(), nq = q->rank(), nr = r->rank();
  const std::size_t npq = pq.product->rank();
  IntegerMatrix values(cod.product->rank(), npq * nr);
  for (std::size_t g = 0; g < npq; ++g)
    for (std::size_t k = 0; k < nr; ++k) {
      // (p_i (x) q_j) (x) r_k -> p_i (x) (q_j (x) r_k), summed over the lift of g.
      Vector acc(cod.product->rank());
      for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < nq; ++j) {
          const auto& c = pq.lift(i * nq + j, g);
          if (c.is_zero()) continue;
          Vector ei(np);
          ei[i] = 1;
          const Vector v = cod.tau(ei, qr.tau(j, k));
          for (std::size_t t = 0; t < acc.size(); ++t) acc[t] += c * v[t];
        }
      values.set_column(g * nr + k, cod.product->carrier().reduce(acc));
    }
  return rings::factor_through_tensor(BalancedMap{cod.product, values}, dom);
}

RingsBicategory::TwoCell RingsBicategory::left_unitor(const OneCell& p) {
  const auto& t = tensor(unit(p->left_ring()), p);
  const std::size_t nr = p->left_ring()->rank(), np = p->rank();
  IntegerMatrix values(np, nr * np);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < np; ++j) values.set_column(i * np + j, p->left_action(i).column(j));
  return rings::factor_through_tensor(BalancedMap{p, values}, t);
}

RingsBicategory::TwoCell RingsBicategory::right_unitor(const OneCell& p) {
  const auto& t = tensor(p, unit(p->right_ring()));
  const std::size_t ns = p->right_ring()->rank(), np = p->rank();
  IntegerMatrix values(np, np * ns);
  for (std::size_t j = 0; j < np; ++j)
    for (std::size_t s = 0; s < ns; ++s) values.set_column(j * ns + s, p->right_action(s).column(j));
  return rings::factor_through_tensor(BalancedMap{p, values}, t);
}

double RingsBicategory::discrepancy(const TwoCell& a, const TwoCell& b) const {
  if (a.source()->carrier() != b.source()->carrier() || a.target()->carrier() != b.target()->carrier()) return 1.0;
  return a.equals(b) ? 0.0 : 1.0;
}

std::optional<RingsBicategory::TwoCell> RingsBicategory::find_invertible(const OneCell& from, const OneCell& to) const {
  auto res = rings::find_bimodule_isomorphism(from, to, iso_budget_);
  if (res.status != rings::BimoduleIsoResult::Status::Isomorphic) return std::nullopt;
  return std::move(res.iso);
}

}  // namespace moritalab::bicat
