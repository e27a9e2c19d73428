#include <gtest/gtest.h>

#include "moritalab/bicat/bicategory.hpp"
#include "moritalab/bicat/wstar_instance.hpp"
#include "moritalab/error.hpp"
#include "moritalab/wstar/morita.hpp"
#include "oracles/wstar_oracle.hpp"
#include "support/wstar_gen.hpp"

using namespace moritalab;
using namespace moritalab::wstar;
using numeric::operator_norm;

namespace {

StandardFormPtr traced(std::vector<int> blocks) {
  return gns_standard_form(State::normalized_trace(gen::algebra(std::move(blocks))));
}

StandardFormPtr with_density(std::vector<int> blocks, const ComplexMatrix& rho) {
  return gns_standard_form(State(gen::algebra(std::move(blocks)), rho));
}

ComplexMatrix diag(std::vector<double> d) {
  ComplexVector v(static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) v[static_cast<Eigen::Index>(i)] = d[i];
  return v.asDiagonal();
}

ComplexVector random_vector(gen::Gen& g, Eigen::Index n) { return gen::random_complex(g, n, 1).col(0); }

ComplexMatrix random_element(gen::Gen& g, const MultiMatrixAlgebra& a) {
  return a.element(random_vector(g, a.dimension()));
}

template <class T>
bool throws_kind(T&& f, ErrorKind kind) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

// C^n with M_n acting and C acting by scalars.
CorrespondencePtr column(gen::Gen& g, int n) {
  return gen::multiplicity_correspondence(g, traced({n}), traced({1}), {{1}});
}

const std::vector<std::vector<int>> kAlgebras = {{2}, {3}, {2, 3}, {1, 1}, {1, 2}};

}  // namespace

// ---------------------------------------------------------------- algebra

TEST(Algebra, DimensionsAndUnits) {
  MultiMatrixAlgebra a({2, 3});
  EXPECT_EQ(a.dimension(), 13);
  EXPECT_EQ(a.matrix_size(), 5);
  EXPECT_EQ(a.unit_index(1, 2, 0), 4 + 6);
  const auto u = a.unit(10);
  EXPECT_EQ(u.block, 1u);
  EXPECT_EQ(u.i, 2);
  EXPECT_EQ(u.j, 0);
  EXPECT_EQ(a.adjoint_index(a.unit_index(1, 0, 2)), a.unit_index(1, 2, 0));
  EXPECT_EQ(a.product_index(a.unit_index(0, 0, 1), a.unit_index(0, 1, 1)), a.unit_index(0, 0, 1));
  EXPECT_FALSE(a.product_index(a.unit_index(0, 0, 1), a.unit_index(0, 0, 1)));
  EXPECT_FALSE(a.product_index(a.unit_index(0, 0, 0), a.unit_index(1, 0, 0)));
  EXPECT_EQ(a.str(), "M_2 + M_3");
  EXPECT_THROW(MultiMatrixAlgebra({2, 0}), Error);
  EXPECT_THROW(MultiMatrixAlgebra(std::vector<int>{}), Error);
}

TEST(Algebra, MatrixUnitProductsMatchIndexTable) {
  MultiMatrixAlgebra a({1, 2, 2});
  for (Eigen::Index x = 0; x < a.dimension(); ++x)
    for (Eigen::Index y = 0; y < a.dimension(); ++y) {
      const ComplexMatrix p = a.matrix_unit(x) * a.matrix_unit(y);
      const auto idx = a.product_index(x, y);
      if (idx)
        EXPECT_EQ(p, a.matrix_unit(*idx));
      else
        EXPECT_EQ(p.norm(), 0.0);
    }
}

TEST(Algebra, CoefficientsRoundTrip) {
  gen::Gen g(5);
  MultiMatrixAlgebra a({3, 1, 2});
  const ComplexVector c = random_vector(g, a.dimension());
  EXPECT_LE((a.coefficients(a.element(c)) - c).norm(), 0.0);
  ComplexMatrix x = a.element(c);
  EXPECT_EQ(a.off_block_norm(x), 0.0);
  x(0, 5) = 1.0;
  EXPECT_GT(a.off_block_norm(x), 0.5);
}

TEST(State, Validation) {
  auto a = gen::algebra({2});
  EXPECT_NO_THROW(State(a, diag({0.6, 0.4})));
  EXPECT_TRUE(throws_kind([&] { State(a, diag({1.0 - 1e-4, 1e-4})); }, ErrorKind::NotFaithful));
  EXPECT_TRUE(throws_kind([&] { State(a, diag({0.5, 0.6})); }, ErrorKind::InvalidArgument));
  EXPECT_TRUE(throws_kind([&] { State(gen::algebra({1, 1}), ComplexMatrix::Constant(2, 2, 0.5)); },
                          ErrorKind::InvalidArgument));
  ComplexMatrix skew = diag({0.5, 0.5});
  skew(0, 1) = 0.1;
  EXPECT_TRUE(throws_kind([&] { State(a, skew); }, ErrorKind::InvalidArgument));
  EXPECT_TRUE(State::normalized_trace(gen::algebra({2, 3})).is_tracial());
  EXPECT_TRUE(State(gen::algebra({1, 1}), diag({0.3, 0.7})).is_tracial());
  EXPECT_FALSE(State(a, diag({0.3, 0.7})).is_tracial());
  EXPECT_NEAR(State::normalized_trace(gen::algebra({2, 3}))(ComplexMatrix::Identity(5, 5)).real(), 1.0, 1e-15);
}

// ----------------------------------------------------------- standard form

TEST(StandardForm, TracialM2) {
  auto s = traced({2});
  EXPECT_LE(operator_norm(s->delta() - ComplexMatrix::Identity(4, 4)), 1e-12);
  for (Eigen::Index a = 0; a < 4; ++a) {
    const ComplexMatrix x = s->algebra().matrix_unit(a);
    EXPECT_LE((s->j().apply(s->lambda(x)) - s->lambda(x.adjoint())).norm(), 1e-12);
  }
}

TEST(StandardForm, AbelianStateHasTrivialModularOperator) {
  auto s = with_density({1, 1}, diag({0.3, 0.7}));
  EXPECT_LE(operator_norm(s->delta() - ComplexMatrix::Identity(2, 2)), 1e-12);
}

TEST(StandardForm, NonTracialM2Spectrum) {
  const ComplexMatrix rho = diag({2.0 / 3, 1.0 / 3});
  auto s = with_density({2}, rho);
  const auto spec = numeric::hermitian_eigen(s->delta()).eigenvalues;
  const std::vector<double> expected = oracle::modular_spectrum(rho, {2});
  ASSERT_EQ(expected, (std::vector<double>{0.5, 1.0, 1.0, 2.0}));
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(spec[i], expected[static_cast<std::size_t>(i)], 1e-9);
  for (Eigen::Index a = 0; a < 4; ++a) {
    const ComplexMatrix x = s->algebra().matrix_unit(a);
    EXPECT_LE((s->delta() * s->lambda(x) - s->lambda(oracle::modular_image(rho, x))).norm(), 1e-9);
  }
}

TEST(StandardForm, InnerProductIsTheState) {
  gen::Gen g(8);
  for (const auto& blocks : kAlgebras) {
    auto a = gen::algebra(blocks);
    const State st = gen::random_state(g, a);
    auto s = gns_standard_form(st);
    for (int t = 0; t < 5; ++t) {
      const ComplexMatrix x = random_element(g, *a), y = random_element(g, *a);
      EXPECT_LE(std::abs(s->lambda(x).dot(s->lambda(y)) - st(x.adjoint() * y)), 1e-10);
      EXPECT_LE((s->element(s->lambda(x)) - x).norm(), 1e-10);
    }
  }
}

TEST(StandardForm, ModularDataOnRandomStates) {
  gen::Gen g(9);
  for (const auto& blocks : kAlgebras)
    for (int trial = 0; trial < 4; ++trial) {
      auto a = gen::algebra(blocks);
      const State st = gen::random_state(g, a);
      auto s = gns_standard_form(st);
      EXPECT_LE(s->modular_residual(), 1e-9);
      EXPECT_LE(s->center_residual(), 1e-9);
      EXPECT_LE(s->commutant_residual(), 1e-8);
      const auto expected = oracle::modular_spectrum(st.density(), blocks);
      const auto spec = numeric::hermitian_eigen(s->delta()).eigenvalues;
      for (std::size_t i = 0; i < expected.size(); ++i)
        EXPECT_NEAR(spec[static_cast<Eigen::Index>(i)], expected[i], 1e-8 * expected.back());
      const ComplexMatrix x = random_element(g, *a), y = random_element(g, *a);
      EXPECT_LE((s->delta() * s->lambda(x) - s->lambda(oracle::modular_image(st.density(), x))).norm(), 1e-8);
      EXPECT_LE((s->pi_r(y) * s->lambda(x) - s->lambda(oracle::right_action_image(st.density(), x, y))).norm(),
                1e-8);
      EXPECT_LE((s->pi_l(y) * s->lambda(x) - s->lambda(y * x)).norm(), 1e-10);
    }
}

TEST(StandardForm, ModularConjugateMatchesDensityConjugation) {
  gen::Gen g(10);
  const State st = gen::random_state(g, gen::algebra({3}));
  auto s = gns_standard_form(st);
  const ComplexMatrix x = random_element(g, s->algebra());
  const ComplexMatrix expect = oracle::pd_power(st.density(), 0.5) * x * oracle::pd_power(st.density(), -0.5);
  EXPECT_LE((s->modular_conjugate(x, 0.5) - expect).norm(), 1e-9);
  EXPECT_LE((s->modular_conjugate(s->modular_conjugate(x, 0.5), -0.5) - x).norm(), 1e-9);
}

TEST(StandardForm, BicommutantOfLeftRepresentation) {
  gen::Gen g(11);
  auto s = gen::random_standard_form(g, gen::algebra({2, 1}));
  std::vector<ComplexMatrix> gens;
  for (Eigen::Index a = 0; a < s->dimension(); ++a) gens.push_back(s->pi_l_unit(a));
  const auto comm = numeric::commutant(gens, static_cast<std::size_t>(s->dimension()));
  const auto bicomm = numeric::commutant(comm, static_cast<std::size_t>(s->dimension()));
  EXPECT_EQ(static_cast<Eigen::Index>(bicomm.size()), s->dimension());
  for (const auto& x : gens) EXPECT_LE(numeric::span_residual(x, bicomm), 1e-8);
}

// --------------------------------------------------- identity correspondence

TEST(IdentityCorrespondence, Examples) {
  auto c = identity_correspondence(traced({1}));
  EXPECT_EQ(c->dimension(), 1);
  EXPECT_LE(std::abs(c->left_units()[0](0, 0) - 1.0), 1e-12);
  EXPECT_LE(std::abs(c->right_units()[0](0, 0) - 1.0), 1e-12);

  auto s = traced({2});
  auto l2 = identity_correspondence(s);
  for (Eigen::Index a = 0; a < 4; ++a)
    for (Eigen::Index b = 0; b < 4; ++b) {
      const ComplexMatrix x = s->algebra().matrix_unit(a), y = s->algebra().matrix_unit(b);
      EXPECT_LE((l2->right_units()[static_cast<std::size_t>(a)] * s->lambda(y) - s->lambda(y * x)).norm(), 1e-12);
    }
  EXPECT_EQ(identity_correspondence(traced({2, 3}))->dimension(), 13);
}

TEST(Correspondence, RejectsBrokenActions) {
  gen::Gen g(12);
  auto h = column(g, 2);
  auto left = h->left_units();
  left[0] *= 2.0;
  EXPECT_THROW(Correspondence(h->left(), h->right(), 2, left, h->right_units()), Error);
  left = h->left_units();
  left[1] = left[1].transpose().eval();
  EXPECT_THROW(Correspondence(h->left(), h->right(), 2, left, h->right_units()), Error);
  // Right action that fails to commute with the left one.
  auto s = traced({2});
  EXPECT_THROW(Correspondence(s, s, 2, h->left_units(), h->left_units()), Error);
  EXPECT_THROW(Correspondence(s, s, 2, h->left_units(), {}), Error);
}

// -------------------------------------------------------------------- R_eta

TEST(REta, TracialIdentityCorrespondenceIsLeftMultiplication) {
  gen::Gen g(13);
  auto s = traced({2, 1});
  auto l2 = identity_correspondence(s);
  const ComplexMatrix x = random_element(g, s->algebra()), z = random_element(g, s->algebra());
  const ComplexMatrix r = r_eta(*l2, s->lambda(x));
  EXPECT_LE((r * s->lambda(z) - s->lambda(x * z)).norm(), 1e-10);
  EXPECT_LE(r_eta(*l2, ComplexVector::Zero(l2->dimension())).norm(), 0.0);
}

TEST(REta, ColumnModuleOverScalars) {
  gen::Gen g(14);
  auto h = column(g, 3);
  const ComplexVector eta = random_vector(g, 3);
  const ComplexMatrix r = r_eta(*h, eta);
  ASSERT_EQ(r.cols(), 1);
  EXPECT_LE((r.col(0) - eta).norm(), 1e-12);
}

TEST(REta, IdentitiesOnRandomCorrespondences) {
  gen::Gen g(15);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = gen::random_standard_form(g, gen::algebra({2}));
    auto n = gen::random_standard_form(g, gen::algebra(trial % 2 ? std::vector<int>{2} : std::vector<int>{1, 2}));
    const auto mult = gen::random_multiplicities(g, m->algebra().block_sizes(), n->algebra().block_sizes(), 1, 12);
    auto h = gen::multiplicity_correspondence(g, m, n, mult);
    const ComplexVector e1 = random_vector(g, h->dimension()), e2 = random_vector(g, h->dimension());
    const ComplexMatrix r1 = r_eta(*h, e1), r2 = r_eta(*h, e2);
    // R^*_1 R_2 lies in pi_l(N) on L^2(N).
    const ComplexMatrix t = r1.adjoint() * r2;
    const ComplexMatrix nelt = n->element(t * n->lambda(n->algebra().identity()));
    EXPECT_LE(operator_norm(t - n->pi_l(nelt)), 1e-9);
    // R_{B eta} = B R_eta for B commuting with the right action.
    const ComplexMatrix b = h->pi_l(random_element(g, m->algebra()));
    EXPECT_LE(operator_norm(r_eta(*h, b * e1).adjoint() * r_eta(*h, b * e2) - r1.adjoint() * b.adjoint() * b * r2),
              1e-9);
    // Delta^{-/+1/2} twists for a right multiplier A.
    const ComplexMatrix a = random_element(g, n->algebra());
    const ComplexMatrix la = n->pi_l(a), half = n->delta_power(0.5), minus = n->delta_power(-0.5);
    EXPECT_LE(operator_norm(minus * la.adjoint() * half * t - r_eta(*h, h->pi_r(a) * e1).adjoint() * r2), 1e-8);
    EXPECT_LE(operator_norm(t * half * la * minus - r1.adjoint() * r_eta(*h, h->pi_r(a) * e2)), 1e-8);
    // psi(R^*_xi R_xi) = ||xi||^2.
    const ComplexMatrix self = r1.adjoint() * r1;
    const ComplexMatrix selt = n->element(self * n->lambda(n->algebra().identity()));
    EXPECT_NEAR(n->state()(selt).real(), e1.squaredNorm(), 1e-9 * (1 + e1.squaredNorm()));
  }
}

TEST(REta, RStarROfLambdaXIsXStarX) {
  gen::Gen g(16);
  auto s = gen::random_standard_form(g, gen::algebra({2, 1}));
  auto l2 = identity_correspondence(s);
  const ComplexMatrix x = random_element(g, s->algebra());
  const ComplexMatrix r = r_eta(*l2, s->lambda(x));
  EXPECT_LE(operator_norm(r.adjoint() * r - s->pi_l(x.adjoint() * x)), 1e-9);
}

// ------------------------------------------------------------------- fusion

TEST(Fusion, IdentityWithItself) {
  for (const auto& blocks : kAlgebras) {
    auto s = traced(blocks);
    auto l2 = identity_correspondence(s);
    const FusionResult f = connes_fusion(l2, l2);
    EXPECT_EQ(f.product->dimension(), s->dimension());
    const Intertwiner u = left_unitor(f);
    EXPECT_LE(numeric::unitarity_residual(u.matrix), 1e-9);
    EXPECT_LE(intertwining_residual(u), 1e-9);
  }
}

TEST(Fusion, LeftUnitorOnL2IsMultiplication) {
  gen::Gen g(17);
  auto s = gen::random_standard_form(g, gen::algebra({2, 1}));
  auto l2 = identity_correspondence(s);
  const FusionResult f = connes_fusion(l2, l2);
  const Intertwiner u = left_unitor(f);
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix x = random_element(g, s->algebra()), y = random_element(g, s->algebra());
    EXPECT_LE((u.matrix * f.class_of(s->lambda(x), s->lambda(y)) - s->lambda(x * y)).norm(), 1e-9);
  }
}

TEST(Fusion, ZeroDimensionalFactor) {
  gen::Gen g(18);
  auto m = traced({2});
  auto n = traced({1, 1});
  auto h = gen::multiplicity_correspondence(g, m, n, {{1, 1}});
  auto zero = gen::multiplicity_correspondence(g, n, m, {{0}, {0}});
  EXPECT_EQ(zero->dimension(), 0);
  const FusionResult f = connes_fusion(h, zero);
  EXPECT_EQ(f.product->dimension(), 0);
}

TEST(Fusion, ColumnWithItsConjugateIsStandard) {
  gen::Gen g(19);
  for (int n = 1; n <= 4; ++n) {
    auto h = column(g, n);
    const FusionResult f = connes_fusion(h, conjugate_correspondence(h));
    EXPECT_EQ(f.product->dimension(), n * n);
    const auto u = find_unitary_intertwiner(f.product, identity_correspondence(h->left()));
    ASSERT_TRUE(u.unitary) << u.reason;
    EXPECT_LE(numeric::unitarity_residual(u.unitary->matrix), 1e-8);
  }
}

TEST(Fusion, Errors) {
  gen::Gen g(20);
  auto h = column(g, 2);
  EXPECT_TRUE(throws_kind([&] { connes_fusion(h, h); }, ErrorKind::AlgebraMismatch));
  auto hb = conjugate_correspondence(h);
  EXPECT_TRUE(throws_kind([&] { connes_fusion(h, hb, 1e-8, 3); }, ErrorKind::DimensionCap));
  // Same algebra, different state in the middle.
  auto other = with_density({2}, diag({0.7, 0.3}));
  auto k = gen::multiplicity_correspondence(g, other, traced({1}), {{1}});
  EXPECT_TRUE(throws_kind([&] { connes_fusion(conjugate_correspondence(k), h); }, ErrorKind::AlgebraMismatch));
}

TEST(Fusion, DimensionsMultiplyMultiplicities) {
  gen::Gen g(21);
  const std::vector<std::vector<int>> shapes = {{1}, {2}, {1, 1}, {1, 2}, {2, 1}};
  for (int trial = 0; trial < 25; ++trial) {
    const auto& mb = shapes[g.index(shapes.size())];
    const auto& nb = shapes[g.index(shapes.size())];
    const auto& pb = shapes[g.index(shapes.size())];
    auto m = gen::random_standard_form(g, gen::algebra(mb));
    auto n = gen::random_standard_form(g, gen::algebra(nb));
    auto p = gen::random_standard_form(g, gen::algebra(pb));
    const auto c = gen::random_multiplicities(g, mb, nb, 2, 16);
    const auto d = gen::random_multiplicities(g, nb, pb, 2, 16);
    if (c.empty() || d.empty()) continue;
    auto h = gen::multiplicity_correspondence(g, m, n, c);
    auto k = gen::multiplicity_correspondence(g, n, p, d);
    const FusionResult f = connes_fusion(h, k);
    const auto e = oracle::fused_multiplicities(c, d);
    EXPECT_EQ(f.product->dimension(), oracle::correspondence_dimension(mb, e, pb));
    // Same result as fusing the unrotated models, up to a unitary.
    auto model = gen::multiplicity_correspondence(g, m, p, e, false);
    const auto u = find_unitary_intertwiner(f.product, model);
    EXPECT_TRUE(u.unitary) << u.reason;
  }
}

TEST(Fusion, BalancingIdentities) {
  gen::Gen g(22);
  for (int instance = 0; instance < 3; ++instance) {
    auto m = gen::random_standard_form(g, gen::algebra({2}));
    auto n = gen::random_standard_form(g, gen::algebra(instance == 2 ? std::vector<int>{1, 2} : std::vector<int>{2}));
    auto p = gen::random_standard_form(g, gen::algebra({1, 1}));
    const auto c = gen::random_multiplicities(g, m->algebra().block_sizes(), n->algebra().block_sizes(), 1, 12);
    const auto d = gen::random_multiplicities(g, n->algebra().block_sizes(), p->algebra().block_sizes(), 1, 12);
    auto h = gen::multiplicity_correspondence(g, m, n, c);
    auto k = gen::multiplicity_correspondence(g, n, p, d);
    const FusionResult f = connes_fusion(h, k);
    for (int s = 0; s < 100; ++s) {
      const ComplexVector eta = random_vector(g, h->dimension()), zeta = random_vector(g, k->dimension());
      const ComplexMatrix x = random_element(g, n->algebra());
      const ComplexMatrix up = n->modular_conjugate(x, 0.5), down = n->modular_conjugate(x, -0.5);
      EXPECT_LE((f.class_of(h->pi_r(x) * eta, zeta) - f.class_of(eta, k->pi_l(up) * zeta)).norm(), 1e-8);
      EXPECT_LE((f.class_of(eta, k->pi_l(x) * zeta) - f.class_of(h->pi_r(down) * eta, zeta)).norm(), 1e-8);
    }
  }
}

TEST(Fusion, IndependentOfTheMiddleState) {
  gen::Gen g(23);
  for (const auto& nb : std::vector<std::vector<int>>{{2}, {1, 2}}) {
    auto m = traced({2});
    auto p = traced({1});
    auto alg = gen::algebra(nb);
    auto n1 = gen::random_standard_form(g, alg);
    auto n2 = gen::random_standard_form(g, alg);
    const auto c = gen::random_multiplicities(g, {2}, nb, 1, 12);
    const auto d = gen::random_multiplicities(g, nb, {1}, 2, 12);
    auto h1 = gen::multiplicity_correspondence(g, m, n1, c);
    auto k1 = gen::multiplicity_correspondence(g, n1, p, d);
    auto h2 = gen::multiplicity_correspondence(g, m, n2, c);
    auto k2 = gen::multiplicity_correspondence(g, n2, p, d);
    const auto u = find_unitary_intertwiner(connes_fusion(h1, k1).product, connes_fusion(h2, k2).product);
    ASSERT_TRUE(u.unitary) << u.reason;
    EXPECT_LE(intertwining_residual(*u.unitary), 1e-8);
  }
}

// ------------------------------------------------------------------ unitors

TEST(Unitors, TracialRightUnitorIsRightMultiplication) {
  gen::Gen g(24);
  auto m = traced({2});
  auto n = traced({2, 1});
  auto h = gen::multiplicity_correspondence(g, m, n, {{1, 1}});
  auto l2 = identity_correspondence(n);
  const FusionResult f = connes_fusion(h, l2);
  const Intertwiner r = right_unitor(f);
  EXPECT_LE(numeric::unitarity_residual(r.matrix), 1e-9);
  for (int t = 0; t < 10; ++t) {
    const ComplexVector eta = random_vector(g, h->dimension());
    const ComplexMatrix y = random_element(g, n->algebra());
    EXPECT_LE((r.matrix * f.class_of(eta, n->lambda(y)) - h->pi_r(y) * eta).norm(), 1e-9);
  }
}

TEST(Unitors, NonTracialRightUnitorIsUnitaryWithTwist) {
  gen::Gen g(25);
  auto s = with_density({2}, diag({2.0 / 3, 1.0 / 3}));
  auto l2 = identity_correspondence(s);
  const FusionResult f = connes_fusion(l2, l2);
  const Intertwiner r = right_unitor(f);
  EXPECT_LE(numeric::unitarity_residual(r.matrix), 1e-9);
  EXPECT_LE(intertwining_residual(r), 1e-9);
  // The twist is visible: plain right multiplication is not the unitor.
  const ComplexMatrix plain = twisted_right_multiplication(f, 0.0);
  EXPECT_GT(operator_norm(plain - r.matrix), 1e-3);
  // The opposite twist is not even isometric.
  EXPECT_GT(numeric::unitarity_residual(twisted_right_multiplication(f, 0.5)), 1e-2);
}

TEST(Unitors, ZeroDimensionalCorrespondence) {
  gen::Gen g(26);
  auto m = traced({1, 1});
  auto n = traced({2});
  auto zero = gen::multiplicity_correspondence(g, m, n, {{0}, {0}});
  const Intertwiner r = right_unitor(connes_fusion(zero, identity_correspondence(n)));
  EXPECT_EQ(r.matrix.size(), 0);
  const Intertwiner l = left_unitor(connes_fusion(identity_correspondence(m), zero));
  EXPECT_EQ(l.matrix.size(), 0);
}

TEST(Unitors, ColumnModuleLeftUnitorHasRankN) {
  gen::Gen g(27);
  auto h = column(g, 3);
  const Intertwiner l = left_unitor(connes_fusion(identity_correspondence(h->left()), h));
  EXPECT_EQ(l.matrix.rows(), 3);
  EXPECT_EQ(l.matrix.cols(), 3);
  EXPECT_LE(numeric::unitarity_residual(l.matrix), 1e-9);
}

TEST(Unitors, UnitaryOnRandomCorrespondences) {
  gen::Gen g(28);
  for (int trial = 0; trial < 10; ++trial) {
    auto m = gen::random_standard_form(g, gen::algebra(trial % 2 ? std::vector<int>{2} : std::vector<int>{1, 1}));
    auto n = gen::random_standard_form(g, gen::algebra(trial % 3 ? std::vector<int>{2} : std::vector<int>{1, 2}));
    const auto c = gen::random_multiplicities(g, m->algebra().block_sizes(), n->algebra().block_sizes(), 2, 16);
    auto h = gen::multiplicity_correspondence(g, m, n, c);
    const Intertwiner l = left_unitor(connes_fusion(identity_correspondence(m), h));
    const Intertwiner r = right_unitor(connes_fusion(h, identity_correspondence(n)));
    for (const auto* u : {&l, &r}) {
      EXPECT_LE(numeric::unitarity_residual(u->matrix), 1e-8);
      EXPECT_LE(intertwining_residual(*u), 1e-8);
    }
  }
}

// --------------------------------------------------------------- associator

TEST(Associator, ThreeCopiesOfL2IsReassociation) {
  gen::Gen g(29);
  auto s = gen::random_standard_form(g, gen::algebra({2}));
  auto l2 = identity_correspondence(s);
  const FusionResult hk = connes_fusion(l2, l2);
  const FusionResult hk_l = connes_fusion(hk.product, l2);
  const FusionResult kl = connes_fusion(l2, l2);
  const FusionResult h_kl = connes_fusion(l2, kl.product);
  const Intertwiner a = associator(hk, hk_l, kl, h_kl);
  EXPECT_LE(numeric::unitarity_residual(a.matrix), 1e-9);
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix x = random_element(g, s->algebra()), y = random_element(g, s->algebra()),
                        z = random_element(g, s->algebra());
    const ComplexVector lhs = hk_l.class_of(hk.class_of(s->lambda(x), s->lambda(y)), s->lambda(z));
    const ComplexVector rhs = h_kl.class_of(s->lambda(x), kl.class_of(s->lambda(y), s->lambda(z)));
    EXPECT_LE((a.matrix * lhs - rhs).norm(), 1e-9);
  }
}

TEST(Associator, ZeroDimensionalMiddle) {
  gen::Gen g(30);
  auto m = traced({2});
  auto n = traced({1, 1});
  auto h = identity_correspondence(m);
  auto zero = gen::multiplicity_correspondence(g, m, n, {{0, 0}});
  auto l = gen::multiplicity_correspondence(g, n, m, {{1}, {1}});
  const FusionResult hk = connes_fusion(h, zero), kl = connes_fusion(zero, l);
  const Intertwiner a = associator(hk, connes_fusion(hk.product, l), kl, connes_fusion(h, kl.product));
  EXPECT_EQ(a.matrix.size(), 0);
}

// ---------------------------------------------------------------- conjugate

TEST(Conjugate, TracialL2IsSelfConjugate) {
  auto s = traced({2, 1});
  auto l2 = identity_correspondence(s);
  auto bar = conjugate_correspondence(l2);
  // conj(Lambda x) -> Lambda(x^*) is S in conjugate coordinates.
  const Intertwiner t{bar, l2, s->s().matrix()};
  EXPECT_LE(intertwining_residual(t), 1e-10);
  EXPECT_LE(numeric::unitarity_residual(t.matrix), 1e-10);
}

TEST(Conjugate, ColumnModuleActions) {
  gen::Gen g(31);
  auto h = column(g, 3);
  auto bar = conjugate_correspondence(h);
  EXPECT_EQ(bar->left()->algebra(), h->right()->algebra());
  EXPECT_EQ(bar->right()->algebra(), h->left()->algebra());
  const ComplexVector eta = random_vector(g, 3);
  for (Eigen::Index a = 0; a < 9; ++a) {
    // conj(eta) e_a = conj(e_a^* eta).
    const ComplexMatrix x = h->left()->algebra().matrix_unit(a);
    EXPECT_LE((bar->pi_r(x) * eta.conjugate() - (h->pi_l(x.adjoint()) * eta).conjugate()).norm(), 1e-12);
  }
  auto barbar = conjugate_correspondence(bar);
  EXPECT_LE(intertwining_residual(double_conjugate_identification(h, barbar)), 0.0);
}

// ------------------------------------------------------------- homomorphism

TEST(Homomorphism, Examples) {
  auto n = traced({2});
  std::vector<ComplexMatrix> id;
  for (Eigen::Index a = 0; a < 4; ++a) id.push_back(n->algebra().matrix_unit(a));
  auto same = corr_from_homomorphism(n, id, n);
  EXPECT_EQ(same->dimension(), 4);
  EXPECT_TRUE(find_unitary_intertwiner(same, identity_correspondence(n)).unitary);

  auto c = traced({1});
  auto unital = corr_from_homomorphism(c, {ComplexMatrix::Identity(2, 2)}, n);
  EXPECT_EQ(unital->dimension(), 4);
  EXPECT_LE((unital->right_units()[0] - ComplexMatrix::Identity(4, 4)).norm(), 1e-10);

  auto corner = corr_from_homomorphism(c, {diag({1.0, 0.0})}, n);
  EXPECT_EQ(corner->dimension(), 2);

  const auto nonfaithful = with_density({2}, diag({0.8, 0.2}));
  EXPECT_EQ(corr_from_homomorphism(c, {diag({0.0, 1.0})}, nonfaithful)->dimension(), 2);

  EXPECT_TRUE(throws_kind([&] { corr_from_homomorphism(c, {diag({2.0, 0.0})}, n); }, ErrorKind::NotHomomorphism));
  EXPECT_TRUE(throws_kind([&] { corr_from_homomorphism(c, {}, n); }, ErrorKind::NotHomomorphism));
  ComplexMatrix offblock = ComplexMatrix::Zero(3, 3);
  offblock(0, 2) = 1.0;
  EXPECT_TRUE(
      throws_kind([&] { corr_from_homomorphism(c, {offblock}, traced({2, 1})); }, ErrorKind::NotHomomorphism));
}

TEST(Homomorphism, BlockEmbedding) {
  // M_2 -> M_2 (+) M_2 diagonally lands in L^2 as the diagonal of two copies.
  gen::Gen g(32);
  auto m = traced({2});
  auto n = gen::random_standard_form(g, gen::algebra({2, 2}));
  std::vector<ComplexMatrix> rho;
  for (Eigen::Index a = 0; a < 4; ++a) {
    const ComplexMatrix e = m->algebra().matrix_unit(a);
    ComplexMatrix x = ComplexMatrix::Zero(4, 4);
    x.block(0, 0, 2, 2) = e;
    x.block(2, 2, 2, 2) = e;
    rho.push_back(x);
  }
  auto h = corr_from_homomorphism(m, rho, n);
  EXPECT_EQ(h->dimension(), 8);
  EXPECT_LE(h->axiom_residual(), 1e-9);
}

// ------------------------------------------------------------------- Morita

TEST(Morita, ColumnModulesCertify) {
  gen::Gen g(33);
  for (int n = 2; n <= 4; ++n) {
    const auto r = certify_morita_equivalent(column(g, n));
    ASSERT_TRUE(std::holds_alternative<MoritaCertificate>(r));
    const auto& c = std::get<MoritaCertificate>(r);
    EXPECT_EQ(c.h_hbar.product->dimension(), n * n);
    EXPECT_LE(numeric::unitarity_residual(c.to_l2_m.matrix), 1e-8);
    EXPECT_LE(numeric::unitarity_residual(c.to_l2_n.matrix), 1e-8);
  }
}

TEST(Morita, IdentityCorrespondencesCertify) {
  gen::Gen g(34);
  for (const auto& blocks : kAlgebras) {
    const auto r = certify_morita_equivalent(identity_correspondence(gen::random_standard_form(g, gen::algebra(blocks))));
    EXPECT_TRUE(std::holds_alternative<MoritaCertificate>(r)) << std::get<MoritaRefutation>(r).detail;
  }
}

TEST(Morita, KilledBlockIsNotFaithful) {
  gen::Gen g(35);
  auto h = gen::multiplicity_correspondence(g, traced({2, 3}), traced({2}), {{1}, {0}});
  const auto r = certify_morita_equivalent(h);
  ASSERT_TRUE(std::holds_alternative<MoritaRefutation>(r));
  const auto& reasons = std::get<MoritaRefutation>(r).reasons;
  EXPECT_NE(std::find(reasons.begin(), reasons.end(), MoritaRefutation::Reason::NotFaithful), reasons.end());
}

TEST(Morita, CertifiesExactlyThePermutationMultiplicities) {
  gen::Gen g(36);
  const std::vector<std::vector<int>> shapes = {{1}, {2}, {1, 1}, {1, 2}, {2, 1}};
  int certified = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto& mb = shapes[g.index(shapes.size())];
    const auto& nb = shapes[g.index(shapes.size())];
    std::vector<std::vector<int>> c(mb.size(), std::vector<int>(nb.size()));
    for (auto& row : c)
      for (auto& v : row) v = static_cast<int>(g.integer(0, 1));
    if (oracle::correspondence_dimension(mb, c, nb) == 0) continue;
    auto h = gen::multiplicity_correspondence(g, gen::random_standard_form(g, gen::algebra(mb)),
                                              gen::random_standard_form(g, gen::algebra(nb)), c);
    const bool ok = std::holds_alternative<MoritaCertificate>(certify_morita_equivalent(h));
    EXPECT_EQ(ok, oracle::is_permutation(c));
    certified += ok;
  }
  EXPECT_GT(certified, 0);
}

TEST(Morita, MissingRightBlockFailsAtFusion) {
  // Faithful on the left with pi_l(M)' = pi_r(N), yet N has a block that acts as zero.
  gen::Gen g(37);
  auto h = gen::multiplicity_correspondence(g, traced({2}), traced({1, 1}), {{1, 0}});
  const auto r = certify_morita_equivalent(h);
  ASSERT_TRUE(std::holds_alternative<MoritaRefutation>(r));
  EXPECT_EQ(std::get<MoritaRefutation>(r).reasons,
            std::vector<MoritaRefutation::Reason>{MoritaRefutation::Reason::FusionNotStandard});
}

// --------------------------------------------------------------- bicategory

TEST(WStarBicategory, CoherenceOnRandomTuples) {
  gen::Gen g(38);
  bicat::WStarBicategory b;
  const std::vector<std::vector<int>> shapes = {{1}, {2}, {1, 1}};
  std::vector<StandardFormPtr> objects;
  for (const auto& s : shapes) objects.push_back(gen::random_standard_form(g, gen::algebra(s)));
  auto cell = [&](std::size_t x, std::size_t y) {
    const auto c = gen::random_multiplicities(g, objects[x]->algebra().block_sizes(),
                                              objects[y]->algebra().block_sizes(), 1, 4);
    return gen::multiplicity_correspondence(g, objects[x], objects[y], c);
  };
  for (int t = 0; t < 8; ++t) {
    std::size_t o[5];
    for (auto& v : o) v = g.index(objects.size());
    const auto p = cell(o[0], o[1]), q = cell(o[1], o[2]), r = cell(o[2], o[3]), s = cell(o[3], o[4]);
    const auto pent = bicat::verify_pentagon(b, p, q, r, s);
    EXPECT_TRUE(pent.pass) << pent.discrepancy;
    const auto tri = bicat::verify_triangle(b, p, q);
    EXPECT_TRUE(tri.pass) << tri.discrepancy;
  }
}

TEST(WStarBicategory, CellsAreInvertibleAndNatural) {
  gen::Gen g(39);
  bicat::WStarBicategory b;
  auto m = gen::random_standard_form(g, gen::algebra({2}));
  auto n = gen::random_standard_form(g, gen::algebra({1, 1}));
  auto h = gen::multiplicity_correspondence(g, m, n, {{1, 1}});
  auto k = gen::multiplicity_correspondence(g, n, m, {{1}, {1}});
  EXPECT_TRUE(b.is_invertible(b.associator(h, k, h)));
  EXPECT_TRUE(b.is_invertible(b.left_unitor(h)));
  EXPECT_TRUE(b.is_invertible(b.right_unitor(k)));
  // A unitary self-map of H built from the commutant of both actions.
  auto h2 = gen::multiplicity_correspondence(g, m, n, {{1, 1}});
  const auto u = b.find_invertible(h, h2);
  ASSERT_TRUE(u);
  const auto nat = bicat::verify_unitor_naturality(b, *u, h, h2);
  EXPECT_TRUE(nat.pass) << nat.discrepancy;
  const auto assoc = bicat::verify_associator_naturality(b, *u, b.identity_cell(k), *u, h, k, h, h2, k, h2);
  EXPECT_TRUE(assoc.pass) << assoc.discrepancy;
  EXPECT_THROW(b.compose(h, h), Error);
}
