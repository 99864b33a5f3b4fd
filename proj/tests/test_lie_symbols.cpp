#include "doctest.h"
#include "gkdim/graded_ideals.hpp"
#include "gkdim/lie_symbols.hpp"

using namespace gkdim;

namespace {

TowerPtr q3() { return FieldTower::build(3, {0, 1}, {{-3}, {1}}, -1L); }
TowerPtr q9() { return FieldTower::build(3, {1, 0, 1}, {{-3, 0}, {1, 0}}); }
TowerPtr s3() { return FieldTower::build(3, {0, 1}, {{-3}, {0}, {1}}); }

std::vector<Rational> weights(const GroupContext& G, int N) {
  std::vector<Rational> w;
  Rational pN(1);
  for (int s = 0; s < N; ++s) pN *= G.K().p();
  for (const auto& b : G.basis()) w.push_back(b.omega / pN);
  return w;
}

}  // namespace

TEST_CASE("scaled generator coefficients are integral") {
  for (const auto& G : {GroupContext::build(GroupCase::GL2, q3()), GroupContext::build(GroupCase::GL2, s3()),
                        GroupContext::build(GroupCase::GL2, q9()), GroupContext::build(GroupCase::Quaternion, q3())})
    for (int k = 0; k < G->K().f(); ++k)
      for (char kind : {'e', 'f', 'h', 'z'})
        for (const auto& y : scaled_generator_coefficients(*G, kind, k))
          if (!y.is_exact_zero()) CHECK(y.vpi() >= 0);
}

TEST_CASE("unramified Casimir symbol is h^2/2 + 2 eps e f") {
  auto G = GroupContext::build(GroupCase::GL2, q3());
  auto A = AlgebraContext::build(G, Rational(3), 12);
  SymbolResult s = A->r_valuation_symbol(casimir_series(*A, 0, 0).series, 0);
  CHECK(s.valuation == Rational(5, 2));
  CHECK(s.symbol.str(A->variable_names()) == "(2)*h0_0^2 + (2)*e0_0*f0_0*eps");
}

TEST_CASE("computed symbols match the closed forms") {
  struct Case {
    GroupCase gc;
    TowerPtr K;
    Rational nu;
    int N;
  };
  std::vector<Case> cases{{GroupCase::GL2, q3(), Rational(3), 0},
                          {GroupCase::GL2, q3(), Rational(7, 2), 1},
                          {GroupCase::GL2, s3(), Rational(3), 0},
                          {GroupCase::Quaternion, q3(), Rational(3), 0}};
  for (const auto& c : cases) {
    auto G = GroupContext::build(c.gc, c.K);
    auto A = AlgebraContext::build(G, c.nu, 12);
    for (char kind : {'e', 'f', 'h', 'z', 'D'}) {
      Series x = kind == 'D' ? casimir_series(*A, 0, c.N).series : scaled_generator(*A, kind, 0, c.N).series;
      SymbolResult s = A->r_valuation_symbol(x, c.N);
      GradedPoly pred = predicted_symbol(*G, kind, 0, c.N);
      CHECK(s.symbol == pred);
      CHECK(pred.homogeneous(weights(*G, c.N), G->M().e()));
    }
  }
}

TEST_CASE("Casimir coefficients over Q_3(sqrt 3)") {
  auto G = GroupContext::build(GroupCase::GL2, s3());
  auto R = class_ring(*G);
  auto ex = casimir_coefficients(*G, 'D', 0);
  REQUIRE(ex.c.size() == 4);
  // With mu residues (2, 2): c0 = 2 h1^2, c1 = h0 h1 + 2 e1 f1,
  // c2 = 2 h0^2 + 2 (e1 f0 + e0 f1), c3 = 2 e0 f0.
  const char* expected[] = {"2*h0_1^2", "h0_0*h0_1 + 2*e0_1*f0_1", "2*h0_0^2 + 2*e0_1*f0_0 + 2*e0_0*f0_1", "2*e0_0*f0_0"};
  for (int i = 0; i < 4; ++i) CHECK(Poly::from_graded(R.get(), ex.c[i]) == parse_poly(R.get(), expected[i]));
}

TEST_CASE("class-variable coefficients agree with computed symbols") {
  for (const auto& [gc, K] : std::vector<std::pair<GroupCase, TowerPtr>>{
           {GroupCase::GL2, q9()}, {GroupCase::GL2, s3()}, {GroupCase::Quaternion, q3()}}) {
    auto G = GroupContext::build(gc, K);
    auto A = AlgebraContext::build(G, K->f() == 2 ? Rational(9, 2) : Rational(3), 12);
    const int dC = 2 * K->e() - 1;
    for (int k = 0; k < K->f(); ++k) {
      auto computed = expand_in_eps(A->r_valuation_symbol(casimir_series(*A, k, 0).series, 0).symbol, dC);
      auto cls = casimir_coefficients(*G, 'D', k);
      for (int i = 0; i <= dC; ++i) CHECK(class_to_basis(*G, cls.c[i]) == computed.c[i]);
    }
  }
}

TEST_CASE("Frobenius-power law on Q_9") {
  auto G = GroupContext::build(GroupCase::GL2, q9());
  auto A = AlgebraContext::build(G, Rational(9, 2), 12);
  for (int k = 0; k < 2; ++k)
    for (char kind : {'D', 'z'}) {
      auto x0 = kind == 'D' ? casimir_series(*A, k, 0) : scaled_generator(*A, 'z', k, 0);
      auto x2 = kind == 'D' ? casimir_series(*A, k, 2) : scaled_generator(*A, 'z', k, 2);
      const int dC = kind == 'D' ? 1 : 0;
      auto c0 = expand_in_eps(A->r_valuation_symbol(x0.series, 0).symbol, dC);
      auto c2 = expand_in_eps(A->r_valuation_symbol(x2.series, 2).symbol, dC);
      for (int i = 0; i <= dC; ++i) CHECK(c0.c[i].frobenius_power(2) == c2.c[i]);
    }
}

TEST_CASE("the Casimir element commutes with the group up to truncation") {
  auto G = GroupContext::build(GroupCase::GL2, q3());
  auto A = AlgebraContext::build(G, Rational(3), 12);
  Series C = casimir_series(*A, 0, 0).series;
  const Rational V = A->r_valuation_symbol(C, 0).valuation;
  for (int i = 0; i < A->dim(); ++i) {
    Series g = A->dirac(A->quotient().basis_power(i, 1));
    Series comm = A->sub(A->multiply(C, g), A->multiply(g, C));
    MonomialSeries m = A->to_monomials(comm, 0, ExtRational::of(V + Rational(1, 4)));
    for (const auto& [alpha, c] : m.terms) CHECK(A->monomial_valuation(alpha, c, m.pden, 0) > V);
  }
}

TEST_CASE("radius index must be a multiple of f") {
  auto A = AlgebraContext::build(GroupContext::build(GroupCase::GL2, q9()), Rational(9, 2), 12);
  CHECK_THROWS_AS(scaled_generator(*A, 'z', 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(expand_in_eps(predicted_symbol(A->group(), 'D', 0, 0), 0), std::domain_error);
}
