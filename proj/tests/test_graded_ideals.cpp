#include <random>

#include "doctest.h"
#include "gkdim/config.hpp"
#include "gkdim/graded_ideals.hpp"

using namespace gkdim;

namespace {

TowerPtr q3() { return FieldTower::build(3, {0, 1}, {{-3}, {1}}, -1L); }
TowerPtr s3() { return FieldTower::build(3, {0, 1}, {{-3}, {0}, {1}}); }

std::vector<std::string> strs(const std::vector<Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

RingPtr xy() { return make_ring(Fq::prime(3), {"x", "y"}); }

}  // namespace

TEST_CASE("reduced Groebner bases of small ideals") {
  auto R = xy();
  CHECK(strs(groebner(parse_ideal(R, "x^2, x*y"))) == std::vector<std::string>{"x*y", "x^2"});
  CHECK(strs(groebner(parse_ideal(R, "x, y"))) == std::vector<std::string>{"y", "x"});
  CHECK(strs(groebner(parse_ideal(R, "x^2 + y, x*y + 1"))).size() >= 1);
  CHECK(contains_one(groebner(parse_ideal(R, "x, x + 1"))));
}

TEST_CASE("Buchberger criterion holds on random ideals") {
  std::mt19937_64 rng(21);
  auto R = make_ring(Fq(3, {1, 0, 1}), {"a", "b", "c"});
  for (int s = 0; s < 15; ++s) {
    std::vector<Poly> gens;
    for (int g = 0; g < 3; ++g) {
      Poly p(R.get());
      for (int t = 0; t < 3; ++t) {
        Exps e{};
        for (int i = 0; i < 3; ++i) e[i] = static_cast<std::uint16_t>(rng() % 3);
        p = p + Poly::monomial(R.get(), e, static_cast<Fq::Elt>(1 + rng() % 8));
      }
      gens.push_back(p);
    }
    auto G = groebner_basis(gens);
    for (const auto& g : gens) CHECK(normal_form(g, G).is_zero());
    for (std::size_t i = 0; i < G.size(); ++i)
      for (std::size_t j = i + 1; j < G.size(); ++j) {
        Exps l = lcm(G[i].lm(), G[j].lm(), 3);
        Exps a{}, b{};
        for (int k = 0; k < 3; ++k) {
          a[k] = static_cast<std::uint16_t>(l[k] - G[i].lm()[k]);
          b[k] = static_cast<std::uint16_t>(l[k] - G[j].lm()[k]);
        }
        CHECK(normal_form(G[i].mul_term(a, 1) - G[j].mul_term(b, 1), G).is_zero());
      }
    // Same basis from a permuted generating set.
    std::reverse(gens.begin(), gens.end());
    CHECK(strs(groebner_basis(gens)) == strs(G));
  }
}

TEST_CASE("Krull dimension examples") {
  auto R = xy();
  IdealSpec zero{R, {}, {}};
  CHECK(krull_dimension(zero).kdim == 2);
  CHECK(krull_dimension(parse_ideal(R, "x*y")).kdim == 1);
  CHECK(krull_dimension(parse_ideal(R, "x, y")).kdim == 0);
  CHECK(krull_dimension(parse_ideal(R, "x - 1, x")).kdim == -1);
}

TEST_CASE("independent sets and hitting sets give the same dimension") {
  std::mt19937_64 rng(17);
  for (int s = 0; s < 50; ++s) {
    const int n = 2 + static_cast<int>(rng() % 8);
    std::vector<Exps> mons;
    const int m = 1 + static_cast<int>(rng() % 6);
    for (int g = 0; g < m; ++g) {
      Exps a{};
      while (total_degree(a, n) == 0)
        for (int i = 0; i < n; ++i) a[i] = static_cast<std::uint16_t>(rng() % 3 == 0 ? 1 : 0);
      mons.push_back(a);
    }
    CHECK(independent_set_dimension(mons, n) == hitting_set_dimension(mons, n));
  }
}

TEST_CASE("radical equivalence") {
  auto R = xy();
  CHECK(radical_equivalence(parse_ideal(R, "x^2"), parse_ideal(R, "x")));
  CHECK_FALSE(radical_equivalence(parse_ideal(R, "x"), parse_ideal(R, "y")));
  CHECK(radical_member(parse_poly(R.get(), "x*y"), parse_ideal(R, "x^3, y^2 - x")));
}

TEST_CASE("Casimir ideals: Q_3 and Q_3(sqrt 3)") {
  auto G = GroupContext::build(GroupCase::GL2, q3());
  IdealSpec I = casimir_ideal(*G);
  CHECK(I.gens.size() == 3);
  CHECK(radical_equivalence(I, parse_ideal(I.ring, "h0_0, e0_0*f0_0, z0_0")));
  auto Gs = GroupContext::build(GroupCase::GL2, s3());
  IdealSpec J = casimir_ideal(*Gs);
  CHECK(J.gens.size() == 6);
  for (const auto& g : J.gens) CHECK(g.homogeneous());
  CHECK(radical_equivalence(J, reference_ideal(*Gs, "explicit_quadratic")));
  CHECK(krull_dimension(J).kdim == 2);
}

TEST_CASE("reference ideals") {
  auto Gs = GroupContext::build(GroupCase::GL2, s3());
  IdealSpec P = reference_ideal(*Gs, "principal_series");
  CHECK(P.gens.size() == 6);
  CHECK(strs(groebner(P)).size() == 6);
  CHECK(krull_dimension(P).kdim == 2);
  CHECK_THROWS_AS(reference_ideal(*Gs, "unramified"), std::invalid_argument);
  auto Gq = GroupContext::build(GroupCase::Quaternion, q3());
  CHECK_THROWS_AS(reference_ideal(*Gq, "principal_series"), std::invalid_argument);
  CHECK(reference_ideal(*GroupContext::build(GroupCase::GL2, q3()), "unramified").gens.size() == 3);
}

TEST_CASE("principal series dimension over every GL2 corpus tower") {
  for (const auto& spec : load_corpus(GKDIM_CORPUS_DIR)) {
    if (!spec.has_case("gl2")) continue;
    auto K = build_tower(spec);
    auto G = GroupContext::build(GroupCase::GL2, K);
    CHECK(krull_dimension(reference_ideal(*G, "principal_series")).kdim == K->degree());
    for (const auto& g : casimir_ideal(*G).gens) CHECK(g.homogeneous());
  }
}

TEST_CASE("dimension lemma ideals") {
  Fq F = Fq::prime(3);
  IdealSpec I0 = dimension_lemma_ideal(0, F);
  CHECK(strs(I0.gens) == std::vector<std::string>{"u0^2", "2*v0*w0"});
  IdealSpec I1 = dimension_lemma_ideal(1, F);
  CHECK(radical_equivalence(I1, parse_ideal(I1.ring, "u0^2, 2*u0*u1 - v0*w0, u1^2 - v0*w1 - v1*w0, v1*w1")));
  CHECK(krull_dimension(I1).kdim <= 2);
  for (int n = 0; n <= 2; ++n) {
    LemmaReport r = dimension_lemma_check(n, Fq(3, {1, 0, 1}), 5, 99);
    CHECK(r.ok);
    CHECK(r.worst <= n + 1);
  }
}

TEST_CASE("plain-text polynomials round-trip") {
  auto R = make_ring(Fq(3, {1, 0, 1}), {"e0_1", "h1_0", "w3_0", "z0_0"});
  for (const char* s : {"e0_1^2*h1_0 + (2*t)*w3_0 + 1", "z0_0 - 4*e0_1", "(t+1)^3*w3_0^2"}) {
    Poly p = parse_poly(R.get(), s);
    CHECK(parse_poly(R.get(), p.str()) == p);
  }
  CHECK_THROWS_AS(parse_poly(R.get(), "q0_0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly(R.get(), "e0_1 +"), std::invalid_argument);
}
