#include <random>

#include "doctest.h"
#include "gkdim/padic_tower.hpp"

using namespace gkdim;

namespace {

TowerPtr q3() { return FieldTower::build(3, {0, 1}, {{-3}, {1}}); }
TowerPtr q9() { return FieldTower::build(3, {1, 0, 1}, {{-3, 0}, {1, 0}}); }
TowerPtr q27() { return FieldTower::build(3, {1, 2, 0, 1}, {{-3, 0, 0}, {1, 0, 0}}); }
TowerPtr radical(long p, int e) {
  std::vector<std::vector<long>> E(e + 1, std::vector<long>{0});
  E[0] = {-p};
  E[e] = {1};
  return FieldTower::build(p, {0, 1}, E);
}

FieldElement random_element(const FieldTower& K, std::mt19937_64& rng) {
  std::vector<mpz_class> c(K.degree());
  for (auto& v : c) v = static_cast<long>(rng() % 101) - 50;
  FieldElement x = K.from_coords(c);
  if (x.is_exact_zero()) x = K.one();
  return x * K.uniformizer().pow(static_cast<long>(rng() % 5) - 2);
}

int vp_int(long n, long p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

TEST_CASE("field arithmetic is associative, invertible and valuation-additive") {
  std::mt19937_64 rng(11);
  for (const auto& K : {q3(), q9(), radical(3, 2), radical(3, 3)}) {
    for (int s = 0; s < 100; ++s) {
      FieldElement x = random_element(*K, rng), y = random_element(*K, rng), z = random_element(*K, rng);
      CHECK(((x * y) * z).equals(x * (y * z)));
      CHECK((x * x.inv()).equals(K->one()));
      CHECK((x * y).vpi() == x.vpi() + y.vpi());
      CHECK(((x + y) * z).equals(x * z + y * z));
    }
  }
}

TEST_CASE("uniformizer relation pi^e = p * ue with ue a unit") {
  for (const auto& K : {q3(), q9(), radical(3, 2), radical(3, 4), radical(5, 2)}) {
    FieldElement lhs = K->uniformizer().pow(K->e());
    FieldElement rhs = K->ue().mul_int(K->p());
    CHECK(lhs.equals(rhs));
    CHECK(K->ue().vpi() == 0);
  }
}

TEST_CASE("Frobenius is a field automorphism of order f") {
  std::mt19937_64 rng(5);
  for (const auto& K : {q9(), q27()}) {
    for (int s = 0; s < 30; ++s) {
      FieldElement x = random_element(*K, rng), y = random_element(*K, rng);
      CHECK((x * y).frobenius(1).equals(x.frobenius(1) * y.frobenius(1)));
      CHECK((x + y).frobenius(1).equals(x.frobenius(1) + y.frobenius(1)));
      CHECK(x.frobenius(K->f()).equals(x));
    }
    // Frobenius of alpha reduces to alpha^p.
    const Fq& F = K->residue_field();
    CHECK(K->alpha().frobenius(1).residue() == F.pow(K->alpha().residue(), K->p()));
  }
}

TEST_CASE("gamma law against the different of X^e - p") {
  // v_pi(E'(pi)) = e * v_p(e) + e - 1 for E = X^e - p, so R = e * v_p(e).
  for (long p : {3L, 5L})
    for (int e = 1; e <= 4; ++e) {
      auto K = radical(p, e);
      auto d = ramified_idempotent_data(*K);
      CHECK(d.R == e * vp_int(e, p));
      for (int j = 0; j < e; ++j) {
        CHECK(d.gamma[j].vpi() == -j - d.R);
        CHECK(d.mu[j].vpi() == 0);
      }
    }
}

TEST_CASE("R vanishes exactly for tame ramification") {
  for (int e = 1; e <= 4; ++e) {
    auto d = ramified_idempotent_data(*radical(3, e));
    CHECK((d.R == 0) == (e % 3 != 0));
  }
}

TEST_CASE("unramified idempotent coefficients agree with the Lagrange route") {
  for (const auto& K : {q3(), q9(), q27()}) {
    auto beta = unramified_idempotents(*K);
    auto lag = lagrange_idempotent_coefficients(*K);
    REQUIRE(beta.size() == lag.size());
    for (std::size_t i = 0; i < beta.size(); ++i) CHECK((beta[i] - lag[i]).vpi_lower() >= 30);
  }
}

TEST_CASE("class idempotents are orthogonal and sum to one") {
  for (const auto& K : {q9(), q27()}) {
    auto d = ramified_idempotent_data(*K);
    TensorElement sum(K.get(), K.get());
    for (int k = 0; k < K->f(); ++k) {
      TensorElement I = unramified_class_idempotent(*K, d, k);
      CHECK((I * I - I).is_zero_to(30));
      for (int l = 0; l < K->f(); ++l)
        if (l != k) CHECK((I * unramified_class_idempotent(*K, d, l)).is_zero_to(30));
      sum = sum + I;
    }
    CHECK((sum - TensorElement::one(K.get(), K.get())).is_zero_to(30));
  }
}

TEST_CASE("embedding idempotent of a ramified tower is idempotent") {
  for (const auto& K : {radical(3, 2), radical(3, 3)}) {
    auto d = ramified_idempotent_data(*K);
    TensorElement I = embedding_idempotent(*K, d, 0);
    CHECK((I * I - I).is_zero_to(20));
  }
}

TEST_CASE("malformed towers are rejected") {
  CHECK_THROWS_AS(FieldTower::build(3, {0, 1}, {{-9}, {0}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(FieldTower::build(3, {1, 0, 0, 1}, {{-3, 0, 0}, {1, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(FieldTower::build(4, {0, 1}, {{-2}, {1}}), std::invalid_argument);
}
