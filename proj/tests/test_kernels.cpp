#include <gmpxx.h>

#include <random>

#include "doctest.h"
#include "gkdim/iwasawa_algebra.hpp"
#include "gkdim/kernels.hpp"

using namespace gkdim;

TEST_CASE("binomial table matches GMP") {
  auto K = FieldTower::build(3, {0, 1}, {{-3}, {1}});
  CoefRing R(*K, 6);
  REQUIRE(R.modulus() == 729);
  kernels::BinomTable B(R, 81);
  for (std::uint64_t a = 0; a < 81; ++a)
    for (std::uint64_t k = 0; k <= a; ++k) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), a, k);
      mpz_class m = 729;
      CHECK(B.val[a * 81 + k] == mpz_class(c % m).get_ui());
      int v = 0;
      while (c % 3 == 0) {
        c /= 3;
        ++v;
      }
      CHECK(B.vp[a * 81 + k] == v);
    }
}

TEST_CASE("product kernels agree") {
  auto K = FieldTower::build(3, {0, 1}, {{-3}, {0}, {1}});
  auto G = GroupContext::build(GroupCase::GL2, K);
  auto Q = QuotientGroup::build(G, Rational(3));
  std::mt19937_64 rng(12);
  std::vector<Code> lhs(40), rhs(40);
  for (auto& c : lhs) c = Q->basis_power(rng() % Q->dim(), rng() % 9 + 1);
  for (auto& c : rhs) c = Q->basis_power(rng() % Q->dim(), rng() % 9 + 1);
  CHECK(kernels::product_codes_serial(*Q, lhs, rhs) == kernels::product_codes_parallel(*Q, lhs, rhs));
}

TEST_CASE("expansion kernels agree") {
  auto K = FieldTower::build(3, {0, 1}, {{-3}, {1}});
  auto A = AlgebraContext::build(GroupContext::build(GroupCase::GL2, K), Rational(3), 12);
  const QuotientGroup& Q = A->quotient();
  std::vector<kernels::BinomTable> binom;
  for (int i = 0; i < Q.dim(); ++i) binom.emplace_back(A->coef(), Q.radix(i));
  std::mt19937_64 rng(5);
  kernels::Terms terms;
  for (int t = 0; t < 60; ++t) {
    std::vector<std::uint64_t> a(Q.dim());
    for (int i = 0; i < Q.dim(); ++i) a[i] = rng() % Q.radix(i);
    terms.push_back({Q.encode(a), A->coef().from_int(static_cast<long>(rng() % 50) + 1)});
  }
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  terms.erase(std::unique(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first == y.first; }), terms.end());
  kernels::ExpandParams prm;
  prm.per_pi = 4;
  prm.per_p = 4;
  prm.weight = {3, 3, 5, 5};
  prm.cutoff = 20;
  auto s = kernels::expand_serial(Q, A->coef(), binom, terms, prm);
  auto p = kernels::expand_parallel(Q, A->coef(), binom, terms, prm);
  REQUIRE(s.size() == p.size());
  for (const auto& [m, c] : s) {
    auto it = p.find(m);
    REQUIRE(it != p.end());
    CHECK(A->coef().equal(c, it->second));
  }
}
