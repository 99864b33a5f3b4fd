#include <random>

#include "doctest.h"
#include "gkdim/iwasawa_algebra.hpp"

using namespace gkdim;

namespace {

TowerPtr q3() { return FieldTower::build(3, {0, 1}, {{-3}, {1}}, -1L); }
TowerPtr s3() { return FieldTower::build(3, {0, 1}, {{-3}, {0}, {1}}); }

AlgebraPtr algebra(GroupCase gc, TowerPtr K, Rational nu) { return AlgebraContext::build(GroupContext::build(gc, K), nu, 12); }

int index_of(const AlgebraContext& A, const std::string& label) {
  for (int i = 0; i < A.dim(); ++i)
    if (A.group().basis()[i].label() == label) return i;
  return -1;
}

Series random_series(const AlgebraContext& A, std::mt19937_64& rng, int nterms) {
  const QuotientGroup& Q = A.quotient();
  Series s = A.zero();
  for (int t = 0; t < nterms; ++t) {
    std::vector<std::uint64_t> a(A.dim());
    for (int i = 0; i < A.dim(); ++i) a[i] = rng() % Q.radix(i);
    s = A.add(s, A.scale_int(A.dirac(Q.encode(a)), static_cast<long>(rng() % 7) + 1));
  }
  return s;
}

}  // namespace

TEST_CASE("truncation bounds and basis symbols over Q_3") {
  auto A = algebra(GroupCase::GL2, q3(), Rational(3));
  CHECK(A->tail_bound(0) == Rational(13, 4));
  auto names = A->variable_names();
  int e = index_of(*A, "e0_0");
  SymbolResult r = A->r_valuation_symbol(A->basis_b(e), 0);
  CHECK(r.valuation == Rational(3, 4));
  CHECK(r.symbol.str(names) == "e0_0");
  SymbolResult three = A->r_valuation_symbol(A->scale_int(A->one(), 3), 0);
  CHECK(three.valuation == Rational(1));
  CHECK(three.symbol.str(names) == "eps");
  auto A1 = algebra(GroupCase::GL2, q3(), Rational(7, 2));
  CHECK(A1->tail_bound(1) == Rational(11, 4));
  CHECK(A1->r_valuation_symbol(A1->basis_b(e), 1).valuation == Rational(1, 4));
}

TEST_CASE("uncertified valuations are reported") {
  auto A = algebra(GroupCase::GL2, q3(), Rational(3));
  CHECK_THROWS_AS(A->r_valuation_symbol(A->scale_int(A->one(), 81), 0), Uncertified);
}

TEST_CASE("Dirac elements multiply like the group") {
  std::mt19937_64 rng(1);
  auto A = algebra(GroupCase::Quaternion, q3(), Rational(3));
  const QuotientGroup& Q = A->quotient();
  for (int s = 0; s < 30; ++s) {
    Code x = Q.basis_power(rng() % A->dim(), rng() % 5 + 1), y = Q.basis_power(rng() % A->dim(), rng() % 5 + 1);
    CHECK(A->equal(A->multiply(A->dirac(x), A->dirac(y)), A->dirac(Q.mul(x, y))));
  }
}

TEST_CASE("multiplication is associative and distributive") {
  std::mt19937_64 rng(2);
  auto A = algebra(GroupCase::GL2, s3(), Rational(3));
  for (int s = 0; s < 5; ++s) {
    Series x = random_series(*A, rng, 4), y = random_series(*A, rng, 4), z = random_series(*A, rng, 4);
    CHECK(A->equal(A->multiply(A->multiply(x, y), z), A->multiply(x, A->multiply(y, z))));
    CHECK(A->equal(A->multiply(x, A->add(y, z)), A->add(A->multiply(x, y), A->multiply(x, z))));
  }
}

TEST_CASE("ordered products of basis variables are monomials") {
  auto A = algebra(GroupCase::GL2, q3(), Rational(3));
  Exps al{};
  al[0] = 1;
  al[2] = 1;
  CHECK(A->equal(A->multiply(A->basis_b(0), A->basis_b(2)), A->monomial(al)));
  Exps sq{};
  sq[1] = 2;
  CHECK(A->equal(A->power(A->basis_b(1), 2), A->monomial(sq)));
}

TEST_CASE("monomial expansion round-trips") {
  std::mt19937_64 rng(3);
  auto A = algebra(GroupCase::GL2, q3(), Rational(3));
  for (int s = 0; s < 2; ++s) {
    Series x = random_series(*A, rng, 6);
    MonomialSeries m = A->to_monomials(x, 0, ExtRational::inf());
    CHECK(A->equal(A->from_monomials(m), x));
  }
}

TEST_CASE("commutator identity on basis pairs") {
  for (const auto& A : {algebra(GroupCase::GL2, q3(), Rational(3)), algebra(GroupCase::Quaternion, q3(), Rational(3))}) {
    const QuotientGroup& Q = A->quotient();
    for (int i = 0; i < A->dim(); ++i)
      for (int j = 0; j < A->dim(); ++j) {
        Series bi = A->basis_b(i), bj = A->basis_b(j);
        Series lhs = A->sub(A->multiply(bi, bj), A->multiply(bj, bi));
        Code hi = Q.basis_power(i, 1), hj = Q.basis_power(j, 1);
        Code c = Q.mul(Q.mul(hi, hj), Q.mul(Q.inverse(hi), Q.inverse(hj)));
        Series rhs = A->multiply(A->multiply(A->sub(A->dirac(c), A->one()), A->dirac(hj)), A->dirac(hi));
        CHECK(A->equal(lhs, rhs));
      }
  }
}

TEST_CASE("p-power congruence and symbols") {
  auto A = algebra(GroupCase::GL2, q3(), Rational(7, 2));
  for (int N = 0; N <= 1; ++N)
    for (int i = 0; i < A->dim(); ++i) CHECK(A->verify_ppower_identity(i, N, 0).ok());
}

TEST_CASE("logarithm of a basis element shares the symbol of b_i") {
  for (const auto& A : {algebra(GroupCase::GL2, q3(), Rational(3)), algebra(GroupCase::GL2, s3(), Rational(3))}) {
    for (int i = 0; i < A->dim(); ++i) {
      Series L = A->log_dirac(A->quotient().basis_power(i, 1), 0, A->tail_bound(0) + 1);
      SymbolResult a = A->r_valuation_symbol(L, 0), b = A->r_valuation_symbol(A->basis_b(i), 0);
      CHECK(a.valuation == b.valuation);
      CHECK(a.symbol == b.symbol);
    }
  }
}

TEST_CASE("serial and parallel kernels give identical series") {
  std::mt19937_64 rng(8);
  auto A = algebra(GroupCase::GL2, s3(), Rational(3));
  Series x = random_series(*A, rng, 8), y = random_series(*A, rng, 8);
  A->set_parallel(false);
  Series s = A->multiply(x, y);
  MonomialSeries ms = A->to_monomials(s, 0, ExtRational::of(Rational(3)));
  A->set_parallel(true);
  Series p = A->multiply(x, y);
  MonomialSeries mp = A->to_monomials(p, 0, ExtRational::of(Rational(3)));
  CHECK(A->equal(s, p));
  REQUIRE(ms.terms.size() == mp.terms.size());
  for (std::size_t k = 0; k < ms.terms.size(); ++k) {
    CHECK(ms.terms[k].first == mp.terms[k].first);
    CHECK(A->coef().equal(ms.terms[k].second, mp.terms[k].second));
  }
}
