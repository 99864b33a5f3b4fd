#include <random>

#include "doctest.h"
#include "gkdim/finite_field.hpp"
#include "gkdim/rational.hpp"

using namespace gkdim;

namespace {

// Irreducibility of a monic cubic or quadratic is the absence of roots.
bool has_root(long p, const std::vector<long>& f) {
  for (long x = 0; x < p; ++x) {
    long acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = ((acc * x + *it) % p + p) % p;
    if (acc == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("F_9 satisfies the field axioms exhaustively") {
  Fq F(3, {1, 0, 1});
  REQUIRE(F.q() == 9);
  for (Fq::Elt a = 0; a < 9; ++a) {
    if (a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.add(a, F.neg(a)) == 0);
    CHECK(F.frob(a, 2) == a);
    for (Fq::Elt b = 0; b < 9; ++b) {
      CHECK(F.frob(F.mul(a, b), 1) == F.mul(F.frob(a, 1), F.frob(b, 1)));
      CHECK(F.frob(F.add(a, b), 1) == F.add(F.frob(a, 1), F.frob(b, 1)));
      for (Fq::Elt c = 0; c < 9; ++c) {
        CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
  }
}

TEST_CASE("t generates F_9 over F_3 and satisfies its modulus") {
  Fq F(3, {1, 0, 1});
  Fq::Elt t = F.gen();
  CHECK(F.add(F.mul(t, t), 1) == 0);
  CHECK(F.frob(t, 1) == F.neg(t));
}

TEST_CASE("irreducibility agrees with the root test in degrees 2 and 3") {
  for (long p : {2L, 3L, 5L})
    for (int deg = 2; deg <= 3; ++deg) {
      long count = 1;
      for (int i = 0; i < deg; ++i) count *= p;
      for (long code = 0; code < count; ++code) {
        std::vector<long> f(deg + 1, 0);
        long c = code;
        for (int i = 0; i < deg; ++i) {
          f[i] = c % p;
          c /= p;
        }
        f[deg] = 1;
        CHECK(irreducible_mod_p(p, f) == !has_root(p, f));
      }
    }
}

TEST_CASE("solve_mod_p solves consistent random systems") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const long p = 5;
    std::vector<std::vector<long>> A(4, std::vector<long>(3));
    std::vector<long> x0(3), b(4, 0);
    for (auto& v : x0) v = static_cast<long>(rng() % p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) {
        A[i][j] = static_cast<long>(rng() % p);
        b[i] = (b[i] + A[i][j] * x0[j]) % p;
      }
    std::vector<long> x;
    REQUIRE(solve_mod_p(p, A, b, x));
    for (int i = 0; i < 4; ++i) {
      long s = 0;
      for (int j = 0; j < 3; ++j) s += A[i][j] * x[j];
      CHECK(s % p == b[i]);
    }
  }
  std::vector<long> x;
  CHECK_FALSE(solve_mod_p(3, {{1, 0}, {1, 0}}, {0, 1}, x));
}

TEST_CASE("rational helpers") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(ceil_div(-7, 2) == -3);
  CHECK(ceil(Rational(13, 4)) == 4);
  CHECK(parse_rational("7/2") == Rational(7, 2));
  CHECK(parse_rational("3.5") == Rational(7, 2));
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK(ExtRational::of(Rational(1)) < ExtRational::inf());
  CHECK(min(ExtRational::inf(), ExtRational::of(Rational(2))) == ExtRational::of(Rational(2)));
}
