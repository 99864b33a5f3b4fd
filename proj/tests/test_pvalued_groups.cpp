#include <map>
#include <random>

#include "doctest.h"
#include "gkdim/pvalued_groups.hpp"
#include "gkdim/quotient_group.hpp"

using namespace gkdim;

namespace {

TowerPtr q3() { return FieldTower::build(3, {0, 1}, {{-3}, {1}}, -1L); }
TowerPtr q9() { return FieldTower::build(3, {1, 0, 1}, {{-3, 0}, {1, 0}}); }
TowerPtr s3() { return FieldTower::build(3, {0, 1}, {{-3}, {0}, {1}}); }

std::map<std::string, Rational> omegas(const GroupContext& G) {
  std::map<std::string, Rational> m;
  for (const auto& b : G.basis()) m[b.label()] = b.omega;
  return m;
}

}  // namespace

TEST_CASE("basis valuations over Q_3") {
  // 1 - 1/(p-1) + 1/(4e) = 3/4 at p = 3, e = 1; h and z sit one half-step deeper.
  for (auto gc : {GroupCase::GL2, GroupCase::Quaternion}) {
    auto G = GroupContext::build(gc, q3());
    REQUIRE(G->dim() == 4);
    CHECK(G->C() == Rational(3, 4));
    std::vector<Rational> w;
    for (const auto& b : G->basis()) w.push_back(b.omega);
    std::sort(w.begin(), w.end());
    CHECK(w == std::vector<Rational>{Rational(3, 4), Rational(3, 4), Rational(5, 4), Rational(5, 4)});
  }
}

TEST_CASE("basis valuations over Q_3(sqrt 3) and Q_9") {
  auto m = omegas(*GroupContext::build(GroupCase::GL2, s3()));
  CHECK(m["e0_0"] == Rational(5, 8));
  CHECK(m["e0_1"] == Rational(9, 8));
  CHECK(m["f0_0"] == Rational(5, 8));
  CHECK(m["f0_1"] == Rational(9, 8));
  CHECK(m["h0_0"] == Rational(7, 8));
  CHECK(m["h0_1"] == Rational(11, 8));
  CHECK(m["z0_0"] == Rational(7, 8));
  CHECK(m["z0_1"] == Rational(11, 8));
  auto G9 = GroupContext::build(GroupCase::GL2, q9());
  for (const auto& b : G9->basis()) CHECK(b.omega == (b.kind == 'e' || b.kind == 'f' ? Rational(3, 4) : Rational(5, 4)));
}

TEST_CASE("omega of a p-th power rises by one and basis elements are strictly saturated") {
  for (const auto& G : {GroupContext::build(GroupCase::GL2, q3()), GroupContext::build(GroupCase::GL2, s3()),
                        GroupContext::build(GroupCase::Quaternion, q3())}) {
    const long p = G->K().p();
    for (const auto& b : G->basis()) {
      CHECK(G->omega(b.elem) == ExtRational::of(b.omega));
      CHECK(G->omega(b.elem.pow(p)) == ExtRational::of(b.omega + 1));
      CHECK(b.omega > Rational(1, p - 1));
      CHECK(b.omega < Rational(p, p - 1));
    }
  }
}

TEST_CASE("exp and log are inverse on the Lie lattice") {
  std::mt19937_64 rng(9);
  for (const auto& G : {GroupContext::build(GroupCase::GL2, q3()), GroupContext::build(GroupCase::Quaternion, q3())}) {
    for (int s = 0; s < 20; ++s) {
      Mat2 g = G->random_element(rng);
      Mat2 back = G->mexp(G->mlog(g));
      CHECK((back - g).vpi_lower() >= 2 * G->K().e() * 20);
    }
  }
}

TEST_CASE("coordinates of the second kind round-trip") {
  std::mt19937_64 rng(4);
  auto G = GroupContext::build(GroupCase::GL2, s3());
  for (int s = 0; s < 20; ++s) {
    std::vector<mpz_class> a(G->dim());
    for (auto& v : a) v = static_cast<long>(rng() % 81);
    Mat2 g = G->from_coordinates(a);
    auto c = G->coordinates(g, Rational(4));
    for (int i = 0; i < G->dim(); ++i) {
      long cap = ceil(Rational(4) - G->basis()[i].omega);
      mpz_class mod = 1;
      for (long t = 0; t < cap; ++t) mod *= 3;
      CHECK(mpz_class((a[i] - c[i]) % mod) == 0);
    }
  }
}

TEST_CASE("random samples satisfy the p-valuation axioms") {
  for (const auto& G : {GroupContext::build(GroupCase::GL2, q3()), GroupContext::build(GroupCase::GL2, q9()),
                        GroupContext::build(GroupCase::Quaternion, q3())}) {
    AxiomReport r = G->check_axioms(60, 123);
    CHECK(r.samples == 60);
    CHECK(r.ok());
  }
}

TEST_CASE("finite quotient: caps, associativity and inverses") {
  auto G = GroupContext::build(GroupCase::GL2, q3());
  auto Q = QuotientGroup::build(G, Rational(3));
  std::vector<int> caps = Q->caps();
  std::vector<int> expected;
  for (const auto& b : G->basis()) expected.push_back(static_cast<int>(ceil(Rational(3) - b.omega)));
  CHECK(caps == expected);
  std::mt19937_64 rng(2);
  auto random_code = [&] {
    std::vector<std::uint64_t> a(Q->dim());
    for (int i = 0; i < Q->dim(); ++i) a[i] = rng() % Q->radix(i);
    return Q->encode(a);
  };
  for (int s = 0; s < 100; ++s) {
    Code x = random_code(), y = random_code(), z = random_code();
    CHECK(Q->mul(Q->mul(x, y), z) == Q->mul(x, Q->mul(y, z)));
    CHECK(Q->mul(x, Q->inverse(x)) == Q->encode(std::vector<std::uint64_t>(Q->dim(), 0)));
    CHECK(Q->peel(Q->matrix(x)) == x);
  }
  CHECK_THROWS(QuotientGroup::build(G, Rational(1, 2)));
}
