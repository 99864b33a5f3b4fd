// Serial against OpenMP kernels on the heaviest corpus workloads.
#include <chrono>
#include <cstdio>
#include <random>

#include "gkdim/iwasawa_algebra.hpp"
#include "gkdim/kernels.hpp"
#include "gkdim/lie_symbols.hpp"

using namespace gkdim;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void bench_products(const char* label, const AlgebraContext& A, std::size_t n) {
  const QuotientGroup& Q = A.quotient();
  std::mt19937_64 rng(7);
  std::vector<Code> lhs(n), rhs(n);
  for (auto& c : lhs) c = Q.power(Q.basis_power(rng() % A.dim(), 1), rng() % 9 + 1);
  for (auto& c : rhs) c = Q.mul(Q.basis_power(rng() % A.dim(), 1), Q.basis_power(rng() % A.dim(), 1));
  std::vector<Code> s, p;
  double ts = seconds([&] { s = kernels::product_codes_serial(Q, lhs, rhs); }, 3);
  double tp = seconds([&] { p = kernels::product_codes_parallel(Q, lhs, rhs); }, 3);
  std::printf("%-28s products %zux%zu  serial %.4fs  parallel %.4fs  speedup %.2f  %s\n", label, n, n, ts, tp, ts / tp,
              s == p ? "equal" : "MISMATCH");
}

void bench_casimir(const char* label, const AlgebraContext& A, int N) {
  GradedPoly ss, sp;
  A.set_parallel(false);
  double ts = seconds([&] { ss = A.r_valuation_symbol(casimir_series(A, 0, N).series, N).symbol; }, 2);
  A.set_parallel(true);
  double tp = seconds([&] { sp = A.r_valuation_symbol(casimir_series(A, 0, N).series, N).symbol; }, 2);
  std::printf("%-28s casimir N=%d   serial %.4fs  parallel %.4fs  speedup %.2f  %s\n", label, N, ts, tp, ts / tp,
              ss == sp ? "equal" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", kernels::max_threads());
  auto Q3 = FieldTower::build(3, {0, 1}, {{-3}, {1}}, -1L);
  auto S3 = FieldTower::build(3, {0, 1}, {{-3}, {0}, {1}});
  auto Q9 = FieldTower::build(3, {1, 0, 1}, {{-3, 0}, {1, 0}});
  auto A1 = AlgebraContext::build(GroupContext::build(GroupCase::GL2, Q3), Rational(7, 2), 12);
  auto A2 = AlgebraContext::build(GroupContext::build(GroupCase::GL2, S3), Rational(3), 12);
  auto A3 = AlgebraContext::build(GroupContext::build(GroupCase::GL2, Q9), Rational(9, 2), 12);
  bench_products("GL2/Q3 nu=7/2", *A1, 400);
  bench_products("GL2/Q3_sqrt3 nu=3", *A2, 400);
  bench_casimir("GL2/Q3 nu=7/2", *A1, 1);
  bench_casimir("GL2/Q3_sqrt3 nu=3", *A2, 0);
  bench_casimir("GL2/Q9 nu=9/2", *A3, 2);
  return 0;
}
