#include "gkdim/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace gkdim::kernels {

int max_threads() { return omp_get_max_threads(); }

std::vector<Code> product_codes_serial(const QuotientGroup& Q, const std::vector<Code>& lhs,
                                       const std::vector<Code>& rhs) {
  std::vector<Code> out;
  out.reserve(lhs.size() * rhs.size());
  for (Code x : lhs) {
    MatQ mx = Q.matrix(x);
    for (Code y : rhs) out.push_back(Q.lookup(Q.mat_mul(mx, Q.matrix(y))));
  }
  return out;
}

std::vector<Code> product_codes_parallel(const QuotientGroup& Q, const std::vector<Code>& lhs,
                                         const std::vector<Code>& rhs) {
  const std::int64_t nl = static_cast<std::int64_t>(lhs.size());
  const std::int64_t nr = static_cast<std::int64_t>(rhs.size());
  std::vector<MatQ> ml(nl), mr(nr);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < nl; ++i) ml[i] = Q.matrix(lhs[i]);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < nr; ++j) mr[j] = Q.matrix(rhs[j]);

  const std::int64_t total = nl * nr;
  std::vector<MatQ> prod(total);
  std::vector<std::uint64_t> fp(total);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < total; ++k) {
    prod[k] = Q.mat_mul(ml[k / nr], mr[k % nr]);
    fp[k] = Q.fingerprint(prod[k]);
  }

  std::vector<Code> out(total);
  std::vector<std::int64_t> miss;
  std::unordered_map<std::uint64_t, std::int64_t> miss_index;
  for (std::int64_t k = 0; k < total; ++k) {
    if (auto c = Q.cached(fp[k])) {
      out[k] = *c;
    } else if (miss_index.emplace(fp[k], static_cast<std::int64_t>(miss.size())).second) {
      miss.push_back(k);
    }
  }
  if (!miss.empty()) {
    if (Q.eager()) throw std::domain_error("product left the group");
    std::vector<Code> solved(miss.size());
    const std::int64_t nm = static_cast<std::int64_t>(miss.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t s = 0; s < nm; ++s) solved[s] = Q.peel(prod[miss[s]]);
    for (std::int64_t s = 0; s < nm; ++s) Q.remember(fp[miss[s]], solved[s]);
    for (std::int64_t k = 0; k < total; ++k)
      if (auto it = miss_index.find(fp[k]); it != miss_index.end()) out[k] = solved[it->second];
  }
  return out;
}

BinomTable::BinomTable(const CoefRing& R, std::uint64_t r) : radix(r) {
  if (r > 729) throw std::invalid_argument("binomial table radix too large");
  val.assign(r * r, 0);
  vp.assign(r * r, 0);
  const std::uint64_t m = R.modulus();
  const long p = R.p();
  std::vector<int> vfact(r, 0);
  for (std::uint64_t a = 1; a < r; ++a) {
    std::uint64_t x = a;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    vfact[a] = vfact[a - 1] + v;
  }
  for (std::uint64_t a = 0; a < r; ++a) {
    val[a * r] = 1 % m;
    for (std::uint64_t k = 1; k <= a; ++k) {
      std::uint64_t s = val[(a - 1) * r + k - 1] + (k <= a - 1 ? val[(a - 1) * r + k] : 0);
      val[a * r + k] = s % m;
      vp[a * r + k] = static_cast<std::uint8_t>(vfact[a] - vfact[k] - vfact[a - k]);
    }
  }
}

namespace {

struct Expander {
  const QuotientGroup& Q;
  const CoefRing& R;
  const std::vector<BinomTable>& binom;
  const ExpandParams& prm;
  MonoMap& out;
  std::vector<std::uint64_t> a;
  Exps beta{};

  void run(const Coef& c) {
    std::int64_t base = static_cast<std::int64_t>(R.vpi(c)) * prm.per_pi + prm.offset;
    if (base >= prm.cutoff) return;
    rec(0, c, base);
  }

  void rec(int i, const Coef& c, std::int64_t val) {
    if (i == Q.dim()) {
      auto [it, fresh] = out.emplace(beta, c);
      if (!fresh) it->second = R.add(it->second, c);
      return;
    }
    const BinomTable& B = binom[i];
    const std::uint64_t ai = a[i];
    for (std::uint64_t k = 0; k <= ai; ++k) {
      std::int64_t kw = static_cast<std::int64_t>(k) * prm.weight[i];
      if (val + kw >= prm.cutoff) break;
      std::int64_t v = val + kw + static_cast<std::int64_t>(B.vp[ai * B.radix + k]) * prm.per_p;
      if (v >= prm.cutoff) continue;
      Coef ck = R.mul_int(c, B.val[ai * B.radix + k]);
      if (R.is_zero(ck)) continue;
      beta[i] = static_cast<std::uint16_t>(k);
      rec(i + 1, ck, v);
    }
    beta[i] = 0;
  }
};

}  // namespace

MonoMap expand_serial(const QuotientGroup& Q, const CoefRing& R, const std::vector<BinomTable>& binom,
                      const Terms& terms, const ExpandParams& prm) {
  MonoMap out;
  Expander ex{Q, R, binom, prm, out, {}, {}};
  for (const auto& [code, c] : terms) {
    ex.a = Q.decode(code);
    ex.run(c);
  }
  return out;
}

MonoMap expand_parallel(const QuotientGroup& Q, const CoefRing& R, const std::vector<BinomTable>& binom,
                        const Terms& terms, const ExpandParams& prm) {
  const int nt = omp_get_max_threads();
  std::vector<MonoMap> local(nt);
  const std::int64_t n = static_cast<std::int64_t>(terms.size());
#pragma omp parallel
  {
    MonoMap& mine = local[omp_get_thread_num()];
    Expander ex{Q, R, binom, prm, mine, {}, {}};
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t k = 0; k < n; ++k) {
      ex.a = Q.decode(terms[k].first);
      ex.run(terms[k].second);
    }
  }
  MonoMap out = std::move(local[0]);
  for (int t = 1; t < nt; ++t)
    for (auto& [m, c] : local[t]) {
      auto [it, fresh] = out.emplace(m, c);
      if (!fresh) it->second = R.add(it->second, c);
    }
  return out;
}

}  // namespace gkdim::kernels
