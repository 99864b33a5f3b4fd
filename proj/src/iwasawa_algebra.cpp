#include "gkdim/iwasawa_algebra.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace gkdim {

namespace {

int vp_u64(std::uint64_t x, long p) {
  if (x == 0) return INT_MAX;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Rational ppow_rational(long p, int k) {
  std::int64_t v = 1;
  for (int s = 0; s < std::abs(k); ++s) v *= p;
  return k >= 0 ? Rational(v) : Rational(1, v);
}

int merge_radius(const Series& x, const Series& y) {
  if (x.radius < 0) return y.radius;
  if (y.radius < 0 || x.radius == y.radius) return x.radius;
  if (x.tail.infinite && y.tail.infinite) return x.radius;
  throw std::invalid_argument("series carry bounds for different radii");
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  std::int64_t r = a / g;
  if (r > INT64_MAX / b) throw std::overflow_error("valuation denominator overflow");
  return r * b;
}

}  // namespace

std::shared_ptr<const AlgebraContext> AlgebraContext::build(GroupPtr G, const Rational& nu, int M,
                                                            std::uint64_t eager_budget, int max_log_size) {
  if (M < 2) throw std::invalid_argument("coefficient precision must be at least 2");
  auto a = std::shared_ptr<AlgebraContext>(new AlgebraContext());
  a->G_ = G;
  a->Q_ = QuotientGroup::build(G, nu, eager_budget);
  if (a->Q_->log_size() > max_log_size)
    throw std::invalid_argument("quotient size p^" + std::to_string(a->Q_->log_size()) + " exceeds budget");
  a->M_ = M;
  a->R_ = CoefRing(G->M(), M);
  for (int i = 0; i < a->Q_->dim(); ++i) a->binom_.emplace_back(a->R_, a->Q_->radix(i));
  return a;
}

std::vector<std::string> AlgebraContext::variable_names() const {
  std::vector<std::string> out;
  for (const auto& b : G_->basis()) out.push_back(b.label());
  return out;
}

Rational AlgebraContext::tail_bound(int N) const {
  const long p = G_->K().p();
  bool first = true;
  Rational best(0);
  for (int i = 0; i < dim(); ++i) {
    const Rational& w = G_->basis()[i].omega;
    const int n = caps()[i];
    for (int m = 0; m <= n; ++m) {
      Rational v = Rational(n - m) + w * ppow_rational(p, m - N);
      if (first || v < best) best = v;
      first = false;
    }
  }
  return best;
}

std::vector<Rational> AlgebraContext::weights(int N) const {
  std::vector<Rational> w;
  for (const auto& b : G_->basis()) w.push_back(b.omega * ppow_rational(G_->K().p(), -N));
  return w;
}

Coef AlgebraContext::times_ppow(const Coef& c, int k) const {
  if (k == 0) return c;
  if (k >= M_) return R_.zero();
  return R_.mul_int(c, R_.ppow(k));
}

kernels::Terms AlgebraContext::normalize(std::vector<std::pair<Code, Coef>> terms) const {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  kernels::Terms out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second = R_.add(out.back().second, t.second);
    else
      out.push_back(t);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [&](const auto& t) { return R_.is_zero(t.second); }),
            out.end());
  return out;
}

Rational AlgebraContext::exact_vlow(const kernels::Terms& t, int pden) const {
  int best = R_.tower().e() * M_;
  for (const auto& x : t) best = std::min(best, R_.vpi(x.second));
  return Rational(best, R_.tower().e()) - pden;
}

Series AlgebraContext::zero() const { return Series{}; }

Series AlgebraContext::one() const { return dirac(Code(0)); }

Series AlgebraContext::dirac(Code g) const {
  Series s;
  s.terms.push_back({g, R_.one()});
  s.vlow = 0;
  return s;
}

Series AlgebraContext::dirac(const Mat2& g) const { return dirac(Q_->lookup(Q_->from_mat2(g))); }

Series AlgebraContext::basis_b(int i) const {
  Series s;
  s.terms = normalize({{0, R_.neg(R_.one())}, {Q_->basis_power(i, 1), R_.one()}});
  s.vlow = 0;
  return s;
}

Series AlgebraContext::monomial(const Exps& alpha) const {
  MonomialSeries m;
  m.terms.push_back({alpha, R_.one()});
  return from_monomials(m);
}

Series AlgebraContext::from_monomials(const MonomialSeries& m) const {
  const int d = dim();
  std::vector<std::pair<Code, Coef>> acc;
  for (const auto& [alpha, c] : m.terms) {
    for (int i = 0; i < d; ++i)
      if (alpha[i] >= Q_->radix(i)) throw std::invalid_argument("monomial exponent exceeds the digit cap");
    for (int i = d; i < kMaxVars; ++i)
      if (alpha[i]) throw std::invalid_argument("monomial uses a variable beyond the dimension");
    std::function<void(int, const Coef&, Code)> rec = [&](int i, const Coef& cc, Code code) {
      if (i == d) {
        acc.push_back({code, cc});
        return;
      }
      const auto& B = binom_[i];
      const std::uint64_t ai = alpha[i];
      for (std::uint64_t k = 0; k <= ai; ++k) {
        Coef ck = R_.mul_int(cc, B.val[ai * B.radix + k]);
        if ((ai - k) % 2) ck = R_.neg(ck);
        rec(i + 1, ck, code + Q_->basis_power(i, k));
      }
    };
    rec(0, c, 0);
  }
  Series s;
  s.terms = normalize(std::move(acc));
  s.pden = m.pden;
  s.vlow = exact_vlow(s.terms, s.pden);
  if (!m.tail.infinite) {
    s.radius = m.radius;
    s.tail = m.tail;
    s.vlow = std::min(s.vlow, m.tail.value);
  }
  return s;
}

Series AlgebraContext::add(const Series& x, const Series& y) const {
  Series s;
  s.radius = merge_radius(x, y);
  s.pden = std::max(x.pden, y.pden);
  std::vector<std::pair<Code, Coef>> acc;
  for (const auto& t : x.terms) acc.push_back({t.first, times_ppow(t.second, s.pden - x.pden)});
  for (const auto& t : y.terms) acc.push_back({t.first, times_ppow(t.second, s.pden - y.pden)});
  s.terms = normalize(std::move(acc));
  s.tail = min(x.tail, y.tail);
  s.vlow = std::min(x.vlow, y.vlow);
  return s;
}

Series AlgebraContext::scale(const Series& x, const Coef& c) const {
  if (R_.is_zero(c)) return zero();
  Series s = x;
  for (auto& t : s.terms) t.second = R_.mul(t.second, c);
  s.terms = normalize(std::move(s.terms));
  Rational v(R_.vpi(c), R_.tower().e());
  s.vlow += v;
  if (!s.tail.infinite) s.tail.value += v;
  return s;
}

Series AlgebraContext::scale(const Series& x, const FieldElement& c) const { return scale(x, R_.from_field(c)); }

Series AlgebraContext::scale_int(const Series& x, long c) const { return scale(x, R_.from_int(c)); }

Series AlgebraContext::sub(const Series& x, const Series& y) const { return add(x, scale_int(y, -1)); }

Series AlgebraContext::multiply(const Series& x, const Series& y) const {
  Series s;
  s.radius = merge_radius(x, y);
  s.pden = x.pden + y.pden;
  std::vector<Code> lc, rc;
  for (const auto& t : x.terms) lc.push_back(t.first);
  for (const auto& t : y.terms) rc.push_back(t.first);
  std::vector<Code> prod = parallel_ ? kernels::product_codes_parallel(*Q_, lc, rc)
                                     : kernels::product_codes_serial(*Q_, lc, rc);
  std::unordered_map<Code, Coef> acc;
  acc.reserve(prod.size());
  const std::size_t nr = rc.size();
  for (std::size_t i = 0; i < lc.size(); ++i)
    for (std::size_t j = 0; j < nr; ++j) {
      Coef c = R_.mul(x.terms[i].second, y.terms[j].second);
      auto [it, fresh] = acc.emplace(prod[i * nr + j], c);
      if (!fresh) it->second = R_.add(it->second, c);
    }
  s.terms = normalize(std::vector<std::pair<Code, Coef>>(acc.begin(), acc.end()));
  s.vlow = x.vlow + y.vlow;
  ExtRational t1 = x.tail.infinite ? x.tail : ExtRational::of(x.tail.value + y.vlow);
  ExtRational t2 = y.tail.infinite ? y.tail : ExtRational::of(y.tail.value + x.vlow);
  s.tail = min(t1, t2);
  return s;
}

Series AlgebraContext::power(const Series& x, int k) const {
  Series r = one();
  for (int s = 0; s < k; ++s) r = multiply(r, x);
  return r;
}

bool AlgebraContext::is_zero(const Series& x) const { return x.terms.empty(); }

bool AlgebraContext::equal(const Series& x, const Series& y) const { return is_zero(sub(x, y)); }

Rational AlgebraContext::dirac_gap(Code g, int N) const {
  const long p = G_->K().p();
  auto a = Q_->decode(g);
  bool any = false;
  Rational best(0);
  for (int i = 0; i < dim(); ++i) {
    if (!a[i]) continue;
    int v = vp_u64(a[i], p);
    const Rational& w = G_->basis()[i].omega;
    for (int m = 0; m <= v; ++m) {
      Rational val = Rational(std::max(0, v - m)) + w * ppow_rational(p, m - N);
      if (!any || val < best) best = val;
      any = true;
    }
  }
  return best;
}

Series AlgebraContext::log_dirac(Code g, int N, const Rational& tcut) const {
  Series s;
  s.radius = N;
  s.tail = ExtRational::inf();
  if (g == 0) return s;
  const long p = G_->K().p();
  const Rational w = dirac_gap(g, N);
  if (w <= 0) throw std::logic_error("non-positive valuation gap");
  // Past ilim the bound i w - log_p(i) increases and stays above tcut.
  const double wd = boost::rational_cast<double>(w);
  const double td = boost::rational_cast<double>(tcut);
  const double lnp = std::log(static_cast<double>(p));
  long ilim = 1;
  while (!(ilim * wd * lnp >= 1 && ilim * wd - std::log(static_cast<double>(ilim)) / lnp >= td + 1e-9)) ++ilim;
  long I = 0;
  Rational vlow = tcut;
  for (long i = 1; i <= ilim; ++i) {
    int v = vp_u64(static_cast<std::uint64_t>(i), p);
    Rational val = Rational(i) * w - v;
    if (val < tcut) {
      I = i;
      vlow = std::min(vlow, val);
    }
  }
  int K = 0;
  for (long i = 1; i <= I; ++i) K = std::max(K, vp_u64(static_cast<std::uint64_t>(i), p));
  if (K >= M_) throw Uncertified("logarithm denominators exhaust the coefficient precision");

  const int ord_log = Q_->order_log(g);
  std::uint64_t ord = 1;
  for (int k = 0; k < ord_log; ++k) ord *= static_cast<std::uint64_t>(p);
  std::vector<Code> pw(ord, 0);
  for (std::uint64_t k = 1; k < ord; ++k) pw[k] = Q_->mul(pw[k - 1], g);

  const std::uint64_t m = R_.modulus();
  auto mulm = [&](std::uint64_t a, std::uint64_t b) { return R_.mulmod(a, b); };
  std::vector<std::uint64_t> q(ord, 0), acc(ord, 0);
  q[0] = 1;
  const mpz_class mm(std::to_string(m));
  for (long i = 1; i <= I; ++i) {
    // q <- q * (1 - X) modulo X^ord - 1
    std::vector<std::uint64_t> nq(ord);
    for (std::uint64_t k = 0; k < ord; ++k) {
      std::uint64_t prev = q[(k + ord - 1) % ord];
      nq[k] = q[k] >= prev ? q[k] - prev : q[k] + m - prev;
    }
    q.swap(nq);
    int v = vp_u64(static_cast<std::uint64_t>(i), p);
    std::uint64_t u = static_cast<std::uint64_t>(i);
    for (int s2 = 0; s2 < v; ++s2) u /= static_cast<std::uint64_t>(p);
    mpz_class uinv;
    mpz_class uz(std::to_string(u));
    mpz_invert(uinv.get_mpz_t(), uz.get_mpz_t(), mm.get_mpz_t());
    std::uint64_t coef = mulm(std::stoull(uinv.get_str()), R_.ppow(K - v));
    coef = coef == 0 ? 0 : m - coef;  // the leading minus sign
    for (std::uint64_t k = 0; k < ord; ++k) {
      std::uint64_t add = mulm(coef, q[k]);
      acc[k] = acc[k] + add >= m ? acc[k] + add - m : acc[k] + add;
    }
  }
  std::vector<std::pair<Code, Coef>> terms;
  for (std::uint64_t k = 0; k < ord; ++k)
    if (acc[k]) {
      Coef c{};
      c[0] = acc[k];
      terms.push_back({pw[k], c});
    }
  s.terms = normalize(std::move(terms));
  s.pden = K;
  s.tail = ExtRational::of(tcut);
  s.vlow = vlow;
  return s;
}

Series AlgebraContext::log_dirac(const Mat2& g, int N) const {
  return log_dirac(Q_->lookup(Q_->from_mat2(g)), N, tail_bound(N) + 1);
}

Rational AlgebraContext::monomial_valuation(const Exps& alpha, const Coef& c, int pden, int N) const {
  Rational v = Rational(R_.vpi(c), R_.tower().e()) - pden;
  auto w = weights(N);
  for (int i = 0; i < dim(); ++i) v += w[i] * Rational(alpha[i]);
  return v;
}

MonomialSeries AlgebraContext::to_monomials(const Series& x, int N, const ExtRational& cutoff) const {
  const int e = R_.tower().e();
  auto w = weights(N);
  std::int64_t D = e;
  for (const auto& r : w) D = lcm64(D, r.denominator());
  if (!cutoff.infinite) D = lcm64(D, cutoff.value.denominator());
  kernels::ExpandParams prm;
  prm.per_pi = D / e;
  prm.per_p = D;
  prm.offset = -static_cast<std::int64_t>(x.pden) * D;
  for (const auto& r : w) prm.weight.push_back(r.numerator() * (D / r.denominator()));
  prm.cutoff = cutoff.infinite ? INT64_MAX / 4 : cutoff.value.numerator() * (D / cutoff.value.denominator());
  kernels::MonoMap mm = parallel_ ? kernels::expand_parallel(*Q_, R_, binom_, x.terms, prm)
                                  : kernels::expand_serial(*Q_, R_, binom_, x.terms, prm);
  MonomialSeries out;
  out.pden = x.pden;
  out.radius = N;
  out.tail = cutoff;
  if (x.radius == N || x.radius < 0) out.tail = min(out.tail, x.tail);
  for (auto& [alpha, c] : mm) {
    if (R_.is_zero(c)) continue;
    std::int64_t v = static_cast<std::int64_t>(R_.vpi(c)) * prm.per_pi + prm.offset;
    for (int i = 0; i < dim(); ++i) v += static_cast<std::int64_t>(alpha[i]) * prm.weight[i];
    if (v < prm.cutoff) out.terms.push_back({alpha, c});
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

GradedPoly AlgebraContext::symbol_of_monomials(const MonomialSeries& m, const std::vector<Exps>& which) const {
  const FieldTower& L = R_.tower();
  const Fq& F = L.residue_field();
  GradedPoly g(&F, dim());
  Fq::Elt scale = F.pow(L.ue_residue(), static_cast<std::uint64_t>(m.pden));
  for (const auto& alpha : which) {
    auto it = std::lower_bound(m.terms.begin(), m.terms.end(), alpha,
                               [](const auto& t, const Exps& a) { return t.first < a; });
    if (it == m.terms.end() || it->first != alpha) continue;
    int v = R_.vpi(it->second);
    GradedMonomial mono;
    mono.alpha = alpha;
    mono.eps = v - L.e() * m.pden;
    g.add_term(mono, F.mul(R_.residue_at(it->second, v), scale));
  }
  return g;
}

SymbolResult AlgebraContext::r_valuation_symbol(const Series& x, int N) const {
  if (x.radius >= 0 && x.radius != N && !x.tail.infinite)
    throw std::invalid_argument("series tail was computed for another radius");
  SymbolCertificate cert;
  cert.N = N;
  cert.T = tail_bound(N);
  cert.precision = Rational(M_ - x.pden);
  cert.tail = x.tail;
  ExtRational cutoff = min(ExtRational::of(cert.T), min(ExtRational::of(cert.precision), x.tail));
  MonomialSeries m = to_monomials(x, N, cutoff);
  if (m.terms.empty())
    throw Uncertified("valuation is not below the certification bound " + cutoff.str());
  bool first = true;
  for (const auto& [alpha, c] : m.terms) {
    Rational v = monomial_valuation(alpha, c, m.pden, N);
    if (first || v < cert.V) {
      cert.V = v;
      cert.attaining.clear();
    }
    if (first || v == cert.V) cert.attaining.push_back(alpha);
    first = false;
  }
  cert.valid = ExtRational::of(cert.V) < cutoff;
  if (!cert.valid) throw Uncertified("valuation " + to_string(cert.V) + " not certified");
  SymbolResult res;
  res.valuation = cert.V;
  res.symbol = symbol_of_monomials(m, cert.attaining);
  res.cert = cert;
  return res;
}

namespace {

GradedPoly graded_pow(const GradedPoly& g, long k) {
  GradedPoly r(g.field_ptr(), g.nvars());
  r.add_term(GradedMonomial{}, 1);
  GradedPoly b = g;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

}  // namespace

PPowerReport AlgebraContext::verify_ppower_identity(int i, int N, int Nprime) const {
  PPowerReport rep;
  const long p = G_->K().p();
  if (N >= caps()[i]) throw std::invalid_argument("digit cap too small for the requested p-power");
  std::uint64_t pN = 1;
  for (int s = 0; s < N; ++s) pN *= static_cast<std::uint64_t>(p);
  const Series one_s = one();

  // [h^(p^N)] - 1 lies in b^(p^N) + (p^k b^(p^(N-k)) : k = 1..N).
  Series x = sub(dirac(Q_->basis_power(i, pN)), one_s);
  MonomialSeries mx = to_monomials(x, 0, ExtRational::inf());
  for (const auto& [alpha, c] : mx.terms) {
    bool single = true;
    for (int j = 0; j < dim(); ++j)
      if (j != i && alpha[j]) single = false;
    std::uint64_t k = alpha[i];
    if (!single || k == 0 || k > pN) {
      rep.congruence = false;
      rep.details.push_back("unexpected monomial in the p-power expansion");
      continue;
    }
    if (k == pN) {
      if (!R_.equal(c, R_.one())) rep.congruence = false;
      continue;
    }
    int fl = 0;
    for (std::uint64_t t = k; t >= static_cast<std::uint64_t>(p); t /= p) ++fl;
    if (R_.vpi(c) < R_.tower().e() * (N - fl)) {
      rep.congruence = false;
      rep.details.push_back("coefficient of b^" + std::to_string(k) + " outside the ideal");
    }
  }

  const int Nt = N + Nprime;
  try {
    GradedPoly lhs = graded_pow(r_valuation_symbol(basis_b(i), Nt).symbol, static_cast<long>(pN));
    GradedPoly rhs = r_valuation_symbol(x, Nt).symbol;
    if (!(lhs == rhs)) {
      rep.symbols = false;
      rep.details.push_back("symbol mismatch for " + G_->basis()[i].label());
    }
    // Unit combination over all basis elements of the same degree.
    Series comb, combp;
    bool first = true;
    for (int j = 0; j < dim(); ++j) {
      if (G_->basis()[j].omega != G_->basis()[i].omega) continue;
      Coef c = R_.from_int(1 + j % (p - 1));
      Coef cp = R_.one();
      for (std::uint64_t s = 0; s < pN; ++s) cp = R_.mul(cp, c);
      Series bj = scale(basis_b(j), c);
      Series dj = scale(sub(dirac(Q_->basis_power(j, pN)), one_s), cp);
      comb = first ? bj : add(comb, bj);
      combp = first ? dj : add(combp, dj);
      first = false;
    }
    GradedPoly l2 = graded_pow(r_valuation_symbol(comb, Nt).symbol, static_cast<long>(pN));
    GradedPoly r2 = r_valuation_symbol(combp, Nt).symbol;
    if (!(l2 == r2)) {
      rep.combination = false;
      rep.details.push_back("combination symbol mismatch for degree of " + G_->basis()[i].label());
    }
  } catch (const Uncertified& ex) {
    rep.symbols = false;
    rep.details.push_back(std::string("uncertified: ") + ex.what());
  }
  return rep;
}

}  // namespace gkdim
