#include "gkdim/finite_field.hpp"

#include <stdexcept>

namespace gkdim {

namespace {

long modp(long v, long p) {
  v %= p;
  return v < 0 ? v + p : v;
}

// Polynomials over F_p as coefficient vectors, low to high, trimmed.
using PolyP = std::vector<long>;

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP poly_mod(PolyP a, const PolyP& m, long p) {
  trim(a);
  long inv_lead = 1;
  long lead = m.back();
  for (long t = 1; t < p; ++t)
    if (modp(t * lead, p) == 1) inv_lead = t;
  while (a.size() >= m.size()) {
    long c = modp(a.back() * inv_lead, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = modp(a[shift + i] - c * m[i], p);
    trim(a);
  }
  return a;
}

PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& m, long p) {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = modp(r[i + j] + a[i] * b[j], p);
  return poly_mod(r, m, p);
}

PolyP poly_gcd(PolyP a, PolyP b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PolyP r = poly_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

PolyP poly_sub(PolyP a, const PolyP& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = modp(a[i] - b[i], p);
  trim(a);
  return a;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool irreducible_mod_p(long p, const std::vector<long>& poly) {
  PolyP m;
  for (long c : poly) m.push_back(modp(c, p));
  trim(m);
  int n = static_cast<int>(m.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  // Rabin-style test: gcd(x^(p^k) - x, m) = 1 for k <= n/2.
  PolyP x = {0, 1};
  PolyP xp = x;
  for (int k = 1; k <= n / 2; ++k) {
    PolyP acc = {1};
    PolyP base = xp;
    long e = p;
    while (e > 0) {
      if (e & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1;
    }
    xp = acc;
    PolyP g = poly_gcd(m, poly_sub(xp, x, p), p);
    if (g.size() > 1) return false;
  }
  return true;
}

Fq::Fq(long p, std::vector<long> modulus) : p_(p) {
  for (long c : modulus) mod_.push_back(modp(c, p));
  trim(mod_);
  if (mod_.size() < 2 || mod_.back() != 1) throw std::invalid_argument("Fq modulus must be monic");
  deg_ = static_cast<int>(mod_.size()) - 1;
  if (!irreducible_mod_p(p, mod_)) throw std::invalid_argument("Fq modulus is reducible");
  q_ = 1;
  for (int i = 0; i < deg_; ++i) q_ *= p;
  if (q_ > (1L << 20)) throw std::invalid_argument("Fq too large");
  // Find a generator of the multiplicative group.
  auto factors = prime_factors(q_ - 1);
  Elt g = 0;
  for (Elt cand = 1; cand < static_cast<Elt>(q_); ++cand) {
    if (cand == 0) continue;
    bool ok = true;
    for (long r : factors) {
      Elt acc = 1, base = cand;
      std::uint64_t e = (q_ - 1) / r;
      while (e) {
        if (e & 1) acc = poly_mul(acc, base);
        base = poly_mul(base, base);
        e >>= 1;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  exp_.resize(q_ - 1);
  log_.assign(q_, -1);
  Elt cur = 1;
  for (long k = 0; k < q_ - 1; ++k) {
    exp_[k] = cur;
    log_[cur] = static_cast<std::int32_t>(k);
    cur = poly_mul(cur, g);
  }
}

Fq::Elt Fq::poly_mul(Elt a, Elt b) const {
  PolyP x = coeffs(a), y = coeffs(b);
  PolyP r = poly_mulmod(x, y, mod_, p_);
  return from_coeffs(r);
}

Fq::Elt Fq::gen() const {
  if (deg_ == 1) return from_int(-mod_[0]);
  return static_cast<Elt>(p_);
}

Fq::Elt Fq::from_int(long v) const { return static_cast<Elt>(modp(v, p_)); }

Fq::Elt Fq::from_coeffs(const std::vector<long>& c) const {
  PolyP r;
  for (long v : c) r.push_back(modp(v, p_));
  if (static_cast<int>(r.size()) > deg_) r = poly_mod(r, mod_, p_);
  Elt out = 0, pw = 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += static_cast<Elt>(r[i]) * pw;
    pw *= static_cast<Elt>(p_);
  }
  return out;
}

std::vector<long> Fq::coeffs(Elt x) const {
  std::vector<long> c(deg_, 0);
  for (int i = 0; i < deg_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  return c;
}

Fq::Elt Fq::add(Elt a, Elt b) const {
  Elt out = 0, pw = 1;
  for (int i = 0; i < deg_; ++i) {
    long d = (a % p_ + b % p_) % p_;
    out += static_cast<Elt>(d) * pw;
    pw *= static_cast<Elt>(p_);
    a /= p_;
    b /= p_;
  }
  return out;
}

Fq::Elt Fq::neg(Elt a) const {
  Elt out = 0, pw = 1;
  for (int i = 0; i < deg_; ++i) {
    long d = (p_ - a % p_) % p_;
    out += static_cast<Elt>(d) * pw;
    pw *= static_cast<Elt>(p_);
    a /= p_;
  }
  return out;
}

Fq::Elt Fq::sub(Elt a, Elt b) const { return add(a, neg(b)); }

Fq::Elt Fq::mul(Elt a, Elt b) const {
  if (a == 0 || b == 0) return 0;
  long k = (static_cast<long>(log_[a]) + log_[b]) % (q_ - 1);
  return exp_[k];
}

Fq::Elt Fq::inv(Elt a) const {
  if (a == 0) throw std::domain_error("inverse of zero in Fq");
  long k = (q_ - 1 - log_[a]) % (q_ - 1);
  return exp_[k];
}

Fq::Elt Fq::pow(Elt a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t k = (static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1))) % (q_ - 1);
  return exp_[k];
}

Fq::Elt Fq::frob(Elt a, int k) const {
  std::uint64_t e = 1;
  int kk = k % deg_;
  if (kk < 0) kk += deg_;
  for (int i = 0; i < kk; ++i) e *= p_;
  return pow(a, e);
}

std::string Fq::str(Elt a) const {
  if (deg_ == 1) return std::to_string(a);
  auto c = coeffs(a);
  std::string s;
  for (int i = deg_ - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
    if (i >= 1) s += (i == 0 || c[i] != 1) ? "*t" : "t";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : "(" + s + ")";
}

bool solve_mod_p(long p, std::vector<std::vector<long>> A, std::vector<long> b,
                 std::vector<long>& x) {
  std::size_t rows = A.size();
  std::size_t cols = rows ? A[0].size() : 0;
  for (auto& row : A)
    for (auto& v : row) v = modp(v, p);
  for (auto& v : b) v = modp(v, p);
  auto inv = [&](long a) {
    for (long t = 1; t < p; ++t)
      if (modp(a * t, p) == 1) return t;
    return 0L;
  };
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    long iv = inv(A[r][c]);
    for (std::size_t k = c; k < cols; ++k) A[r][k] = modp(A[r][k] * iv, p);
    b[r] = modp(b[r] * iv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      long f = A[i][c];
      for (std::size_t k = c; k < cols; ++k) A[i][k] = modp(A[i][k] - f * A[r][k], p);
      b[i] = modp(b[i] - f * b[r], p);
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return false;
  x.assign(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return true;
}

}  // namespace gkdim
