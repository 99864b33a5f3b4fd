#include "gkdim/coef_ring.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gkdim {

namespace {

std::uint64_t mpz_mod_u64(const mpz_class& x, std::uint64_t m) {
  mpz_class r = x % mpz_class(std::to_string(m));
  if (r < 0) r += mpz_class(std::to_string(m));
  return std::stoull(r.get_str());
}

}  // namespace

CoefRing::CoefRing(const FieldTower& t, int M) : t_(&t), f_(t.f()), e_(t.e()), M_(M), p_(t.p()) {
  n_ = t.degree();
  if (n_ > kMaxCoefDim) throw std::invalid_argument("field degree above coefficient capacity");
  if (M < 1 || std::log2(static_cast<double>(p_)) * M > 62)
    throw std::invalid_argument("coefficient precision out of range");
  pp_.assign(M + 1, 1);
  for (int k = 1; k <= M; ++k) pp_[k] = pp_[k - 1] * static_cast<std::uint64_t>(p_);
  mod_ = pp_[M];
  table_.resize(n_ * n_);
  for (int s = 0; s < n_; ++s)
    for (int u = 0; u < n_; ++u) {
      std::vector<mpz_class> cs(n_, 0), cu(n_, 0);
      cs[s] = 1;
      cu[u] = 1;
      table_[s * n_ + u] = from_field(t.from_coords(cs) * t.from_coords(cu));
    }
}

Coef CoefRing::one() const {
  Coef c{};
  c[0] = 1 % mod_;
  return c;
}

Coef CoefRing::from_int(long v) const {
  Coef c{};
  long m = static_cast<long>(mod_);
  long r = v % m;
  if (r < 0) r += m;
  c[0] = static_cast<std::uint64_t>(r);
  return c;
}

Coef CoefRing::add(const Coef& x, const Coef& y) const {
  Coef r{};
  for (int k = 0; k < n_; ++k) {
    std::uint64_t s = x[k] + y[k];
    r[k] = s >= mod_ ? s - mod_ : s;
  }
  return r;
}

Coef CoefRing::sub(const Coef& x, const Coef& y) const {
  Coef r{};
  for (int k = 0; k < n_; ++k) r[k] = x[k] >= y[k] ? x[k] - y[k] : x[k] + mod_ - y[k];
  return r;
}

Coef CoefRing::neg(const Coef& x) const {
  Coef r{};
  for (int k = 0; k < n_; ++k) r[k] = x[k] == 0 ? 0 : mod_ - x[k];
  return r;
}

Coef CoefRing::mul(const Coef& x, const Coef& y) const {
  if (n_ == 1) {
    Coef r{};
    r[0] = mulmod(x[0], y[0]);
    return r;
  }
  unsigned __int128 acc[kMaxCoefDim] = {};
  for (int s = 0; s < n_; ++s) {
    if (!x[s]) continue;
    for (int u = 0; u < n_; ++u) {
      if (!y[u]) continue;
      std::uint64_t pr = mulmod(x[s], y[u]);
      const Coef& tb = table_[s * n_ + u];
      for (int k = 0; k < n_; ++k)
        if (tb[k]) acc[k] = (acc[k] + static_cast<unsigned __int128>(pr) * tb[k]) % mod_;
    }
  }
  Coef r{};
  for (int k = 0; k < n_; ++k) r[k] = static_cast<std::uint64_t>(acc[k]);
  return r;
}

Coef CoefRing::mul_int(const Coef& x, std::uint64_t v) const {
  v %= mod_;
  Coef r{};
  for (int k = 0; k < n_; ++k) r[k] = mulmod(x[k], v);
  return r;
}

Coef CoefRing::div_ppow(const Coef& x, int k) const {
  if (k == 0) return x;
  Coef r{};
  for (int i = 0; i < n_; ++i) {
    if (x[i] % pp_[k]) throw std::domain_error("coefficient not divisible by p^k");
    r[i] = x[i] / pp_[k];
  }
  return r;
}

bool CoefRing::is_zero(const Coef& x) const {
  for (int k = 0; k < n_; ++k)
    if (x[k]) return false;
  return true;
}

int CoefRing::vpi(const Coef& x) const {
  int best = e_ * M_;
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < f_; ++i) {
      std::uint64_t v = x[j * f_ + i];
      if (!v) continue;
      int vp = 0;
      while (v % p_ == 0) {
        v /= p_;
        ++vp;
      }
      best = std::min(best, e_ * vp + j);
    }
  return best;
}

Fq::Elt CoefRing::residue_at(const Coef& x, int k) const {
  if (k >= e_ * M_) throw Indeterminate("residue digit beyond coefficient precision");
  int q = k / e_, r = k % e_;
  std::vector<long> rc(f_);
  for (int i = 0; i < f_; ++i) rc[i] = static_cast<long>((x[r * f_ + i] / pp_[q]) % p_);
  const Fq& F = t_->residue_field();
  Fq::Elt res = F.from_coeffs(rc);
  if (q > 0) res = F.mul(res, F.pow(F.inv(t_->ue_residue()), static_cast<std::uint64_t>(q)));
  return res;
}

Coef CoefRing::truncate_pi(const Coef& x, int D) const {
  Coef r{};
  for (int j = 0; j < e_; ++j) {
    int digits = D - j <= 0 ? 0 : (D - j + e_ - 1) / e_;
    if (digits > M_) digits = M_;
    for (int i = 0; i < f_; ++i) r[j * f_ + i] = x[j * f_ + i] % pp_[digits];
  }
  return r;
}

Coef CoefRing::from_field(const FieldElement& x) const {
  if (x.tower() != t_) throw std::invalid_argument("coefficient tower mismatch");
  FieldElement y = x;
  int den = x.den();
  if (den > 0) {
    // y = x * pi^(e den) / ue^den = x * p^den, then divide out p^den.
    y = x.shift(e_ * den) * t_->ue().pow(den).inv();
  }
  if (y.den() != 0) throw std::logic_error("unexpected denominator");
  if (!y.exact() && y.int_prec() < e_ * (M_ + std::max(den, 0)))
    throw std::domain_error("field element not known to coefficient precision");
  Coef r{};
  const mpz_class pd = t_->ppow(std::max(den, 0));
  for (int k = 0; k < n_; ++k) {
    mpz_class c = y.coords()[k];
    if (den > 0) {
      if (c % pd != 0) throw std::domain_error("field element is not integral");
      c /= pd;
    }
    r[k] = mpz_mod_u64(c, mod_);
  }
  return r;
}

FieldElement CoefRing::to_field(const Coef& x) const {
  std::vector<mpz_class> c(n_);
  for (int k = 0; k < n_; ++k) c[k] = mpz_class(std::to_string(x[k]));
  return FieldElement(t_, c, 0, e_ * M_);
}

std::string CoefRing::str(const Coef& x) const {
  std::ostringstream os;
  os << "[";
  for (int k = 0; k < n_; ++k) os << (k ? "," : "") << x[k];
  os << "]";
  return os.str();
}

}  // namespace gkdim
