#include "gkdim/padic_tower.hpp"

#include <algorithm>
#include <sstream>

namespace gkdim {

namespace {

constexpr int kMaxDigits = 1500;

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int sat_add(int a, int b) {
  long s = static_cast<long>(a) + b;
  return s >= FieldElement::kExact ? FieldElement::kExact : static_cast<int>(s);
}

int vp_mpz(const mpz_class& x, long p) {
  if (x == 0) return FieldElement::kExact;
  mpz_class q = x;
  mpz_class pp = p;
  return static_cast<int>(mpz_remove(q.get_mpz_t(), q.get_mpz_t(), pp.get_mpz_t()));
}

long mod_small(const mpz_class& x, long p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_si();
}

}  // namespace

// ---------------------------------------------------------------- FieldTower

std::shared_ptr<const FieldTower> FieldTower::build(long p, IntPoly u_poly,
                                                    std::vector<IntPoly> e_poly,
                                                    std::optional<long> quat_a,
                                                    int default_digits) {
  if (p == 2) throw std::invalid_argument("p = 2 is not supported");
  if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  while (u_poly.size() > 1 && u_poly.back() == 0) u_poly.pop_back();
  if (u_poly.size() < 2 || u_poly.back() != 1)
    throw std::invalid_argument("unramified polynomial must be monic of degree >= 1");
  if (!irreducible_mod_p(p, u_poly))
    throw std::invalid_argument("unramified polynomial is reducible mod p");
  int f = static_cast<int>(u_poly.size()) - 1;
  if (e_poly.size() < 2) throw std::invalid_argument("Eisenstein polynomial must have degree >= 1");
  int e = static_cast<int>(e_poly.size()) - 1;
  if (f * e > 8) throw std::invalid_argument("[K:Q_p] > 8 is not supported");
  for (auto& c : e_poly) {
    if (static_cast<int>(c.size()) > f) {
      for (std::size_t i = f; i < c.size(); ++i)
        if (c[i] != 0) throw std::invalid_argument("Eisenstein coefficient has alpha-degree >= f");
    }
    c.resize(f, 0);
  }
  if (e_poly[e][0] != 1 || std::any_of(e_poly[e].begin() + 1, e_poly[e].end(), [](long v) { return v != 0; }))
    throw std::invalid_argument("Eisenstein polynomial must be monic");

  auto t = std::shared_ptr<FieldTower>(new FieldTower());
  t->p_ = p;
  t->f_ = f;
  t->e_ = e;
  t->u_int_ = u_poly;
  t->e_int_ = e_poly;
  t->default_digits_ = default_digits;
  for (long c : u_poly) t->u_.push_back(mpz_class(c));
  t->rational_eisenstein_ = true;
  for (int j = 0; j <= e; ++j) {
    std::vector<mpz_class> row;
    for (int i = 0; i < f; ++i) {
      row.push_back(mpz_class(e_poly[j][i]));
      if (i > 0 && e_poly[j][i] != 0) t->rational_eisenstein_ = false;
    }
    t->E_.push_back(row);
  }
  std::vector<long> ubar;
  for (long c : u_poly) ubar.push_back(((c % p) + p) % p);
  t->fq_ = Fq(p, ubar);
  for (int j = 0; j < e; ++j)
    for (int i = 0; i < f; ++i)
      if (e_poly[j][i] % p != 0) throw std::invalid_argument("polynomial is not Eisenstein");
  {
    std::vector<long> c0;
    bool unit = false;
    for (int i = 0; i < f; ++i) {
      long v = e_poly[0][i] / p;
      c0.push_back(v);
      if (v % p != 0) unit = true;
    }
    if (!unit) throw std::invalid_argument("polynomial is not Eisenstein (constant term not exactly divisible by p)");
  }
  if (quat_a) {
    long a = ((*quat_a % p) + p) % p;
    if (a == 0) throw std::invalid_argument("quaternion_a must be a unit");
    bool square = (f % 2 == 0);
    if (!square) {
      long acc = 1;
      for (long k = 0; k < (p - 1) / 2; ++k) acc = acc * a % p;
      square = (acc == 1);
    }
    if (square) throw std::invalid_argument("quaternion_a has square residue");
    t->quat_a_ = quat_a;
  }
  t->init_caches();
  return t;
}

std::shared_ptr<const FieldTower> FieldTower::quaternion_split_tower() const {
  if (!quat_a_) throw std::invalid_argument("tower has no quaternion_a");
  if (f_ != 1 || !rational_eisenstein_)
    throw std::invalid_argument("quaternions are supported only over towers with f = 1");
  IntPoly u = {-*quat_a_, 0, 1};
  std::vector<IntPoly> E;
  for (const auto& c : e_int_) E.push_back({c[0], 0});
  return build(p_, u, E, std::nullopt, default_digits_);
}

void FieldTower::init_caches() {
  ppow_.resize(kMaxDigits + 2);
  ppow_[0] = 1;
  for (int k = 1; k < static_cast<int>(ppow_.size()); ++k) ppow_[k] = ppow_[k - 1] * p_;
  // pi^e / p = -sum_j (E_j / p) pi^j
  std::vector<mpz_class> c(f_ * e_);
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < f_; ++i) c[j * f_ + i] = -E_[j][i] / p_;
  ue_ = std::make_shared<FieldElement>(this, c, 0, FieldElement::kExact);
  {
    std::vector<long> r;
    for (int i = 0; i < f_; ++i) r.push_back(mod_small(c[i], p_));
    ue_res_ = fq_.from_coeffs(r);
  }
  // Frobenius lift of alpha: Newton iteration from alpha^p.
  std::vector<mpz_class> a(f_, 0);
  if (f_ > 1) a[1] = 1; else a[0] = -u_[0];
  std::vector<mpz_class> y(f_, 0);
  y[0] = 1;
  for (long k = 0; k < p_; ++k) y = za_mul(y, a);
  auto embed = [&](const std::vector<mpz_class>& v) {
    std::vector<mpz_class> cc(f_ * e_, 0);
    for (int i = 0; i < f_; ++i) cc[i] = v[i];
    return FieldElement(this, cc, 0, FieldElement::kExact);
  };
  auto eval_u = [&](const FieldElement& x, bool deriv) {
    FieldElement acc = zero();
    FieldElement pw = one();
    for (int k = deriv ? 1 : 0; k <= f_; ++k) {
      acc += pw.mul_int(u_[k].get_si() * (deriv ? k : 1));
      pw = pw * x;
    }
    return acc;
  };
  FieldElement cand = embed(y);
  FieldElement val = eval_u(cand, false);
  if (val.is_exact_zero()) {
    frob_alpha_ = std::make_shared<FieldElement>(cand);
  } else {
    FieldElement x = cand.truncate(default_prec());
    for (int it = 0; it < 64; ++it) {
      FieldElement fx = eval_u(x, false);
      if (fx.vanishes()) break;
      FieldElement dx = eval_u(x, true);
      x = (x - fx / dx).truncate(default_prec());
    }
    frob_alpha_ = std::make_shared<FieldElement>(x);
  }
}

const FieldElement& FieldTower::ue() const { return *ue_; }
const FieldElement& FieldTower::frob_alpha() const { return *frob_alpha_; }

const mpz_class& FieldTower::ppow(int k) const {
  if (k < 0 || k >= static_cast<int>(ppow_.size())) throw std::out_of_range("p-power cache exceeded");
  return ppow_[k];
}

std::vector<mpz_class> FieldTower::za_mul(const std::vector<mpz_class>& a,
                                          const std::vector<mpz_class>& b) const {
  if (f_ == 1) return {a[0] * b[0]};
  std::vector<mpz_class> r(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  for (int d = 2 * f_ - 2; d >= f_; --d) {
    if (r[d] == 0) continue;
    for (int k = 0; k < f_; ++k) r[d - f_ + k] -= r[d] * u_[k];
    r[d] = 0;
  }
  r.resize(f_);
  return r;
}

FieldElement FieldTower::zero() const {
  return FieldElement(this, std::vector<mpz_class>(degree(), 0), 0, FieldElement::kExact);
}
FieldElement FieldTower::one() const { return from_int(1); }
FieldElement FieldTower::from_int(long v) const { return from_mpz(mpz_class(v)); }
FieldElement FieldTower::from_mpz(const mpz_class& v) const {
  std::vector<mpz_class> c(degree(), 0);
  c[0] = v;
  return FieldElement(this, c, 0, FieldElement::kExact);
}
FieldElement FieldTower::uniformizer() const {
  std::vector<mpz_class> c(degree(), 0);
  if (e_ > 1) {
    c[f_] = 1;
    return FieldElement(this, c, 0, FieldElement::kExact);
  }
  // e = 1: pi = -E_0 as an element of Z[alpha].
  for (int i = 0; i < f_; ++i) c[i] = -E_[0][i];
  return FieldElement(this, c, 0, FieldElement::kExact);
}
FieldElement FieldTower::alpha() const {
  std::vector<mpz_class> c(degree(), 0);
  if (f_ > 1) c[1] = 1; else c[0] = -u_[0];
  return FieldElement(this, c, 0, FieldElement::kExact);
}
FieldElement FieldTower::from_coords(std::vector<mpz_class> c) const {
  c.resize(degree(), 0);
  return FieldElement(this, std::move(c), 0, FieldElement::kExact);
}
FieldElement FieldTower::lift(Fq::Elt r) const {
  auto cs = fq_.coeffs(r);
  std::vector<mpz_class> c(degree(), 0);
  for (int i = 0; i < f_; ++i) c[i] = cs[i];
  return FieldElement(this, c, 0, FieldElement::kExact);
}

std::string FieldTower::describe() const {
  std::ostringstream os;
  os << "p=" << p_ << " f=" << f_ << " e=" << e_ << " u=[";
  for (std::size_t i = 0; i < u_int_.size(); ++i) os << (i ? "," : "") << u_int_[i];
  os << "] E=[";
  for (std::size_t j = 0; j < e_int_.size(); ++j) {
    os << (j ? "," : "");
    if (f_ == 1) {
      os << e_int_[j][0];
    } else {
      os << "[";
      for (int i = 0; i < f_; ++i) os << (i ? " " : "") << e_int_[j][i];
      os << "]";
    }
  }
  os << "]";
  if (quat_a_) os << " a=" << *quat_a_;
  return os.str();
}

// -------------------------------------------------------------- FieldElement

FieldElement::FieldElement(const FieldTower* t, std::vector<mpz_class> c, int den, int prec)
    : t_(t), c_(std::move(c)), den_(den), prec_(prec) {
  reduce();
  normalize();
}

void FieldElement::reduce() {
  if (exact()) return;
  const int e = t_->e(), f = t_->f();
  prec_ = std::min(prec_, kMaxDigits * e);
  for (int j = 0; j < e; ++j) {
    int tj = static_cast<int>(ceil_div(prec_ - j, e));
    for (int i = 0; i < f; ++i) {
      mpz_class& x = c_[j * f + i];
      if (tj <= 0) {
        x = 0;
      } else {
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), t_->ppow(tj).get_mpz_t());
      }
    }
  }
}

void FieldElement::normalize() {
  const int e = t_->e();
  bool all_zero = std::all_of(c_.begin(), c_.end(), [](const mpz_class& v) { return v == 0; });
  if (exact() && all_zero) {
    den_ = 0;
    return;
  }
  while (den_ >= e && (exact() || prec_ - e >= 0)) {
    bool div = true;
    for (const auto& v : c_)
      if (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(t_->p())) == 0) {
        div = false;
        break;
      }
    if (!div) break;
    for (auto& v : c_) mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(t_->p()));
    den_ -= e;
    if (!exact()) prec_ -= e;
  }
}

int FieldElement::int_vpi_lower() const {
  const int e = t_->e(), f = t_->f();
  int best = exact() ? kExact : prec_;
  for (int j = 0; j < e; ++j)
    for (int i = 0; i < f; ++i) {
      const mpz_class& x = c_[j * f + i];
      if (x == 0) continue;
      int v = vp_mpz(x, t_->p());
      best = std::min(best, e * v + j);
    }
  return best;
}

int FieldElement::vpi_lower() const {
  int v = int_vpi_lower();
  return v >= kExact ? kExact : v - den_;
}

int FieldElement::vpi() const {
  int v = int_vpi_lower();
  if (v >= kExact) return kExact;
  if (!exact() && v >= prec_) throw Indeterminate("valuation indeterminate at stored precision");
  return v - den_;
}

ExtRational FieldElement::valuation() const {
  int v = vpi();
  if (v >= kExact) return ExtRational::inf();
  return ExtRational::of(Rational(v, t_->e()));
}

bool FieldElement::is_exact_zero() const {
  return exact() && std::all_of(c_.begin(), c_.end(), [](const mpz_class& v) { return v == 0; });
}

bool FieldElement::vanishes() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpz_class& v) { return v == 0; });
}

bool FieldElement::equals(const FieldElement& o) const { return (*this - o).vanishes(); }

FieldElement FieldElement::shift_int(int k) const {
  if (k == 0) return *this;
  const int e = t_->e(), f = t_->f();
  std::vector<std::vector<mpz_class>> a(e, std::vector<mpz_class>(f));
  for (int j = 0; j < e; ++j)
    for (int i = 0; i < f; ++i) a[j][i] = c_[j * f + i];
  const auto& E = t_->E();
  for (int s = 0; s < k; ++s) {
    std::vector<mpz_class> top = a[e - 1];
    for (int j = e - 1; j >= 1; --j) a[j] = a[j - 1];
    a[0].assign(f, 0);
    for (int j = 0; j < e; ++j) {
      auto prod = t_->za_mul(top, E[j]);
      for (int i = 0; i < f; ++i) a[j][i] -= prod[i];
    }
  }
  std::vector<mpz_class> c(f * e);
  for (int j = 0; j < e; ++j)
    for (int i = 0; i < f; ++i) c[j * f + i] = a[j][i];
  return FieldElement(t_, std::move(c), den_, exact() ? kExact : sat_add(prec_, k));
}

FieldElement FieldElement::shift(int k) const {
  if (k >= 0) {
    if (den_ >= k) return FieldElement(t_, c_, den_ - k, prec_);
    FieldElement r = FieldElement(t_, c_, 0, prec_).shift_int(k - den_);
    return r;
  }
  return FieldElement(t_, c_, den_ - k, prec_);
}

FieldElement FieldElement::truncate(int abs_digits) const {
  int target = sat_add(abs_digits, den_);
  if (target >= prec_) return *this;
  return FieldElement(t_, c_, den_, target);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  if (t_ != o.t_) throw std::invalid_argument("tower mismatch");
  const FieldElement* x = this;
  const FieldElement* y = &o;
  FieldElement xs, ys;
  if (x->den_ < y->den_) {
    xs = FieldElement(t_, x->c_, 0, x->prec_).shift_int(y->den_ - x->den_);
    xs.den_ = y->den_;
    x = &xs;
  } else if (y->den_ < x->den_) {
    ys = FieldElement(t_, y->c_, 0, y->prec_).shift_int(x->den_ - y->den_);
    ys.den_ = x->den_;
    y = &ys;
  }
  std::vector<mpz_class> c(x->c_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = x->c_[k] + y->c_[k];
  return FieldElement(t_, std::move(c), x->den_, std::min(x->prec_, y->prec_));
}

FieldElement FieldElement::operator-() const {
  std::vector<mpz_class> c(c_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = -c_[k];
  return FieldElement(t_, std::move(c), den_, prec_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (t_ != o.t_) throw std::invalid_argument("tower mismatch");
  const int e = t_->e(), f = t_->f();
  int prec;
  if (exact() && o.exact()) {
    prec = kExact;
  } else {
    int vx = int_vpi_lower(), vy = o.int_vpi_lower();
    prec = std::min(sat_add(prec_, vy), sat_add(o.prec_, vx));
  }
  std::vector<std::vector<mpz_class>> P(2 * e - 1, std::vector<mpz_class>(f, 0));
  std::vector<std::vector<mpz_class>> A(e), B(e);
  for (int j = 0; j < e; ++j) {
    A[j].assign(c_.begin() + j * f, c_.begin() + (j + 1) * f);
    B[j].assign(o.c_.begin() + j * f, o.c_.begin() + (j + 1) * f);
  }
  for (int j1 = 0; j1 < e; ++j1) {
    bool z1 = std::all_of(A[j1].begin(), A[j1].end(), [](const mpz_class& v) { return v == 0; });
    if (z1) continue;
    for (int j2 = 0; j2 < e; ++j2) {
      auto pr = t_->za_mul(A[j1], B[j2]);
      for (int i = 0; i < f; ++i) P[j1 + j2][i] += pr[i];
    }
  }
  const auto& E = t_->E();
  for (int s = 2 * e - 2; s >= e; --s) {
    for (int j = 0; j < e; ++j) {
      auto pr = t_->za_mul(P[s], E[j]);
      for (int i = 0; i < f; ++i) P[s - e + j][i] -= pr[i];
    }
  }
  std::vector<mpz_class> c(f * e);
  for (int j = 0; j < e; ++j)
    for (int i = 0; i < f; ++i) c[j * f + i] = P[j][i];
  return FieldElement(t_, std::move(c), den_ + o.den_, prec);
}

FieldElement FieldElement::unit_inverse() const {
  Fq::Elt r = residue();
  if (r == 0) throw std::domain_error("unit_inverse of a non-unit");
  // Exact +-1 stays exact.
  if (exact() && den_ == 0) {
    bool rest_zero = std::all_of(c_.begin() + 1, c_.end(), [](const mpz_class& v) { return v == 0; });
    if (rest_zero && (c_[0] == 1 || c_[0] == -1)) return *this;
  }
  int target = exact() ? t_->default_prec() : prec_ - den_;
  if (target <= 0) throw Indeterminate("no precision left for inversion");
  FieldElement w = truncate(target);
  FieldElement y = t_->lift(t_->residue_field().inv(r));
  FieldElement two = t_->from_int(2);
  for (int cur = 1; cur < 2 * target; cur *= 2) {
    y = (y * (two - w * y)).truncate(target);
  }
  return FieldElement(t_, y.c_, y.den_, sat_add(target, y.den_));
}

FieldElement FieldElement::inv() const {
  const int e = t_->e();
  int v = int_vpi_lower();
  if (v >= kExact) throw std::domain_error("inverse of zero");
  if (!exact() && v >= prec_) throw Indeterminate("inverse of element indeterminate at precision");
  int q = static_cast<int>(ceil_div(v, e));
  int r = q * e - v;
  FieldElement x = FieldElement(t_, c_, 0, prec_).shift_int(r);
  std::vector<mpz_class> w = x.c_;
  const mpz_class& pq = t_->ppow(q);
  for (auto& z : w) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), pq.get_mpz_t());
  FieldElement W(t_, std::move(w), 0, exact() ? kExact : x.prec_ - q * e);
  FieldElement u = W.unit_inverse() * t_->ue().pow(q);
  return u.shift(den_ - v);
}

FieldElement FieldElement::pow(long n) const {
  if (n < 0) return inv().pow(-n);
  FieldElement acc = t_->one();
  FieldElement b = *this;
  while (n > 0) {
    if (n & 1) acc = acc * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return acc;
}

FieldElement FieldElement::mul_int(long n) const { return *this * t_->from_int(n); }

FieldElement FieldElement::div_int(long n) const {
  if (n == 0) throw std::domain_error("division by zero");
  long p = t_->p();
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  FieldElement r = *this;
  if (n != 1) r = r * t_->from_int(n).inv();
  if (v > 0) r = (r * t_->ue().pow(v)).shift(-t_->e() * v);
  return r;
}

Fq::Elt FieldElement::residue_at(int k) const {
  const int e = t_->e(), f = t_->f();
  int K = k + den_;
  if (K < 0) return 0;
  if (!exact() && prec_ <= K) throw Indeterminate("residue digit beyond stored precision");
  int q = K / e, r = K % e;
  long p = t_->p();
  for (int j = 0; j < e; ++j) {
    int need = j < r ? q + 1 : q;
    for (int i = 0; i < f; ++i) {
      const mpz_class& x = c_[j * f + i];
      if (x != 0 && mpz_divisible_p(x.get_mpz_t(), t_->ppow(need).get_mpz_t()) == 0)
        throw std::domain_error("residue requested below the valuation");
    }
  }
  std::vector<long> rc(f);
  for (int i = 0; i < f; ++i) {
    mpz_class y = c_[r * f + i] / t_->ppow(q);
    rc[i] = mod_small(y, p);
  }
  const Fq& F = t_->residue_field();
  Fq::Elt res = F.from_coeffs(rc);
  if (q > 0) res = F.mul(res, F.pow(F.inv(t_->ue_residue()), static_cast<std::uint64_t>(q)));
  return res;
}

Fq::Elt FieldElement::leading_residue() const { return residue_at(vpi()); }

bool FieldElement::in_unramified_part() const {
  const int f = t_->f();
  if (den_ != 0) return false;
  for (std::size_t k = f; k < c_.size(); ++k)
    if (c_[k] != 0) return false;
  return true;
}

FieldElement FieldElement::frob_once() const {
  const int e = t_->e(), f = t_->f();
  if (f == 1) return *this;
  const FieldElement& s = t_->frob_alpha();
  std::vector<FieldElement> spow(f, t_->one());
  for (int i = 1; i < f; ++i) spow[i] = spow[i - 1] * s;
  FieldElement acc = t_->zero();
  for (int j = 0; j < e; ++j) {
    FieldElement aj = t_->zero();
    for (int i = 0; i < f; ++i) {
      const mpz_class& x = c_[j * f + i];
      if (x == 0) continue;
      aj += spow[i] * t_->from_mpz(x);
    }
    acc += aj.shift(j);
  }
  // The integral part is known to pi^prec; carry this through.
  FieldElement r(t_, acc.c_, acc.den_, std::min(acc.prec_, prec_));
  return r.shift(-den_);
}

FieldElement FieldElement::frobenius(int k) const {
  const int f = t_->f();
  if (f == 1) return *this;
  if (!t_->rational_eisenstein() && !in_unramified_part())
    throw std::invalid_argument("Frobenius on a non-rational Eisenstein part is ambiguous");
  int kk = ((k % f) + f) % f;
  FieldElement r = *this;
  for (int s = 0; s < kk; ++s) r = r.frob_once();
  return r;
}

std::string FieldElement::str() const {
  std::ostringstream os;
  const int e = t_->e(), f = t_->f();
  os << "(";
  bool first = true;
  for (int j = 0; j < e; ++j)
    for (int i = 0; i < f; ++i) {
      const mpz_class& x = c_[j * f + i];
      if (x == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << x.get_str();
      if (i > 0) os << "*a^" << i;
      if (j > 0) os << "*pi^" << j;
    }
  if (first) os << "0";
  os << ")";
  if (den_ > 0) os << "/pi^" << den_;
  if (!exact()) os << " +O(pi^" << abs_prec() << ")";
  return os.str();
}

// --------------------------------------------------------------- idempotents

namespace {

std::vector<FieldElement> solve_linear(std::vector<std::vector<FieldElement>> A,
                                       std::vector<FieldElement> b) {
  const std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    int best = FieldElement::kExact;
    for (std::size_t r = c; r < n; ++r) {
      int v = A[r][c].vpi_lower();
      if (v < best) {
        best = v;
        piv = r;
      }
    }
    if (piv == n) throw Indeterminate("singular linear system");
    std::swap(A[piv], A[c]);
    std::swap(b[piv], b[c]);
    FieldElement iv = A[c][c].inv();
    for (std::size_t k = c; k < n; ++k) A[c][k] = A[c][k] * iv;
    b[c] = b[c] * iv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c].is_exact_zero()) continue;
      FieldElement m = A[r][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] = A[r][k] - m * A[c][k];
      b[r] = b[r] - m * b[c];
    }
  }
  return b;
}

}  // namespace

std::vector<FieldElement> unramified_idempotents(const FieldTower& t) {
  const int f = t.f();
  if (f == 1) return {t.one()};
  std::vector<FieldElement> roots;
  FieldElement a = t.alpha();
  for (int k = 0; k < f; ++k) roots.push_back(a.frobenius(k));
  std::vector<std::vector<FieldElement>> A(f, std::vector<FieldElement>(f, t.one()));
  for (int k = 0; k < f; ++k)
    for (int j = 1; j < f; ++j) A[k][j] = A[k][j - 1] * roots[k];
  std::vector<FieldElement> b(f, t.zero());
  b[0] = t.one();
  return solve_linear(A, b);
}

std::vector<FieldElement> lagrange_idempotent_coefficients(const FieldTower& t) {
  const int f = t.f();
  if (f == 1) return {t.one()};
  const auto& u = t.u_poly();
  FieldElement a = t.alpha();
  std::vector<FieldElement> q(f, t.zero());
  q[f - 1] = t.one();
  for (int j = f - 1; j >= 1; --j) q[j - 1] = t.from_int(u[j]) + a * q[j];
  FieldElement d = t.zero();
  FieldElement pw = t.one();
  for (int k = 1; k <= f; ++k) {
    d += pw.mul_int(u[k] * k);
    pw = pw * a;
  }
  FieldElement di = d.inv();
  for (auto& x : q) x = x * di;
  return q;
}

DecompositionData ramified_idempotent_data(const FieldTower& t) {
  DecompositionData out;
  out.beta = unramified_idempotents(t);
  const int e = t.e(), f = t.f();
  std::vector<FieldElement> E;
  for (int j = 0; j <= e; ++j) {
    std::vector<mpz_class> c(t.degree(), 0);
    for (int i = 0; i < f; ++i) c[i] = t.E()[j][i];
    E.push_back(t.from_coords(c));
  }
  FieldElement pi = t.uniformizer();
  std::vector<FieldElement> c(e, t.zero());
  c[e - 1] = t.one();
  for (int j = e - 1; j >= 1; --j) c[j - 1] = E[j] + pi * c[j];
  FieldElement d = t.zero();
  for (int j = 1; j <= e; ++j) d += (E[j] * pi.pow(j - 1)).mul_int(j);
  out.eprime = d;
  ExtRational vd = d.valuation();
  Rational Rr = Rational(e) * vd.value + 1 - e;
  if (Rr.denominator() != 1) throw std::logic_error("non-integral R_K");
  out.R = static_cast<int>(Rr.numerator());
  FieldElement di = d.inv();
  for (int j = 0; j < e; ++j) {
    FieldElement g = c[j] * di;
    ExtRational vg = g.valuation();
    if (vg.infinite || vg.value != Rational(-(j + out.R), e))
      throw std::logic_error("gamma valuation does not match the ramification formula");
    out.gamma.push_back(g);
    FieldElement m = g.shift(out.R + j);
    out.mu.push_back(m);
    out.mu_residues.push_back(m.residue());
    if (out.mu_residues.back() == 0) throw std::logic_error("mu residue vanishes");
  }
  return out;
}

// ------------------------------------------------------------ TensorElement

TensorElement::TensorElement(const FieldTower* L, const FieldTower* K)
    : L_(L), K_(K), x_(K->degree(), L->zero()) {}

TensorElement TensorElement::one(const FieldTower* L, const FieldTower* K) {
  TensorElement t(L, K);
  t.x_[0] = L->one();
  return t;
}

TensorElement TensorElement::pure(const FieldElement& l, const FieldElement& k) {
  if (!k.exact() || k.den() != 0) throw std::invalid_argument("pure tensor needs an exact integral K-element");
  TensorElement t(l.tower(), k.tower());
  for (int m = 0; m < k.tower()->degree(); ++m)
    if (k.coords()[m] != 0) t.x_[m] = l * l.tower()->from_mpz(k.coords()[m]);
  return t;
}

TensorElement TensorElement::operator*(const TensorElement& o) const {
  const int n = K_->degree();
  TensorElement r(L_, K_);
  for (int a = 0; a < n; ++a) {
    if (x_[a].is_exact_zero()) continue;
    std::vector<mpz_class> ea(n, 0);
    ea[a] = 1;
    FieldElement ka = K_->from_coords(ea);
    for (int b = 0; b < n; ++b) {
      if (o.x_[b].is_exact_zero()) continue;
      std::vector<mpz_class> eb(n, 0);
      eb[b] = 1;
      FieldElement prod = ka * K_->from_coords(eb);
      FieldElement lab = x_[a] * o.x_[b];
      for (int m = 0; m < n; ++m)
        if (prod.coords()[m] != 0) r.x_[m] += lab * L_->from_mpz(prod.coords()[m]);
    }
  }
  return r;
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  TensorElement r(L_, K_);
  for (std::size_t m = 0; m < x_.size(); ++m) r.x_[m] = x_[m] + o.x_[m];
  return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
  TensorElement r(L_, K_);
  for (std::size_t m = 0; m < x_.size(); ++m) r.x_[m] = x_[m] - o.x_[m];
  return r;
}

bool TensorElement::is_zero_to(int abs_digits) const {
  for (const auto& x : x_)
    if (x.vpi_lower() < abs_digits) return false;
  return true;
}

TensorElement embedding_idempotent(const FieldTower& K, const DecompositionData& d, int k) {
  TensorElement r(&K, &K);
  const int f = K.f(), e = K.e();
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < e; ++j) {
      FieldElement coef = (d.beta[i] * d.gamma[j]).frobenius(k);
      std::vector<mpz_class> c(K.degree(), 0);
      c[j * f + i] = 1;
      r = r + TensorElement::pure(coef, K.from_coords(c));
    }
  return r;
}

TensorElement unramified_class_idempotent(const FieldTower& K, const DecompositionData& d, int k) {
  TensorElement r(&K, &K);
  for (int i = 0; i < K.f(); ++i) {
    std::vector<mpz_class> c(K.degree(), 0);
    c[i] = 1;
    r = r + TensorElement::pure(d.beta[i].frobenius(k), K.from_coords(c));
  }
  return r;
}

FieldElement embed_rational(const FieldElement& x, const FieldTower& target) {
  const FieldTower& src = *x.tower();
  if (src.f() != 1 || src.e() != target.e())
    throw std::invalid_argument("embed_rational needs f = 1 and matching ramification");
  std::vector<mpz_class> c(target.degree(), 0);
  for (int j = 0; j < src.e(); ++j) c[j * target.f()] = x.coords()[j];
  return FieldElement(&target, c, x.den(), x.int_prec());
}

}  // namespace gkdim
