#include "gkdim/pvalued_groups.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gkdim/finite_field.hpp"

namespace gkdim {

namespace {

constexpr long kBig = 1L << 40;

Mat2 pow_mpz(const Mat2& g, mpz_class n, int digits_pi) {
  if (n < 0) return pow_mpz(g.inverse(), -n, digits_pi);
  Mat2 result = Mat2::identity(*g.a.tower());
  Mat2 base = g.truncate(digits_pi);
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) result = (result * base).truncate(digits_pi);
    n >>= 1;
    if (n > 0) base = (base * base).truncate(digits_pi);
  }
  return result;
}

// Square root of a in M: the generator alpha of the split tower.
FieldElement conj(const FieldElement& x) {
  const FieldTower& t = *x.tower();
  std::vector<mpz_class> c = x.coords();
  for (int j = 0; j < t.e(); ++j) c[j * t.f() + 1] = -c[j * t.f() + 1];
  return FieldElement(&t, c, x.den(), x.int_prec());
}

}  // namespace

Mat2 Mat2::identity(const FieldTower& t) { return {t.one(), t.zero(), t.zero(), t.one()}; }
Mat2 Mat2::zero(const FieldTower& t) { return {t.zero(), t.zero(), t.zero(), t.zero()}; }
Mat2 Mat2::scalar(const FieldElement& x) {
  FieldElement z = x.tower()->zero();
  return {x, z, z, x};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}
Mat2 Mat2::operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
Mat2 Mat2::operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
Mat2 Mat2::scale(const FieldElement& s) const { return {a * s, b * s, c * s, d * s}; }
Mat2 Mat2::div_int(long n) const { return {a.div_int(n), b.div_int(n), c.div_int(n), d.div_int(n)}; }

Mat2 Mat2::inverse() const {
  FieldElement di = det().inv();
  return {d * di, -b * di, -c * di, a * di};
}

Mat2 Mat2::pow(long n) const {
  int digits = a.tower()->default_prec();
  return pow_mpz(*this, mpz_class(n), digits);
}

Mat2 Mat2::truncate(int abs_digits) const {
  return {a.truncate(abs_digits), b.truncate(abs_digits), c.truncate(abs_digits), d.truncate(abs_digits)};
}

int Mat2::vpi_lower() const {
  return std::min({a.vpi_lower(), b.vpi_lower(), c.vpi_lower(), d.vpi_lower()});
}

bool Mat2::equals(const Mat2& o) const {
  return a.equals(o.a) && b.equals(o.b) && c.equals(o.c) && d.equals(o.d);
}

bool Mat2::is_exact_identity() const {
  const FieldTower& t = *a.tower();
  return (a - t.one()).is_exact_zero() && b.is_exact_zero() && c.is_exact_zero() &&
         (d - t.one()).is_exact_zero();
}

std::string Mat2::str() const {
  return "[[" + a.str() + ", " + b.str() + "], [" + c.str() + ", " + d.str() + "]]";
}

std::string to_string(GroupCase c) { return c == GroupCase::GL2 ? "GL2" : "quaternion"; }

std::string BasisElement::label() const {
  return std::string(1, kind) + std::to_string(i) + "_" + std::to_string(j);
}

std::shared_ptr<const GroupContext> GroupContext::build(GroupCase gc, TowerPtr K) {
  auto ctx = std::shared_ptr<GroupContext>(new GroupContext());
  ctx->gc_ = gc;
  ctx->K_ = K;
  const long p = K->p();
  const int e = K->e(), f = K->f();
  ctx->C_ = Rational(1) - Rational(1, p - 1) + Rational(1, 4 * e);
  const mpz_class p2 = mpz_class(p) * p;

  if (gc == GroupCase::GL2) {
    ctx->M_ = K;
    const FieldTower& M = *K;
    const FieldElement pi = M.uniformizer();
    const FieldElement zero = M.zero();
    for (char kind : {'e', 'f', 'h', 'z'})
      for (int i = 0; i < f; ++i)
        for (int j = 0; j < e; ++j) {
          int shift = kind == 'e' ? j : j + 1;
          FieldElement y = M.alpha().pow(i) * pi.pow(shift) * M.from_mpz(p2);
          Mat2 X = Mat2::zero(M);
          if (kind == 'e') X.b = y;
          if (kind == 'f') X.c = y;
          if (kind == 'h') X = {y, zero, zero, -y};
          if (kind == 'z') X = {y, zero, zero, y};
          ctx->basis_.push_back({kind, i, j, Rational(0), X, Mat2::zero(M)});
        }
  } else {
    if (!K->quat_a()) throw std::invalid_argument("quaternion case needs quaternion_a");
    ctx->M_ = K->quaternion_split_tower();
    const FieldTower& M = *ctx->M_;
    const FieldElement pi = M.uniformizer();
    const FieldElement s = M.alpha();
    const FieldElement zero = M.zero();
    for (char kind : {'a', 'b', 'c', 'z'})
      for (int j = 0; j < e; ++j) {
        FieldElement y = pi.pow(j) * M.from_mpz(p2);
        Mat2 X = Mat2::zero(M);
        if (kind == 'a') X = {zero, y, y * pi, zero};
        if (kind == 'b') X = {zero, y * s, -(y * s * pi), zero};
        if (kind == 'c') X = {y * pi * s, zero, zero, -(y * pi * s)};
        if (kind == 'z') X = {y * pi, zero, zero, y * pi};
        ctx->basis_.push_back({kind, 0, j, Rational(0), X, Mat2::zero(M)});
      }
  }

  const Rational lo(1, p - 1), hi(p, p - 1);
  for (auto& b : ctx->basis_) {
    b.elem = ctx->mexp(b.lie);
    ExtRational w = ctx->omega(b.elem);
    if (w.infinite) throw std::logic_error("basis element is trivial");
    b.omega = w.value;
    if (!(lo < b.omega && b.omega < hi))
      throw std::logic_error("basis omega " + to_string(b.omega) + " of " + b.label() +
                             " is not strictly saturated");
    Rational l2 = (b.omega + ctx->C_ + 1) * Rational(2 * e);
    if (l2.denominator() != 1) throw std::logic_error("non-integral basis level");
    ctx->level2_.push_back(static_cast<int>(l2.numerator()));
  }
  return ctx;
}

int GroupContext::tv2(const Mat2& g, bool* exact_bound) const {
  const FieldTower& M = *M_;
  FieldElement entries[4] = {g.a - M.one(), g.b, g.c, g.d - M.one()};
  const long offs[4] = {0, 1, -1, 0};
  long dmin = kBig, lmin = kBig;
  for (int k = 0; k < 4; ++k) {
    const FieldElement& x = entries[k];
    if (x.is_exact_zero()) continue;
    long v = x.vpi_lower();
    if (x.vanishes())
      lmin = std::min(lmin, 2 * v + offs[k]);
    else
      dmin = std::min(dmin, 2 * v + offs[k]);
  }
  if (exact_bound) *exact_bound = dmin <= lmin;
  long r = std::min(dmin, lmin);
  return static_cast<int>(std::min<long>(r, FieldElement::kExact));
}

Rational GroupContext::tv2_to_omega(int t) const {
  return Rational(t, 2 * K_->e()) - C_ - 1;
}

ExtRational GroupContext::omega(const Mat2& g) const {
  bool exact = false;
  int t = tv2(g, &exact);
  if (t >= FieldElement::kExact) return ExtRational::inf();
  if (!exact) throw Indeterminate("omega indeterminate at stored precision");
  return ExtRational::of(tv2_to_omega(t));
}

Rational GroupContext::omega_lower(const Mat2& g) const {
  int t = tv2(g);
  if (t >= FieldElement::kExact) t = 4 * M_->default_prec();
  return tv2_to_omega(t);
}

Mat2 GroupContext::mexp(const Mat2& X) const {
  const FieldTower& M = *M_;
  const int P = M.default_prec();
  const int e = M.e();
  const long p = M.p();
  Mat2 sq = X * X;
  if (X.a.exact() && X.b.exact() && X.c.exact() && X.d.exact() && sq.vpi_lower() >= FieldElement::kExact)
    return Mat2::identity(M) + X;
  int vpi = X.vpi_lower();
  if (vpi >= FieldElement::kExact) return Mat2::identity(M);
  // n v - (n-1)/(p-1) >= P guarantees all later terms vanish mod pi^P.
  Rational v(vpi, e);
  Rational slope = v - Rational(1, p - 1);
  if (slope <= 0) throw std::domain_error("exponential does not converge");
  long nmax = ceil((Rational(P, e) + 1 - Rational(1, p - 1)) / slope) + 1;
  Mat2 Xt = X.truncate(P + e);
  Mat2 term = Mat2::identity(M);
  Mat2 sum = term;
  for (long n = 1; n <= nmax; ++n) {
    term = (term * Xt).div_int(n).truncate(P + e);
    sum = sum + term;
  }
  return sum.truncate(P);
}

Mat2 GroupContext::mlog(const Mat2& g) const {
  const FieldTower& M = *M_;
  const int P = M.default_prec();
  const int e = M.e();
  const long p = M.p();
  Mat2 Y = g - Mat2::identity(M);
  if (g.is_exact_identity()) return Mat2::zero(M);
  if (Y.a.exact() && Y.b.exact() && Y.c.exact() && Y.d.exact() &&
      (Y * Y).vpi_lower() >= FieldElement::kExact)
    return Y;
  int vpi = Y.vpi_lower();
  if (vpi <= 0) throw std::domain_error("logarithm does not converge");
  Rational v(vpi, e);
  // n v - log_p(n) >= P + 1 for every later n; the left side increases once
  // n exceeds 1 / (v ln p).
  const double vd = static_cast<double>(vpi) / e;
  const double lnp = std::log(static_cast<double>(p));
  long nmax = 1;
  while (nmax < 1000000 && (nmax * vd - std::log(static_cast<double>(nmax)) / lnp < P / static_cast<double>(e) + 1 ||
                            nmax * vd * lnp < 1))
    ++nmax;
  const int extra = e * (static_cast<int>(std::log(static_cast<double>(nmax)) / lnp) + 2);
  Mat2 Yt = Y.truncate(P + extra);
  Mat2 pw = Yt;
  Mat2 sum = Yt;
  for (long n = 2; n <= nmax; ++n) {
    pw = (pw * Yt).truncate(P + extra);
    Mat2 term = pw.div_int(n);
    sum = (n % 2 == 0) ? sum - term : sum + term;
  }
  return sum.truncate(P);
}

Mat2 GroupContext::from_coordinates(const std::vector<mpz_class>& a) const {
  if (static_cast<int>(a.size()) != dim()) throw std::invalid_argument("coordinate length mismatch");
  const int P = M_->default_prec();
  Mat2 g = Mat2::identity(*M_);
  for (int i = 0; i < dim(); ++i)
    if (a[i] != 0) g = (g * pow_mpz(basis_[i].elem, a[i], P)).truncate(P);
  return g;
}

std::vector<long> GroupContext::symbol(const Mat2& g, int t) const {
  const FieldTower& M = *M_;
  const Fq& F = M.residue_field();
  std::vector<long> out;
  auto push = [&](const FieldElement& x, int k) {
    auto cs = F.coeffs(x.residue_at(k));
    cs.resize(F.degree(), 0);
    out.insert(out.end(), cs.begin(), cs.end());
  };
  if (t % 2 == 0) {
    push(g.a - M.one(), t / 2);
    push(g.d - M.one(), t / 2);
  } else {
    push(g.b, (t - 1) / 2);
    push(g.c, (t + 1) / 2);
  }
  return out;
}

std::vector<mpz_class> GroupContext::coordinates(const Mat2& g, const Rational& level) const {
  const int d = dim();
  const long p = K_->p();
  const int two_e = 2 * K_->e();
  std::vector<mpz_class> a(d, 0);
  const Rational stop2 = (level + C_ + 1) * Rational(two_e);
  const int P = M_->default_prec();
  for (int guard = 0; guard < 100000; ++guard) {
    Mat2 r = (from_coordinates(a).inverse() * g).truncate(P);
    bool exact = false;
    int t = tv2(r, &exact);
    if (Rational(t) >= stop2) break;
    if (!exact) throw Indeterminate("coordinates need more precision");
    std::vector<int> cand;
    std::vector<int> mexp_;
    for (int i = 0; i < d; ++i) {
      int diff = t - level2_[i];
      if (diff >= 0 && diff % two_e == 0) {
        cand.push_back(i);
        mexp_.push_back(diff / two_e);
      }
    }
    if (cand.empty()) throw std::domain_error("element is not in the group");
    std::vector<long> target = symbol(r, t);
    std::vector<std::vector<long>> A(target.size(), std::vector<long>(cand.size()));
    for (std::size_t c = 0; c < cand.size(); ++c) {
      Mat2 hp = pow_mpz(basis_[cand[c]].elem, mpz_class(K_->ppow(mexp_[c])), P);
      auto col = symbol(hp, t);
      for (std::size_t rr = 0; rr < col.size(); ++rr) A[rr][c] = col[rr];
    }
    std::vector<long> x;
    if (!solve_mod_p(p, A, target, x)) throw std::domain_error("element is not in the group");
    for (std::size_t c = 0; c < cand.size(); ++c)
      a[cand[c]] += mpz_class(x[c]) * K_->ppow(mexp_[c]);
  }
  for (int i = 0; i < d; ++i) {
    long cap = std::max<long>(1, ceil(level - basis_[i].omega));
    mpz_class m = K_->ppow(static_cast<int>(cap));
    a[i] %= m;
    if (a[i] < 0) a[i] += m;
  }
  return a;
}

Mat2 GroupContext::lazard_add(const Mat2& g, const Mat2& h) const { return mexp(mlog(g) + mlog(h)); }

Mat2 GroupContext::lazard_bracket(const Mat2& g, const Mat2& h) const {
  Mat2 x = mlog(g), y = mlog(h);
  return mexp(x * y - y * x);
}

Mat2 GroupContext::lazard_add_limit(const Mat2& g, const Mat2& h, int n) const {
  const int P = M_->default_prec();
  mpz_class pn = K_->ppow(n);
  Mat2 prod = (pow_mpz(g, pn, P) * pow_mpz(h, pn, P)).truncate(P);
  Mat2 L = mlog(prod);
  FieldElement inv = M_->from_mpz(pn).inv();
  return mexp(L.scale(inv));
}

Mat2 GroupContext::random_element(std::mt19937_64& rng) const {
  const long p = K_->p();
  std::uniform_int_distribution<long> coef(0, p * p * p - 1);
  std::uniform_int_distribution<int> scale(0, 2);
  int k = scale(rng);
  Mat2 X = Mat2::zero(*M_);
  for (const auto& b : basis_) {
    long c = coef(rng);
    if (c) X = X + b.lie.scale(M_->from_int(c));
  }
  if (k) X = X.scale(M_->from_mpz(K_->ppow(k)));
  return mexp(X);
}

bool GroupContext::in_big_group(const Mat2& g) const {
  const FieldTower& M = *M_;
  const int e = M.e();
  auto ge = [](const FieldElement& x, int v) { return x.is_exact_zero() || x.vpi_lower() >= v; };
  bool shape = ge(g.a - M.one(), e + 1) && ge(g.b, e) && ge(g.c, e + 1) && ge(g.d - M.one(), e + 1);
  if (!shape || gc_ == GroupCase::GL2) return shape;
  return (g.d - conj(g.a)).vanishes() && (g.c - conj(g.b) * M.uniformizer()).vanishes();
}

AxiomReport GroupContext::check_axioms(int n_samples, std::uint64_t seed) const {
  AxiomReport rep;
  std::mt19937_64 rng(seed);
  const Rational lo(1, K_->p() - 1), hi(K_->p(), K_->p() - 1);
  for (const auto& b : basis_)
    if (!(lo < b.omega && b.omega < hi)) rep.strictly_saturated = false;
  auto witness = [&](const std::string& what, const Mat2& x, const Mat2& y) {
    if (rep.witnesses.size() < 5) rep.witnesses.push_back(what + ": x=" + x.str() + " y=" + y.str());
  };
  if (!omega(Mat2::identity(*M_)).infinite) ++rep.violations_identity;
  for (int s = 0; s < n_samples; ++s) {
    Mat2 x = random_element(rng), y = random_element(rng);
    ++rep.samples;
    ExtRational wx = omega(x), wy = omega(y);
    if (wx.infinite != x.equals(Mat2::identity(*M_))) {
      ++rep.violations_identity;
      witness("identity", x, y);
    }
    Mat2 q = x * y.inverse();
    if (omega_lower(q) < min(wx, wy).value && !(wx.infinite || wy.infinite)) {
      ++rep.violations_sub;
      witness("xy^-1", x, y);
    }
    Mat2 comm = x * y * x.inverse() * y.inverse();
    if (!wx.infinite && !wy.infinite && omega_lower(comm) < wx.value + wy.value) {
      // The lower bound can be weak when digits vanish; retry with the exact value.
      bool exact = false;
      tv2(comm, &exact);
      if (exact) {
        ++rep.violations_comm;
        witness("commutator", x, y);
      }
    }
    Mat2 xp = x.pow(K_->p());
    if (!wx.infinite) {
      ExtRational wp = omega(xp);
      if (wp.infinite || wp.value != wx.value + 1) {
        ++rep.violations_power;
        witness("power", x, y);
      }
    }
  }
  return rep;
}

}  // namespace gkdim
