#include "gkdim/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace gkdim {

int PolyRing::index_of(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (names[i] == name) return i;
  return -1;
}

PolyRing PolyRing::with_extra(const std::string& name, const Rational& degree) const {
  PolyRing out = *this;
  out.names.push_back(name);
  out.degrees.push_back(degree);
  return out;
}

RingPtr make_ring(const Fq& F, std::vector<std::string> names, std::vector<Rational> degrees) {
  if (names.size() > static_cast<std::size_t>(kMaxVars)) throw std::invalid_argument("too many variables");
  if (degrees.empty()) degrees.assign(names.size(), Rational(1));
  if (degrees.size() != names.size()) throw std::invalid_argument("one degree per variable");
  auto R = std::make_shared<PolyRing>();
  R->F = F;
  R->names = std::move(names);
  R->degrees = std::move(degrees);
  return R;
}

int total_degree(const Exps& a, int n) {
  int d = 0;
  for (int i = 0; i < n; ++i) d += a[i];
  return d;
}

int grevlex_cmp(const Exps& a, const Exps& b, int n) {
  int da = total_degree(a, n), db = total_degree(b, n);
  if (da != db) return da < db ? -1 : 1;
  for (int i = n - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

bool divides(const Exps& a, const Exps& b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps lcm(const Exps& a, const Exps& b, int n) {
  Exps out{};
  for (int i = 0; i < n; ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

void Poly::canonicalize(std::vector<Term> terms) {
  const int n = R_->nvars();
  std::sort(terms.begin(), terms.end(),
            [n](const Term& x, const Term& y) { return grevlex_cmp(x.first, y.first, n) > 0; });
  t_.clear();
  for (auto& t : terms) {
    if (!t_.empty() && t_.back().first == t.first) {
      t_.back().second = R_->F.add(t_.back().second, t.second);
      if (t_.back().second == 0) t_.pop_back();
      continue;
    }
    if (t.second != 0) t_.push_back(t);
  }
}

Poly Poly::constant(const PolyRing* R, Fq::Elt c) { return monomial(R, Exps{}, c); }

Poly Poly::variable(const PolyRing* R, int i) {
  if (i < 0 || i >= R->nvars()) throw std::out_of_range("variable index");
  Exps a{};
  a[i] = 1;
  return monomial(R, a, 1);
}

Poly Poly::monomial(const PolyRing* R, const Exps& a, Fq::Elt c) {
  Poly p(R);
  if (c != 0) p.t_.push_back({a, c});
  return p;
}

Poly Poly::from_graded(const PolyRing* R, const GradedPoly& g) {
  if (g.nvars() != R->nvars()) throw std::invalid_argument("variable count mismatch");
  std::vector<Term> terms;
  for (const auto& [m, c] : g.terms()) {
    if (m.eps != 0) throw std::invalid_argument("eps must be eliminated before conversion");
    terms.push_back({m.alpha, c});
  }
  Poly p(R);
  p.canonicalize(std::move(terms));
  return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && total_degree(t_[0].first, R_->nvars()) == 0); }

Poly Poly::operator+(const Poly& o) const {
  const int n = R_->nvars();
  Poly out(R_);
  std::size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    int c = i == t_.size() ? -1 : j == o.t_.size() ? 1 : grevlex_cmp(t_[i].first, o.t_[j].first, n);
    if (c > 0) {
      out.t_.push_back(t_[i++]);
    } else if (c < 0) {
      out.t_.push_back(o.t_[j++]);
    } else {
      Fq::Elt s = R_->F.add(t_[i].second, o.t_[j].second);
      if (s != 0) out.t_.push_back({t_[i].first, s});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out(R_);
  out.t_ = t_;
  for (auto& t : out.t_) t.second = R_->F.neg(t.second);
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  const int n = R_->nvars();
  std::unordered_map<Exps, Fq::Elt, ExpsHash> acc;
  for (const auto& [a, c] : t_)
    for (const auto& [b, d] : o.t_) {
      Exps s{};
      for (int k = 0; k < n; ++k) s[k] = static_cast<std::uint16_t>(a[k] + b[k]);
      auto [it, fresh] = acc.emplace(s, R_->F.mul(c, d));
      if (!fresh) it->second = R_->F.add(it->second, R_->F.mul(c, d));
    }
  Poly out(R_);
  out.canonicalize(std::vector<Term>(acc.begin(), acc.end()));
  return out;
}

Poly Poly::pow(unsigned k) const {
  Poly out = constant(R_, 1), base = *this;
  while (k) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

Poly Poly::scale(Fq::Elt c) const {
  Poly out(R_);
  if (c == 0) return out;
  out.t_ = t_;
  for (auto& t : out.t_) t.second = R_->F.mul(t.second, c);
  return out;
}

Poly Poly::mul_term(const Exps& a, Fq::Elt c) const {
  const int n = R_->nvars();
  Poly out(R_);
  if (c == 0) return out;
  out.t_ = t_;
  for (auto& t : out.t_) {
    for (int k = 0; k < n; ++k) t.first[k] = static_cast<std::uint16_t>(t.first[k] + a[k]);
    t.second = R_->F.mul(t.second, c);
  }
  return out;
}

Poly Poly::monic() const { return is_zero() ? *this : scale(R_->F.inv(lc())); }

bool Poly::homogeneous() const {
  const int n = R_->nvars();
  auto deg = [&](const Exps& a) {
    Rational d(0);
    for (int i = 0; i < n; ++i) d += R_->degrees[i] * a[i];
    return d;
  };
  for (const auto& t : t_)
    if (deg(t.first) != deg(t_[0].first)) return false;
  return true;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  const int n = R_->nvars();
  std::string s;
  for (const auto& [a, c] : t_) {
    std::string mono;
    for (int i = 0; i < n; ++i) {
      if (!a[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += R_->names[i];
      if (a[i] > 1) mono += "^" + std::to_string(a[i]);
    }
    std::string coef;
    if (c != 1 || mono.empty()) coef = c < static_cast<Fq::Elt>(R_->F.p()) ? std::to_string(c) : R_->F.str(c);
    if (!s.empty()) s += " + ";
    s += coef.empty() ? mono : mono.empty() ? coef : coef + "*" + mono;
  }
  return s;
}

namespace {

class Parser {
 public:
  Parser(const PolyRing* R, const std::string& s) : R_(R), s_(s) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  unsigned long number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(s_.substr(start, pos_ - start));
  }

  Poly expr() {
    Poly acc(R_);
    bool neg = accept('-');
    acc = neg ? -term() : term();
    for (;;) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }
  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }
  Poly factor() {
    Poly base = atom();
    if (accept('^')) return base.pow(static_cast<unsigned>(number()));
    return base;
  }
  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept('(')) {
      Poly inner = expr();
      if (!accept(')')) fail("missing )");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_])))
      return Poly::constant(R_, R_->F.from_int(static_cast<long>(number() % R_->F.p())));
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a term");
    std::string name = s_.substr(start, pos_ - start);
    int idx = R_->index_of(name);
    if (idx >= 0) return Poly::variable(R_, idx);
    if (name == "t") return Poly::constant(R_, R_->F.gen());
    fail("unknown variable " + name);
  }

  const PolyRing* R_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const PolyRing* R, const std::string& text) { return Parser(R, text).parse(); }

}  // namespace gkdim
