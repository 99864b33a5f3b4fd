#include "gkdim/graded_poly.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace gkdim {

void GradedPoly::add_term(const GradedMonomial& m, Fq::Elt c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = F_->add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

GradedPoly GradedPoly::operator+(const GradedPoly& o) const {
  GradedPoly r = F_ ? *this : GradedPoly(o.F_, o.nvars_);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

GradedPoly GradedPoly::operator-(const GradedPoly& o) const {
  GradedPoly r = F_ ? *this : GradedPoly(o.F_, o.nvars_);
  for (const auto& [m, c] : o.terms_) r.add_term(m, r.F_->neg(c));
  return r;
}

GradedPoly GradedPoly::operator*(const GradedPoly& o) const {
  GradedPoly r(F_ ? F_ : o.F_, std::max(nvars_, o.nvars_));
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      GradedMonomial m;
      for (int i = 0; i < kMaxVars; ++i) m.alpha[i] = static_cast<std::uint16_t>(m1.alpha[i] + m2.alpha[i]);
      m.eps = m1.eps + m2.eps;
      r.add_term(m, r.F_->mul(c1, c2));
    }
  return r;
}

GradedPoly GradedPoly::scale(Fq::Elt c) const {
  GradedPoly r(F_, nvars_);
  for (const auto& [m, v] : terms_) r.add_term(m, F_->mul(v, c));
  return r;
}

GradedPoly GradedPoly::frobenius_power(int k) const {
  GradedPoly r(F_, nvars_);
  long pk = 1;
  for (int s = 0; s < k; ++s) pk *= F_->p();
  for (const auto& [m, v] : terms_) {
    GradedMonomial mm = m;
    for (auto& a : mm.alpha) {
      long x = a * pk;
      if (x > 65535) throw std::overflow_error("exponent overflow");
      a = static_cast<std::uint16_t>(x);
    }
    mm.eps = static_cast<int>(m.eps * pk);
    r.add_term(mm, F_->frob(v, k));
  }
  return r;
}

GradedPoly GradedPoly::eps_part(int k) const {
  GradedPoly r(F_, nvars_);
  for (const auto& [m, v] : terms_)
    if (m.eps == k) {
      GradedMonomial mm = m;
      mm.eps = 0;
      r.add_term(mm, v);
    }
  return r;
}

int GradedPoly::min_eps() const {
  int r = INT_MAX;
  for (const auto& t : terms_) r = std::min(r, t.first.eps);
  return r;
}

int GradedPoly::max_eps() const {
  int r = INT_MIN;
  for (const auto& t : terms_) r = std::max(r, t.first.eps);
  return r;
}

Rational GradedPoly::degree(const GradedMonomial& m, const std::vector<Rational>& w, int eL) {
  Rational d(m.eps, eL);
  for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * Rational(m.alpha[i]);
  return d;
}

bool GradedPoly::homogeneous(const std::vector<Rational>& w, int eL) const {
  bool first = true;
  Rational d0;
  for (const auto& t : terms_) {
    Rational d = degree(t.first, w, eL);
    if (first) d0 = d;
    else if (d != d0) return false;
    first = false;
  }
  return true;
}

std::string GradedPoly::str(const std::vector<std::string>& names, const std::string& eps_name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::ostringstream mon;
    bool any = false;
    for (int i = 0; i < nvars_; ++i)
      if (m.alpha[i]) {
        mon << (any ? "*" : "") << (i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i));
        if (m.alpha[i] > 1) mon << "^" << m.alpha[i];
        any = true;
      }
    if (m.eps) {
      mon << (any ? "*" : "") << eps_name;
      if (m.eps != 1) mon << "^" << m.eps;
      any = true;
    }
    if (!any) os << F_->str(c);
    else if (c == 1) os << mon.str();
    else os << "(" << F_->str(c) << ")*" << mon.str();
  }
  return os.str();
}

}  // namespace gkdim
