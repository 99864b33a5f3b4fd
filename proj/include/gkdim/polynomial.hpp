#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gkdim/finite_field.hpp"
#include "gkdim/graded_poly.hpp"
#include "gkdim/rational.hpp"

namespace gkdim {

/// F_q[x_0..x_{n-1}] with degree-reverse-lexicographic order on the given
/// variable order. `degrees` is a rational grading used only for
/// homogeneity checks.
struct PolyRing {
  Fq F;
  std::vector<std::string> names;
  std::vector<Rational> degrees;

  int nvars() const { return static_cast<int>(names.size()); }
  /// -1 when absent.
  int index_of(const std::string& name) const;
  /// Same field and grading with one extra variable appended.
  PolyRing with_extra(const std::string& name, const Rational& degree = Rational(0)) const;
};

using RingPtr = std::shared_ptr<const PolyRing>;
RingPtr make_ring(const Fq& F, std::vector<std::string> names, std::vector<Rational> degrees = {});

/// <0, 0, >0 as a is smaller, equal, larger than b in grevlex.
int grevlex_cmp(const Exps& a, const Exps& b, int n);
int total_degree(const Exps& a, int n);
bool divides(const Exps& a, const Exps& b, int n);
Exps lcm(const Exps& a, const Exps& b, int n);

class Poly {
 public:
  using Term = std::pair<Exps, Fq::Elt>;

  Poly() = default;
  explicit Poly(const PolyRing* R) : R_(R) {}
  static Poly constant(const PolyRing* R, Fq::Elt c);
  static Poly variable(const PolyRing* R, int i);
  static Poly monomial(const PolyRing* R, const Exps& a, Fq::Elt c);
  static Poly from_graded(const PolyRing* R, const GradedPoly& g);

  const PolyRing& ring() const { return *R_; }
  const PolyRing* ring_ptr() const { return R_; }
  /// Strictly decreasing in grevlex, no zero coefficients.
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  const Exps& lm() const { return t_.front().first; }
  Fq::Elt lc() const { return t_.front().second; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly pow(unsigned k) const;
  Poly scale(Fq::Elt c) const;
  Poly mul_term(const Exps& a, Fq::Elt c) const;
  Poly monic() const;
  bool operator==(const Poly& o) const { return t_ == o.t_; }

  bool homogeneous() const;
  /// Sum of terms with `*` products and `^` powers; coefficients outside
  /// F_p are printed in parentheses as polynomials in t.
  std::string str() const;

 private:
  void canonicalize(std::vector<Term> terms);
  const PolyRing* R_ = nullptr;
  std::vector<Term> t_;
};

/// Parses the plain-text format printed by Poly::str. Integers are read
/// mod p and `t` denotes the generator of F_q. Throws std::invalid_argument.
Poly parse_poly(const PolyRing* R, const std::string& text);

}  // namespace gkdim
