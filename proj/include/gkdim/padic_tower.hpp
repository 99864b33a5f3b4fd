#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkdim/finite_field.hpp"
#include "gkdim/rational.hpp"

namespace gkdim {

/// Raised when stored digits cannot decide a valuation or residue.
class Indeterminate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldElement;

/// K = Q_p[alpha][pi] with alpha a root of the monic integer polynomial u
/// (irreducible mod p) and pi a root of the Eisenstein polynomial E whose
/// coefficients lie in Z[alpha].
class FieldTower {
 public:
  using IntPoly = std::vector<long>;

  /// e_poly[j] holds the alpha-coefficients of X^j, j = 0..e; the leading
  /// entry must be 1. Throws std::invalid_argument on bad input.
  static std::shared_ptr<const FieldTower> build(long p, IntPoly u_poly,
                                                 std::vector<IntPoly> e_poly,
                                                 std::optional<long> quat_a = std::nullopt,
                                                 int default_digits = 40);
  /// Q_p(sqrt a)[pi] with the same rational Eisenstein polynomial; used as
  /// the matrix field for quaternions over a base with f = 1.
  std::shared_ptr<const FieldTower> quaternion_split_tower() const;

  long p() const { return p_; }
  int f() const { return f_; }
  int e() const { return e_; }
  int degree() const { return f_ * e_; }
  bool rational_eisenstein() const { return rational_eisenstein_; }
  std::optional<long> quat_a() const { return quat_a_; }
  const IntPoly& u_poly() const { return u_int_; }
  const std::vector<IntPoly>& e_poly() const { return e_int_; }
  /// Default absolute precision in pi-adic digits.
  int default_prec() const { return default_digits_ * e_; }
  int default_digits() const { return default_digits_; }
  const Fq& residue_field() const { return fq_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long v) const;
  FieldElement from_mpz(const mpz_class& v) const;
  FieldElement uniformizer() const;
  FieldElement alpha() const;
  /// Exact element from integer coordinates c[j*f+i] of alpha^i pi^j.
  FieldElement from_coords(std::vector<mpz_class> c) const;
  /// Integral lift of a residue.
  FieldElement lift(Fq::Elt r) const;

  /// pi^e / p, an exact unit.
  const FieldElement& ue() const;
  Fq::Elt ue_residue() const { return ue_res_; }
  /// Image of alpha under the arithmetic Frobenius.
  const FieldElement& frob_alpha() const;

  const mpz_class& ppow(int k) const;
  std::string describe() const;

  // Z[alpha] helpers on length-f coefficient vectors.
  std::vector<mpz_class> za_mul(const std::vector<mpz_class>& a,
                                const std::vector<mpz_class>& b) const;
  const std::vector<std::vector<mpz_class>>& E() const { return E_; }

 private:
  FieldTower() = default;
  void init_caches();

  long p_ = 0;
  int f_ = 1, e_ = 1;
  IntPoly u_int_;
  std::vector<IntPoly> e_int_;
  std::vector<mpz_class> u_;               // f+1 coefficients
  std::vector<std::vector<mpz_class>> E_;  // e+1 entries of length f
  bool rational_eisenstein_ = true;
  std::optional<long> quat_a_;
  int default_digits_ = 40;
  Fq fq_;
  std::vector<mpz_class> ppow_;
  std::shared_ptr<FieldElement> ue_;
  std::shared_ptr<FieldElement> frob_alpha_;
  Fq::Elt ue_res_ = 1;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// (sum c[j*f+i] alpha^i pi^j) * pi^(-den). The integral part is known
/// modulo pi^prec; prec == kExact marks exact values.
class FieldElement {
 public:
  static constexpr int kExact = 1 << 28;

  FieldElement() = default;
  FieldElement(const FieldTower* t, std::vector<mpz_class> c, int den, int prec);

  const FieldTower* tower() const { return t_; }
  const std::vector<mpz_class>& coords() const { return c_; }
  int den() const { return den_; }
  int int_prec() const { return prec_; }
  bool exact() const { return prec_ >= kExact; }
  /// Absolute precision of the element in pi-adic digits (kExact if exact).
  int abs_prec() const { return exact() ? kExact : prec_ - den_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inv() const;
  FieldElement pow(long n) const;
  FieldElement mul_int(long n) const;
  FieldElement div_int(long n) const;
  /// Multiply by pi^k (k may be negative).
  FieldElement shift(int k) const;
  /// Reduce to absolute pi-adic precision at most `abs_digits`.
  FieldElement truncate(int abs_digits) const;

  /// pi-adic valuation; throws Indeterminate when the stored digits vanish.
  int vpi() const;
  /// Lower bound for the pi-adic valuation (the precision if all digits vanish).
  int vpi_lower() const;
  ExtRational valuation() const;
  bool is_exact_zero() const;
  /// True when zero at the stored precision.
  bool vanishes() const;
  /// Equality up to the joint precision.
  bool equals(const FieldElement& o) const;

  /// Residue of x / pi^k; requires vpi(x) >= k.
  Fq::Elt residue_at(int k) const;
  Fq::Elt residue() const { return residue_at(0); }
  /// Residue of x / pi^vpi(x).
  Fq::Elt leading_residue() const;

  /// Frob^k on alpha-coordinates, identity on pi.
  FieldElement frobenius(int k) const;
  /// True when every pi^j coordinate with j > 0 vanishes and den == 0.
  bool in_unramified_part() const;

  std::string str() const;

 private:
  int int_vpi_lower() const;
  void reduce();
  void normalize();
  FieldElement shift_int(int k) const;
  FieldElement unit_inverse() const;
  FieldElement frob_once() const;

  const FieldTower* t_ = nullptr;
  std::vector<mpz_class> c_;
  int den_ = 0;
  int prec_ = kExact;
};

/// Vandermonde solve on the Frobenius conjugates of alpha.
std::vector<FieldElement> unramified_idempotents(const FieldTower& t);
/// Independent route: coefficients of u(X) / ((X - alpha) u'(alpha)).
std::vector<FieldElement> lagrange_idempotent_coefficients(const FieldTower& t);

struct DecompositionData {
  std::vector<FieldElement> beta;
  std::vector<FieldElement> gamma;
  int R = 0;
  std::vector<FieldElement> mu;
  std::vector<Fq::Elt> mu_residues;
  FieldElement eprime;  // E'(pi)
};

DecompositionData ramified_idempotent_data(const FieldTower& t);

/// Element of L (x)_{Q_p} K stored as coordinates over the Q_p-basis
/// alpha^i pi^j of K with entries in L.
class TensorElement {
 public:
  TensorElement(const FieldTower* L, const FieldTower* K);
  static TensorElement one(const FieldTower* L, const FieldTower* K);
  /// l (x) k for l in L and k an exact element of K.
  static TensorElement pure(const FieldElement& l, const FieldElement& k);

  TensorElement operator*(const TensorElement& o) const;
  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  bool is_zero_to(int abs_digits) const;
  std::vector<FieldElement>& coords() { return x_; }
  const std::vector<FieldElement>& coords() const { return x_; }

 private:
  const FieldTower* L_;
  const FieldTower* K_;
  std::vector<FieldElement> x_;
};

/// 1_rho for rho restricting to Frob^k with pi fixed; coefficients computed
/// in L = K.
TensorElement embedding_idempotent(const FieldTower& K, const DecompositionData& d, int k);
/// sum_j Frob^k(beta_j) (x) alpha^j.
TensorElement unramified_class_idempotent(const FieldTower& K, const DecompositionData& d, int k);

/// Copies an element of a tower with f = 1 into another tower with the
/// same Eisenstein polynomial.
FieldElement embed_rational(const FieldElement& x, const FieldTower& target);

}  // namespace gkdim
