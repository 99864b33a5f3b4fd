#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gkdim/padic_tower.hpp"

namespace gkdim {

struct Mat2 {
  FieldElement a, b, c, d;

  static Mat2 identity(const FieldTower& t);
  static Mat2 zero(const FieldTower& t);
  static Mat2 scalar(const FieldElement& x);

  Mat2 operator*(const Mat2& o) const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 scale(const FieldElement& s) const;
  Mat2 div_int(long n) const;
  Mat2 inverse() const;
  Mat2 pow(long n) const;
  Mat2 truncate(int abs_digits) const;
  FieldElement det() const { return a * d - b * c; }
  /// Smallest pi-adic valuation lower bound over the entries.
  int vpi_lower() const;
  bool equals(const Mat2& o) const;
  bool is_exact_identity() const;
  std::string str() const;
};

enum class GroupCase { GL2, Quaternion };

std::string to_string(GroupCase c);

struct BasisElement {
  char kind;  // e,f,h,z or a,b,c,z
  int i, j;
  Rational omega;
  Mat2 lie;    // h = exp(lie)
  Mat2 elem;
  std::string label() const;
};

struct AxiomReport {
  int samples = 0;
  int violations_sub = 0;
  int violations_comm = 0;
  int violations_power = 0;
  int violations_identity = 0;
  bool strictly_saturated = true;
  std::vector<std::string> witnesses;
  bool ok() const {
    return strictly_saturated && violations_sub + violations_comm + violations_power + violations_identity == 0;
  }
};

/// H = (H^{1/p})^p inside GL2(K), or inside the quaternion units realized as
/// 2x2 matrices over K(sqrt a).
class GroupContext {
 public:
  static std::shared_ptr<const GroupContext> build(GroupCase gc, TowerPtr K);

  GroupCase gcase() const { return gc_; }
  const FieldTower& K() const { return *K_; }
  TowerPtr K_ptr() const { return K_; }
  /// Field of the matrix entries (K, or K(sqrt a) for quaternions).
  const FieldTower& M() const { return *M_; }
  TowerPtr M_ptr() const { return M_; }
  const Rational& C() const { return C_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  /// 2e(omega_i + C + 1): the twisted level of basis element i in half pi-digits.
  int level2(int i) const { return level2_[i]; }
  /// Working precision in p-adic digits.
  int digits() const { return K_->default_digits(); }

  /// Twisted valuation level of g - 1 in half pi-digits (lower bound when
  /// digits vanish).
  int tv2(const Mat2& g, bool* exact_bound = nullptr) const;
  ExtRational omega(const Mat2& g) const;
  Rational omega_lower(const Mat2& g) const;
  Rational tv2_to_omega(int tv2) const;

  Mat2 mexp(const Mat2& X) const;
  Mat2 mlog(const Mat2& g) const;

  Mat2 from_coordinates(const std::vector<mpz_class>& a) const;
  /// Coordinates a_i modulo p^ceil(level - omega_i); throws std::domain_error
  /// when g is not in H.
  std::vector<mpz_class> coordinates(const Mat2& g, const Rational& level) const;

  Mat2 lazard_add(const Mat2& g, const Mat2& h) const;
  Mat2 lazard_bracket(const Mat2& g, const Mat2& h) const;
  /// (g^{p^n} h^{p^n})^{p^{-n}} with the root taken through the logarithm.
  Mat2 lazard_add_limit(const Mat2& g, const Mat2& h, int n) const;

  Mat2 random_element(std::mt19937_64& rng) const;
  AxiomReport check_axioms(int n_samples, std::uint64_t seed) const;
  /// Symbol vector over F_p of g at twisted level tv2.
  std::vector<long> symbol(const Mat2& g, int tv2) const;
  /// Is the matrix g in H^{1/p} (explicit congruence description, GL2 only
  /// uses the entries; quaternion checks the matrix model shape)?
  bool in_big_group(const Mat2& g) const;

 private:
  GroupCase gc_ = GroupCase::GL2;
  TowerPtr K_, M_;
  Rational C_;
  std::vector<BasisElement> basis_;
  std::vector<int> level2_;
};

using GroupPtr = std::shared_ptr<const GroupContext>;

}  // namespace gkdim
