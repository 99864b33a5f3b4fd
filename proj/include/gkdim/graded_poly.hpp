#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gkdim/finite_field.hpp"
#include "gkdim/rational.hpp"

namespace gkdim {

constexpr int kMaxVars = 32;
using Exps = std::array<std::uint16_t, kMaxVars>;

struct ExpsHash {
  std::size_t operator()(const Exps& a) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto v : a) h = (h ^ v) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
  }
};

struct GradedMonomial {
  Exps alpha{};
  int eps = 0;
  bool operator<(const GradedMonomial& o) const {
    return alpha != o.alpha ? alpha < o.alpha : eps < o.eps;
  }
  bool operator==(const GradedMonomial& o) const { return alpha == o.alpha && eps == o.eps; }
};

/// Polynomial over k_L in the basis symbols and eps_L (eps may carry a
/// negative exponent).
class GradedPoly {
 public:
  GradedPoly() = default;
  GradedPoly(const Fq* F, int nvars) : F_(F), nvars_(nvars) {}

  const Fq& field() const { return *F_; }
  const Fq* field_ptr() const { return F_; }
  int nvars() const { return nvars_; }
  const std::map<GradedMonomial, Fq::Elt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const GradedMonomial& m, Fq::Elt c);
  GradedPoly operator+(const GradedPoly& o) const;
  GradedPoly operator-(const GradedPoly& o) const;
  GradedPoly operator*(const GradedPoly& o) const;
  GradedPoly scale(Fq::Elt c) const;
  /// Applies x -> x^(p^k) to coefficients and multiplies every exponent by p^k.
  GradedPoly frobenius_power(int k) const;
  bool operator==(const GradedPoly& o) const { return terms_ == o.terms_; }

  /// Part with eps exponent k, returned with eps set to 0.
  GradedPoly eps_part(int k) const;
  int min_eps() const;
  int max_eps() const;

  /// deg = sum alpha_i w_i + eps / e_L.
  static Rational degree(const GradedMonomial& m, const std::vector<Rational>& w, int eL);
  /// True when every monomial has the same degree.
  bool homogeneous(const std::vector<Rational>& w, int eL) const;

  std::string str(const std::vector<std::string>& names, const std::string& eps_name = "eps") const;

 private:
  const Fq* F_ = nullptr;
  int nvars_ = 0;
  std::map<GradedMonomial, Fq::Elt> terms_;
};

}  // namespace gkdim
