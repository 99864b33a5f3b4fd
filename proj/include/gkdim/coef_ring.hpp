#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gkdim/padic_tower.hpp"

namespace gkdim {

constexpr int kMaxCoefDim = 8;
using Coef = std::array<std::uint64_t, kMaxCoefDim>;

/// O_K / p^M with coordinates on the basis alpha^i pi^j (index j*f+i).
class CoefRing {
 public:
  CoefRing() = default;
  CoefRing(const FieldTower& t, int M);

  const FieldTower& tower() const { return *t_; }
  int n() const { return n_; }
  int M() const { return M_; }
  long p() const { return p_; }
  std::uint64_t modulus() const { return mod_; }

  Coef zero() const { return Coef{}; }
  Coef one() const;
  Coef from_int(long v) const;
  Coef add(const Coef& x, const Coef& y) const;
  Coef sub(const Coef& x, const Coef& y) const;
  Coef neg(const Coef& x) const;
  Coef mul(const Coef& x, const Coef& y) const;
  Coef mul_int(const Coef& x, std::uint64_t v) const;
  /// Exact division by p^k; requires every coordinate divisible.
  Coef div_ppow(const Coef& x, int k) const;
  bool is_zero(const Coef& x) const;
  bool equal(const Coef& x, const Coef& y) const { return x == y; }
  /// pi-adic valuation, e*M when x vanishes.
  int vpi(const Coef& x) const;
  /// Residue of x / pi^k; requires vpi(x) >= k.
  Fq::Elt residue_at(const Coef& x, int k) const;
  /// Keeps only the first D pi-adic digits.
  Coef truncate_pi(const Coef& x, int D) const;

  /// Integral field element to O/p^M; throws std::domain_error if x is not
  /// integral or not known to M digits.
  Coef from_field(const FieldElement& x) const;
  FieldElement to_field(const Coef& x) const;
  std::string str(const Coef& x) const;

  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % mod_);
  }
  std::uint64_t ppow(int k) const { return pp_[k]; }

 private:
  const FieldTower* t_ = nullptr;
  int n_ = 1, f_ = 1, e_ = 1, M_ = 1;
  long p_ = 2;
  std::uint64_t mod_ = 2;
  std::vector<std::uint64_t> pp_;
  // table_[s*n+t] = b_s * b_t
  std::vector<Coef> table_;
};

}  // namespace gkdim
