#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gkdim {

/// F_q = F_p[t]/(m(t)) with m monic irreducible. Elements are encoded as
/// integers sum c_i p^i with 0 <= c_i < p.
class Fq {
 public:
  using Elt = std::uint32_t;

  Fq() = default;
  /// modulus: monic polynomial over F_p, low to high. Degree 1 gives F_p.
  Fq(long p, std::vector<long> modulus);
  static Fq prime(long p) { return Fq(p, {0, 1}); }

  long p() const { return p_; }
  int degree() const { return deg_; }
  long q() const { return q_; }
  const std::vector<long>& modulus() const { return mod_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  /// The class of t.
  Elt gen() const;
  Elt from_int(long v) const;
  Elt from_coeffs(const std::vector<long>& c) const;
  std::vector<long> coeffs(Elt x) const;

  Elt add(Elt a, Elt b) const;
  Elt sub(Elt a, Elt b) const;
  Elt neg(Elt a) const;
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t n) const;
  /// x -> x^(p^k).
  Elt frob(Elt a, int k) const;

  std::string str(Elt a) const;
  bool operator==(const Fq& o) const { return p_ == o.p_ && mod_ == o.mod_; }
  bool operator!=(const Fq& o) const { return !(*this == o); }

 private:
  Elt poly_mul(Elt a, Elt b) const;

  long p_ = 0;
  int deg_ = 0;
  long q_ = 0;
  std::vector<long> mod_;
  std::vector<Elt> exp_;     // exp_[k] = g^k, k < q-1
  std::vector<std::int32_t> log_;  // log_[x], -1 for zero
};

/// True when the monic polynomial (low to high) is irreducible over F_p.
bool irreducible_mod_p(long p, const std::vector<long>& poly);

/// Rank-revealing Gaussian elimination over F_p. Solves A x = b where A is
/// rows x cols (row-major). Returns false when inconsistent.
bool solve_mod_p(long p, std::vector<std::vector<long>> A, std::vector<long> b,
                 std::vector<long>& x);

}  // namespace gkdim
