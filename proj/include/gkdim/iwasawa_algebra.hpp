#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gkdim/coef_ring.hpp"
#include "gkdim/graded_poly.hpp"
#include "gkdim/kernels.hpp"
#include "gkdim/pvalued_groups.hpp"
#include "gkdim/quotient_group.hpp"

namespace gkdim {

/// Raised when a symbol cannot be certified at the current level or precision.
class Uncertified : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of O_L/p^M [H/H_nu] in the group-element basis, divided by p^pden.
/// `tail` bounds the r_radius-valuation of everything dropped by truncated
/// series; `vlow` bounds the r_radius-valuation of the whole element.
/// radius < 0 means both bounds hold for every radius.
struct Series {
  kernels::Terms terms;  // sorted by code, no zero coefficients
  int pden = 0;
  int radius = -1;
  ExtRational tail = ExtRational::inf();
  Rational vlow{0};
};

struct MonomialSeries {
  std::vector<std::pair<Exps, Coef>> terms;  // sorted by exponent vector
  int pden = 0;
  int radius = 0;
  ExtRational tail = ExtRational::inf();
};

struct SymbolCertificate {
  int N = 0;
  Rational V{0};
  Rational T{0};           // truncation bound of the level
  Rational precision{0};   // M - pden
  ExtRational tail = ExtRational::inf();
  std::vector<Exps> attaining;
  bool valid = false;
};

struct SymbolResult {
  Rational valuation{0};
  GradedPoly symbol;
  SymbolCertificate cert;
};

struct PPowerReport {
  bool congruence = true;
  bool symbols = true;
  bool combination = true;
  std::vector<std::string> details;
  bool ok() const { return congruence && symbols && combination; }
};

class AlgebraContext {
 public:
  static std::shared_ptr<const AlgebraContext> build(GroupPtr G, const Rational& nu, int M,
                                                     std::uint64_t eager_budget = 1u << 21,
                                                     int max_log_size = 40);

  const GroupContext& group() const { return *G_; }
  GroupPtr group_ptr() const { return G_; }
  const QuotientGroup& quotient() const { return *Q_; }
  const CoefRing& coef() const { return R_; }
  /// Residue field of L.
  const Fq& residue_field() const { return R_.tower().residue_field(); }
  int M() const { return M_; }
  int dim() const { return Q_->dim(); }
  const std::vector<int>& caps() const { return Q_->caps(); }
  const Rational& level() const { return Q_->level(); }
  std::vector<std::string> variable_names() const;

  /// Lower bound for the r_N-valuation of the kernel of the truncation.
  Rational tail_bound(int N) const;
  /// omega_i / p^N.
  std::vector<Rational> weights(int N) const;

  void set_parallel(bool on) const { parallel_ = on; }
  bool parallel() const { return parallel_; }

  Series zero() const;
  Series one() const;
  Series dirac(Code g) const;
  Series dirac(const Mat2& g) const;
  /// b_i = [h_i] - 1.
  Series basis_b(int i) const;
  Series monomial(const Exps& alpha) const;
  Series from_monomials(const MonomialSeries& m) const;

  Series add(const Series& x, const Series& y) const;
  Series sub(const Series& x, const Series& y) const;
  Series scale(const Series& x, const Coef& c) const;
  Series scale(const Series& x, const FieldElement& c) const;
  Series scale_int(const Series& x, long c) const;
  Series multiply(const Series& x, const Series& y) const;
  Series power(const Series& x, int k) const;
  bool equal(const Series& x, const Series& y) const;
  bool is_zero(const Series& x) const;

  /// Lower bound for v_{r_N}([g] - 1) from the coordinates of g.
  Rational dirac_gap(Code g, int N) const;
  /// -sum_{i>=1} (1 - [g])^i / i truncated where the r_N-valuation of the
  /// remaining terms reaches tcut.
  Series log_dirac(Code g, int N, const Rational& tcut) const;
  Series log_dirac(const Mat2& g, int N) const;

  /// Monomial expansion keeping every monomial of r_N-valuation below cutoff
  /// (all monomials when cutoff is infinite).
  MonomialSeries to_monomials(const Series& x, int N, const ExtRational& cutoff) const;
  Rational monomial_valuation(const Exps& alpha, const Coef& c, int pden, int N) const;

  /// Throws Uncertified when the valuation is not below the truncation,
  /// precision and tail bounds.
  SymbolResult r_valuation_symbol(const Series& x, int N) const;
  GradedPoly symbol_of_monomials(const MonomialSeries& m, const std::vector<Exps>& which) const;

  PPowerReport verify_ppower_identity(int i, int N, int Nprime) const;

 private:
  AlgebraContext() = default;
  Coef times_ppow(const Coef& c, int k) const;
  kernels::Terms normalize(std::vector<std::pair<Code, Coef>> terms) const;
  Rational exact_vlow(const kernels::Terms& t, int pden) const;

  GroupPtr G_;
  QuotientPtr Q_;
  CoefRing R_;
  int M_ = 0;
  std::vector<kernels::BinomTable> binom_;
  mutable bool parallel_ = true;
};

using AlgebraPtr = std::shared_ptr<const AlgebraContext>;

}  // namespace gkdim
