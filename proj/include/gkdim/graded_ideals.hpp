#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gkdim/groebner.hpp"
#include "gkdim/pvalued_groups.hpp"

namespace gkdim {

struct IdealSpec {
  RingPtr ring;
  std::vector<Poly> gens;
  std::vector<std::string> tags;  // one per generator
};

struct DimensionReport {
  int nvars = 0;
  std::size_t basis_size = 0;
  /// -1 for the unit ideal.
  int kdim = 0;
  /// nvars - kdim.
  int grade = 0;
  std::string statement;
  std::vector<Poly> basis;
};

/// k_L[class variables] graded by the omega of the matching basis elements.
RingPtr class_ring(const GroupContext& G);

IdealSpec casimir_ideal(const GroupContext& G);
/// which: "unramified" (e_K = 1), "principal_series" (GL2) or
/// "explicit_quadratic" (GL2 over a tower with e_K = 2, f = 1).
IdealSpec reference_ideal(const GroupContext& G, const std::string& which);
/// Generators separated by commas or newlines.
IdealSpec parse_ideal(RingPtr ring, const std::string& text);

std::vector<Poly> groebner(const IdealSpec& I, const GroebnerOptions& opt = {});

/// Largest S such that no monomial has support inside S.
int independent_set_dimension(const std::vector<Exps>& monomials, int nvars);
/// nvars minus the smallest set of variables meeting every support.
int hitting_set_dimension(const std::vector<Exps>& monomials, int nvars);

DimensionReport krull_dimension(const IdealSpec& I, const GroebnerOptions& opt = {});

/// g in sqrt(I) iff 1 in I + (1 - t g) with t a fresh variable.
bool radical_member(const Poly& g, const IdealSpec& I, const GroebnerOptions& opt = {});
bool radical_contains(const IdealSpec& big, const IdealSpec& small, const GroebnerOptions& opt = {});
bool radical_equivalence(const IdealSpec& a, const IdealSpec& b, const GroebnerOptions& opt = {});

/// Coefficients of U(X)^2 - V(X) W(X) X with U = sum a_i u_i X^i and so on
/// in F_q[u_0..u_n, v_0..v_n, w_0..w_n]; empty multipliers mean all ones.
IdealSpec dimension_lemma_ideal(int n, const Fq& F, const std::vector<Fq::Elt>& multipliers = {});

struct LemmaReport {
  int n = 0;
  long q = 0;
  int trials = 0;
  int generic_dim = -2;  // -2 when the generic case was not run
  std::vector<int> dims;
  int worst = -1;
  bool ok = true;
  std::string witness;
};

/// Generic check for n <= 1 plus `trials` specializations with multipliers
/// drawn from F_q^x.
LemmaReport dimension_lemma_check(int n, const Fq& F, int trials, std::uint64_t seed);

}  // namespace gkdim
