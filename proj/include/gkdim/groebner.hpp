#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gkdim/polynomial.hpp"

namespace gkdim {

class GroebnerBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerOptions {
  /// Cap on S-polynomials reduced before giving up.
  std::size_t max_spolys = 200000;
};

/// Fully reduces f modulo G (leading terms of G need not be monic).
Poly normal_form(const Poly& f, const std::vector<Poly>& G);

/// Reduced Groebner basis for grevlex, monic, sorted by increasing leading
/// monomial. The zero ideal gives an empty basis.
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const GroebnerOptions& opt = {});

bool contains_one(const std::vector<Poly>& reduced_basis);

}  // namespace gkdim
