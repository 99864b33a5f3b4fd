#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gkdim/coef_ring.hpp"
#include "gkdim/graded_poly.hpp"
#include "gkdim/quotient_group.hpp"

namespace gkdim::kernels {

using Terms = std::vector<std::pair<Code, Coef>>;
using MonoMap = std::unordered_map<Exps, Coef, ExpsHash>;

/// Codes of x*y for every pair, row-major over (lhs, rhs).
std::vector<Code> product_codes_serial(const QuotientGroup& Q, const std::vector<Code>& lhs,
                                       const std::vector<Code>& rhs);
std::vector<Code> product_codes_parallel(const QuotientGroup& Q, const std::vector<Code>& lhs,
                                         const std::vector<Code>& rhs);

/// Binomial coefficients C(a, k) mod p^M and their p-adic valuations for
/// a below the radix of one variable.
struct BinomTable {
  std::uint64_t radix = 0;
  std::vector<std::uint64_t> val;  // val[a * radix + k]
  std::vector<std::uint8_t> vp;
  BinomTable() = default;
  BinomTable(const CoefRing& R, std::uint64_t radix);
};

/// Valuations are scaled by a common denominator so the pruning runs on
/// integers: a term c * b^beta counts vpi(c) * per_pi - pden_scaled +
/// sum_i (vp(binom) * per_p + beta_i * weight_i).
struct ExpandParams {
  std::int64_t per_pi = 1;
  std::int64_t per_p = 1;
  std::int64_t offset = 0;
  std::vector<std::int64_t> weight;
  std::int64_t cutoff = 0;
};

/// Expands sum c_g [g] into monomials, dropping pieces of scaled valuation
/// >= cutoff. Accumulated coefficients are returned unfiltered.
MonoMap expand_serial(const QuotientGroup& Q, const CoefRing& R, const std::vector<BinomTable>& binom,
                      const Terms& terms, const ExpandParams& prm);
MonoMap expand_parallel(const QuotientGroup& Q, const CoefRing& R, const std::vector<BinomTable>& binom,
                        const Terms& terms, const ExpandParams& prm);

int max_threads();

}  // namespace gkdim::kernels
