#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gkdim/coef_ring.hpp"
#include "gkdim/pvalued_groups.hpp"

namespace gkdim {

using Code = std::uint64_t;
using MatQ = std::array<Coef, 4>;

/// The finite group H / H_nu. Elements are encoded by mixed-radix codes of
/// their coordinates (a_0, ..., a_{d-1}) with a_i < p^{n_i}, h = prod h_i^{a_i}.
class QuotientGroup {
 public:
  static std::shared_ptr<const QuotientGroup> build(GroupPtr G, const Rational& nu,
                                                    std::uint64_t eager_budget = 1u << 21);

  const GroupContext& group() const { return *G_; }
  GroupPtr group_ptr() const { return G_; }
  const Rational& level() const { return nu_; }
  int dim() const { return static_cast<int>(caps_.size()); }
  const std::vector<int>& caps() const { return caps_; }
  int log_size() const { return log_size_; }
  bool eager() const { return eager_; }
  const CoefRing& ring() const { return ring_; }

  std::vector<std::uint64_t> decode(Code c) const;
  Code encode(const std::vector<std::uint64_t>& a) const;
  /// Code of h_i^k.
  Code basis_power(int i, std::uint64_t k) const;
  std::uint64_t radix(int i) const { return radix_[i]; }

  MatQ matrix(Code c) const;
  MatQ mat_mul(const MatQ& x, const MatQ& y) const;
  MatQ from_mat2(const Mat2& g) const;
  std::uint64_t fingerprint(const MatQ& g) const;

  /// Code of the coset of g, memoized. Not safe to call concurrently with
  /// itself in lazy mode; use cached/peel/remember from parallel code.
  Code lookup(const MatQ& g) const;
  std::optional<Code> cached(std::uint64_t fp) const;
  void remember(std::uint64_t fp, Code c) const;
  /// Coordinates by successive approximation. Thread-safe.
  Code peel(const MatQ& g) const;

  Code mul(Code x, Code y) const { return lookup(mat_mul(matrix(x), matrix(y))); }
  Code inverse(Code x) const;
  Code power(Code x, std::uint64_t k) const;
  /// Smallest s with x^(p^s) trivial.
  int order_log(Code x) const;

 private:
  QuotientGroup() = default;
  int tv2(const MatQ& g) const;
  std::vector<long> symbol(const MatQ& g, int t) const;

  GroupPtr G_;
  Rational nu_;
  std::vector<int> caps_;
  std::vector<std::uint64_t> radix_, place_;
  int log_size_ = 0;
  bool eager_ = false;
  CoefRing ring_;
  int key_a_ = 0, key_b_ = 0, key_c_ = 0;
  int stop2_ = 0;
  // pos_[i][a] = h_i^a, neg_[i][a] = h_i^-a
  std::vector<std::vector<MatQ>> pos_, neg_;
  // Symbol columns of h_i^(p^m) at their own level.
  std::vector<std::vector<std::vector<long>>> sym_;
  mutable std::unordered_map<std::uint64_t, Code> table_;
  mutable std::mutex mu_;
};

using QuotientPtr = std::shared_ptr<const QuotientGroup>;

}  // namespace gkdim
