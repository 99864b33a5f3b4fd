#include "gkdim/quotient_group.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "gkdim/finite_field.hpp"

namespace gkdim {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::shared_ptr<const QuotientGroup> QuotientGroup::build(GroupPtr G, const Rational& nu,
                                                          std::uint64_t eager_budget) {
  auto q = std::shared_ptr<QuotientGroup>(new QuotientGroup());
  q->G_ = G;
  q->nu_ = nu;
  const long p = G->K().p();
  const int e = G->M().e();
  const int d = G->dim();
  for (const auto& b : G->basis()) {
    if (nu <= b.omega)
      throw std::invalid_argument("level " + to_string(nu) + " leaves a zero digit cap for " + b.label());
    q->caps_.push_back(static_cast<int>(ceil(nu - b.omega)));
  }
  std::uint64_t place = 1;
  double bits = 0;
  for (int i = 0; i < d; ++i) {
    std::uint64_t r = 1;
    for (int k = 0; k < q->caps_[i]; ++k) r *= static_cast<std::uint64_t>(p);
    if (r > (1u << 20)) throw std::invalid_argument("digit cap too large for the power tables");
    q->radix_.push_back(r);
    q->place_.push_back(place);
    bits += std::log2(static_cast<double>(r));
    if (bits > 62) throw std::invalid_argument("quotient group too large to encode");
    place *= r;
    q->log_size_ += q->caps_[i];
  }

  const Rational T = nu + G->C() + 1;
  const int Mq = static_cast<int>(ceil(T)) + 2;
  q->ring_ = CoefRing(G->M(), Mq);
  q->key_a_ = static_cast<int>(ceil(T * Rational(e)));
  q->key_b_ = static_cast<int>(ceil(T * Rational(e) - Rational(1, 2)));
  q->key_c_ = static_cast<int>(ceil(T * Rational(e) + Rational(1, 2)));
  q->stop2_ = static_cast<int>(ceil(T * Rational(2 * e)));

  q->pos_.resize(d);
  q->neg_.resize(d);
  q->sym_.resize(d);
  const MatQ I = {q->ring_.one(), q->ring_.zero(), q->ring_.zero(), q->ring_.one()};
  for (int i = 0; i < d; ++i) {
    const Mat2& h = G->basis()[i].elem;
    MatQ hp = q->from_mat2(h), hn = q->from_mat2(h.inverse());
    q->pos_[i].push_back(I);
    q->neg_[i].push_back(I);
    for (std::uint64_t a = 1; a < q->radix_[i]; ++a) {
      q->pos_[i].push_back(q->mat_mul(q->pos_[i].back(), hp));
      q->neg_[i].push_back(q->mat_mul(q->neg_[i].back(), hn));
    }
    std::uint64_t pm = 1;
    for (int m = 0; m < q->caps_[i]; ++m, pm *= static_cast<std::uint64_t>(p)) {
      int t = G->level2(i) + 2 * e * m;
      const MatQ& g = q->pos_[i][pm];
      if (q->tv2(g) != t) throw std::logic_error("basis power has unexpected level");
      q->sym_[i].push_back(q->symbol(g, t));
    }
  }

  double size = std::pow(static_cast<double>(p), q->log_size_);
  if (size <= static_cast<double>(eager_budget)) {
    q->eager_ = true;
    q->table_.reserve(static_cast<std::size_t>(size));
    std::vector<std::uint64_t> a(d, 0);
    std::function<void(int, const MatQ&, Code)> rec = [&](int i, const MatQ& pre, Code code) {
      if (i == d) {
        auto [it, fresh] = q->table_.emplace(q->fingerprint(pre), code);
        if (!fresh) throw std::logic_error("coset keys collide: quotient encoding is not injective");
        return;
      }
      for (std::uint64_t k = 0; k < q->radix_[i]; ++k)
        rec(i + 1, k == 0 ? pre : q->mat_mul(pre, q->pos_[i][k]), code + k * q->place_[i]);
    };
    rec(0, I, 0);
  }
  return q;
}

std::vector<std::uint64_t> QuotientGroup::decode(Code c) const {
  std::vector<std::uint64_t> a(dim());
  for (int i = 0; i < dim(); ++i) {
    a[i] = c % radix_[i];
    c /= radix_[i];
  }
  return a;
}

Code QuotientGroup::encode(const std::vector<std::uint64_t>& a) const {
  Code c = 0;
  for (int i = 0; i < dim(); ++i) c += (a[i] % radix_[i]) * place_[i];
  return c;
}

Code QuotientGroup::basis_power(int i, std::uint64_t k) const { return (k % radix_[i]) * place_[i]; }

MatQ QuotientGroup::mat_mul(const MatQ& x, const MatQ& y) const {
  const CoefRing& R = ring_;
  return {R.add(R.mul(x[0], y[0]), R.mul(x[1], y[2])), R.add(R.mul(x[0], y[1]), R.mul(x[1], y[3])),
          R.add(R.mul(x[2], y[0]), R.mul(x[3], y[2])), R.add(R.mul(x[2], y[1]), R.mul(x[3], y[3]))};
}

MatQ QuotientGroup::matrix(Code c) const {
  MatQ m = {ring_.one(), ring_.zero(), ring_.zero(), ring_.one()};
  bool first = true;
  for (int i = 0; i < dim(); ++i) {
    std::uint64_t a = c % radix_[i];
    c /= radix_[i];
    if (a == 0) continue;
    m = first ? pos_[i][a] : mat_mul(m, pos_[i][a]);
    first = false;
  }
  return m;
}

MatQ QuotientGroup::from_mat2(const Mat2& g) const {
  return {ring_.from_field(g.a), ring_.from_field(g.b), ring_.from_field(g.c), ring_.from_field(g.d)};
}

std::uint64_t QuotientGroup::fingerprint(const MatQ& g) const {
  const int digits[4] = {key_a_, key_b_, key_c_, key_a_};
  std::uint64_t h = 0x243F6A8885A308D3ULL;
  for (int k = 0; k < 4; ++k) {
    Coef t = ring_.truncate_pi(g[k], digits[k]);
    for (int s = 0; s < ring_.n(); ++s) h = splitmix(h ^ t[s]);
  }
  return h;
}

int QuotientGroup::tv2(const MatQ& g) const {
  const CoefRing& R = ring_;
  int va = R.vpi(R.sub(g[0], R.one()));
  int vb = R.vpi(g[1]);
  int vc = R.vpi(g[2]);
  int vd = R.vpi(R.sub(g[3], R.one()));
  return std::min({2 * va, 2 * vb + 1, 2 * vc - 1, 2 * vd});
}

std::vector<long> QuotientGroup::symbol(const MatQ& g, int t) const {
  const CoefRing& R = ring_;
  const Fq& F = R.tower().residue_field();
  std::vector<long> out;
  auto push = [&](const Coef& x, int k) {
    auto cs = F.coeffs(R.residue_at(x, k));
    cs.resize(F.degree(), 0);
    out.insert(out.end(), cs.begin(), cs.end());
  };
  if (t % 2 == 0) {
    push(R.sub(g[0], R.one()), t / 2);
    push(R.sub(g[3], R.one()), t / 2);
  } else {
    push(g[1], (t - 1) / 2);
    push(g[2], (t + 1) / 2);
  }
  return out;
}

Code QuotientGroup::peel(const MatQ& g) const {
  const int d = dim();
  const int two_e = 2 * G_->M().e();
  const long p = G_->K().p();
  std::vector<std::uint64_t> a(d, 0);
  for (int guard = 0; guard < 4 * log_size_ + 8; ++guard) {
    MatQ r = g;
    for (int i = 0; i < d; ++i)
      if (a[i]) r = mat_mul(neg_[i][a[i]], r);
    int t = tv2(r);
    if (t >= stop2_) return encode(a);
    std::vector<int> cand, ms;
    for (int i = 0; i < d; ++i) {
      int diff = t - G_->level2(i);
      if (diff >= 0 && diff % two_e == 0 && diff / two_e < caps_[i]) {
        cand.push_back(i);
        ms.push_back(diff / two_e);
      }
    }
    if (cand.empty()) throw std::domain_error("matrix is not in the group");
    std::vector<long> target = symbol(r, t);
    std::vector<std::vector<long>> A(target.size(), std::vector<long>(cand.size()));
    for (std::size_t c = 0; c < cand.size(); ++c) {
      const auto& col = sym_[cand[c]][ms[c]];
      for (std::size_t k = 0; k < col.size(); ++k) A[k][c] = col[k];
    }
    std::vector<long> x;
    if (!solve_mod_p(p, A, target, x)) throw std::domain_error("matrix is not in the group");
    for (std::size_t c = 0; c < cand.size(); ++c) {
      std::uint64_t pm = 1;
      for (int k = 0; k < ms[c]; ++k) pm *= static_cast<std::uint64_t>(p);
      a[cand[c]] = (a[cand[c]] + static_cast<std::uint64_t>(x[c]) * pm) % radix_[cand[c]];
    }
  }
  throw std::logic_error("coordinate peeling did not terminate");
}

std::optional<Code> QuotientGroup::cached(std::uint64_t fp) const {
  if (eager_) {
    auto it = table_.find(fp);
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto it = table_.find(fp);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void QuotientGroup::remember(std::uint64_t fp, Code c) const {
  if (eager_) return;
  std::lock_guard<std::mutex> lock(mu_);
  table_.emplace(fp, c);
}

Code QuotientGroup::lookup(const MatQ& g) const {
  std::uint64_t fp = fingerprint(g);
  if (auto c = cached(fp)) return *c;
  if (eager_) throw std::domain_error("matrix is not in the group");
  Code c = peel(g);
  remember(fp, c);
  return c;
}

Code QuotientGroup::inverse(Code x) const {
  auto a = decode(x);
  MatQ m = {ring_.one(), ring_.zero(), ring_.zero(), ring_.one()};
  for (int i = dim() - 1; i >= 0; --i)
    if (a[i]) m = mat_mul(m, neg_[i][a[i]]);
  return lookup(m);
}

Code QuotientGroup::power(Code x, std::uint64_t k) const {
  Code r = 0, b = x;
  while (k) {
    if (k & 1) r = mul(r, b);
    k >>= 1;
    if (k) b = mul(b, b);
  }
  return r;
}

int QuotientGroup::order_log(Code x) const {
  int s = 0;
  while (x != 0) {
    x = power(x, static_cast<std::uint64_t>(G_->K().p()));
    ++s;
    if (s > log_size_) throw std::logic_error("element order exceeds group size");
  }
  return s;
}

}  // namespace gkdim
