#include "gkdim/groebner.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace gkdim {

Poly normal_form(const Poly& f, const std::vector<Poly>& G) {
  const PolyRing* R = f.ring_ptr();
  const int n = R->nvars();
  Poly p = f, r(R);
  std::vector<Poly::Term> rest;
  while (!p.is_zero()) {
    const auto [lt, lc] = p.terms().front();
    const Poly* div = nullptr;
    for (const auto& g : G)
      if (!g.is_zero() && divides(g.lm(), lt, n)) {
        div = &g;
        break;
      }
    if (!div) {
      rest.push_back({lt, lc});
      p = p - Poly::monomial(R, lt, lc);
      continue;
    }
    Exps q{};
    for (int k = 0; k < n; ++k) q[k] = static_cast<std::uint16_t>(lt[k] - div->lm()[k]);
    p = p - div->mul_term(q, R->F.div(lc, div->lc()));
  }
  for (const auto& [a, c] : rest) r = r + Poly::monomial(R, a, c);
  return r;
}

namespace {

Poly spoly(const Poly& f, const Poly& g) {
  const PolyRing* R = f.ring_ptr();
  const int n = R->nvars();
  Exps l = lcm(f.lm(), g.lm(), n);
  Exps a{}, b{};
  for (int k = 0; k < n; ++k) {
    a[k] = static_cast<std::uint16_t>(l[k] - f.lm()[k]);
    b[k] = static_cast<std::uint16_t>(l[k] - g.lm()[k]);
  }
  return f.mul_term(a, R->F.inv(f.lc())) - g.mul_term(b, R->F.inv(g.lc()));
}

bool coprime(const Exps& a, const Exps& b, int n) {
  for (int k = 0; k < n; ++k)
    if (a[k] && b[k]) return false;
  return true;
}

}  // namespace

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const GroebnerOptions& opt) {
  std::vector<Poly> G;
  for (const auto& g : gens)
    if (!g.is_zero()) G.push_back(g.monic());
  if (G.empty()) return G;
  const PolyRing* R = G.front().ring_ptr();
  const int n = R->nvars();

  // Pair queue ordered by (degree of lcm, lcm in grevlex, indices).
  auto key = [&](std::size_t i, std::size_t j) {
    Exps l = lcm(G[i].lm(), G[j].lm(), n);
    return std::make_tuple(total_degree(l, n), l, i, j);
  };
  auto less = [&](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    int c = grevlex_cmp(std::get<1>(x), std::get<1>(y), n);
    if (c != 0) return c < 0;
    return std::make_pair(std::get<2>(x), std::get<3>(x)) < std::make_pair(std::get<2>(y), std::get<3>(y));
  };
  using Key = decltype(key(0, 0));
  std::set<Key, decltype(less)> queue(less);
  std::set<std::pair<std::size_t, std::size_t>> done;
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) queue.insert(key(i, j));

  std::size_t reduced = 0;
  while (!queue.empty()) {
    auto [deg, l, i, j] = *queue.begin();
    queue.erase(queue.begin());
    done.insert({i, j});
    if (coprime(G[i].lm(), G[j].lm(), n)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == i || k == j || !divides(G[k].lm(), l, n)) continue;
      auto ik = std::minmax(i, k), jk = std::minmax(j, k);
      chain = done.count({ik.first, ik.second}) && done.count({jk.first, jk.second});
    }
    if (chain) continue;
    if (++reduced > opt.max_spolys) throw GroebnerBudgetExceeded("S-polynomial budget exceeded");
    Poly h = normal_form(spoly(G[i], G[j]), G);
    if (h.is_zero()) continue;
    G.push_back(h.monic());
    const std::size_t m = G.size() - 1;
    for (std::size_t k = 0; k < m; ++k) queue.insert(key(k, m));
  }

  // Minimal basis, then inter-reduce.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < G.size() && !redundant; ++k) {
      if (k == i || !divides(G[k].lm(), G[i].lm(), n)) continue;
      redundant = G[k].lm() != G[i].lm() || k < i;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<Poly> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    Poly head = Poly::monomial(R, minimal[i].lm(), minimal[i].lc());
    Poly tail = normal_form(minimal[i] - head, others);
    out.push_back((head + tail).monic());
  }
  std::sort(out.begin(), out.end(), [n](const Poly& a, const Poly& b) { return grevlex_cmp(a.lm(), b.lm(), n) < 0; });
  return out;
}

bool contains_one(const std::vector<Poly>& reduced_basis) {
  return reduced_basis.size() == 1 && reduced_basis.front().is_constant() && !reduced_basis.front().is_zero();
}

}  // namespace gkdim
