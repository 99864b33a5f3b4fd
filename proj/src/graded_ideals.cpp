#include "gkdim/graded_ideals.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gkdim/lie_symbols.hpp"

namespace gkdim {

namespace {

Rational class_degree(const GroupContext& G, char kind, int j) {
  char basis_kind = kind;
  if (G.gcase() == GroupCase::Quaternion) basis_kind = kind == 'w' ? 'a' : kind == 'h' ? 'c' : kind;
  for (const auto& b : G.basis())
    if (b.kind == basis_kind && b.j == j) return b.omega;
  throw std::logic_error("no basis element for class variable");
}

std::uint32_t support_mask(const Exps& a, int n) {
  std::uint32_t m = 0;
  for (int i = 0; i < n; ++i)
    if (a[i]) m |= 1u << i;
  return m;
}

std::vector<std::uint32_t> minimal_supports(const std::vector<Exps>& monomials, int n) {
  std::vector<std::uint32_t> s;
  for (const auto& a : monomials) s.push_back(support_mask(a, n));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::vector<std::uint32_t> out;
  for (auto m : s) {
    bool keep = true;
    for (auto o : s)
      if (o != m && (o & m) == o) keep = false;
    if (keep) out.push_back(m);
  }
  return out;
}

Poly var(const PolyRing& R, const std::string& name) {
  int i = R.index_of(name);
  if (i < 0) throw std::invalid_argument("unknown variable " + name);
  return Poly::variable(&R, i);
}

std::string cname(char kind, int k, int j) { return std::string(1, kind) + std::to_string(k) + "_" + std::to_string(j); }

}  // namespace

RingPtr class_ring(const GroupContext& G) {
  auto names = class_variable_names(G);
  std::vector<Rational> deg;
  for (const auto& nm : names) deg.push_back(class_degree(G, nm[0], std::stoi(nm.substr(nm.find('_') + 1))));
  return make_ring(G.M().residue_field(), names, deg);
}

IdealSpec casimir_ideal(const GroupContext& G) {
  IdealSpec I;
  I.ring = class_ring(G);
  for (int k = 0; k < G.K().f(); ++k) {
    auto D = casimir_coefficients(G, 'D', k);
    for (std::size_t i = 0; i < D.c.size(); ++i) {
      I.gens.push_back(Poly::from_graded(I.ring.get(), D.c[i]));
      I.tags.push_back("c" + std::to_string(k) + "_" + std::to_string(i));
    }
    auto Z = casimir_coefficients(G, 'z', k);
    for (std::size_t i = 0; i < Z.c.size(); ++i) {
      I.gens.push_back(Poly::from_graded(I.ring.get(), Z.c[i]));
      I.tags.push_back("z" + std::to_string(k) + "_" + std::to_string(i));
    }
  }
  for (const auto& g : I.gens)
    if (g.is_zero()) throw std::logic_error("zero Casimir-ideal generator");
  return I;
}

IdealSpec reference_ideal(const GroupContext& G, const std::string& which) {
  IdealSpec I;
  I.ring = class_ring(G);
  const PolyRing& R = *I.ring;
  const int e = G.K().e(), f = G.K().f();
  const bool quat = G.gcase() == GroupCase::Quaternion;
  auto push = [&](Poly p, std::string tag) {
    I.gens.push_back(std::move(p));
    I.tags.push_back(std::move(tag));
  };
  if (which == "unramified") {
    if (e != 1) throw std::invalid_argument("unramified reference ideal needs e_K = 1");
    for (int k = 0; k < f; ++k) {
      push(var(R, cname('h', k, 0)), "h" + std::to_string(k));
      Poly ef = quat ? var(R, cname('w', k, 0)) * var(R, cname('w', k + f, 0))
                     : var(R, cname('e', k, 0)) * var(R, cname('f', k, 0));
      push(ef, "ef" + std::to_string(k));
      push(var(R, cname('z', k, 0)), "z" + std::to_string(k));
    }
  } else if (which == "principal_series") {
    if (quat) throw std::invalid_argument("principal series reference ideal needs GL2");
    for (char x : {'e', 'h', 'z'})
      for (int k = 0; k < f; ++k)
        for (int j = 0; j < e; ++j) push(var(R, cname(x, k, j)), cname(x, k, j));
  } else if (which == "explicit_quadratic") {
    if (quat || e != 2 || f != 1) throw std::invalid_argument("explicit quadratic ideal needs GL2 with e_K = 2, f = 1");
    IdealSpec P = parse_ideal(I.ring,
                              "z0_0, z0_1, h0_1, e0_0*f0_0, e0_1*f0_1, h0_0^2 + 4*e0_1*f0_0 + 4*e0_0*f0_1");
    return P;
  } else {
    throw std::invalid_argument("unknown reference ideal " + which);
  }
  return I;
}

IdealSpec parse_ideal(RingPtr ring, const std::string& text) {
  IdealSpec I;
  I.ring = std::move(ring);
  std::string cur;
  int depth = 0;
  auto flush = [&]() {
    if (cur.find_first_not_of(" \t\r") == std::string::npos) {
      cur.clear();
      return;
    }
    Poly p = parse_poly(I.ring.get(), cur);
    if (p.is_zero()) throw std::invalid_argument("zero generator");
    I.tags.push_back("g" + std::to_string(I.gens.size()));
    I.gens.push_back(std::move(p));
    cur.clear();
  };
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' || c == '\n') && depth == 0)
      flush();
    else
      cur += c;
  }
  flush();
  return I;
}

std::vector<Poly> groebner(const IdealSpec& I, const GroebnerOptions& opt) { return groebner_basis(I.gens, opt); }

int independent_set_dimension(const std::vector<Exps>& monomials, int nvars) {
  auto sup = minimal_supports(monomials, nvars);
  for (auto m : sup)
    if (m == 0) return -1;
  int best = 0;
  std::function<void(int, std::uint32_t, int)> dfs = [&](int v, std::uint32_t S, int size) {
    if (size + (nvars - v) <= best) return;
    if (v == nvars) {
      best = size;
      return;
    }
    std::uint32_t T = S | (1u << v);
    bool ok = true;
    for (auto m : sup)
      if ((m & T) == m) {
        ok = false;
        break;
      }
    if (ok) dfs(v + 1, T, size + 1);
    dfs(v + 1, S, size);
  };
  dfs(0, 0, 0);
  return best;
}

int hitting_set_dimension(const std::vector<Exps>& monomials, int nvars) {
  auto sup = minimal_supports(monomials, nvars);
  for (auto m : sup)
    if (m == 0) return -1;
  // Bounded search: is there a hitting set of size <= b?
  std::function<bool(std::uint32_t, int)> hit = [&](std::uint32_t T, int b) {
    const std::uint32_t* open = nullptr;
    for (const auto& m : sup)
      if (!(m & T)) {
        open = &m;
        break;
      }
    if (!open) return true;
    if (b == 0) return false;
    for (int v = 0; v < nvars; ++v)
      if ((*open >> v) & 1u)
        if (hit(T | (1u << v), b - 1)) return true;
    return false;
  };
  for (int b = 0; b <= nvars; ++b)
    if (hit(0, b)) return nvars - b;
  return 0;
}

DimensionReport krull_dimension(const IdealSpec& I, const GroebnerOptions& opt) {
  DimensionReport r;
  r.nvars = I.ring->nvars();
  r.basis = groebner(I, opt);
  r.basis_size = r.basis.size();
  std::vector<Exps> lms;
  for (const auto& g : r.basis) lms.push_back(g.lm());
  r.kdim = independent_set_dimension(lms, r.nvars);
  r.grade = r.nvars - r.kdim;
  std::ostringstream s;
  if (r.kdim < 0) {
    s << "unit ideal: the quotient is zero";
  } else {
    s << "Kdim = " << r.kdim << ", grade j = " << r.nvars << " - " << r.kdim << " = " << r.grade
      << ", GK dimension bound " << r.kdim;
  }
  r.statement = s.str();
  return r;
}

bool radical_member(const Poly& g, const IdealSpec& I, const GroebnerOptions& opt) {
  if (g.is_zero()) return true;
  const PolyRing& R = *I.ring;
  std::string tname = "t_aux";
  while (R.index_of(tname) >= 0) tname += "_";
  PolyRing Rt = R.with_extra(tname);
  const int n = R.nvars();
  auto lift = [&](const Poly& p) {
    Poly out(&Rt);
    for (const auto& [a, c] : p.terms()) out = out + Poly::monomial(&Rt, a, c);
    return out;
  };
  std::vector<Poly> gens;
  for (const auto& h : I.gens) gens.push_back(lift(h));
  gens.push_back(Poly::constant(&Rt, 1) - Poly::variable(&Rt, n) * lift(g));
  return contains_one(groebner_basis(gens, opt));
}

bool radical_contains(const IdealSpec& big, const IdealSpec& small, const GroebnerOptions& opt) {
  for (const auto& g : small.gens)
    if (!radical_member(g, big, opt)) return false;
  return true;
}

bool radical_equivalence(const IdealSpec& a, const IdealSpec& b, const GroebnerOptions& opt) {
  if (a.ring->names != b.ring->names || !(a.ring->F == b.ring->F))
    throw std::invalid_argument("ideals live in different rings");
  return radical_contains(a, b, opt) && radical_contains(b, a, opt);
}

IdealSpec dimension_lemma_ideal(int n, const Fq& F, const std::vector<Fq::Elt>& multipliers) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  const int m = n + 1;
  if (!multipliers.empty() && static_cast<int>(multipliers.size()) != 3 * m)
    throw std::invalid_argument("need 3(n+1) multipliers");
  std::vector<std::string> names;
  for (char x : {'u', 'v', 'w'})
    for (int i = 0; i < m; ++i) names.push_back(std::string(1, x) + std::to_string(i));
  IdealSpec I;
  I.ring = make_ring(F, names);
  const PolyRing* R = I.ring.get();
  auto coef = [&](int block, int i) {
    Fq::Elt a = multipliers.empty() ? 1 : multipliers[block * m + i];
    return Poly::variable(R, block * m + i).scale(a);
  };
  // U^2 has degree 2n, X V W has degree 2n + 1.
  for (int d = 0; d <= 2 * n + 1; ++d) {
    Poly c(R);
    for (int i = 0; i < m; ++i) {
      int j = d - i;
      if (j >= 0 && j < m) c = c + coef(0, i) * coef(0, j);
      int jj = d - 1 - i;
      if (jj >= 0 && jj < m) c = c - coef(1, i) * coef(2, jj);
    }
    if (c.is_zero()) continue;
    I.gens.push_back(c);
    I.tags.push_back("X^" + std::to_string(d));
  }
  return I;
}

LemmaReport dimension_lemma_check(int n, const Fq& F, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  LemmaReport rep;
  rep.n = n;
  rep.q = F.q();
  rep.trials = trials;
  const int bound = n + 1;
  if (n <= 1) {
    rep.generic_dim = krull_dimension(dimension_lemma_ideal(n, F)).kdim;
    rep.worst = rep.generic_dim;
    if (rep.generic_dim > bound) {
      rep.ok = false;
      rep.witness = "generic";
    }
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<Fq::Elt> mult(3 * (n + 1));
    for (auto& a : mult) a = static_cast<Fq::Elt>(1 + rng() % static_cast<std::uint64_t>(F.q() - 1));
    int d = krull_dimension(dimension_lemma_ideal(n, F, mult)).kdim;
    rep.dims.push_back(d);
    rep.worst = std::max(rep.worst, d);
    if (d > bound && rep.ok) {
      rep.ok = false;
      std::ostringstream s;
      s << "multipliers";
      for (auto a : mult) s << " " << F.str(a);
      rep.witness = s.str();
    }
  }
  return rep;
}

}  // namespace gkdim
