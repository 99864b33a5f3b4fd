#include "gkdim/lie_symbols.hpp"

#include <stdexcept>

namespace gkdim {

namespace {

int basis_index(const GroupContext& G, char kind, int i, int j) {
  for (int t = 0; t < G.dim(); ++t) {
    const auto& b = G.basis()[t];
    if (b.kind == kind && b.i == i && b.j == j) return t;
  }
  throw std::invalid_argument(std::string("no basis element of kind ") + kind);
}

int eps_shift(const GroupContext& G, char kind) {
  // pi-power of the scaled coefficient beyond pi^{e-1-j}.
  if (G.gcase() == GroupCase::GL2) return kind == 'e' ? 1 : 0;
  return kind == 'f' ? 1 : 0;
}

GradedMonomial single(int var, long exponent, int eps) {
  GradedMonomial m;
  if (exponent > 65535) throw std::overflow_error("exponent overflow");
  m.alpha[var] = static_cast<std::uint16_t>(exponent);
  m.eps = eps;
  return m;
}

long ipow(long p, int n) {
  long r = 1;
  for (int s = 0; s < n; ++s) r *= p;
  return r;
}

DecompositionData decomposition(const GroupContext& G) { return ramified_idempotent_data(G.K()); }

}  // namespace

FieldElement generator_scale(const GroupContext& G, int N) {
  const FieldTower& K = G.K();
  const DecompositionData d = decomposition(G);
  FieldElement s = K.from_mpz(K.ppow(N + 2)) * K.uniformizer().pow(K.e() + d.R);
  return G.gcase() == GroupCase::GL2 ? s : embed_rational(s, G.M());
}

std::vector<FieldElement> scaled_generator_coefficients(const GroupContext& G, char kind, int k) {
  const FieldTower& K = G.K();
  const FieldTower& L = G.M();
  const int e = K.e(), f = K.f();
  if (k < 0 || k >= f) throw std::invalid_argument("embedding class out of range");
  if (f > 1 && !K.rational_eisenstein())
    throw std::invalid_argument("embedding classes need a rational Eisenstein polynomial");
  const DecompositionData d = decomposition(G);
  std::vector<FieldElement> y(G.dim(), L.zero());
  const FieldElement pi = K.uniformizer();
  if (G.gcase() == GroupCase::GL2) {
    if (kind != 'e' && kind != 'f' && kind != 'h' && kind != 'z')
      throw std::invalid_argument("unknown generator kind");
    const int delta = kind == 'e' ? 0 : 1;
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < e; ++j) {
        FieldElement v = pi.pow(e + d.R - delta) * d.beta[i].frobenius(k) * d.gamma[j].frobenius(k);
        y[basis_index(G, kind, i, j)] = v;
      }
    return y;
  }
  // Quaternion case, f = 1: the generators of gl2 map into K(sqrt a) (x) D.
  const FieldElement half = L.from_int(2).inv();
  const FieldElement inv_s = L.alpha().inv();
  for (int j = 0; j < e; ++j) {
    FieldElement g = embed_rational(d.gamma[j], L);
    FieldElement lo = embed_rational(pi.pow(e + d.R - 1), L) * g;
    FieldElement hi = embed_rational(pi.pow(e + d.R), L) * g;
    switch (kind) {
      case 'e':
        y[basis_index(G, 'a', 0, j)] = half * lo;
        y[basis_index(G, 'b', 0, j)] = half * lo * inv_s;
        break;
      case 'f':
        y[basis_index(G, 'a', 0, j)] = half * hi;
        y[basis_index(G, 'b', 0, j)] = -(half * hi * inv_s);
        break;
      case 'h':
        y[basis_index(G, 'c', 0, j)] = lo * inv_s;
        break;
      case 'z':
        y[basis_index(G, 'z', 0, j)] = lo;
        break;
      default:
        throw std::invalid_argument("unknown generator kind");
    }
  }
  return y;
}

ScaledLieElement scaled_generator(const AlgebraContext& A, char kind, int k, int N) {
  const GroupContext& G = A.group();
  if (N < 0 || N % G.K().f() != 0) throw std::invalid_argument("radius index must be a multiple of f");
  auto y = scaled_generator_coefficients(G, kind, k);
  const QuotientGroup& Q = A.quotient();
  const long p = G.K().p();
  const Rational tcut = A.tail_bound(N) + 1;
  ScaledLieElement out;
  out.kind = kind;
  out.k = k;
  out.N = N;
  out.series = A.zero();
  out.series.radius = N;
  for (int t = 0; t < G.dim(); ++t) {
    if (y[t].is_exact_zero()) continue;
    if (y[t].vanishes() && !y[t].exact()) continue;
    if (y[t].valuation() < ExtRational::of(Rational(0)))
      throw std::logic_error("scaled generator coefficient is not integral");
    Coef c = A.coef().from_field(y[t]);
    Code g = Q.basis_power(t, static_cast<std::uint64_t>(ipow(p, N)));
    Series term = A.scale(A.log_dirac(g, N, tcut), c);
    out.series = A.add(out.series, term);
  }
  return out;
}

ScaledLieElement casimir_series(const AlgebraContext& A, int k, int N) {
  const GroupContext& G = A.group();
  const FieldTower& L = G.M();
  auto se = scaled_generator(A, 'e', k, N).series;
  auto sf = scaled_generator(A, 'f', k, N).series;
  auto sh = scaled_generator(A, 'h', k, N).series;
  Coef half = A.coef().from_field(L.from_int(2).inv());
  Coef s = A.coef().from_field(generator_scale(G, N));
  Series c = A.scale(A.multiply(sh, sh), half);
  c = A.add(c, A.scale(sh, s));
  c = A.add(c, A.scale_int(A.multiply(sf, se), 2));
  ScaledLieElement out;
  out.kind = 'D';
  out.k = k;
  out.N = N;
  out.series = c;
  return out;
}

GradedPoly predicted_symbol(const GroupContext& G, char kind, int k, int N) {
  const FieldTower& K = G.K();
  const Fq& F = G.M().residue_field();
  const Fq& FK = K.residue_field();
  const int e = K.e(), f = K.f();
  const long pN = ipow(K.p(), N);
  if (kind == 'D') {
    GradedPoly h = predicted_symbol(G, 'h', k, N);
    GradedPoly ef = predicted_symbol(G, 'f', k, N) * predicted_symbol(G, 'e', k, N);
    Fq::Elt half = F.inv(F.from_int(2));
    return (h * h).scale(half) + ef.scale(F.from_int(2));
  }
  const DecompositionData d = decomposition(G);
  // Residues live in k_K, which sits inside k_L with the same encoding
  // whenever f_K = 1 or L = K.
  auto lift = [&](Fq::Elt x) -> Fq::Elt {
    if (&F == &FK || FK.degree() == 1) return x;
    throw std::logic_error("residue embedding not supported");
  };
  GradedPoly out(&F, G.dim());
  const int shift = eps_shift(G, kind);
  for (int j = 0; j < e; ++j) {
    Fq::Elt mu = lift(FK.frob(d.mu_residues[j], k));
    const int eps = e - 1 - j + shift;
    if (G.gcase() == GroupCase::GL2) {
      for (int i = 0; i < f; ++i) {
        Fq::Elt b = FK.frob(d.beta[i].residue(), k);
        out.add_term(single(basis_index(G, kind, i, j), pN, eps), F.mul(mu, lift(b)));
      }
      continue;
    }
    Fq::Elt half = F.inv(F.from_int(2));
    Fq::Elt inv_s = F.inv(G.M().alpha().residue());
    switch (kind) {
      case 'e':
        out.add_term(single(basis_index(G, 'a', 0, j), pN, eps), F.mul(mu, half));
        out.add_term(single(basis_index(G, 'b', 0, j), pN, eps), F.mul(F.mul(mu, half), inv_s));
        break;
      case 'f':
        out.add_term(single(basis_index(G, 'a', 0, j), pN, eps), F.mul(mu, half));
        out.add_term(single(basis_index(G, 'b', 0, j), pN, eps), F.neg(F.mul(F.mul(mu, half), inv_s)));
        break;
      case 'h':
        out.add_term(single(basis_index(G, 'c', 0, j), pN, eps), F.mul(mu, inv_s));
        break;
      case 'z':
        out.add_term(single(basis_index(G, 'z', 0, j), pN, eps), mu);
        break;
      default:
        throw std::invalid_argument("unknown generator kind");
    }
  }
  return out;
}

std::vector<std::string> class_variable_names(const GroupContext& G) {
  std::vector<std::string> out;
  const int e = G.K().e(), f = G.K().f();
  if (G.gcase() == GroupCase::GL2) {
    for (char x : {'e', 'f', 'h', 'z'})
      for (int k = 0; k < f; ++k)
        for (int j = 0; j < e; ++j) out.push_back(std::string(1, x) + std::to_string(k) + "_" + std::to_string(j));
    return out;
  }
  for (int k = 0; k < 2 * f; ++k)
    for (int j = 0; j < e; ++j) out.push_back("w" + std::to_string(k) + "_" + std::to_string(j));
  for (char x : {'h', 'z'})
    for (int k = 0; k < f; ++k)
      for (int j = 0; j < e; ++j) out.push_back(std::string(1, x) + std::to_string(k) + "_" + std::to_string(j));
  return out;
}

int class_variable_index(const GroupContext& G, char kind, int k, int j) {
  const int e = G.K().e(), f = G.K().f();
  if (G.gcase() == GroupCase::GL2) {
    const std::string kinds = "efhz";
    auto pos = kinds.find(kind);
    if (pos == std::string::npos || k < 0 || k >= f) throw std::invalid_argument("bad class variable");
    return (static_cast<int>(pos) * f + k) * e + j;
  }
  if (kind == 'w') {
    if (k < 0 || k >= 2 * f) throw std::invalid_argument("bad class variable");
    return k * e + j;
  }
  if (kind == 'h') return (2 * f + k) * e + j;
  if (kind == 'z') return (3 * f + k) * e + j;
  throw std::invalid_argument("bad class variable");
}

GradedPoly class_variable_in_basis(const GroupContext& G, int index) {
  const Fq& F = G.M().residue_field();
  const Fq& FK = G.K().residue_field();
  const int e = G.K().e(), f = G.K().f();
  const DecompositionData d = decomposition(G);
  GradedPoly out(&F, G.dim());
  const int j = index % e;
  const int block = index / e;
  if (G.gcase() == GroupCase::GL2) {
    const char kind = "efhz"[block / f];
    const int k = block % f;
    for (int i = 0; i < f; ++i)
      out.add_term(single(basis_index(G, kind, i, j), 1, 0), FK.frob(d.beta[i].residue(), k));
    return out;
  }
  // Frobenius of L acts on the residue of 1/sqrt(a) as the p-th power.
  Fq::Elt inv_s = F.inv(G.M().alpha().residue());
  Fq::Elt half = F.inv(F.from_int(2));
  if (block < 2 * f) {
    const int k = block;
    out.add_term(single(basis_index(G, 'a', 0, j), 1, 0), half);
    out.add_term(single(basis_index(G, 'b', 0, j), 1, 0), F.mul(half, F.frob(inv_s, k)));
    return out;
  }
  if (block < 3 * f) {
    out.add_term(single(basis_index(G, 'c', 0, j), 1, 0), F.frob(inv_s, block - 2 * f));
    return out;
  }
  out.add_term(single(basis_index(G, 'z', 0, j), 1, 0), 1);
  return out;
}

GradedPoly class_to_basis(const GroupContext& G, const GradedPoly& poly) {
  const Fq& F = G.M().residue_field();
  const int nc = static_cast<int>(class_variable_names(G).size());
  std::vector<GradedPoly> lin;
  for (int v = 0; v < nc; ++v) lin.push_back(class_variable_in_basis(G, v));
  GradedPoly out(&F, G.dim());
  for (const auto& [m, c] : poly.terms()) {
    GradedPoly term(&F, G.dim());
    GradedMonomial base;
    base.eps = m.eps;
    term.add_term(base, c);
    for (int v = 0; v < nc; ++v)
      for (int s = 0; s < m.alpha[v]; ++s) term = term * lin[v];
    out = out + term;
  }
  return out;
}

EpsKExpansion casimir_coefficients(const GroupContext& G, char kind, int k) {
  const Fq& F = G.M().residue_field();
  const Fq& FK = G.K().residue_field();
  const int e = G.K().e(), f = G.K().f();
  const int nc = static_cast<int>(class_variable_names(G).size());
  const DecompositionData d = decomposition(G);
  const bool quat = G.gcase() == GroupCase::Quaternion;
  // sum_j mu_{e-1-j} x_{k,e-1-j} eps^j
  auto series = [&](char x, int kk) {
    GradedPoly out(&F, nc);
    for (int j = 0; j < e; ++j) {
      int jj = e - 1 - j;
      Fq::Elt mu = FK.frob(d.mu_residues[jj], k);
      out.add_term(single(class_variable_index(G, x, kk, jj), 1, j), mu);
    }
    return out;
  };
  EpsKExpansion ex;
  GradedPoly full(&F, nc);
  if (kind == 'z') {
    full = series('z', k);
    ex.dC = e - 1;
  } else if (kind == 'D') {
    GradedPoly U = series('h', k);
    GradedPoly V = quat ? series('w', k) : series('e', k);
    GradedPoly W = quat ? series('w', k + f) : series('f', k);
    GradedPoly epsK(&F, nc);
    GradedMonomial m;
    m.eps = 1;
    epsK.add_term(m, 1);
    full = (U * U).scale(F.inv(F.from_int(2))) + (epsK * V * W).scale(F.from_int(2));
    ex.dC = 2 * e - 1;
  } else {
    throw std::invalid_argument("expansion kind must be D or z");
  }
  return expand_in_eps(full, ex.dC);
}

EpsKExpansion expand_in_eps(const GradedPoly& symbol, int dC) {
  EpsKExpansion ex;
  ex.dC = dC;
  if (!symbol.is_zero() && (symbol.min_eps() < 0 || symbol.max_eps() > dC))
    throw std::domain_error("symbol is not a polynomial in eps_K of degree at most " + std::to_string(dC));
  for (int i = 0; i <= dC; ++i) ex.c.push_back(symbol.eps_part(i));
  return ex;
}

}  // namespace gkdim
