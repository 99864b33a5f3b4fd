#include "gkdim/checks.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "gkdim/graded_ideals.hpp"
#include "gkdim/iwasawa_algebra.hpp"
#include "gkdim/lie_symbols.hpp"

namespace gkdim {

namespace {

using nlohmann::json;

constexpr int kIdempotentDigits = 30;
constexpr int kAxiomSamples = 500;
constexpr int kRandomSeries = 100;
constexpr int kMonomialIdeals = 20;
constexpr int kLemmaTrials = 25;
constexpr int kPrecision = 12;

TowerPtr q3() { return FieldTower::build(3, {0, 1}, {{-3}, {1}}, -1L); }
TowerPtr q9() { return FieldTower::build(3, {1, 0, 1}, {{-3, 0}, {1, 0}}); }
TowerPtr q27() { return FieldTower::build(3, {1, 2, 0, 1}, {{-3, 0, 0}, {1, 0, 0}}); }
/// Q_3[3^{1/e}].
TowerPtr radical_tower(int e) {
  std::vector<std::vector<long>> E(e + 1, std::vector<long>{0});
  E[0] = {-3};
  E[e] = {1};
  return FieldTower::build(3, {0, 1}, E);
}

void fail(CheckRecord& r, const std::string& witness) {
  r.status = "fail";
  if (r.witness.empty()) r.witness = witness;
}

bool close(const FieldElement& a, const FieldElement& b, int digits) {
  FieldElement d = a - b;
  return d.is_exact_zero() || d.vpi_lower() >= digits * a.tower()->e();
}

Exps exps_of(std::initializer_list<std::pair<int, int>> entries) {
  Exps a{};
  for (auto [i, k] : entries) a[i] = static_cast<std::uint16_t>(k);
  return a;
}

int index_of(const GroupContext& G, const std::string& label) {
  for (int t = 0; t < G.dim(); ++t)
    if (G.basis()[t].label() == label) return t;
  throw std::logic_error("no basis element " + label);
}

CheckRecord gamma_law(const CheckOptions&) {
  CheckRecord r;
  const int expected_R[] = {0, 3, 0};
  for (int e = 2; e <= 4; ++e) {
    auto K = radical_tower(e);
    auto d = ramified_idempotent_data(*K);
    // R from the different: R/e = v_p(E'(pi)) + 1/e - 1.
    const int R_from_different = d.eprime.vpi() + 1 - e;
    json entry{{"e", e}, {"R", d.R}};
    std::vector<int> vals;
    for (int j = 0; j < e; ++j) {
      int v = d.gamma[j].vpi();
      vals.push_back(v);
      if (v != -j - d.R) fail(r, "e=" + std::to_string(e) + " j=" + std::to_string(j) + " vpi(gamma)=" + std::to_string(v));
    }
    entry["vpi_gamma"] = vals;
    if (d.R != expected_R[e - 2] || d.R != R_from_different) fail(r, "e=" + std::to_string(e) + " R=" + std::to_string(d.R));
    if ((d.R == 0) != (e % 3 != 0)) fail(r, "tameness mismatch at e=" + std::to_string(e));
    r.measured["towers"].push_back(entry);
  }
  return r;
}

CheckRecord idempotents(const CheckOptions&) {
  CheckRecord r;
  r.measured["digits"] = kIdempotentDigits;
  std::vector<TowerPtr> towers{q3(), q9(), q27()};
  for (const auto& K : towers) {
    const int f = K->f();
    auto d = ramified_idempotent_data(*K);
    auto lag = lagrange_idempotent_coefficients(*K);
    for (int i = 0; i < f; ++i)
      if (!close(d.beta[i], lag[i], kIdempotentDigits)) fail(r, "f=" + std::to_string(f) + " beta mismatch at " + std::to_string(i));
    std::vector<TensorElement> I;
    for (int k = 0; k < f; ++k) I.push_back(unramified_class_idempotent(*K, d, k));
    TensorElement sum(K.get(), K.get());
    for (int k = 0; k < f; ++k) {
      sum = sum + I[k];
      for (int l = 0; l < f; ++l) {
        TensorElement prod = I[k] * I[l];
        bool ok = k == l ? (prod - I[k]).is_zero_to(kIdempotentDigits) : prod.is_zero_to(kIdempotentDigits);
        if (!ok) fail(r, "f=" + std::to_string(f) + " product " + std::to_string(k) + "," + std::to_string(l));
      }
    }
    if (!(sum - TensorElement::one(K.get(), K.get())).is_zero_to(kIdempotentDigits))
      fail(r, "f=" + std::to_string(f) + " idempotents do not sum to one");
    r.measured["f"].push_back(f);
  }
  return r;
}

CheckRecord axioms(const CheckOptions& opt) {
  CheckRecord r;
  auto Q3 = q3();
  std::vector<std::pair<std::string, GroupPtr>> ctx{
      {"GL2/Q3", GroupContext::build(GroupCase::GL2, Q3)},
      {"GL2/Q9", GroupContext::build(GroupCase::GL2, q9())},
      {"GL2/Q3_sqrt3", GroupContext::build(GroupCase::GL2, radical_tower(2))},
      {"quat/Q3", GroupContext::build(GroupCase::Quaternion, Q3)}};
  for (const auto& [name, G] : ctx) {
    AxiomReport a = G->check_axioms(kAxiomSamples, opt.seed);
    r.measured[name] = {{"samples", a.samples},
                        {"violations", a.violations_sub + a.violations_comm + a.violations_power + a.violations_identity},
                        {"strictly_saturated", a.strictly_saturated}};
    if (!a.ok()) fail(r, name + ": " + (a.witnesses.empty() ? std::string("saturation") : a.witnesses.front()));
  }
  return r;
}

CheckRecord commutators(const CheckOptions&) {
  CheckRecord r;
  auto Q3 = q3();
  std::vector<std::pair<std::string, GroupPtr>> ctx{
      {"GL2/Q3", GroupContext::build(GroupCase::GL2, Q3)},
      {"quat/Q3", GroupContext::build(GroupCase::Quaternion, Q3)},
      {"GL2/Q3_sqrt3", GroupContext::build(GroupCase::GL2, radical_tower(2))}};
  for (const auto& [name, G] : ctx) {
    auto A = AlgebraContext::build(G, Rational(3), kPrecision);
    const QuotientGroup& Q = A->quotient();
    int pairs = 0;
    for (int i = 0; i < A->dim(); ++i)
      for (int j = 0; j < A->dim(); ++j) {
        Series bi = A->basis_b(i), bj = A->basis_b(j);
        Series lhs = A->sub(A->multiply(bi, bj), A->multiply(bj, bi));
        Code hi = Q.basis_power(i, 1), hj = Q.basis_power(j, 1);
        Code c = Q.mul(Q.mul(hi, hj), Q.mul(Q.inverse(hi), Q.inverse(hj)));
        Series rhs = A->multiply(A->multiply(A->sub(A->dirac(c), A->one()), A->dirac(hj)), A->dirac(hi));
        if (!A->equal(lhs, rhs)) fail(r, name + " pair " + std::to_string(i) + "," + std::to_string(j));
        ++pairs;
      }
    r.measured[name] = pairs;
  }
  return r;
}

CheckRecord ppower(const CheckOptions&) {
  CheckRecord r;
  std::vector<std::tuple<std::string, TowerPtr, Rational>> ctx{{"GL2/Q3", q3(), Rational(7, 2)},
                                                               {"GL2/Q3_sqrt3", radical_tower(2), Rational(3)}};
  for (const auto& [name, K, nu] : ctx) {
    auto A = AlgebraContext::build(GroupContext::build(GroupCase::GL2, K), nu, kPrecision);
    for (int i = 0; i < A->dim(); ++i) {
      PPowerReport rep = A->verify_ppower_identity(i, 1, 0);
      if (!rep.ok()) fail(r, name + " " + A->group().basis()[i].label() + (rep.details.empty() ? "" : ": " + rep.details.front()));
    }
    r.measured[name] = A->dim();
  }
  return r;
}

CheckRecord rescaling(const CheckOptions& opt) {
  CheckRecord r;
  auto G = GroupContext::build(GroupCase::GL2, q3());
  auto A = AlgebraContext::build(G, Rational(7, 2), kPrecision);
  const long p = G->K().p();
  std::mt19937_64 rng(opt.seed);
  for (int s = 0; s < kRandomSeries; ++s) {
    MonomialSeries m;
    m.radius = 0;
    const int nterms = 1 + static_cast<int>(rng() % 4);
    Rational tau_min(1000);
    std::map<Exps, long> chosen;
    for (int t = 0; t < nterms; ++t) {
      Exps a{};
      int budget = 2;
      for (int i = 0; i < A->dim() && budget > 0; ++i) {
        int k = static_cast<int>(rng() % (budget + 1));
        a[i] = static_cast<std::uint16_t>(k);
        budget -= k;
      }
      chosen[a] = 1 + static_cast<long>(rng() % (p - 1));
    }
    for (const auto& [a, c] : chosen) {
      m.terms.push_back({a, A->coef().from_int(c)});
      Rational tau(0);
      for (int i = 0; i < A->dim(); ++i) tau += G->basis()[i].omega * a[i];
      tau_min = std::min(tau_min, tau);
    }
    Series x = A->from_monomials(m);
    SymbolResult s0 = A->r_valuation_symbol(x, 0);
    SymbolResult s1 = A->r_valuation_symbol(x, 1);
    if (s0.valuation != tau_min || s1.valuation * p != s0.valuation || !(s0.symbol == s1.symbol)) {
      std::ostringstream w;
      w << "series " << s << ":";
      for (const auto& [a, c] : chosen) {
        w << " " << c << "*b^(";
        for (int i = 0; i < A->dim(); ++i) w << (i ? "," : "") << a[i];
        w << ")";
      }
      fail(r, w.str());
    }
  }
  r.measured["series"] = kRandomSeries;
  return r;
}

CheckRecord lie_formulas(const CheckOptions&) {
  CheckRecord r;
  auto Q3 = q3();
  auto G3 = GroupContext::build(GroupCase::GL2, Q3);
  auto Gs = GroupContext::build(GroupCase::GL2, radical_tower(2));
  std::vector<std::tuple<std::string, GroupPtr, Rational, int>> cases{
      {"Q3 N=0", G3, Rational(3), 0}, {"Q3 N=1", G3, Rational(7, 2), 1}, {"Q3_sqrt3 N=0", Gs, Rational(3), 0}};
  for (const auto& [name, G, nu, N] : cases) {
    auto A = AlgebraContext::build(G, nu, kPrecision);
    for (char kind : {'z', 'D'}) {
      Series x = kind == 'D' ? casimir_series(*A, 0, N).series : scaled_generator(*A, 'z', 0, N).series;
      SymbolResult s = A->r_valuation_symbol(x, N);
      GradedPoly pred = predicted_symbol(*G, kind, 0, N);
      r.measured[name][std::string(1, kind)] = {{"V", to_string(s.valuation)}, {"symbol", s.symbol.str(A->variable_names())}};
      if (!(s.symbol == pred)) fail(r, name + " kind " + kind + ": " + s.symbol.str(A->variable_names()));
    }
  }
  // The unramified Casimir symbol written out by hand: (1/2) h^2 + 2 eps e f.
  auto A = AlgebraContext::build(G3, Rational(3), kPrecision);
  SymbolResult s = A->r_valuation_symbol(casimir_series(*A, 0, 0).series, 0);
  const Fq& F = A->residue_field();
  GradedPoly expected(&F, 4);
  const int e = index_of(*G3, "e0_0"), f = index_of(*G3, "f0_0"), h = index_of(*G3, "h0_0");
  expected.add_term({exps_of({{h, 2}}), 0}, F.inv(F.from_int(2)));
  expected.add_term({exps_of({{e, 1}, {f, 1}}), 1}, F.from_int(2));
  if (!(s.symbol == expected) || s.valuation != Rational(5, 2)) fail(r, "unramified Casimir symbol " + s.symbol.str(A->variable_names()));
  return r;
}

CheckRecord explicit_ideal(const CheckOptions&) {
  CheckRecord r;
  auto G = GroupContext::build(GroupCase::GL2, radical_tower(2));
  IdealSpec I = casimir_ideal(*G);
  IdealSpec P = reference_ideal(*G, "explicit_quadratic");
  bool eq = radical_equivalence(I, P);
  DimensionReport d = krull_dimension(I);
  r.measured = {{"radical_equivalent", eq}, {"kdim", d.kdim}, {"basis_size", d.basis_size}};
  if (!eq) fail(r, "not radical-equivalent");
  if (d.kdim != G->K().degree()) fail(r, "kdim " + std::to_string(d.kdim));
  return r;
}

CheckRecord unramified(const CheckOptions&) {
  CheckRecord r;
  for (const auto& K : {q3(), q9(), q27()}) {
    auto G = GroupContext::build(GroupCase::GL2, K);
    IdealSpec ref = reference_ideal(*G, "unramified");
    IdealSpec cas = casimir_ideal(*G);
    int dref = krull_dimension(ref).kdim, dcas = krull_dimension(cas).kdim;
    bool contains = radical_contains(cas, ref) && radical_contains(ref, cas);
    const std::string key = "f=" + std::to_string(K->f());
    r.measured[key] = {{"reference_kdim", dref}, {"casimir_kdim", dcas}, {"same_radical", contains}};
    if (dref != K->f() || dcas != K->f() || !contains) fail(r, key);
  }
  return r;
}

CheckRecord principal_series(const CheckOptions& opt) {
  CheckRecord r;
  int seen = 0;
  for (const auto& spec : opt.corpus) {
    if (!spec.has_case("gl2")) continue;
    auto K = build_tower(spec);
    auto G = GroupContext::build(GroupCase::GL2, K);
    int d = krull_dimension(reference_ideal(*G, "principal_series")).kdim;
    r.measured[spec.name] = d;
    ++seen;
    if (d != K->degree()) fail(r, spec.name + " kdim " + std::to_string(d));
  }
  if (seen == 0) fail(r, "no GL2 tower in the corpus");
  return r;
}

CheckRecord dimension_lemma(const CheckOptions& opt) {
  CheckRecord r;
  std::vector<Fq> fields{Fq::prime(3), Fq(3, {1, 0, 1})};
  for (const auto& F : fields)
    for (int n = 0; n <= 2; ++n) {
      LemmaReport rep = dimension_lemma_check(n, F, kLemmaTrials, opt.seed + static_cast<std::uint64_t>(n));
      r.measured["q=" + std::to_string(F.q()) + " n=" + std::to_string(n)] = {{"generic", rep.generic_dim}, {"worst", rep.worst}};
      if (!rep.ok) fail(r, "q=" + std::to_string(F.q()) + " n=" + std::to_string(n) + " " + rep.witness);
    }
  return r;
}

CheckRecord frobenius_law(const CheckOptions&) {
  CheckRecord r;
  auto G = GroupContext::build(GroupCase::GL2, q9());
  auto A = AlgebraContext::build(G, Rational(9, 2), kPrecision);
  const int f = G->K().f();
  const int dC = 2 * G->K().e() - 1;
  for (int k = 0; k < f; ++k) {
    EpsKExpansion c0 = expand_in_eps(A->r_valuation_symbol(casimir_series(*A, k, 0).series, 0).symbol, dC);
    EpsKExpansion cf = expand_in_eps(A->r_valuation_symbol(casimir_series(*A, k, f).series, f).symbol, dC);
    for (int i = 0; i <= dC; ++i)
      if (!(c0.c[i].frobenius_power(f) == cf.c[i]))
        fail(r, "k=" + std::to_string(k) + " c" + std::to_string(i) + ": " + cf.c[i].str(A->variable_names()));
    r.measured["k=" + std::to_string(k)] = c0.c[0].str(A->variable_names());
  }
  return r;
}

CheckRecord engine(const CheckOptions& opt) {
  CheckRecord r;
  std::mt19937_64 rng(opt.seed);
  const int n = 8;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  auto R = make_ring(Fq::prime(3), names);
  for (int s = 0; s < kMonomialIdeals; ++s) {
    IdealSpec I;
    I.ring = R;
    std::vector<Exps> mons;
    const int ngens = 1 + static_cast<int>(rng() % 5);
    for (int g = 0; g < ngens; ++g) {
      Exps a{};
      while (total_degree(a, n) == 0)
        for (int i = 0; i < n; ++i) a[i] = static_cast<std::uint16_t>(rng() % 4 == 0 ? 1 + rng() % 2 : 0);
      mons.push_back(a);
      I.gens.push_back(Poly::monomial(R.get(), a, 1));
    }
    int gb = krull_dimension(I).kdim;
    int hs = hitting_set_dimension(mons, n);
    if (gb != hs) {
      std::string w = "ideal " + std::to_string(s) + ":";
      for (const auto& g : I.gens) w += " " + g.str();
      fail(r, w);
    }
  }
  r.measured["monomial_ideals"] = kMonomialIdeals;
  auto G = GroupContext::build(GroupCase::Quaternion, q3());
  int d = krull_dimension(casimir_ideal(*G)).kdim;
  r.measured["quaternion_kdim"] = d;
  if (d > G->K().degree()) fail(r, "quaternion kdim " + std::to_string(d));
  return r;
}

}  // namespace

const std::vector<CheckDef>& acceptance_checks() {
  static const std::vector<CheckDef> defs{
      {1, "gamma-law", gamma_law},
      {2, "idempotent-reconstruction", idempotents},
      {3, "p-valuation-axioms", axioms},
      {4, "commutator-identity", commutators},
      {5, "p-power-lemmas", ppower},
      {6, "radius-rescaling", rescaling},
      {7, "lie-symbol-formulas", lie_formulas},
      {8, "explicit-ideal", explicit_ideal},
      {9, "unramified-ideals", unramified},
      {10, "principal-series", principal_series},
      {11, "dimension-lemma", dimension_lemma},
      {12, "frobenius-power-law", frobenius_law},
      {13, "engine-cross-checks", engine}};
  return defs;
}

CheckRecord run_check(const CheckDef& def, const CheckOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CheckRecord r;
  try {
    r = def.run(opt);
  } catch (const std::exception& e) {
    r.status = "error";
    r.witness = e.what();
  }
  r.name = def.name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

nlohmann::json record_json(const CheckRecord& r) {
  nlohmann::json j{{"name", r.name}, {"status", r.status}, {"measured", r.measured}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

}  // namespace gkdim
