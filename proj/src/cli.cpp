#include "gkdim/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gkdim/checks.hpp"
#include "gkdim/config.hpp"
#include "gkdim/graded_ideals.hpp"
#include "gkdim/iwasawa_algebra.hpp"
#include "gkdim/lie_symbols.hpp"

namespace gkdim {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "gkdim-report/1";

struct RunConfig {
  std::string command;
  std::string config_path;
  std::string gcase;
  std::string level = "3";
  int precision = 12;
  std::vector<int> radii{0};
  int samples = 500;
  std::uint64_t seed = 20261018;
  std::string out;
  std::string corpus;
  std::string kind = "delta";
  int k = 0;
  int N = 0;
  std::string which = "casimir";
  std::string ideal_file;
  std::string format = "json";
};

struct Context {
  TowerSpec spec;
  TowerPtr K;
  GroupPtr G;
};

Context load_context(const RunConfig& cfg, bool need_group) {
  Context c;
  c.spec = load_tower_config(cfg.config_path);
  c.K = build_tower(c.spec);
  if (!need_group) return c;
  std::string gc = cfg.gcase.empty() ? c.spec.cases.front() : cfg.gcase;
  if (gc != "gl2" && gc != "quat") throw ConfigError("--case must be gl2 or quat");
  if (gc == "quat" && !c.K->quat_a()) throw ConfigError("case quat needs quaternion_a in the configuration");
  if (c.spec.fields_only) throw ConfigError(c.spec.name + " is configured for field-level checks only");
  try {
    c.G = GroupContext::build(gc == "gl2" ? GroupCase::GL2 : GroupCase::Quaternion, c.K);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

Rational level_of(const RunConfig& cfg) {
  try {
    Rational nu = parse_rational(cfg.level);
    if (nu <= 0) throw std::invalid_argument("non-positive");
    return nu;
  } catch (const std::exception&) {
    throw ConfigError("--level must be a positive rational");
  }
}

AlgebraPtr build_algebra(const Context& c, const RunConfig& cfg) {
  try {
    return AlgebraContext::build(c.G, level_of(cfg), cfg.precision);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void add(std::vector<CheckRecord>& recs, CheckRecord r) { recs.push_back(std::move(r)); }

std::vector<CheckRecord> cmd_decompose(const RunConfig& cfg) {
  Context c = load_context(cfg, false);
  auto d = ramified_idempotent_data(*c.K);
  std::vector<CheckRecord> recs;
  CheckRecord g;
  g.name = "gamma-law";
  g.measured["tower"] = c.K->describe();
  g.measured["R"] = d.R;
  for (int j = 0; j < c.K->e(); ++j) {
    int v = d.gamma[j].vpi();
    g.measured["vpi_gamma"].push_back(v);
    g.measured["mu_residue"].push_back(c.K->residue_field().str(d.mu_residues[j]));
    if (v != -j - d.R) {
      g.status = "fail";
      g.witness = "j=" + std::to_string(j);
    }
  }
  if (d.R != d.eprime.vpi() + 1 - c.K->e()) {
    g.status = "fail";
    g.witness = "R disagrees with the different";
  }
  add(recs, g);
  CheckRecord id;
  id.name = "idempotents";
  const int f = c.K->f();
  std::vector<TensorElement> I;
  for (int k = 0; k < f; ++k) I.push_back(unramified_class_idempotent(*c.K, d, k));
  TensorElement sum(c.K.get(), c.K.get());
  const int digits = std::min(30, c.K->default_digits() / 2);
  for (int k = 0; k < f; ++k) {
    sum = sum + I[k];
    for (int l = 0; l < f; ++l) {
      TensorElement pr = I[k] * I[l];
      if (!(k == l ? (pr - I[k]).is_zero_to(digits) : pr.is_zero_to(digits))) {
        id.status = "fail";
        id.witness = "classes " + std::to_string(k) + "," + std::to_string(l);
      }
    }
    id.measured["beta"].push_back(d.beta[k].str());
  }
  if (!(sum - TensorElement::one(c.K.get(), c.K.get())).is_zero_to(digits)) {
    id.status = "fail";
    id.witness = "sum is not one";
  }
  id.measured["digits"] = digits;
  add(recs, id);
  return recs;
}

std::vector<CheckRecord> cmd_group_check(const RunConfig& cfg) {
  Context c = load_context(cfg, true);
  CheckRecord r;
  r.name = "p-valuation-axioms";
  AxiomReport a = c.G->check_axioms(cfg.samples, cfg.seed);
  for (const auto& b : c.G->basis()) r.measured["omega"][b.label()] = to_string(b.omega);
  r.measured["samples"] = a.samples;
  r.measured["violations"] = {{"subtraction", a.violations_sub},
                              {"commutator", a.violations_comm},
                              {"power", a.violations_power},
                              {"identity", a.violations_identity}};
  r.measured["strictly_saturated"] = a.strictly_saturated;
  if (!a.ok()) {
    r.status = "fail";
    r.witness = a.witnesses.empty() ? "saturation" : a.witnesses.front();
  }
  return {r};
}

json certificate_json(const SymbolCertificate& c) {
  return {{"N", c.N}, {"V", to_string(c.V)}, {"T", to_string(c.T)}, {"precision", to_string(c.precision)}, {"tail", c.tail.str()}};
}

std::vector<CheckRecord> cmd_symbols(const RunConfig& cfg) {
  Context c = load_context(cfg, true);
  AlgebraPtr A = build_algebra(c, cfg);
  auto names = A->variable_names();
  std::vector<CheckRecord> recs;
  for (int N : cfg.radii) {
    for (int i = 0; i < A->dim(); ++i) {
      CheckRecord r;
      r.name = "symbol " + c.G->basis()[i].label() + " N=" + std::to_string(N);
      try {
        SymbolResult s = A->r_valuation_symbol(A->basis_b(i), N);
        r.measured = {{"valuation", to_string(s.valuation)}, {"symbol", s.symbol.str(names)}, {"certificate", certificate_json(s.cert)}};
      } catch (const Uncertified& e) {
        r.status = "fail";
        r.witness = e.what();
      }
      add(recs, r);
    }
  }
  return recs;
}

std::vector<CheckRecord> cmd_casimir(const RunConfig& cfg) {
  Context c = load_context(cfg, true);
  if (cfg.kind != "delta" && cfg.kind != "z") throw ConfigError("--kind must be delta or z");
  if (cfg.k < 0 || cfg.k >= c.K->f()) throw ConfigError("--k out of range");
  if (cfg.N < 0 || cfg.N % c.K->f() != 0) throw ConfigError("--N must be a non-negative multiple of f");
  AlgebraPtr A = build_algebra(c, cfg);
  auto names = A->variable_names();
  const char kind = cfg.kind == "delta" ? 'D' : 'z';
  CheckRecord r;
  r.name = "casimir " + cfg.kind + " k=" + std::to_string(cfg.k) + " N=" + std::to_string(cfg.N);
  GradedPoly pred = predicted_symbol(*c.G, kind, cfg.k, cfg.N);
  r.measured["predicted"] = pred.str(names);
  try {
    Series x = kind == 'D' ? casimir_series(*A, cfg.k, cfg.N).series : scaled_generator(*A, 'z', cfg.k, cfg.N).series;
    SymbolResult s = A->r_valuation_symbol(x, cfg.N);
    r.measured["computed"] = s.symbol.str(names);
    r.measured["valuation"] = to_string(s.valuation);
    r.measured["certificate"] = certificate_json(s.cert);
    bool match = s.symbol == pred;
    r.measured["match"] = match;
    if (!match) {
      r.status = "fail";
      r.witness = s.symbol.str(names);
    }
  } catch (const Uncertified& e) {
    r.status = "fail";
    r.witness = e.what();
  }
  return {r};
}

IdealSpec selected_ideal(const Context& c, const RunConfig& cfg) {
  if (!cfg.ideal_file.empty()) {
    std::ifstream in(cfg.ideal_file);
    if (!in) throw ConfigError("cannot read " + cfg.ideal_file);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return parse_ideal(class_ring(*c.G), buf.str());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (cfg.which == "casimir") return casimir_ideal(*c.G);
  try {
    return reference_ideal(*c.G, cfg.which);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<CheckRecord> cmd_ideal(const RunConfig& cfg, std::ostream& text_out) {
  Context c = load_context(cfg, true);
  IdealSpec I = selected_ideal(c, cfg);
  if (cfg.format == "text") {
    for (const auto& g : I.gens) text_out << g.str() << "\n";
    return {};
  }
  CheckRecord r;
  r.name = "ideal " + cfg.which;
  r.measured["variables"] = I.ring->names;
  for (std::size_t i = 0; i < I.gens.size(); ++i) {
    r.measured["generators"].push_back({{"tag", I.tags[i]}, {"poly", I.gens[i].str()}, {"homogeneous", I.gens[i].homogeneous()}});
    if (!I.gens[i].homogeneous()) {
      r.status = "fail";
      r.witness = I.gens[i].str();
    }
  }
  return {r};
}

std::vector<CheckRecord> cmd_dimension(const RunConfig& cfg) {
  Context c = load_context(cfg, true);
  IdealSpec I = selected_ideal(c, cfg);
  DimensionReport d = krull_dimension(I);
  CheckRecord r;
  r.name = "dimension " + (cfg.ideal_file.empty() ? cfg.which : cfg.ideal_file);
  r.measured = {{"nvars", d.nvars}, {"basis_size", d.basis_size}, {"kdim", d.kdim}, {"grade", d.grade}, {"statement", d.statement}};
  for (const auto& g : d.basis) r.measured["basis"].push_back(g.str());
  if (d.kdim < 0 || d.kdim > d.nvars) {
    r.status = "fail";
    r.witness = "kdim out of range";
  }
  return {r};
}

std::vector<CheckRecord> cmd_verify_all(const RunConfig& cfg) {
  CheckOptions opt;
  opt.corpus = load_corpus(cfg.corpus.empty() ? default_corpus_dir() : cfg.corpus);
  opt.seed = cfg.seed;
  std::vector<CheckRecord> recs;
  for (const auto& def : acceptance_checks()) recs.push_back(run_check(def, opt));
  return recs;
}

json config_echo(const RunConfig& cfg) {
  return {{"command", cfg.command}, {"config", cfg.config_path}, {"case", cfg.gcase},   {"level", cfg.level},
          {"precision", cfg.precision}, {"radius", cfg.radii},     {"samples", cfg.samples}, {"seed", cfg.seed}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir symbols, graded ideals and dimension checks for p-adic groups"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.config_path = default_corpus_dir() + "/q3.cfg";
  app.add_option("--config", cfg.config_path, "Tower configuration file");
  app.add_option("--case", cfg.gcase, "gl2 or quat (default: first case of the configuration)");
  app.add_option("--level", cfg.level, "Level nu of the finite quotient");
  app.add_option("--precision", cfg.precision, "Coefficient precision in p-adic digits")->check(CLI::PositiveNumber);
  app.add_option("--radius", cfg.radii, "Radius indices N");
  app.add_option("--samples", cfg.samples, "Random samples")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--out", cfg.out, "Write the JSON report here instead of standard output");

  app.add_subcommand("decompose", "Idempotent decomposition data of the tower");
  app.add_subcommand("group-check", "p-valuation axioms on random samples");
  app.add_subcommand("symbols", "r_N-valuations and symbols of the basis variables");
  auto* cas = app.add_subcommand("casimir", "Computed against predicted symbols of scaled z and Casimir elements");
  cas->add_option("--kind", cfg.kind, "delta or z");
  cas->add_option("--k", cfg.k, "Embedding class");
  cas->add_option("--N", cfg.N, "Radius index (multiple of f)");
  auto* ideal = app.add_subcommand("ideal", "Generators of an ideal in the class variables");
  auto* dim = app.add_subcommand("dimension", "Krull dimension report");
  for (auto* sc : {ideal, dim}) {
    sc->add_option("--which", cfg.which, "casimir, unramified, principal_series or explicit_quadratic");
    sc->add_option("--ideal", cfg.ideal_file, "Plain-text generators, one per line or comma separated");
  }
  ideal->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  auto* all = app.add_subcommand("verify-all", "Run every acceptance check over the corpus");
  all->add_option("--corpus", cfg.corpus, "Directory of *.cfg tower files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "gkdim: " << e.what() << "\n";
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  std::vector<CheckRecord> recs;
  try {
    if (cfg.command == "decompose") recs = cmd_decompose(cfg);
    else if (cfg.command == "group-check") recs = cmd_group_check(cfg);
    else if (cfg.command == "symbols") recs = cmd_symbols(cfg);
    else if (cfg.command == "casimir") recs = cmd_casimir(cfg);
    else if (cfg.command == "ideal") recs = cmd_ideal(cfg, out);
    else if (cfg.command == "dimension") recs = cmd_dimension(cfg);
    else recs = cmd_verify_all(cfg);
  } catch (const ConfigError& e) {
    err << "gkdim: configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "gkdim: " << e.what() << "\n";
    return 1;
  }
  if (cfg.command == "ideal" && cfg.format == "text") return 0;

  json report{{"schema", kSchema}, {"config", config_echo(cfg)}, {"records", json::array()}};
  int passed = 0, failed = 0, errors = 0;
  for (const auto& r : recs) {
    report["records"].push_back(record_json(r));
    if (r.status == "pass") ++passed;
    else if (r.status == "fail") ++failed;
    else ++errors;
    if (r.status != "pass") err << "gkdim: " << r.status << ": " << r.name << (r.witness.empty() ? "" : " (" + r.witness + ")") << "\n";
  }
  report["summary"] = {{"total", recs.size()}, {"passed", passed}, {"failed", failed}, {"errors", errors}, {"ok", failed + errors == 0}};
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "gkdim: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << text;
  }
  return failed + errors == 0 ? 0 : 1;
}

}  // namespace gkdim
