#include "gkdim/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gkdim {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

long to_long(const std::string& w, const std::string& key) {
  try {
    std::size_t used = 0;
    long v = std::stol(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key " + key + ": not an integer: " + w);
  }
}

std::vector<long> int_list(const std::string& v, const std::string& key) {
  std::vector<long> out;
  for (const auto& w : words(v)) out.push_back(to_long(w, key));
  if (out.empty()) throw ConfigError("key " + key + ": empty list");
  return out;
}

}  // namespace

bool TowerSpec::has_case(const std::string& c) const { return std::find(cases.begin(), cases.end(), c) != cases.end(); }

TowerSpec parse_tower_config(const std::string& text, const std::string& default_name) {
  TowerSpec s;
  s.name = default_name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_prime = false, have_u = false, have_e = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "name") {
      s.name = val;
    } else if (key == "prime") {
      s.prime = to_long(val, key);
      have_prime = true;
    } else if (key == "unramified_poly") {
      s.unramified_poly = int_list(val, key);
      have_u = true;
    } else if (key == "eisenstein_poly") {
      s.eisenstein_poly.clear();
      if (val.find(';') != std::string::npos) {
        std::istringstream parts(val);
        for (std::string part; std::getline(parts, part, ';');) s.eisenstein_poly.push_back(int_list(part, key));
      } else {
        for (long c : int_list(val, key)) s.eisenstein_poly.push_back({c});
      }
      have_e = true;
    } else if (key == "quaternion_a") {
      s.quaternion_a = to_long(val, key);
    } else if (key == "cases") {
      s.cases = words(val);
      for (const auto& c : s.cases)
        if (c != "gl2" && c != "quat") throw ConfigError("key cases: unknown case " + c);
    } else if (key == "fields_only") {
      if (val != "true" && val != "false") throw ConfigError("key fields_only: expected true or false");
      s.fields_only = val == "true";
    } else if (key == "digits") {
      s.digits = static_cast<int>(to_long(val, key));
      if (s.digits < 8) throw ConfigError("key digits: must be at least 8");
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  if (!have_prime || !have_u || !have_e) throw ConfigError("tower needs prime, unramified_poly and eisenstein_poly");
  if (s.has_case("quat") && !s.quaternion_a) throw ConfigError("case quat needs quaternion_a");
  const std::size_t f = s.unramified_poly.size() - 1;
  for (auto& c : s.eisenstein_poly) {
    if (c.size() > f && f > 0) throw ConfigError("eisenstein coefficient has more than f entries");
    c.resize(std::max<std::size_t>(f, 1), 0);
  }
  return s;
}

TowerSpec load_tower_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tower_config(buf.str(), std::filesystem::path(path).stem().string());
}

std::vector<TowerSpec> load_corpus(const std::string& dir) {
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& ent : std::filesystem::directory_iterator(dir, ec))
    if (ent.path().extension() == ".cfg") files.push_back(ent.path().string());
  if (ec) throw ConfigError("cannot list corpus directory " + dir);
  std::vector<TowerSpec> out;
  for (const auto& f : files) out.push_back(load_tower_config(f));
  std::sort(out.begin(), out.end(), [](const TowerSpec& a, const TowerSpec& b) { return a.name < b.name; });
  return out;
}

TowerPtr build_tower(const TowerSpec& spec) {
  try {
    return FieldTower::build(spec.prime, spec.unramified_poly, spec.eisenstein_poly, spec.quaternion_a, spec.digits);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(spec.name + ": " + e.what());
  }
}

std::string default_corpus_dir() {
#ifdef GKDIM_DEFAULT_CORPUS
  return GKDIM_DEFAULT_CORPUS;
#else
  return "corpus";
#endif
}

}  // namespace gkdim
