#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkdim/padic_tower.hpp"

namespace gkdim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One tower description. Text format, one `key = value` per line, `#`
/// starts a comment:
///   name            = Q3_sqrt3
///   prime           = 3
///   unramified_poly = 0 1            (integers, low to high)
///   eisenstein_poly = -3, 0, 1       (f = 1: one integer per power of X)
///   eisenstein_poly = -3 0; 1 0      (f > 1: alpha-coefficients, ';' between powers)
///   quaternion_a    = -1             (optional)
///   cases           = gl2 quat       (optional, default gl2)
///   fields_only     = true           (optional)
///   digits          = 40             (optional)
struct TowerSpec {
  std::string name;
  long prime = 0;
  std::vector<long> unramified_poly;
  std::vector<std::vector<long>> eisenstein_poly;
  std::optional<long> quaternion_a;
  std::vector<std::string> cases{"gl2"};
  bool fields_only = false;
  int digits = 40;

  bool has_case(const std::string& c) const;
};

TowerSpec parse_tower_config(const std::string& text, const std::string& default_name = "tower");
TowerSpec load_tower_config(const std::string& path);
/// Every *.cfg in the directory, sorted by name.
std::vector<TowerSpec> load_corpus(const std::string& dir);
/// Throws ConfigError on invalid polynomials.
TowerPtr build_tower(const TowerSpec& spec);

std::string default_corpus_dir();

}  // namespace gkdim
