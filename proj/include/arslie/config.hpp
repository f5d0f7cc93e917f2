#pragma once

#include "arslie/ars.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arslie {

/// Sectioned key-value configuration ([section] / key = value).
class Config {
 public:
  /// Throws IoError if the file cannot be read, ValidationError if it does not
  /// parse.
  static Config load(const std::string& path);
  static Config parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key, double fallback) const;
  int integer(const std::string& section, const std::string& key, int fallback) const;
  /// Whitespace-separated reals; `expected` < 0 accepts any count.
  Eigen::VectorXd vector(const std::string& section, const std::string& key, int expected = -1) const;
  /// Rows separated by ',', entries by whitespace.
  std::vector<Eigen::VectorXd> rows(const std::string& section, const std::string& key) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
};

/// The [problem] section: group, dim (euclidean only), derivation (n^2 reals,
/// row-major) or inner (n reals, D = -ad(inner)), delta (n - 1 rows).
struct ProblemConfig {
  std::string group;
  int dim = 0;
  Matrix derivation;
  std::vector<AlgebraVector> delta;
};

ProblemConfig read_problem(const Config& cfg);
SimpleArs build_problem(const ProblemConfig& p);

}  // namespace arslie
