#include "arslie/config.hpp"

#include "arslie/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace arslie {

namespace {

double to_double(const std::string& s, const std::string& where) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ValidationError(where + ": '" + s + "' is not a finite number");
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return parse(buf.str());
}

Config Config::parse(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError("config: " + e.message() + " at line " + std::to_string(e.line()));
  }
  Config cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ValidationError("config: key '" + section + "' outside any section");
    for (const auto& [key, value] : body) cfg.values_[section][key] = value.get_value<std::string>();
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  return s != values_.end() && s->second.count(key) > 0;
}

std::string Config::text(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw ValidationError("config: missing [" + section + "] " + key);
  return values_.at(section).at(key);
}

std::string Config::text(const std::string& section, const std::string& key, const std::string& fallback) const {
  return has(section, key) ? text(section, key) : fallback;
}

double Config::number(const std::string& section, const std::string& key) const {
  return to_double(text(section, key), "[" + section + "] " + key);
}

double Config::number(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

int Config::integer(const std::string& section, const std::string& key, int fallback) const {
  if (!has(section, key)) return fallback;
  const double v = number(section, key);
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ValidationError("[" + section + "] " + key + ": expected an integer");
  return static_cast<int>(v);
}

Eigen::VectorXd Config::vector(const std::string& section, const std::string& key, int expected) const {
  const std::string where = "[" + section + "] " + key;
  const auto toks = split_ws(text(section, key));
  if (expected >= 0 && static_cast<int>(toks.size()) != expected)
    throw ValidationError(where + ": expected " + std::to_string(expected) + " values, got " +
                          std::to_string(toks.size()));
  Eigen::VectorXd v(static_cast<Eigen::Index>(toks.size()));
  for (std::size_t i = 0; i < toks.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_double(toks[i], where);
  return v;
}

std::vector<Eigen::VectorXd> Config::rows(const std::string& section, const std::string& key) const {
  const std::string where = "[" + section + "] " + key;
  std::vector<Eigen::VectorXd> out;
  std::stringstream in(text(section, key));
  for (std::string row; std::getline(in, row, ',');) {
    const auto toks = split_ws(row);
    Eigen::VectorXd v(static_cast<Eigen::Index>(toks.size()));
    for (std::size_t i = 0; i < toks.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_double(toks[i], where);
    out.push_back(v);
  }
  return out;
}

ProblemConfig read_problem(const Config& cfg) {
  ProblemConfig p;
  p.group = cfg.text("problem", "group");
  if (p.group == "euclidean") {
    p.dim = cfg.integer("problem", "dim", 0);
    if (p.dim < 2) throw ValidationError("[problem] dim: euclidean groups need dim >= 2");
  } else if (p.group == "aff2") {
    p.dim = 2;
  } else if (p.group == "heisenberg" || p.group == "sl2") {
    p.dim = 3;
  } else {
    throw ValidationError("[problem] group: unknown group '" + p.group + "'");
  }
  const int n = p.dim;
  const bool has_d = cfg.has("problem", "derivation");
  const bool has_inner = cfg.has("problem", "inner");
  if (has_d == has_inner) throw ValidationError("[problem]: give exactly one of 'derivation' and 'inner'");
  if (has_d) {
    const Eigen::VectorXd flat = cfg.vector("problem", "derivation", n * n);
    p.derivation.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p.derivation(i, j) = flat(i * n + j);
  } else {
    const Eigen::VectorXd x = cfg.vector("problem", "inner", n);
    p.derivation = inner_derivation(make_chart(p.group, n)->algebra(), x);
  }
  p.delta = cfg.rows("problem", "delta");
  if (static_cast<int>(p.delta.size()) != n - 1)
    throw ValidationError("[problem] delta: expected " + std::to_string(n - 1) + " rows, got " +
                          std::to_string(p.delta.size()));
  for (const auto& r : p.delta)
    if (r.size() != n)
      throw ValidationError("[problem] delta: each row needs " + std::to_string(n) + " entries");
  return p;
}

SimpleArs build_problem(const ProblemConfig& p) { return build_ars(make_chart(p.group, p.dim), p.derivation, p.delta); }

}  // namespace arslie
