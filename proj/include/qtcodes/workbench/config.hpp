// Search configuration files (strict JSON) and budget strings.

#ifndef QTCODES_WORKBENCH_CONFIG_HPP
#define QTCODES_WORKBENCH_CONFIG_HPP

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "../search.hpp"

namespace qtcodes {

/// Environment variable holding the default engine time budget.
inline constexpr const char* kBudgetEnv = "QTCODES_BUDGET";

/// Seconds in "90", "90s", "30m", "2h" or "1d"; "0" or "none" means unlimited.
inline double parse_duration(const std::string& text) {
  const std::string s = detail::trim(text);
  if (s.empty()) throw std::invalid_argument("empty duration");
  if (s == "none") return 0.0;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid duration '" + s + "'");
  }
  const std::string unit = s.substr(used);
  double scale = 0.0;
  if (unit.empty() || unit == "s") scale = 1.0;
  else if (unit == "m") scale = 60.0;
  else if (unit == "h") scale = 3600.0;
  else if (unit == "d") scale = 86400.0;
  else throw std::invalid_argument("invalid duration unit in '" + s + "' (use s, m, h or d)");
  if (v < 0.0) throw std::invalid_argument("negative duration '" + s + "'");
  return v * scale;
}

/// The budget from QTCODES_BUDGET, or `fallback` seconds when unset.
inline double default_budget_seconds(double fallback = 0.0) {
  const char* env = std::getenv(kBudgetEnv);
  if (env == nullptr || *env == '\0') return fallback;
  try {
    return parse_duration(env);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(kBudgetEnv) + ": " + e.what());
  }
}

/// Parses a SearchConfig; unknown keys are errors. Keys: q, a, N, deg_min,
/// deg_max, divisor_cap, seed, combination_cap, t_min, t_max, k_floor, m_min,
/// m_values, greedy, engine, budget_seconds (number or duration string),
/// budget_codewords, threads, probe_trials, bklc, output.
inline SearchConfig parse_search_config(const nlohmann::json& j) {
  static const std::set<std::string> kKeys = {"q", "a", "N", "deg_min", "deg_max", "divisor_cap", "seed", "combination_cap",
                                              "t_min", "t_max", "k_floor", "m_min", "m_values", "greedy", "engine",
                                              "budget_seconds", "budget_codewords", "threads", "probe_trials", "bklc", "output"};
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (kKeys.count(k) == 0) throw std::invalid_argument("unknown config key '" + k + "'");
  for (const char* req : {"q", "N", "deg_min", "deg_max"})
    if (!j.contains(req)) throw std::invalid_argument(std::string("config lacks required key '") + req + "'");
  SearchConfig c;
  try {
    c.q = j.at("q").get<int>();
    c.a = static_cast<Symbol>(j.value("a", 1));
    c.N = j.at("N").get<long long>();
    c.deg_min = j.at("deg_min").get<int>();
    c.deg_max = j.at("deg_max").get<int>();
    c.divisor_cap = j.value("divisor_cap", c.divisor_cap);
    c.seed = j.value("seed", c.seed);
    c.combination_cap = j.value("combination_cap", c.combination_cap);
    c.t_min = j.value("t_min", c.t_min);
    c.t_max = j.value("t_max", c.t_min);
    c.k_floor = j.value("k_floor", c.k_floor);
    c.m_min = j.value("m_min", c.m_min);
    c.m_values = j.value("m_values", c.m_values);
    c.greedy = j.value("greedy", c.greedy);
    c.engine = parse_engine(j.value("engine", std::string("auto")));
    c.budget.max_seconds = default_budget_seconds();
    if (j.contains("budget_seconds")) {
      const auto& b = j.at("budget_seconds");
      c.budget.max_seconds = b.is_string() ? parse_duration(b.get<std::string>()) : b.get<double>();
    }
    c.budget.max_codewords = j.value("budget_codewords", c.budget.max_codewords);
    c.threads = j.value("threads", c.threads);
    c.probe_trials = j.value("probe_trials", c.probe_trials);
    c.bklc_path = j.value("bklc", std::string());
    c.output_path = j.value("output", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (j.contains("a") && (j.at("a").get<int>() < 1 || j.at("a").get<int>() >= c.q))
    throw std::invalid_argument("config: a must be a nonzero element of GF(q)");
  c.validate();
  return c;
}

inline SearchConfig load_search_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return parse_search_config(j);
}

}  // namespace qtcodes

#endif  // QTCODES_WORKBENCH_CONFIG_HPP
