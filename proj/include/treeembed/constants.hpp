#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "treeembed/errors.hpp"
#include "treeembed/rational.hpp"

namespace treeembed {

/// Parameters shared by the embedding pipelines.
struct Constants {
  std::size_t m = 0;
  Rational alpha{1, 5};
  std::optional<Rational> gamma;  // alpha^2 when unset
  Rational epsilon{1, 250};
  std::optional<std::size_t> g_override;
  Rational sparsity_ratio{1, 25};
  std::size_t retries = 64;
  bool strict = false;

  Rational gamma_value() const { return gamma.value_or(alpha * alpha); }
  std::size_t t() const { return m + 1; }
  /// t - floor(2m/3)
  std::size_t t_prime() const { return m + 1 - 2 * m / 3; }
};

inline std::size_t min_degree_bound(std::size_t m) { return 2 * m / 3; }

/// (m+1)^(2m+6) + 1, or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> max_degree_bound(std::size_t m) {
  const std::uint64_t base = m + 1;
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < 2 * m + 6; ++i) {
    if (acc > (UINT64_MAX - 1) / base) return std::nullopt;
    acc *= base;
  }
  return acc + 1;
}

/// Degree the theorem-1 pipeline asks of its high-degree vertex.
inline std::optional<std::uint64_t> required_max_degree(const Constants& c) {
  if (c.g_override) return *c.g_override;
  return max_degree_bound(c.m);
}

inline void validate(const Constants& c) {
  auto unit = [](const Rational& r, const char* name) {
    if (r <= Rational(0) || r >= Rational(1)) throw InputError(std::string(name) + " must lie in (0,1), got " + to_string(r));
  };
  unit(c.alpha, "alpha");
  if (!c.gamma && c.alpha.denominator() > 3'000'000'000) {
    throw InputError("alpha " + to_string(c.alpha) + " is too fine to square exactly; set gamma explicitly");
  }
  unit(c.gamma_value(), "gamma");
  unit(c.epsilon, "epsilon");
  unit(c.sparsity_ratio, "sparsity_ratio");
  if (c.g_override && *c.g_override < c.m) {
    throw InputError("g_override " + std::to_string(*c.g_override) + " is below m=" + std::to_string(c.m));
  }
  if (c.retries < 1) throw InputError("retries must be at least 1");
}

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long long x = std::stoll(v, &used);
    if (used != v.size() || x < 0) throw InputError("");
    return static_cast<std::size_t>(x);
  } catch (const std::logic_error&) {
    throw InputError("bad value for " + key + ": '" + v + "'");
  }
}

}  // namespace detail

/// key=value lines; '#' starts a comment. Keys: m, alpha, gamma, epsilon, g_override,
/// sparsity_ratio, retries, mode (strict|relaxed).
inline Constants parse_constants(const std::string& text, Constants c = {}) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("line " + std::to_string(lineno) + ": expected key=value");
    std::string key = detail::trim(line.substr(0, eq)), val = detail::trim(line.substr(eq + 1));
    if (key == "m") c.m = detail::parse_count(key, val);
    else if (key == "alpha") c.alpha = parse_rational(val);
    else if (key == "gamma") c.gamma = parse_rational(val);
    else if (key == "epsilon") c.epsilon = parse_rational(val);
    else if (key == "g_override") c.g_override = detail::parse_count(key, val);
    else if (key == "sparsity_ratio") c.sparsity_ratio = parse_rational(val);
    else if (key == "retries") c.retries = detail::parse_count(key, val);
    else if (key == "mode") {
      if (val != "strict" && val != "relaxed") throw InputError("mode must be strict or relaxed, got '" + val + "'");
      c.strict = val == "strict";
    } else {
      throw InputError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

inline Constants read_constants(const std::string& path, Constants c = {}) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open constants file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_constants(ss.str(), c);
}

}  // namespace treeembed
