// Best-known-linear-code lookup table, loaded from a `q,n,k,d` CSV file.

#ifndef QTCODES_BKLC_HPP
#define QTCODES_BKLC_HPP

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace qtcodes {

/// Error in a line-oriented input file; carries the 1-based line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline long long parse_int(const std::string& field, const std::string& source, std::size_t line, const char* name) {
  const std::string t = trim(field);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw FormatError(source, line, std::string("field '") + name + "' is not an integer: '" + t + "'");
  return v;
}

}  // namespace detail

class BklcTable {
 public:
  using Key = std::tuple<int, int, int>;

  /// Adds d_best for [n, k]_q. Rejects duplicates and values outside
  /// [1, n - k + 1].
  void insert(int q, int n, int k, int d) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("BKLC entry needs 1 <= k <= n");
    if (d < 1 || d > n - k + 1)
      throw std::invalid_argument("BKLC entry d=" + std::to_string(d) + " violates 1 <= d <= n-k+1 for [" + std::to_string(n) + "," +
                                  std::to_string(k) + "]");
    if (!entries_.emplace(Key{q, n, k}, d).second)
      throw std::invalid_argument("duplicate BKLC entry for q=" + std::to_string(q) + " n=" + std::to_string(n) + " k=" + std::to_string(k));
  }

  [[nodiscard]] std::optional<int> lookup(int q, int n, int k) const {
    const auto it = entries_.find(Key{q, n, k});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] const std::map<Key, int>& entries() const noexcept { return entries_; }

 private:
  std::map<Key, int> entries_;
};

inline BklcTable parse_bklc(std::istream& in, const std::string& source = "<bklc>") {
  BklcTable table;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!header) {
      if (t != "q,n,k,d") throw FormatError(source, lineno, "expected header 'q,n,k,d'");
      header = true;
      continue;
    }
    const auto f = detail::split(t, ',');
    if (f.size() != 4) throw FormatError(source, lineno, "expected 4 fields, got " + std::to_string(f.size()));
    const auto q = static_cast<int>(detail::parse_int(f[0], source, lineno, "q"));
    const auto n = static_cast<int>(detail::parse_int(f[1], source, lineno, "n"));
    const auto k = static_cast<int>(detail::parse_int(f[2], source, lineno, "k"));
    const auto d = static_cast<int>(detail::parse_int(f[3], source, lineno, "d"));
    try {
      table.insert(q, n, k, d);
    } catch (const std::invalid_argument& e) {
      throw FormatError(source, lineno, e.what());
    }
  }
  if (!header) throw FormatError(source, lineno, "missing header 'q,n,k,d'");
  return table;
}

inline BklcTable load_bklc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open BKLC table '" + path + "'");
  return parse_bklc(in, path);
}

}  // namespace qtcodes

#endif  // QTCODES_BKLC_HPP
