// Shared test helpers: seeded random objects and independent brute-force
// oracles that use plain integer arithmetic instead of the library.

#ifndef QTCODES_TESTS_SUPPORT_HPP
#define QTCODES_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "qtcodes/qtcodes.hpp"

namespace testing_support {

using qtcodes::FieldSpec;
using qtcodes::GenMatrix;
using qtcodes::Polynomial;
using qtcodes::Rng;
using qtcodes::Symbol;

using IntMatrix = std::vector<std::vector<int>>;

inline int draw(Rng& rng, int bound) { return static_cast<int>(qtcodes::uniform_below(rng, static_cast<std::uint64_t>(bound))); }

inline Polynomial random_poly(const FieldSpec& F, Rng& rng, int max_len) {
  std::vector<Symbol> c(static_cast<std::size_t>(draw(rng, max_len + 1)));
  for (auto& s : c) s = static_cast<Symbol>(draw(rng, F.q()));
  return {F, std::move(c)};
}

inline Polynomial random_nonzero_poly(const FieldSpec& F, Rng& rng, int max_len) {
  for (;;) {
    Polynomial p = random_poly(F, rng, max_len);
    if (!p.is_zero()) return p;
  }
}

inline IntMatrix random_int_matrix(Rng& rng, int q, int rows, int cols) {
  IntMatrix m(static_cast<std::size_t>(rows), std::vector<int>(static_cast<std::size_t>(cols)));
  for (auto& r : m)
    for (auto& x : r) x = draw(rng, q);
  return m;
}

inline GenMatrix to_gen(const FieldSpec& F, const IntMatrix& m) {
  std::vector<std::vector<Symbol>> rows;
  for (const auto& r : m) rows.emplace_back(r.begin(), r.end());
  return {F, rows};
}

inline IntMatrix to_int(const GenMatrix& g) {
  IntMatrix m;
  for (std::size_t i = 0; i < g.rows(); ++i) m.emplace_back(g.row(i).begin(), g.row(i).end());
  return m;
}

inline int mod(long long x, int q) { return static_cast<int>(((x % q) + q) % q); }

inline int inv_mod(int x, int q) {
  for (int y = 1; y < q; ++y)
    if ((x * y) % q == 1) return y;
  return 0;
}

/// Rank by plain Gaussian elimination on ints.
inline int oracle_rank(IntMatrix m, int q) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(rank)]);
    const int iv = inv_mod(m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)], q);
    for (auto& x : m[static_cast<std::size_t>(rank)]) x = mod(static_cast<long long>(x) * iv, q);
    for (int r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const int f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
            mod(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] - static_cast<long long>(f) * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)], q);
    }
    ++rank;
  }
  return rank;
}

/// Minimum nonzero weight over all q^rows messages, by base-q counting.
inline int oracle_min_distance(const IntMatrix& m, int q) {
  const std::size_t k = m.size();
  const std::size_t n = m.empty() ? 0 : m[0].size();
  std::vector<int> msg(k, 0);
  int best = std::numeric_limits<int>::max();
  for (;;) {
    std::size_t i = 0;
    while (i < k && msg[i] == q - 1) msg[i++] = 0;
    if (i == k) break;
    ++msg[i];
    int w = 0;
    for (std::size_t j = 0; j < n; ++j) {
      long long s = 0;
      for (std::size_t r = 0; r < k; ++r) s += static_cast<long long>(msg[r]) * m[r][j];
      w += s % q != 0 ? 1 : 0;
    }
    if (w > 0) best = std::min(best, w);
  }
  return best;
}

/// Product of polynomials given low-first as int vectors.
inline std::vector<int> oracle_poly_mul(const std::vector<int>& f, const std::vector<int>& g, int q) {
  if (f.empty() || g.empty()) return {};
  std::vector<int> r(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = mod(r[i + j] + static_cast<long long>(f[i]) * g[j], q);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

inline std::vector<int> ints(const Polynomial& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

/// m x m a-circulant of g built directly from the definition: entry (i, j)
/// is the coefficient of x^j in x^i g(x) mod x^m - a.
inline IntMatrix oracle_twistulant(const std::vector<int>& g, int m, int a, int q) {
  IntMatrix t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));
  for (int i = 0; i < m; ++i)
    for (std::size_t e = 0; e < g.size(); ++e) {
      const int pos = i + static_cast<int>(e);
      const int wraps = pos / m;
      long long c = g[e];
      for (int w = 0; w < wraps; ++w) c *= a;
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos % m)] =
          mod(t[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos % m)] + c, q);
    }
  return t;
}

}  // namespace testing_support

#endif  // QTCODES_TESTS_SUPPORT_HPP
