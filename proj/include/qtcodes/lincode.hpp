// Linear codes over GF(q): generator matrices, row reduction, and exact
// minimum-distance computation (Gray-code enumeration and
// Brouwer-Zimmermann), plus a cheap randomized upper-bound probe.

#ifndef QTCODES_LINCODE_HPP
#define QTCODES_LINCODE_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#if defined(__AVX2__) || defined(__AVX512BW__)
#include <immintrin.h>
#endif

#include "galois.hpp"
#include "random.hpp"

namespace qtcodes {

/// Row-major matrix over GF(q), one byte per entry. Rows need not be
/// independent.
class GenMatrix {
 public:
  GenMatrix(const FieldSpec& field, std::size_t n) : field_(&field), n_(n) {
    if (n == 0) throw std::invalid_argument("generator matrix needs n >= 1");
  }

  GenMatrix(const FieldSpec& field, const std::vector<std::vector<Symbol>>& rows) : GenMatrix(field, rows.empty() ? 0 : rows[0].size()) {
    for (const auto& r : rows) add_row(r);
  }

  void add_row(std::span<const Symbol> row) {
    if (row.size() != n_)
      throw std::invalid_argument("row length " + std::to_string(row.size()) + " != n=" + std::to_string(n_));
    for (Symbol s : row)
      if (s >= field_->q()) throw std::out_of_range("matrix entry not in GF(" + std::to_string(field_->q()) + ")");
    data_.insert(data_.end(), row.begin(), row.end());
  }

  [[nodiscard]] const FieldSpec& field() const noexcept { return *field_; }
  [[nodiscard]] int q() const noexcept { return field_->q(); }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t rows() const noexcept { return data_.size() / n_; }
  [[nodiscard]] std::span<const Symbol> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }
  [[nodiscard]] std::span<Symbol> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  [[nodiscard]] Symbol at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  Symbol& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }

  /// message * M.
  [[nodiscard]] std::vector<Symbol> encode(std::span<const Symbol> message) const {
    if (message.size() != rows()) throw std::invalid_argument("message length must equal the number of rows");
    std::vector<Symbol> c(n_, 0);
    for (std::size_t i = 0; i < rows(); ++i) {
      if (message[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) c[j] = field_->add(c[j], field_->mul(message[i], at(i, j)));
    }
    return c;
  }

  friend bool operator==(const GenMatrix& x, const GenMatrix& y) noexcept {
    return x.field_ == y.field_ && x.n_ == y.n_ && x.data_ == y.data_;
  }

 private:
  const FieldSpec* field_;
  std::size_t n_;
  std::vector<Symbol> data_;
};

inline int hamming_weight(std::span<const Symbol> v) noexcept {
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](Symbol s) { return s != 0; }));
}

struct RrefResult {
  GenMatrix reduced;  ///< same shape as the input; zero rows last
  int rank = 0;
  std::vector<int> pivots;
};

namespace detail {

/// Gauss-Jordan elimination in place. Columns are tried in `column_order`;
/// the first qualifying row (among rows not yet pivoted) becomes the pivot.
/// Optionally applies the same row operations to `transform`.
inline std::vector<int> eliminate(GenMatrix& m, std::span<const int> column_order, std::size_t first_free_row = 0,
                                  GenMatrix* transform = nullptr) {
  const FieldSpec& F = m.field();
  std::vector<int> pivots;
  std::size_t next = first_free_row;
  auto row_op = [&](GenMatrix& g, std::size_t dst, std::size_t src, Symbol factor) {
    auto d = g.row(dst);
    auto s = g.row(src);
    for (std::size_t j = 0; j < g.n(); ++j) d[j] = F.add(d[j], F.mul(factor, s[j]));
  };
  for (int col : column_order) {
    if (next >= m.rows()) break;
    const auto c = static_cast<std::size_t>(col);
    std::size_t piv = next;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != next) {
      std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(next).begin());
      if (transform) std::swap_ranges(transform->row(piv).begin(), transform->row(piv).end(), transform->row(next).begin());
    }
    const Symbol inv = F.inv(m.at(next, c));
    for (auto& s : m.row(next)) s = F.mul(s, inv);
    if (transform)
      for (auto& s : transform->row(next)) s = F.mul(s, inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == next || m.at(r, c) == 0) continue;
      const Symbol factor = F.neg(m.at(r, c));
      if (transform) row_op(*transform, r, next, factor);
      row_op(m, r, next, factor);
    }
    pivots.push_back(col);
    ++next;
  }
  return pivots;
}

inline GenMatrix identity_matrix(const FieldSpec& F, std::size_t k) {
  GenMatrix t(F, k);
  std::vector<Symbol> r(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::fill(r.begin(), r.end(), 0);
    r[i] = 1;
    t.add_row(r);
  }
  return t;
}

}  // namespace detail

/// Reduced row-echelon form with leftmost pivots.
inline RrefResult rref(const GenMatrix& m) {
  RrefResult out{m, 0, {}};
  std::vector<int> order(m.n());
  std::iota(order.begin(), order.end(), 0);
  out.pivots = detail::eliminate(out.reduced, order);
  out.rank = static_cast<int>(out.pivots.size());
  return out;
}

inline int rank_of(const GenMatrix& m) { return rref(m).rank; }

/// The nonzero rows of the reduced form (a basis of the row space).
inline GenMatrix row_basis(const GenMatrix& m) {
  RrefResult r = rref(m);
  GenMatrix b(m.field(), m.n());
  for (int i = 0; i < r.rank; ++i) b.add_row(r.reduced.row(static_cast<std::size_t>(i)));
  return b;
}

/// True iff v lies in the row space of `basis` (which must be in reduced form
/// with pivots `pivots`, as returned by rref).
inline bool in_row_space(const RrefResult& basis, std::span<const Symbol> v) {
  const FieldSpec& F = basis.reduced.field();
  std::vector<Symbol> r(v.begin(), v.end());
  for (int i = 0; i < basis.rank; ++i) {
    const auto p = static_cast<std::size_t>(basis.pivots[static_cast<std::size_t>(i)]);
    const Symbol c = r[p];
    if (c == 0) continue;
    const auto row = basis.reduced.row(static_cast<std::size_t>(i));
    const Symbol nc = F.neg(c);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = F.add(r[j], F.mul(nc, row[j]));
  }
  return std::all_of(r.begin(), r.end(), [](Symbol s) { return s == 0; });
}

// ---------------------------------------------------------------------------
// Distance results

/// [n, k, d] with d either exact (d_low == d_high) or a certified interval.
struct CodeParams {
  int n = 0;
  int k = 0;
  int d_low = 0;
  int d_high = 0;
  std::string engine;
  std::vector<Symbol> witness;          ///< a codeword of weight d_high
  std::vector<Symbol> witness_message;  ///< witness = witness_message * M
  std::uint64_t codewords = 0;          ///< codewords enumerated
  bool budget_exhausted = false;

  [[nodiscard]] bool exact() const noexcept { return d_low == d_high; }
  [[nodiscard]] int d() const {
    if (!exact()) throw std::logic_error("minimum distance only known as an interval");
    return d_high;
  }
};

/// Thrown when an exhaustive enumeration would exceed its configured size.
class EnumerationRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Limits for the distance engines. Zero means unlimited.
struct Budget {
  std::uint64_t max_codewords = 0;
  double max_seconds = 0.0;
};

enum class Engine { Auto, Exhaustive, BrouwerZimmermann };

inline const char* to_string(Engine e) noexcept {
  switch (e) {
    case Engine::Exhaustive: return "exhaustive";
    case Engine::BrouwerZimmermann: return "bz";
    default: return "auto";
  }
}

inline Engine parse_engine(const std::string& s) {
  if (s == "auto") return Engine::Auto;
  if (s == "exhaustive") return Engine::Exhaustive;
  if (s == "bz" || s == "brouwer-zimmermann") return Engine::BrouwerZimmermann;
  throw std::invalid_argument("unknown engine '" + s + "' (expected exhaustive, bz or auto)");
}

struct DistanceOptions {
  Engine engine = Engine::Auto;
  double exhaustive_limit = 2147483648.0;  ///< largest q^k enumerated exhaustively
  Budget budget;
  unsigned threads = 0;                    ///< 0: hardware concurrency
  /// BZ only: stop as soon as a codeword lighter than this is found (0: off).
  int stop_below = 0;
};

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

inline std::size_t padded_length(std::size_t n) { return (n + 63) / 64 * 64; }

// Kernels over padded byte vectors (length a multiple of 64) with entries in
// [0, q). For s = a + b in [0, 2q-2], min(s, s - q) in unsigned 8-bit
// arithmetic is s mod q.

#if defined(__AVX512BW__)

inline int sum_weight(const Symbol* a, const Symbol* b, std::size_t len, Symbol q) noexcept {
  const __m512i qv = _mm512_set1_epi8(static_cast<char>(q));
  int w = 0;
  for (std::size_t i = 0; i < len; i += 64) {
    const __m512i s = _mm512_add_epi8(_mm512_loadu_si512(a + i), _mm512_loadu_si512(b + i));
    const __m512i r = _mm512_min_epu8(s, _mm512_sub_epi8(s, qv));
    w += std::popcount(static_cast<std::uint64_t>(_mm512_test_epi8_mask(r, r)));
  }
  return w;
}

inline void add_into(Symbol* out, const Symbol* a, const Symbol* b, std::size_t len, Symbol q) noexcept {
  const __m512i qv = _mm512_set1_epi8(static_cast<char>(q));
  for (std::size_t i = 0; i < len; i += 64) {
    const __m512i s = _mm512_add_epi8(_mm512_loadu_si512(a + i), _mm512_loadu_si512(b + i));
    _mm512_storeu_si512(out + i, _mm512_min_epu8(s, _mm512_sub_epi8(s, qv)));
  }
}

inline int accumulate_weight(Symbol* acc, const Symbol* b, std::size_t len, Symbol q) noexcept {
  const __m512i qv = _mm512_set1_epi8(static_cast<char>(q));
  int w = 0;
  for (std::size_t i = 0; i < len; i += 64) {
    const __m512i s = _mm512_add_epi8(_mm512_loadu_si512(acc + i), _mm512_loadu_si512(b + i));
    const __m512i r = _mm512_min_epu8(s, _mm512_sub_epi8(s, qv));
    _mm512_storeu_si512(acc + i, r);
    w += std::popcount(static_cast<std::uint64_t>(_mm512_test_epi8_mask(r, r)));
  }
  return w;
}

#elif defined(__AVX2__)

inline __m256i mod_add_256(__m256i x, __m256i y, __m256i qv) noexcept {
  const __m256i s = _mm256_add_epi8(x, y);
  return _mm256_min_epu8(s, _mm256_sub_epi8(s, qv));
}

inline int zero_count_256(__m256i r) noexcept {
  return std::popcount(static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(r, _mm256_setzero_si256()))));
}

inline int sum_weight(const Symbol* a, const Symbol* b, std::size_t len, Symbol q) noexcept {
  const __m256i qv = _mm256_set1_epi8(static_cast<char>(q));
  int zeros = 0;
  for (std::size_t i = 0; i < len; i += 32) {
    const __m256i r = mod_add_256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
                                  _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)), qv);
    zeros += zero_count_256(r);
  }
  return static_cast<int>(len) - zeros;
}

inline void add_into(Symbol* out, const Symbol* a, const Symbol* b, std::size_t len, Symbol q) noexcept {
  const __m256i qv = _mm256_set1_epi8(static_cast<char>(q));
  for (std::size_t i = 0; i < len; i += 32) {
    const __m256i r = mod_add_256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)),
                                  _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)), qv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), r);
  }
}

inline int accumulate_weight(Symbol* acc, const Symbol* b, std::size_t len, Symbol q) noexcept {
  const __m256i qv = _mm256_set1_epi8(static_cast<char>(q));
  int zeros = 0;
  for (std::size_t i = 0; i < len; i += 32) {
    const __m256i r = mod_add_256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i)),
                                  _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i)), qv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), r);
    zeros += zero_count_256(r);
  }
  return static_cast<int>(len) - zeros;
}

#else

inline int sum_weight(const Symbol* __restrict a, const Symbol* __restrict b, std::size_t len, Symbol q) noexcept {
  unsigned w = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const auto s = static_cast<Symbol>(a[i] + b[i]);
    const auto t = static_cast<Symbol>(s - q);
    w += (s < t ? s : t) != 0 ? 1U : 0U;
  }
  return static_cast<int>(w);
}

inline void add_into(Symbol* out, const Symbol* a, const Symbol* b, std::size_t len, Symbol q) noexcept {
  for (std::size_t i = 0; i < len; ++i) {
    const auto s = static_cast<Symbol>(a[i] + b[i]);
    const auto t = static_cast<Symbol>(s - q);
    out[i] = s < t ? s : t;
  }
}

inline int accumulate_weight(Symbol* __restrict acc, const Symbol* __restrict b, std::size_t len, Symbol q) noexcept {
  unsigned w = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const auto s = static_cast<Symbol>(acc[i] + b[i]);
    const auto t = static_cast<Symbol>(s - q);
    const Symbol r = s < t ? s : t;
    acc[i] = r;
    w += r != 0 ? 1U : 0U;
  }
  return static_cast<int>(w);
}

#endif

struct Deadline {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds = 0.0;
  [[nodiscard]] bool expired() const {
    return seconds > 0.0 &&
           std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > seconds;
  }
};

/// Runs tasks [0, count) on `threads` workers with dynamic scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

/// Best codeword found by one task; merged in task order for determinism.
struct TaskBest {
  int weight = std::numeric_limits<int>::max();
  std::vector<Symbol> message;  // over the basis / information-set rows
};

inline void check_singleton(const CodeParams& p) {
  if (p.d_low > p.n - p.k + 1 || p.d_low > p.d_high)
    throw std::logic_error("distance result violates d <= n - k + 1 or d_low <= d_high");
}

}  // namespace detail

/// Walks the q-ary modular Gray code over `k` digits starting from zero.
/// `visit(digit)` is called for each of the q^k - 1 steps; at each step the
/// given digit is incremented by one (mod q).
template <class Visit>
void gray_code_walk(int q, int k, Visit&& visit) {
  std::vector<int> counter(static_cast<std::size_t>(k), 0);
  for (;;) {
    int j = 0;
    while (j < k && counter[static_cast<std::size_t>(j)] == q - 1) counter[static_cast<std::size_t>(j++)] = 0;
    if (j == k) return;
    ++counter[static_cast<std::size_t>(j)];
    visit(j);
  }
}

/// Exact minimum distance by enumerating one message per projective point
/// (leading nonzero digit 1) in Gray-code order, so each successive codeword
/// differs from the previous one by a single basis row. Scalar multiples share
/// a weight, so this covers all q^k - 1 nonzero messages.
inline CodeParams min_distance_exhaustive(const GenMatrix& m, const DistanceOptions& opt = {}) {
  const FieldSpec& F = m.field();
  const int q = F.q();
  GenMatrix work = m;
  GenMatrix transform = detail::identity_matrix(F, m.rows());
  std::vector<int> order(m.n());
  std::iota(order.begin(), order.end(), 0);
  const int k = static_cast<int>(detail::eliminate(work, order, 0, &transform).size());
  const int n = static_cast<int>(m.n());
  if (k == 0) throw std::invalid_argument("minimum distance of the zero code is undefined");

  const double space = std::pow(static_cast<double>(q), k);
  if (space > opt.exhaustive_limit)
    throw EnumerationRefused("exhaustive enumeration refused: q^k = " + std::to_string(q) + "^" + std::to_string(k) +
                             " = " + std::to_string(static_cast<long double>(space)) + " exceeds the limit " +
                             std::to_string(static_cast<long double>(opt.exhaustive_limit)));

  const std::size_t stride = detail::padded_length(m.n());
  std::vector<Symbol> basis(static_cast<std::size_t>(k) * stride, 0);
  for (int i = 0; i < k; ++i) {
    auto r = work.row(static_cast<std::size_t>(i));
    std::copy(r.begin(), r.end(), basis.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * stride));
  }
  auto row_ptr = [&](int i) { return basis.data() + static_cast<std::size_t>(i) * stride; };

  // Task = (lead digit i, values of the digits between `low` and i). Each
  // task Gray-walks the lowest `low` digits.
  constexpr double kTaskSize = 4.0e6;
  struct Task {
    int lead;
    int low;
    std::uint64_t prefix;  // base-q value of digits low..lead-1
  };
  std::vector<Task> tasks;
  for (int lead = 0; lead < k; ++lead) {
    int low = lead;
    while (low > 0 && std::pow(static_cast<double>(q), low) > kTaskSize) --low;
    const auto count = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(q), lead - low)));
    for (std::uint64_t p = 0; p < count; ++p) tasks.push_back({lead, low, p});
  }

  std::vector<detail::TaskBest> best(tasks.size());
  std::vector<std::uint64_t> visited(tasks.size(), 0);
  const auto qs = static_cast<Symbol>(q);
  detail::parallel_for(tasks.size(), detail::resolve_threads(opt.threads), [&](std::size_t t) {
    const Task& task = tasks[t];
    std::vector<Symbol> msg(static_cast<std::size_t>(k), 0);
    std::vector<Symbol> cw(stride, 0);
    msg[static_cast<std::size_t>(task.lead)] = 1;
    std::copy_n(row_ptr(task.lead), stride, cw.begin());
    std::uint64_t p = task.prefix;
    for (int j = task.low; j < task.lead; ++j) {
      const auto digit = static_cast<Symbol>(p % static_cast<std::uint64_t>(q));
      p /= static_cast<std::uint64_t>(q);
      msg[static_cast<std::size_t>(j)] = digit;
      for (Symbol c = 0; c < digit; ++c) detail::add_into(cw.data(), cw.data(), row_ptr(j), stride, qs);
    }
    detail::TaskBest& b = best[t];
    std::uint64_t count = 1;
    int w = hamming_weight(std::span<const Symbol>(cw.data(), stride));
    if (w < b.weight) {
      b.weight = w;
      b.message = msg;
    }
    gray_code_walk(q, task.low, [&](int j) {
      msg[static_cast<std::size_t>(j)] = F.add(msg[static_cast<std::size_t>(j)], 1);
      w = detail::accumulate_weight(cw.data(), row_ptr(j), stride, qs);
      ++count;
      if (w < b.weight) {
        b.weight = w;
        b.message = msg;
      }
    });
    visited[t] = count;
  });

  CodeParams out;
  out.n = n;
  out.k = k;
  out.engine = "exhaustive";
  std::size_t arg = 0;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    out.codewords += visited[t];
    if (best[t].weight < best[arg].weight) arg = t;
  }
  out.d_low = out.d_high = best[arg].weight;
  // Express the witness over the caller's rows: basis = transform * M.
  std::vector<Symbol> msg_m(m.rows(), 0);
  for (int i = 0; i < k; ++i) {
    const Symbol c = best[arg].message[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    auto tr = transform.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < m.rows(); ++j) msg_m[j] = F.add(msg_m[j], F.mul(c, tr[j]));
  }
  out.witness_message = std::move(msg_m);
  out.witness = m.encode(out.witness_message);
  detail::check_singleton(out);
  return out;
}

/// One systematic form used by Brouwer-Zimmermann.
struct InformationSet {
  std::vector<int> columns;  ///< pivot column of each row (k entries)
  int fresh = 0;             ///< columns not covered by earlier sets
  GenMatrix systematic;      ///< = transform * M
  GenMatrix transform;
};

/// Greedy left-to-right construction of information sets over unused
/// columns; a set with fewer than k fresh columns is completed with
/// already-used columns and records how many were fresh.
inline std::vector<InformationSet> build_information_sets(const GenMatrix& m) {
  const FieldSpec& F = m.field();
  const std::size_t k = m.rows();
  const int n = static_cast<int>(m.n());
  std::vector<char> used(m.n(), 0);
  std::vector<InformationSet> sets;
  for (;;) {
    GenMatrix work = m;
    GenMatrix transform = detail::identity_matrix(F, k);
    std::vector<int> fresh_cols, old_cols;
    for (int c = 0; c < n; ++c) (used[static_cast<std::size_t>(c)] ? old_cols : fresh_cols).push_back(c);
    std::vector<int> piv = detail::eliminate(work, fresh_cols, 0, &transform);
    const int fresh = static_cast<int>(piv.size());
    if (fresh == 0) break;
    if (piv.size() < k) {
      std::vector<int> more = detail::eliminate(work, old_cols, piv.size(), &transform);
      piv.insert(piv.end(), more.begin(), more.end());
    }
    if (piv.size() != k) throw std::logic_error("information set construction lost rank");
    for (int i = 0; i < fresh; ++i) used[static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])] = 1;
    sets.push_back({std::move(piv), fresh, std::move(work), std::move(transform)});
  }
  return sets;
}

/// Brouwer-Zimmermann minimum distance. For weights w = 1, 2, ... every
/// information set enumerates the codewords whose restriction to it has
/// weight w; after a set has finished weight w, unseen codewords carry at
/// least w + 1 - (k - fresh) nonzeros on its fresh columns, and the sum over
/// sets is a lower bound. Stops once the bound meets the lightest codeword
/// seen, or returns the interval when the budget runs out.
inline CodeParams min_distance_bz(const GenMatrix& m, const DistanceOptions& opt = {}) {
  const FieldSpec& F = m.field();
  const int q = F.q();
  const auto qs = static_cast<Symbol>(q);
  const int k = static_cast<int>(m.rows());
  const int n = static_cast<int>(m.n());
  if (k == 0) throw std::invalid_argument("minimum distance of the zero code is undefined");
  if (rank_of(m) != k)
    throw std::invalid_argument("Brouwer-Zimmermann needs a full-rank generator matrix; row-reduce it first (rref)");

  const std::vector<InformationSet> sets = build_information_sets(m);
  const std::size_t nsets = sets.size();

  // Redundancy part of every row multiple, per set.
  const std::size_t red = static_cast<std::size_t>(n - k);
  const std::size_t stride = std::max<std::size_t>(64, detail::padded_length(red));
  const auto qm1 = static_cast<std::size_t>(q - 1);
  std::vector<std::vector<Symbol>> mults(nsets);
  for (std::size_t s = 0; s < nsets; ++s) {
    std::vector<char> is_info(m.n(), 0);
    for (int c : sets[s].columns) is_info[static_cast<std::size_t>(c)] = 1;
    std::vector<int> red_cols;
    for (int c = 0; c < n; ++c)
      if (!is_info[static_cast<std::size_t>(c)]) red_cols.push_back(c);
    auto& mv = mults[s];
    mv.assign(static_cast<std::size_t>(k) * qm1 * stride, 0);
    for (int i = 0; i < k; ++i)
      for (std::size_t c = 1; c <= qm1; ++c) {
        Symbol* dst = mv.data() + (static_cast<std::size_t>(i) * qm1 + (c - 1)) * stride;
        for (std::size_t j = 0; j < red_cols.size(); ++j)
          dst[j] = F.mul(static_cast<Symbol>(c), sets[s].systematic.at(static_cast<std::size_t>(i), static_cast<std::size_t>(red_cols[j])));
      }
  }

  CodeParams out;
  out.n = n;
  out.k = k;
  out.engine = "bz";
  out.d_low = 1;
  out.d_high = std::numeric_limits<int>::max();
  std::size_t best_set = 0;
  std::vector<Symbol> best_msg;  // over the rows of sets[best_set].systematic

  std::vector<int> done(nsets, 0);  // highest weight fully enumerated per set
  auto lower_bound = [&] {
    int lb = 0;
    for (std::size_t s = 0; s < nsets; ++s) lb += std::max(0, done[s] + 1 - (k - sets[s].fresh));
    return std::max(lb, 1);
  };

  detail::Deadline deadline{std::chrono::steady_clock::now(), opt.budget.max_seconds};
  std::atomic<std::uint64_t> enumerated{0};
  std::atomic<bool> abort{false};
  const unsigned threads = detail::resolve_threads(opt.threads);

  // Enumerates all messages of weight exactly w on set s whose first nonzero
  // coefficient is 1. Returns false if interrupted by the budget.
  auto enumerate = [&](std::size_t s, int w) -> bool {
    const Symbol* mv = mults[s].data();
    auto mult_ptr = [&](int row, int c) {
      return mv + (static_cast<std::size_t>(row) * qm1 + static_cast<std::size_t>(c - 1)) * stride;
    };
    // Tasks: first row (w <= 2) or first two rows with the second
    // coefficient (w >= 3).
    struct Task {
      int r1, r2, c2;
    };
    std::vector<Task> tasks;
    if (w <= 2) {
      for (int r1 = 0; r1 + w <= k; ++r1) tasks.push_back({r1, -1, 0});
    } else {
      for (int r1 = 0; r1 + w <= k; ++r1)
        for (int r2 = r1 + 1; r2 + (w - 1) <= k; ++r2)
          for (int c2 = 1; c2 < q; ++c2) tasks.push_back({r1, r2, c2});
    }
    std::vector<detail::TaskBest> best(tasks.size());
    detail::parallel_for(tasks.size(), threads, [&](std::size_t t) {
      if (abort.load(std::memory_order_relaxed)) return;
      const Task& task = tasks[t];
      detail::TaskBest& b = best[t];
      std::vector<int> rows(static_cast<std::size_t>(w));
      std::vector<int> coef(static_cast<std::size_t>(w));
      std::vector<Symbol> partial(static_cast<std::size_t>(w) * stride, 0);
      std::uint64_t local = 0;
      auto record = [&](int weight) {
        if (weight < b.weight) {
          b.weight = weight;
          b.message.assign(static_cast<std::size_t>(k), 0);
          for (int i = 0; i < w; ++i)
            b.message[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)])] = static_cast<Symbol>(coef[static_cast<std::size_t>(i)]);
        }
      };
      rows[0] = task.r1;
      coef[0] = 1;
      std::copy_n(mult_ptr(task.r1, 1), stride, partial.begin());
      if (w == 1) {
        record(1 + hamming_weight(std::span<const Symbol>(partial.data(), stride)));
        enumerated.fetch_add(1, std::memory_order_relaxed);
        return;
      }
      int depth = 1;
      if (w >= 3) {
        rows[1] = task.r2;
        coef[1] = task.c2;
        detail::add_into(partial.data() + stride, partial.data(), mult_ptr(task.r2, task.c2), stride, qs);
        depth = 2;
      }
      // Depth-first over the remaining rows; the last level is fused into a
      // weight count without storing the sum.
      auto dfs = [&](auto&& self, int d) -> void {
        const Symbol* base = partial.data() + static_cast<std::size_t>(d - 1) * stride;
        const int start = rows[static_cast<std::size_t>(d - 1)] + 1;
        if (d == w - 1) {
          for (int r = start; r < k; ++r) {
            rows[static_cast<std::size_t>(d)] = r;
            for (int c = 1; c < q; ++c) {
              const int wt = w + detail::sum_weight(base, mult_ptr(r, c), stride, qs);
              if (wt < b.weight) {
                coef[static_cast<std::size_t>(d)] = c;
                record(wt);
              }
            }
            local += qm1;
          }
          return;
        }
        for (int r = start; r + (w - d) <= k; ++r) {
          rows[static_cast<std::size_t>(d)] = r;
          for (int c = 1; c < q; ++c) {
            coef[static_cast<std::size_t>(d)] = c;
            detail::add_into(partial.data() + static_cast<std::size_t>(d) * stride, base, mult_ptr(r, c), stride, qs);
            self(self, d + 1);
          }
          if (local > (1U << 22U)) {
            const std::uint64_t total = enumerated.fetch_add(local, std::memory_order_relaxed) + local;
            local = 0;
            if ((opt.budget.max_codewords != 0 && total > opt.budget.max_codewords) || deadline.expired())
              abort.store(true, std::memory_order_relaxed);
            if (abort.load(std::memory_order_relaxed)) return;
          }
        }
      };
      dfs(dfs, depth);
      enumerated.fetch_add(local, std::memory_order_relaxed);
    });
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (best[t].weight < out.d_high) {
        out.d_high = best[t].weight;
        best_set = s;
        best_msg = best[t].message;
      }
    }
    return !abort.load();
  };

  bool finished = false;
  for (int w = 1; w <= k && !finished; ++w) {
    for (std::size_t s = 0; s < nsets; ++s) {
      // A set contributes to the bound only once w + 1 exceeds its overlap;
      // when it first does, it catches up on all lower weights.
      if (w + 1 - (k - sets[s].fresh) <= 0) continue;
      for (int ww = done[s] + 1; ww <= w; ++ww) {
        if (!enumerate(s, ww)) {
          finished = true;
          out.budget_exhausted = true;
          break;
        }
        done[s] = ww;
      }
      if (finished) break;
      out.d_low = std::max(out.d_low, lower_bound());
      // A full set at weight k has seen every codeword up to scalars.
      if (done[s] == k && sets[s].fresh == k) out.d_low = out.d_high;
      if (out.d_low >= out.d_high || (opt.stop_below > 0 && out.d_high < opt.stop_below)) {
        finished = true;
        break;
      }
      if (opt.budget.max_codewords != 0 && enumerated.load() > opt.budget.max_codewords) abort = true;
      if (deadline.expired()) abort = true;
      if (abort.load()) {
        finished = true;
        out.budget_exhausted = true;
        break;
      }
    }
  }
  out.d_low = std::min(out.d_low, out.d_high);
  out.codewords = enumerated.load();

  // Witness over the caller's rows: systematic = transform * M.
  const InformationSet& is = sets[best_set];
  std::vector<Symbol> msg_m(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    const Symbol c = best_msg[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    auto tr = is.transform.row(static_cast<std::size_t>(i));
    for (int j = 0; j < k; ++j) msg_m[static_cast<std::size_t>(j)] = F.add(msg_m[static_cast<std::size_t>(j)], F.mul(c, tr[static_cast<std::size_t>(j)]));
  }
  out.witness_message = std::move(msg_m);
  out.witness = m.encode(out.witness_message);
  if (hamming_weight(out.witness) != out.d_high) throw std::logic_error("BZ witness weight disagrees with d_high");
  detail::check_singleton(out);
  return out;
}

/// Dispatches on opt.engine; Auto picks exhaustive when q^k fits the limit.
inline CodeParams min_distance(const GenMatrix& m, const DistanceOptions& opt = {}) {
  Engine e = opt.engine;
  if (e == Engine::Auto) {
    const int k = rank_of(m);
    e = std::pow(static_cast<double>(m.q()), k) <= opt.exhaustive_limit ? Engine::Exhaustive : Engine::BrouwerZimmermann;
  }
  if (e == Engine::Exhaustive) return min_distance_exhaustive(m, opt);
  if (rank_of(m) != static_cast<int>(m.rows())) return min_distance_bz(row_basis(m), opt);
  return min_distance_bz(m, opt);
}

struct ProbeResult {
  int weight = 0;  ///< upper bound on d
  std::vector<Symbol> witness;
  std::vector<Symbol> message;
};

/// Upper bound on d from all rows, all pairs r_i + c r_j, and `trials`
/// random nonzero messages.
inline ProbeResult random_weight_probe(const GenMatrix& m, std::uint64_t trials, std::uint64_t seed) {
  const FieldSpec& F = m.field();
  const std::size_t k = m.rows();
  const int q = F.q();
  ProbeResult best;
  best.weight = std::numeric_limits<int>::max();
  std::vector<Symbol> msg(k, 0);
  auto consider = [&] {
    std::vector<Symbol> c = m.encode(msg);
    const int w = hamming_weight(c);
    if (w > 0 && w < best.weight) {
      best.weight = w;
      best.witness = std::move(c);
      best.message = msg;
    }
  };
  for (std::size_t i = 0; i < k; ++i) {
    std::fill(msg.begin(), msg.end(), 0);
    msg[i] = 1;
    consider();
    for (std::size_t j = i + 1; j < k; ++j)
      for (int c = 1; c < q; ++c) {
        msg[j] = static_cast<Symbol>(c);
        consider();
      }
  }
  Rng rng(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    bool nonzero = false;
    for (auto& s : msg) {
      s = static_cast<Symbol>(uniform_below(rng, static_cast<std::uint64_t>(q)));
      nonzero = nonzero || s != 0;
    }
    if (nonzero) consider();
  }
  if (best.weight == std::numeric_limits<int>::max())
    throw std::invalid_argument("random_weight_probe: generator matrix has rank 0");
  return best;
}

}  // namespace qtcodes

#endif  // QTCODES_LINCODE_HPP
