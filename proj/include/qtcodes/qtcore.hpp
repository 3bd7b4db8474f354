// Quasi-twisted code constructions: constacyclic shifts, twistulant blocks,
// the stride split of a long constacyclic generator into defining
// polynomials, block joining, and the 1-generator (ASR) construction.

#ifndef QTCODES_QTCORE_HPP
#define QTCODES_QTCORE_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "galois.hpp"
#include "lincode.hpp"
#include "polyring.hpp"

namespace qtcodes {

/// q, shift constant a, long length N = m * p.
struct EnsembleSpec {
  int q = 0;
  Symbol a = 1;
  long long N = 0;
  int m = 0;
  long long p = 0;

  void validate() const {
    if (!is_supported_prime(q)) throw std::invalid_argument("unsupported q=" + std::to_string(q));
    if (a == 0 || a >= q) throw std::invalid_argument("shift constant must be a nonzero element of GF(q)");
    if (m < 1 || p < 1 || static_cast<long long>(m) * p != N)
      throw std::invalid_argument("ensemble requires N = m * p (N=" + std::to_string(N) + ", m=" + std::to_string(m) +
                                  ", p=" + std::to_string(p) + ")");
  }
};

/// pi_{ell,a}(c) = (a c_{n-ell}, ..., a c_{n-1}, c_0, ..., c_{n-ell-1}).
inline std::vector<Symbol> consta_shift(const FieldSpec& field, std::span<const Symbol> v, int ell, Symbol a) {
  const int n = static_cast<int>(v.size());
  if (ell < 1 || ell > n) throw std::out_of_range("shift of " + std::to_string(ell) + " positions on length " + std::to_string(n));
  std::vector<Symbol> out(v.size());
  for (int i = 0; i < n; ++i) {
    const int src = i - ell;
    out[static_cast<std::size_t>(i)] = src < 0 ? field.mul(a, v[static_cast<std::size_t>(src + n)]) : v[static_cast<std::size_t>(src)];
  }
  return out;
}

/// m x m a-circulant matrix of g: row 0 is g, row i+1 is the constacyclic
/// shift of row i (the coefficients of x^(i+1) g mod x^m - a).
inline GenMatrix twistulant_matrix(const Polynomial& g, int m, Symbol a) {
  if (g.degree() >= m)
    throw std::invalid_argument("twistulant: deg(g)=" + std::to_string(g.degree()) + " must be < m=" + std::to_string(m));
  const FieldSpec& F = g.field();
  GenMatrix t(F, static_cast<std::size_t>(m));
  std::vector<Symbol> row = g.padded(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    t.add_row(row);
    row = consta_shift(F, row, 1, a);
  }
  return t;
}

/// rank of the a-circulant block of g: m - deg(gcd(g, x^m - a)); 0 for g = 0.
inline int rank_of_block(const Polynomial& g, int m, Symbol a) {
  if (g.is_zero()) return 0;
  const Polynomial mod = Polynomial::binomial(g.field(), m, a);
  return m - poly_gcd(g, mod).degree();
}

class TwistulantBlock {
 public:
  TwistulantBlock(Polynomial g, int m, Symbol a) : g_(std::move(g)), m_(m), a_(a) {
    rank_ = rank_of(twistulant_matrix(g_, m_, a_));
  }

  [[nodiscard]] const Polynomial& poly() const noexcept { return g_; }
  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] Symbol a() const noexcept { return a_; }
  [[nodiscard]] int rank() const noexcept { return rank_; }
  [[nodiscard]] GenMatrix matrix() const { return twistulant_matrix(g_, m_, a_); }

 private:
  Polynomial g_;
  int m_;
  Symbol a_;
  int rank_ = 0;
};

inline TwistulantBlock twistulant(const Polynomial& g, int m, Symbol a) { return {g, m, a}; }

struct StandardGenerator {
  Polynomial D;
  int k = 0;
};

/// D = monic gcd(x^m - a, defs...), k = m - deg(D).
inline StandardGenerator standard_generator(std::span<const Polynomial> defs, int m, Symbol a) {
  if (defs.empty() || std::all_of(defs.begin(), defs.end(), [](const Polynomial& f) { return f.is_zero(); }))
    throw std::invalid_argument("standard_generator: all defining polynomials are zero");
  Polynomial D = Polynomial::binomial(defs.front().field(), m, a);
  for (const auto& f : defs) {
    if (f.is_zero()) continue;
    D = poly_gcd(D, f);
    if (D.is_one()) break;
  }
  D = poly_monic(D);
  return {D, m - D.degree()};
}

struct SplitResult {
  EnsembleSpec spec;
  Polynomial G;
  std::vector<Polynomial> defs;  ///< g_1 ... g_p, each of degree < m
  Polynomial D;
  int k = 0;
};

/// g_i collects coefficients i, i + p, i + 2p, ... of G.
inline SplitResult split_defining_polys(const Polynomial& G, const EnsembleSpec& spec) {
  spec.validate();
  if (G.q() != spec.q) throw std::invalid_argument("split: field mismatch");
  if (G.is_zero()) throw std::invalid_argument("split: G must be nonzero");
  if (G.degree() >= spec.N)
    throw std::invalid_argument("split: deg(G)=" + std::to_string(G.degree()) + " must be < N=" + std::to_string(spec.N));
  const FieldSpec& F = G.field();
  SplitResult out{spec, G, {}, Polynomial(F), 0};
  out.defs.reserve(static_cast<std::size_t>(spec.p));
  for (long long i = 0; i < spec.p; ++i) {
    std::vector<Symbol> c(static_cast<std::size_t>(spec.m), 0);
    for (int j = 0; j < spec.m; ++j) c[static_cast<std::size_t>(j)] = G.coeff(static_cast<std::size_t>(i + j * spec.p));
    out.defs.emplace_back(F, std::move(c));
  }
  StandardGenerator sg = standard_generator(out.defs, spec.m, spec.a);
  out.D = std::move(sg.D);
  out.k = sg.k;
  return out;
}

/// Inverse of the split: coefficient i + j p of the result is coefficient j of defs[i].
inline Polynomial interleave(std::span<const Polynomial> defs, int m) {
  if (defs.empty()) throw std::invalid_argument("interleave: no polynomials");
  const std::size_t p = defs.size();
  std::vector<Symbol> c(p * static_cast<std::size_t>(m), 0);
  for (std::size_t i = 0; i < p; ++i)
    for (int j = 0; j < m; ++j) c[i + static_cast<std::size_t>(j) * p] = defs[i].coeff(static_cast<std::size_t>(j));
  return {defs.front().field(), std::move(c)};
}

/// [T(g_1) | ... | T(g_t)] row-reduced to a basis. Blocks are contiguous;
/// inputs are reduced mod x^m - a first.
inline GenMatrix join_blocks(std::span<const Polynomial> defs, int m, Symbol a) {
  if (defs.empty()) throw std::invalid_argument("join_blocks: empty selection");
  const FieldSpec& F = defs.front().field();
  const std::size_t t = defs.size();
  const auto mm = static_cast<std::size_t>(m);
  std::vector<std::vector<Symbol>> rows(mm, std::vector<Symbol>(t * mm, 0));
  for (std::size_t b = 0; b < t; ++b) {
    const GenMatrix blk = twistulant_matrix(reduce_mod_binomial(defs[b], m, a), m, a);
    for (std::size_t i = 0; i < mm; ++i) std::copy(blk.row(i).begin(), blk.row(i).end(), rows[i].begin() + static_cast<std::ptrdiff_t>(b * mm));
  }
  return row_basis(GenMatrix(F, rows));
}

/// True iff the per-block constacyclic shift of every generator row stays in
/// the row space.
inline bool is_qt_closed(const GenMatrix& M, int m, Symbol a) {
  if (m < 1 || M.n() % static_cast<std::size_t>(m) != 0)
    throw std::invalid_argument("is_qt_closed: n=" + std::to_string(M.n()) + " not divisible by m=" + std::to_string(m));
  const FieldSpec& F = M.field();
  const RrefResult basis = rref(M);
  const auto mm = static_cast<std::size_t>(m);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    auto row = M.row(i);
    std::vector<Symbol> shifted(row.size());
    for (std::size_t b = 0; b < M.n() / mm; ++b) {
      auto s = consta_shift(F, row.subspan(b * mm, mm), 1, a);
      std::copy(s.begin(), s.end(), shifted.begin() + static_cast<std::ptrdiff_t>(b * mm));
    }
    if (!in_row_space(basis, shifted)) return false;
  }
  return true;
}

/// Generator of the 1-generator QT code (g f_1, ..., g f_ell) mod x^m - a,
/// where g | x^m - a and every f_i is coprime to h = (x^m - a) / g.
inline GenMatrix asr_generate(const Polynomial& g, std::span<const Polynomial> fs, int m, Symbol a) {
  if (fs.empty()) throw std::invalid_argument("asr_generate: need at least one f_i");
  const FieldSpec& F = g.field();
  const Polynomial mod = Polynomial::binomial(F, m, a);
  const DivMod dm = poly_divmod(mod, g);
  if (!dm.remainder.is_zero()) throw std::invalid_argument("asr_generate: g does not divide x^m - a");
  const Polynomial& h = dm.quotient;
  std::vector<Polynomial> blocks;
  blocks.reserve(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].is_zero() || !poly_gcd(fs[i], h).is_one())
      throw std::invalid_argument("asr_generate: gcd(f_" + std::to_string(i + 1) + ", h) != 1");
    blocks.push_back(reduce_mod_binomial(poly_mul(g, fs[i]), m, a));
  }
  return join_blocks(blocks, m, a);
}

/// ell * d(C_g), the guaranteed distance of any ASR code built on g.
inline int asr_distance_bound(const Polynomial& g, int ell, int m, Symbol a, const DistanceOptions& opt = {}) {
  if (ell < 1) throw std::invalid_argument("asr_distance_bound: ell must be >= 1");
  if (!poly_divides(g, Polynomial::binomial(g.field(), m, a)))
    throw std::invalid_argument("asr_distance_bound: g does not divide x^m - a");
  if (g.degree() >= m) throw std::invalid_argument("asr_distance_bound: g generates the zero code");
  const GenMatrix cg = row_basis(twistulant_matrix(g, m, a));
  return ell * min_distance(cg, opt).d();
}

struct HighestRankGcd {
  Polynomial gcd_all;
  Polynomial gcd_top;
  bool equal = false;
  bool hypothesis = false;  ///< max block rank equals m - deg(gcd_all)
  int max_rank = 0;
  std::vector<std::size_t> top;  ///< indices of the highest-rank defs
};

/// Compares gcd(x^m - a, all defs) with gcd(x^m - a, highest-rank defs).
inline HighestRankGcd check_highest_rank_gcd(std::span<const Polynomial> defs, int m, Symbol a) {
  HighestRankGcd out{standard_generator(defs, m, a).D, Polynomial(defs.front().field()), false, false, 0, {}};
  std::vector<int> ranks;
  ranks.reserve(defs.size());
  for (const auto& f : defs) ranks.push_back(rank_of_block(reduce_mod_binomial(f, m, a), m, a));
  out.max_rank = *std::max_element(ranks.begin(), ranks.end());
  std::vector<Polynomial> top;
  for (std::size_t i = 0; i < defs.size(); ++i)
    if (ranks[i] == out.max_rank) {
      out.top.push_back(i);
      top.push_back(defs[i]);
    }
  out.gcd_top = standard_generator(top, m, a).D;
  out.equal = out.gcd_all == out.gcd_top;
  out.hypothesis = out.max_rank == m - out.gcd_all.degree();
  return out;
}

}  // namespace qtcodes

#endif  // QTCODES_QTCORE_HPP
