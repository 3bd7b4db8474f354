// Dense univariate polynomials over GF(q): ring arithmetic, gcd, the
// factorization of x^N - a, and windowed enumeration of its monic divisors.

#ifndef QTCODES_POLYRING_HPP
#define QTCODES_POLYRING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "galois.hpp"
#include "random.hpp"

namespace qtcodes {

/// Degree reported for the zero polynomial.
inline constexpr int kZeroDegree = -1;

/// Coefficient sequence over GF(q); index i holds the coefficient of x^i.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
class Polynomial {
 public:
  explicit Polynomial(const FieldSpec& field) : field_(&field) {}

  Polynomial(const FieldSpec& field, std::vector<Symbol> coeffs) : field_(&field), c_(std::move(coeffs)) {
    for (Symbol s : c_)
      if (s >= field.q())
        throw std::out_of_range("coefficient " + std::to_string(int{s}) + " not in GF(" +
                                std::to_string(field.q()) + ")");
    trim();
  }

  Polynomial(const FieldSpec& field, std::initializer_list<int> coeffs) : field_(&field) {
    c_.reserve(coeffs.size());
    for (int v : coeffs) c_.push_back(field.reduce(v));
    trim();
  }

  static Polynomial constant(const FieldSpec& field, Symbol c) { return Polynomial(field, std::vector<Symbol>{c}); }

  static Polynomial monomial(const FieldSpec& field, int degree, Symbol c = 1) {
    std::vector<Symbol> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return Polynomial(field, std::move(v));
  }

  /// x^n - a.
  static Polynomial binomial(const FieldSpec& field, long long n, Symbol a) {
    if (n < 1) throw std::invalid_argument("x^n - a requires n >= 1");
    std::vector<Symbol> v(static_cast<std::size_t>(n) + 1, 0);
    v[0] = field.neg(a);
    v.back() = 1;
    return Polynomial(field, std::move(v));
  }

  [[nodiscard]] const FieldSpec& field() const noexcept { return *field_; }
  [[nodiscard]] int q() const noexcept { return field_->q(); }
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  [[nodiscard]] bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  [[nodiscard]] std::size_t size() const noexcept { return c_.size(); }
  [[nodiscard]] const std::vector<Symbol>& coeffs() const noexcept { return c_; }

  [[nodiscard]] Symbol coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Symbol{0}; }
  [[nodiscard]] Element element(std::size_t i) const { return {*field_, coeff(i)}; }
  [[nodiscard]] Symbol leading() const noexcept { return c_.empty() ? Symbol{0} : c_.back(); }
  [[nodiscard]] bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

  /// Number of nonzero coefficients.
  [[nodiscard]] int weight() const noexcept {
    return static_cast<int>(std::count_if(c_.begin(), c_.end(), [](Symbol s) { return s != 0; }));
  }

  /// Coefficients zero-padded (or truncated) to exactly `len` entries.
  [[nodiscard]] std::vector<Symbol> padded(std::size_t len) const {
    std::vector<Symbol> v(len, 0);
    std::copy_n(c_.begin(), std::min(len, c_.size()), v.begin());
    return v;
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) noexcept {
    return f.field_ == g.field_ && f.c_ == g.c_;
  }

  /// Orders by degree, then by coefficients from x^0 upward.
  friend bool operator<(const Polynomial& f, const Polynomial& g) noexcept {
    if (f.c_.size() != g.c_.size()) return f.c_.size() < g.c_.size();
    return f.c_ < g.c_;
  }

 private:
  void trim() noexcept {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  const FieldSpec* field_;
  std::vector<Symbol> c_;
};

namespace detail {

inline void require_same_field(const Polynomial& f, const Polynomial& g) {
  if (&f.field() != &g.field())
    throw std::invalid_argument("field mismatch: GF(" + std::to_string(f.q()) + ") vs GF(" +
                                std::to_string(g.q()) + ")");
}

}  // namespace detail

inline Polynomial poly_add(const Polynomial& f, const Polynomial& g) {
  detail::require_same_field(f, g);
  const FieldSpec& F = f.field();
  std::vector<Symbol> r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(f.coeff(i), g.coeff(i));
  return {F, std::move(r)};
}

inline Polynomial poly_sub(const Polynomial& f, const Polynomial& g) {
  detail::require_same_field(f, g);
  const FieldSpec& F = f.field();
  std::vector<Symbol> r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(f.coeff(i), g.coeff(i));
  return {F, std::move(r)};
}

inline Polynomial poly_scale(const Polynomial& f, Symbol c) {
  const FieldSpec& F = f.field();
  std::vector<Symbol> r(f.coeffs());
  for (Symbol& s : r) s = F.mul(s, c);
  return {F, std::move(r)};
}

inline Polynomial poly_mul(const Polynomial& f, const Polynomial& g) {
  detail::require_same_field(f, g);
  const FieldSpec& F = f.field();
  if (f.is_zero() || g.is_zero()) return Polynomial(F);
  const int q = F.q();
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  // Partial sums stay below 2^32 for any realistic length (<= 36 per term).
  std::vector<std::uint32_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const std::uint32_t ai = a[i];
    std::uint32_t* out = acc.data() + i;
    for (std::size_t j = 0; j < b.size(); ++j) out[j] += ai * b[j];
  }
  std::vector<Symbol> r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<Symbol>(acc[i] % static_cast<std::uint32_t>(q));
  return {F, std::move(r)};
}

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// f = quotient * g + remainder with deg(remainder) < deg(g).
inline DivMod poly_divmod(const Polynomial& f, const Polynomial& g) {
  detail::require_same_field(f, g);
  const FieldSpec& F = f.field();
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  if (f.degree() < g.degree()) return {Polynomial(F), f};
  std::vector<Symbol> r = f.coeffs();
  const auto& d = g.coeffs();
  const std::size_t dg = d.size() - 1;
  const Symbol lead_inv = F.inv(g.leading());
  std::vector<Symbol> quot(r.size() - dg, 0);
  for (std::size_t i = r.size(); i-- > dg;) {
    const Symbol c = F.mul(r[i], lead_inv);
    quot[i - dg] = c;
    if (c == 0) continue;
    const Symbol nc = F.neg(c);
    for (std::size_t j = 0; j <= dg; ++j) r[i - dg + j] = F.add(r[i - dg + j], F.mul(nc, d[j]));
  }
  r.resize(dg);
  return {Polynomial(F, std::move(quot)), Polynomial(F, std::move(r))};
}

inline Polynomial poly_mod(const Polynomial& f, const Polynomial& g) { return poly_divmod(f, g).remainder; }

inline Polynomial poly_monic(const Polynomial& f) {
  if (f.is_zero() || f.is_monic()) return f;
  return poly_scale(f, f.field().inv(f.leading()));
}

/// Monic gcd by the Euclidean algorithm.
inline Polynomial poly_gcd(Polynomial f, Polynomial g) {
  detail::require_same_field(f, g);
  if (f.is_zero() && g.is_zero()) throw std::domain_error("gcd(0, 0) is undefined");
  while (!g.is_zero()) {
    Polynomial r = poly_mod(f, g);
    f = std::move(g);
    g = std::move(r);
  }
  return poly_monic(f);
}

inline bool poly_divides(const Polynomial& d, const Polynomial& f) { return poly_mod(f, d).is_zero(); }

/// f mod (x^m - a), by folding high coefficients.
inline Polynomial reduce_mod_binomial(const Polynomial& f, int m, Symbol a) {
  if (m < 1) throw std::invalid_argument("block length must be >= 1");
  const FieldSpec& F = f.field();
  if (f.degree() < m) return f;
  std::vector<Symbol> r = f.coeffs();
  for (std::size_t i = r.size(); i-- > static_cast<std::size_t>(m);) {
    if (r[i] == 0) continue;
    r[i - m] = F.add(r[i - m], F.mul(a, r[i]));
    r[i] = 0;
  }
  r.resize(static_cast<std::size_t>(m));
  return {F, std::move(r)};
}

inline Polynomial poly_mulmod(const Polynomial& f, const Polynomial& g, const Polynomial& m) {
  return poly_mod(poly_mul(f, g), m);
}

inline Polynomial poly_powmod(Polynomial base, std::uint64_t e, const Polynomial& m) {
  Polynomial r = poly_mod(Polynomial::constant(base.field(), 1), m);
  base = poly_mod(base, m);
  while (e != 0) {
    if (e & 1U) r = poly_mulmod(r, base, m);
    e >>= 1U;
    if (e != 0) base = poly_mulmod(base, base, m);
  }
  return r;
}

inline Polynomial poly_pow(const Polynomial& f, long long e) {
  Polynomial r = Polynomial::constant(f.field(), 1);
  Polynomial b = f;
  while (e > 0) {
    if (e & 1) r = poly_mul(r, b);
    e >>= 1;
    if (e > 0) b = poly_mul(b, b);
  }
  return r;
}

/// True iff f (deg >= 1) is irreducible; Ben-Or test.
inline bool is_irreducible(const Polynomial& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const FieldSpec& F = f.field();
  const Polynomial x = Polynomial::monomial(F, 1);
  Polynomial xp = x;
  for (int j = 1; j <= n / 2; ++j) {
    xp = poly_powmod(xp, static_cast<std::uint64_t>(F.q()), f);
    if (!poly_gcd(poly_sub(xp, x), f).is_one()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text format

enum class CoeffOrder { LowFirst, HighFirst };

inline const char* to_string(CoeffOrder o) noexcept { return o == CoeffOrder::LowFirst ? "low-first" : "high-first"; }

/// Parses an optionally bracketed digit string. Each digit must be < q.
inline Polynomial parse_poly(const FieldSpec& field, std::string_view text, CoeffOrder order = CoeffOrder::LowFirst) {
  auto is_space = [](char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("unbalanced bracket in polynomial \"" + std::string(text) + "\"");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<Symbol> c;
  c.reserve(text.size());
  for (char ch : text) {
    if (ch < '0' || ch > '9')
      throw std::invalid_argument("invalid character '" + std::string(1, ch) + "' in polynomial");
    const int v = ch - '0';
    if (v >= field.q())
      throw std::invalid_argument("digit " + std::to_string(v) + " >= q=" + std::to_string(field.q()) +
                                  " in polynomial \"" + std::string(text) + "\"");
    c.push_back(static_cast<Symbol>(v));
  }
  if (order == CoeffOrder::HighFirst) std::reverse(c.begin(), c.end());
  return {field, std::move(c)};
}

/// Digit string without brackets; the zero polynomial formats as "".
inline std::string format_poly(const Polynomial& f, CoeffOrder order = CoeffOrder::LowFirst) {
  std::string s;
  s.reserve(f.size());
  for (Symbol c : f.coeffs()) s.push_back(static_cast<char>('0' + c));
  if (order == CoeffOrder::HighFirst) std::reverse(s.begin(), s.end());
  return s;
}

/// Human-readable form, e.g. "x^2 + 4".
inline std::string pretty_poly(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (int i = f.degree(); i >= 0; --i) {
    const Symbol c = f.coeff(static_cast<std::size_t>(i));
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += std::to_string(int{c});
    } else {
      if (c != 1) s += std::to_string(int{c});
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Number theory helpers

namespace detail {

inline std::vector<long long> prime_factors(long long n) {
  std::vector<long long> ps;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline std::vector<long long> divisors(long long n) {
  std::vector<long long> ds;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    ds.push_back(d);
    if (d != n / d) ds.push_back(n / d);
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

/// Least s >= 1 with q^s = 1 mod D (gcd(q, D) = 1).
inline int multiplicative_order(long long q, long long D) {
  if (D == 1) return 1;
  long long x = q % D;
  int s = 1;
  while (x != 1) {
    x = x * q % D;
    ++s;
  }
  return s;
}

/// GF(q^s) = GF(q)[y]/(F(y)), elements as coefficient vectors of length s.
class ExtField {
 public:
  using Elem = std::vector<Symbol>;

  ExtField(const FieldSpec& base, int s, Rng& rng) : base_(&base), s_(s) {
    if (s < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (s == 1) {
      modulus_ = {0, 1};
      return;
    }
    for (;;) {
      const auto len = static_cast<std::size_t>(s) + 1;
      std::vector<Symbol> c(len, 0);
      for (std::size_t i = 0; i + 1 < len; ++i) c[i] = static_cast<Symbol>(uniform_below(rng, base.q()));
      c[len - 1] = 1;
      if (c[0] == 0) continue;
      Polynomial f(base, c);
      if (is_irreducible(f)) {
        modulus_ = std::move(c);
        return;
      }
    }
  }

  [[nodiscard]] int degree() const noexcept { return s_; }
  [[nodiscard]] Elem one() const {
    Elem e(static_cast<std::size_t>(s_), 0);
    e[0] = 1;
    return e;
  }
  [[nodiscard]] Elem constant(Symbol c) const {
    Elem e(static_cast<std::size_t>(s_), 0);
    e[0] = c;
    return e;
  }
  [[nodiscard]] bool is_constant(const Elem& e) const {
    return std::all_of(e.begin() + 1, e.end(), [](Symbol c) { return c == 0; });
  }

  [[nodiscard]] Elem add(const Elem& x, const Elem& y) const {
    Elem r(x.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = base_->add(x[i], y[i]);
    return r;
  }
  [[nodiscard]] Elem sub(const Elem& x, const Elem& y) const {
    Elem r(x.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = base_->sub(x[i], y[i]);
    return r;
  }

  [[nodiscard]] Elem mul(const Elem& x, const Elem& y) const {
    const auto s = static_cast<std::size_t>(s_);
    const auto q = static_cast<std::uint32_t>(base_->q());
    std::vector<std::uint32_t> acc(2 * s - 1, 0);
    for (std::size_t i = 0; i < s; ++i) {
      if (x[i] == 0) continue;
      const std::uint32_t xi = x[i];
      for (std::size_t j = 0; j < s; ++j) acc[i + j] += xi * y[j];
    }
    for (std::size_t i = 2 * s - 1; i-- > s;) {
      const std::uint32_t c = acc[i] % q;
      if (c == 0) continue;
      const std::uint32_t nc = q - c;
      for (std::size_t j = 0; j < s; ++j) acc[i - s + j] += nc * modulus_[j];
    }
    Elem r(s);
    for (std::size_t i = 0; i < s; ++i) r[i] = static_cast<Symbol>(acc[i] % q);
    return r;
  }

  [[nodiscard]] Elem pow(Elem b, std::uint64_t e) const {
    Elem r = one();
    while (e != 0) {
      if (e & 1U) r = mul(r, b);
      e >>= 1U;
      if (e != 0) b = mul(b, b);
    }
    return r;
  }

  /// b^((q^s - 1) / D) for D | q^s - 1, via the base-q digits of the exponent.
  [[nodiscard]] Elem pow_cofactor(const Elem& b, long long D) const {
    const long long q = base_->q();
    std::vector<int> digits(static_cast<std::size_t>(s_));
    long long rem = 0;
    for (int i = s_ - 1; i >= 0; --i) {
      const long long cur = rem * q + (q - 1);
      digits[static_cast<std::size_t>(i)] = static_cast<int>(cur / D);
      rem = cur % D;
    }
    if (rem != 0) throw std::logic_error("pow_cofactor: D does not divide q^s - 1");
    Elem r = one();
    Elem frob = b;
    for (int i = 0; i < s_; ++i) {
      if (digits[static_cast<std::size_t>(i)] != 0) r = mul(r, pow(frob, static_cast<std::uint64_t>(digits[static_cast<std::size_t>(i)])));
      frob = pow(frob, static_cast<std::uint64_t>(q));
    }
    return r;
  }

  [[nodiscard]] Elem random_nonzero(Rng& rng) const {
    for (;;) {
      Elem e(static_cast<std::size_t>(s_));
      for (auto& c : e) c = static_cast<Symbol>(uniform_below(rng, base_->q()));
      if (std::any_of(e.begin(), e.end(), [](Symbol c) { return c != 0; })) return e;
    }
  }

 private:
  const FieldSpec* base_;
  int s_;
  std::vector<Symbol> modulus_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Factorization of x^N - a

struct FactorPower {
  Polynomial factor;
  long long multiplicity;
};

struct FactoredModulus {
  int q = 0;
  Symbol a = 1;
  long long N = 0;
  long long coprime_length = 0;  ///< N' with N = N' q^v, gcd(N', q) = 1
  int v = 0;
  long long repeat = 1;  ///< q^v
  std::vector<FactorPower> factors;

  /// prod factor^multiplicity, rebuilt by multiplication.
  [[nodiscard]] Polynomial product() const {
    const FieldSpec& F = FieldSpec::of(q);
    Polynomial r = Polynomial::constant(F, 1);
    for (const auto& fp : factors) r = poly_mul(r, poly_pow(fp.factor, fp.multiplicity));
    return r;
  }
};

/// Factors x^N - a into monic irreducibles via q-cyclotomic cosets. The
/// squarefree part x^N' - a is split by computing the minimal polynomial of
/// each conjugacy class of its roots in GF(q^s); the repeated part follows
/// from x^N - a = (x^N' - a)^(q^v).
inline FactoredModulus factorize_xn_minus_a(const FieldSpec& field, long long N, Symbol a,
                                            std::uint64_t seed = 0x5eedULL) {
  if (N < 1) throw std::invalid_argument("factorize: N must be >= 1");
  if (a == 0 || a >= field.q()) throw std::invalid_argument("factorize: shift constant must be a nonzero field element");
  const long long q = field.q();

  FactoredModulus fm;
  fm.q = field.q();
  fm.a = a;
  fm.N = N;
  long long n1 = N;
  while (n1 % q == 0) {
    n1 /= q;
    ++fm.v;
    fm.repeat *= q;
  }
  fm.coprime_length = n1;

  const long long r = field.order(a);
  const long long n2 = n1 * r;
  Rng rng(seed);
  std::map<int, detail::ExtField> ext_by_degree;
  long long found_degree = 0;

  for (long long D : detail::divisors(n2)) {
    if (D / std::gcd(D, n1) != r) continue;
    const int s = detail::multiplicative_order(q, D);
    auto it = ext_by_degree.find(s);
    if (it == ext_by_degree.end()) it = ext_by_degree.emplace(s, detail::ExtField(field, s, rng)).first;
    const detail::ExtField& E = it->second;

    // Primitive D-th root of unity omega.
    detail::ExtField::Elem omega;
    const auto primes = detail::prime_factors(D);
    for (;;) {
      omega = E.pow_cofactor(E.random_nonzero(rng), D);
      bool primitive = true;
      for (long long p : primes)
        if (E.pow(omega, static_cast<std::uint64_t>(D / p)) == E.one()) primitive = false;
      if (primitive) break;
    }
    const auto c_elem = E.pow(omega, static_cast<std::uint64_t>(n1 % D));
    if (!E.is_constant(c_elem)) throw std::logic_error("factorize: omega^N' left the base field");
    const Symbol c = c_elem[0];

    std::vector<char> seen(static_cast<std::size_t>(D), 0);
    for (long long u = 0; u < D; ++u) {
      if (seen[static_cast<std::size_t>(u)] || std::gcd(u, D) != 1) continue;
      // The coset {u q^i mod D} is closed; c^u is constant across it.
      std::vector<long long> coset;
      for (long long e = u; !seen[static_cast<std::size_t>(e)]; e = e * q % D) {
        seen[static_cast<std::size_t>(e)] = 1;
        coset.push_back(e);
      }
      if (field.pow(c, static_cast<std::uint64_t>(u)) != a) continue;
      // prod (x - beta^(q^i))
      std::vector<detail::ExtField::Elem> poly{E.one()};
      auto beta = E.pow(omega, static_cast<std::uint64_t>(u));
      for (std::size_t i = 0; i < coset.size(); ++i) {
        std::vector<detail::ExtField::Elem> next(poly.size() + 1, E.constant(0));
        for (std::size_t j = 0; j < poly.size(); ++j) {
          next[j + 1] = E.add(next[j + 1], poly[j]);
          next[j] = E.sub(next[j], E.mul(beta, poly[j]));
        }
        poly = std::move(next);
        beta = E.pow(beta, static_cast<std::uint64_t>(q));
      }
      std::vector<Symbol> coeffs;
      coeffs.reserve(poly.size());
      for (const auto& e : poly) {
        if (!E.is_constant(e)) throw std::logic_error("factorize: minimal polynomial not over the base field");
        coeffs.push_back(e[0]);
      }
      found_degree += static_cast<long long>(coset.size());
      fm.factors.push_back({Polynomial(field, std::move(coeffs)), fm.repeat});
    }
  }
  if (found_degree != n1) throw std::logic_error("factorize: root count mismatch");
  std::sort(fm.factors.begin(), fm.factors.end(),
            [](const FactorPower& x, const FactorPower& y) { return x.factor < y.factor; });
  return fm;
}

// ---------------------------------------------------------------------------
// Divisor enumeration

/// Monic divisors of x^N - a with degree in [deg_min, deg_max]. When more than
/// `cap` exponent vectors qualify, a seeded uniform sample (without
/// replacement) of `cap` of them is returned. Output is sorted by degree, then
/// by coefficients.
inline std::vector<Polynomial> enumerate_divisors(const FactoredModulus& fm, int deg_min, int deg_max,
                                                  std::size_t cap, std::uint64_t seed) {
  if (deg_min < 0 || deg_min > deg_max || deg_max > fm.N)
    throw std::invalid_argument("enumerate_divisors: need 0 <= deg_min <= deg_max <= N");
  if (cap < 1) throw std::invalid_argument("enumerate_divisors: cap must be >= 1");
  const FieldSpec& F = FieldSpec::of(fm.q);
  const std::size_t nf = fm.factors.size();
  const auto width = static_cast<std::size_t>(deg_max) + 1;
  if (static_cast<double>(nf + 1) * static_cast<double>(width) > 3.0e7)
    throw std::invalid_argument("enumerate_divisors: degree window too large for this modulus; narrow deg_max");

  // ways[i][acc]: exponent choices for factors i.. that land the total degree
  // (starting from acc) inside the window.
  std::vector<std::vector<long double>> ways(nf + 1, std::vector<long double>(width, 0.0L));
  for (int d = deg_min; d <= deg_max; ++d) ways[nf][static_cast<std::size_t>(d)] = 1.0L;
  for (std::size_t i = nf; i-- > 0;) {
    const auto deg = static_cast<std::size_t>(fm.factors[i].factor.degree());
    const auto mult = static_cast<std::size_t>(fm.factors[i].multiplicity);
    for (std::size_t acc = 0; acc < width; ++acc) {
      long double sum = 0.0L;
      for (std::size_t e = 0; e <= mult && acc + e * deg < width; ++e) sum += ways[i + 1][acc + e * deg];
      ways[i][acc] = sum;
    }
  }
  const long double total = ways[0][0];

  std::set<std::vector<std::uint32_t>> chosen;
  if (total <= static_cast<long double>(cap)) {
    std::vector<std::uint32_t> ex(nf, 0);
    auto dfs = [&](auto&& self, std::size_t i, std::size_t acc) -> void {
      if (i == nf) {
        chosen.insert(ex);
        return;
      }
      const auto deg = static_cast<std::size_t>(fm.factors[i].factor.degree());
      const auto mult = static_cast<std::size_t>(fm.factors[i].multiplicity);
      for (std::size_t e = 0; e <= mult && acc + e * deg < width; ++e) {
        if (ways[i + 1][acc + e * deg] <= 0.0L) continue;
        ex[i] = static_cast<std::uint32_t>(e);
        self(self, i + 1, acc + e * deg);
      }
      ex[i] = 0;
    };
    if (total > 0.0L) dfs(dfs, 0, 0);
  } else {
    Rng rng(seed);
    std::vector<long double> w;
    while (chosen.size() < cap) {
      std::vector<std::uint32_t> ex(nf, 0);
      std::size_t acc = 0;
      for (std::size_t i = 0; i < nf; ++i) {
        const auto deg = static_cast<std::size_t>(fm.factors[i].factor.degree());
        const auto mult = static_cast<std::size_t>(fm.factors[i].multiplicity);
        w.clear();
        long double sum = 0.0L;
        for (std::size_t e = 0; e <= mult && acc + e * deg < width; ++e) {
          w.push_back(ways[i + 1][acc + e * deg]);
          sum += w.back();
        }
        long double pick = static_cast<long double>(uniform_unit(rng)) * sum;
        std::size_t e = w.size();
        for (std::size_t j = 0; j < w.size(); ++j) {
          if (w[j] <= 0.0L) continue;
          e = j;
          if (pick < w[j]) break;
          pick -= w[j];
        }
        ex[i] = static_cast<std::uint32_t>(e);
        acc += e * deg;
      }
      chosen.insert(std::move(ex));
    }
  }

  std::vector<Polynomial> out;
  out.reserve(chosen.size());
  for (const auto& ex : chosen) {
    Polynomial d = Polynomial::constant(F, 1);
    for (std::size_t i = 0; i < nf; ++i)
      if (ex[i] != 0) d = poly_mul(d, poly_pow(fm.factors[i].factor, ex[i]));
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qtcodes

#endif  // QTCODES_POLYRING_HPP
