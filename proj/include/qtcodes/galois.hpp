// Prime-field arithmetic over GF(q), q in {2, 3, 5, 7}.

#ifndef QTCODES_GALOIS_HPP
#define QTCODES_GALOIS_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qtcodes {

using Symbol = std::uint8_t;

/// A prime field GF(q). Instances are interned: `FieldSpec::of(q)` always
/// returns the same object for a given q, so fields compare by address.
class FieldSpec {
 public:
  static constexpr int kMaxQ = 7;

  static const FieldSpec& of(int q);

  [[nodiscard]] int q() const noexcept { return q_; }

  [[nodiscard]] Symbol add(Symbol x, Symbol y) const noexcept { return add_[x][y]; }
  [[nodiscard]] Symbol sub(Symbol x, Symbol y) const noexcept { return add_[x][neg_[y]]; }
  [[nodiscard]] Symbol neg(Symbol x) const noexcept { return neg_[x]; }
  [[nodiscard]] Symbol mul(Symbol x, Symbol y) const noexcept { return mul_[x][y]; }

  /// Multiplicative inverse; throws on zero.
  [[nodiscard]] Symbol inv(Symbol x) const {
    if (x == 0) throw std::domain_error("GF(" + std::to_string(q_) + "): inverse of zero");
    return inv_[x];
  }

  [[nodiscard]] Symbol pow(Symbol x, std::uint64_t e) const noexcept {
    Symbol r = 1;
    Symbol b = x;
    while (e != 0) {
      if (e & 1U) r = mul(r, b);
      b = mul(b, b);
      e >>= 1U;
    }
    return r;
  }

  /// Least r >= 1 with x^r = 1. Divides q - 1.
  [[nodiscard]] int order(Symbol x) const {
    if (x == 0) throw std::domain_error("GF(" + std::to_string(q_) + "): order of zero");
    int r = 1;
    for (Symbol y = x; y != 1; y = mul(y, x)) ++r;
    return r;
  }

  /// Reduces an arbitrary integer into [0, q).
  [[nodiscard]] Symbol reduce(long long v) const noexcept {
    long long r = v % q_;
    return static_cast<Symbol>(r < 0 ? r + q_ : r);
  }

  [[nodiscard]] bool contains(int v) const noexcept { return v >= 0 && v < q_; }

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

 private:
  explicit FieldSpec(int q) : q_(q) {
    for (int x = 0; x < q; ++x) {
      neg_[x] = static_cast<Symbol>((q - x) % q);
      for (int y = 0; y < q; ++y) {
        add_[x][y] = static_cast<Symbol>((x + y) % q);
        mul_[x][y] = static_cast<Symbol>((x * y) % q);
        if ((x * y) % q == 1) inv_[x] = static_cast<Symbol>(y);
      }
    }
  }

  int q_;
  std::array<std::array<Symbol, kMaxQ>, kMaxQ> add_{};
  std::array<std::array<Symbol, kMaxQ>, kMaxQ> mul_{};
  std::array<Symbol, kMaxQ> neg_{};
  std::array<Symbol, kMaxQ> inv_{};
};

inline bool is_supported_prime(int q) noexcept { return q == 2 || q == 3 || q == 5 || q == 7; }

inline const FieldSpec& FieldSpec::of(int q) {
  static const FieldSpec f2(2), f3(3), f5(5), f7(7);
  switch (q) {
    case 2: return f2;
    case 3: return f3;
    case 5: return f5;
    case 7: return f7;
    default:
      throw std::invalid_argument("unsupported field size q=" + std::to_string(q) +
                                  " (prime q in {2,3,5,7} required)");
  }
}

/// A field element bound to its field.
class Element {
 public:
  Element(const FieldSpec& field, int value) : field_(&field) {
    if (!field.contains(value))
      throw std::out_of_range("value " + std::to_string(value) + " not in GF(" +
                              std::to_string(field.q()) + ")");
    value_ = static_cast<Symbol>(value);
  }

  [[nodiscard]] const FieldSpec& field() const noexcept { return *field_; }
  [[nodiscard]] int value() const noexcept { return value_; }
  [[nodiscard]] Symbol symbol() const noexcept { return value_; }
  [[nodiscard]] bool is_zero() const noexcept { return value_ == 0; }

  friend bool operator==(const Element& x, const Element& y) noexcept {
    return x.field_ == y.field_ && x.value_ == y.value_;
  }

 private:
  const FieldSpec* field_;
  Symbol value_ = 0;
};

namespace detail {
inline void require_same_field(const Element& x, const Element& y) {
  if (&x.field() != &y.field())
    throw std::invalid_argument("field mismatch: GF(" + std::to_string(x.field().q()) +
                                ") vs GF(" + std::to_string(y.field().q()) + ")");
}
}  // namespace detail

inline Element add(const Element& x, const Element& y) {
  detail::require_same_field(x, y);
  return {x.field(), x.field().add(x.symbol(), y.symbol())};
}

inline Element sub(const Element& x, const Element& y) {
  detail::require_same_field(x, y);
  return {x.field(), x.field().sub(x.symbol(), y.symbol())};
}

inline Element mul(const Element& x, const Element& y) {
  detail::require_same_field(x, y);
  return {x.field(), x.field().mul(x.symbol(), y.symbol())};
}

inline Element inv(const Element& x) { return {x.field(), x.field().inv(x.symbol())}; }

inline int element_order(const Element& a) { return a.field().order(a.symbol()); }

}  // namespace qtcodes

#endif  // QTCODES_GALOIS_HPP
