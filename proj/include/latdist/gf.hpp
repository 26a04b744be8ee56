#pragma once

#include <bit>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "latdist/error.hpp"
#include "latdist/matrix.hpp"

namespace latdist {

/// Canonical field element representative: an integer in [0, q) for prime
/// fields, or the packed polynomial-basis coefficient vector (bit j is the
/// coefficient of x^j) for GF(2^m).
using Symbol = std::uint32_t;

using BitMatrix = Matrix<std::uint8_t>;

namespace detail {

inline bool is_prime(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint32_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

inline int degree(std::uint64_t poly) { return poly ? 63 - std::countl_zero(poly) : -1; }

// Remainder of a modulo b over GF(2).
inline std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
  const int db = degree(b);
  for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
  return a;
}

inline bool irreducible_gf2(std::uint64_t modulus) {
  const int m = degree(modulus);
  if (m < 1) return false;
  for (int d = 1; 2 * d <= m; ++d)
    for (std::uint64_t f = std::uint64_t{1} << d; f < (std::uint64_t{2} << d); ++f)
      if (poly_mod(modulus, f) == 0) return false;
  return true;
}

// Primitive polynomials, index = degree.
inline constexpr std::uint32_t kDefaultModulus[] = {
    0,      0,      0x7,    0xB,    0x13,   0x25,   0x43,   0x89,  0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

}  // namespace detail

/// GF(p) for prime p, or GF(2^m) in a polynomial basis.
class Field {
 public:
  enum class Kind { prime, extension };

  static constexpr unsigned kMaxDegree = 16;
  static constexpr std::uint32_t kMaxPrime = 65521;

  static Field prime(std::uint32_t q) {
    if (!detail::is_prime(q)) throw invalid_input("field order " + std::to_string(q) + " is not prime");
    if (q > kMaxPrime) throw invalid_input("prime field order too large: " + std::to_string(q));
    Field f;
    f.kind_ = Kind::prime;
    f.p_ = q;
    f.m_ = 1;
    f.q_ = q;
    return f;
  }

  /// GF(2^m) modulo `modulus` (bit j = coefficient of x^j, bit m must be set).
  static Field binary_extension(unsigned m, std::uint32_t modulus) {
    if (m < 2 || m > kMaxDegree)
      throw invalid_input("extension degree must be in [2, 16], got " + std::to_string(m));
    if (detail::degree(modulus) != static_cast<int>(m))
      throw invalid_input("modulus degree does not match extension degree " + std::to_string(m));
    if (!detail::irreducible_gf2(modulus)) throw invalid_input("modulus is reducible over GF(2)");
    Field f;
    f.kind_ = Kind::extension;
    f.p_ = 2;
    f.m_ = m;
    f.q_ = std::uint32_t{1} << m;
    f.modulus_ = modulus;
    return f;
  }

  static Field binary_extension(unsigned m) {
    if (m < 2 || m > kMaxDegree)
      throw invalid_input("extension degree must be in [2, 16], got " + std::to_string(m));
    return binary_extension(m, detail::kDefaultModulus[m]);
  }

  /// Parses "2", "3", "2^6" (default modulus) or "2^6:0x43".
  static Field parse(std::string_view spec) {
    auto fail = [&](const std::string& why) -> invalid_input {
      return invalid_input("bad field spec '" + std::string(spec) + "': " + why);
    };
    auto to_uint = [&](std::string_view s, int base) {
      std::uint32_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) throw fail("not a number");
      return v;
    };
    const auto caret = spec.find('^');
    if (caret == std::string_view::npos) return prime(to_uint(spec, 10));
    if (to_uint(spec.substr(0, caret), 10) != 2) throw fail("only characteristic 2 extensions are supported");
    auto rest = spec.substr(caret + 1);
    const auto colon = rest.find(':');
    const unsigned m = to_uint(rest.substr(0, colon), 10);
    if (colon == std::string_view::npos) return binary_extension(m);
    auto mod = rest.substr(colon + 1);
    if (mod.starts_with("0x") || mod.starts_with("0X")) return binary_extension(m, to_uint(mod.substr(2), 16));
    return binary_extension(m, to_uint(mod, 10));
  }

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::prime; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  /// Round-trippable spec string, e.g. "3" or "2^6:0x43".
  std::string spec() const {
    if (is_prime()) return std::to_string(q_);
    char buf[16];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, modulus_, 16);
    (void)ec;
    return "2^" + std::to_string(m_) + ":0x" + std::string(buf, end);
  }

  bool contains(Symbol a) const noexcept { return a < q_; }

  Symbol add(Symbol a, Symbol b) const noexcept {
    if (!is_prime()) return a ^ b;
    const Symbol s = a + b;
    return s >= q_ ? s - q_ : s;
  }

  Symbol neg(Symbol a) const noexcept {
    if (!is_prime()) return a;
    return a == 0 ? 0 : q_ - a;
  }

  Symbol sub(Symbol a, Symbol b) const noexcept { return add(a, neg(b)); }

  Symbol mul(Symbol a, Symbol b) const noexcept {
    if (is_prime()) return static_cast<Symbol>(std::uint64_t{a} * b % q_);
    std::uint64_t acc = 0;
    for (std::uint64_t aa = a; b; b >>= 1, aa <<= 1)
      if (b & 1) acc ^= aa;
    return static_cast<Symbol>(detail::poly_mod(acc, modulus_));
  }

  Symbol pow(Symbol a, std::uint64_t e) const noexcept {
    Symbol r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }

  Symbol inv(Symbol a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, q_ - 2);
  }

  Symbol div(Symbol a, Symbol b) const {
    if (b == 0) throw std::domain_error("division by zero");
    return mul(a, inv(b));
  }

  /// Coefficient vector of `a` over GF(p), length m.
  std::vector<std::uint8_t> coefficients(Symbol a) const {
    if (is_prime()) return {static_cast<std::uint8_t>(a)};
    std::vector<std::uint8_t> c(m_);
    for (unsigned j = 0; j < m_; ++j) c[j] = (a >> j) & 1;
    return c;
  }

  /// Matrix of multiplication by `a` in the basis 1, x, ..., x^{m-1}:
  /// column j holds the coefficients of a * x^j.
  BitMatrix regular_rep(Symbol a) const {
    if (is_prime()) throw invalid_input("regular_rep needs an extension field");
    BitMatrix r(m_, m_);
    Symbol col = a;
    for (unsigned j = 0; j < m_; ++j) {
      for (unsigned i = 0; i < m_; ++i) r(i, j) = (col >> i) & 1;
      col = mul(col, 2);
    }
    return r;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field() = default;

  Kind kind_ = Kind::prime;
  std::uint32_t p_ = 2;
  unsigned m_ = 1;
  std::uint32_t q_ = 2;
  std::uint32_t modulus_ = 0;
};

/// A symbol bound to its field. Mixing fields throws.
struct FieldElem {
  Field field;
  Symbol value;

  FieldElem(const Field& f, Symbol v) : field(f), value(v) {
    if (!f.contains(v)) throw invalid_input("symbol " + std::to_string(v) + " outside field");
  }

  FieldElem inv() const { return {field, field.inv(value)}; }
  FieldElem operator-() const { return {field, field.neg(value)}; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    return {same(a, b), a.field.add(a.value, b.value)};
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    return {same(a, b), a.field.sub(a.value, b.value)};
  }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    return {same(a, b), a.field.mul(a.value, b.value)};
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    return {same(a, b), a.field.div(a.value, b.value)};
  }
  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.field == b.field && a.value == b.value;
  }

 private:
  static const Field& same(const FieldElem& a, const FieldElem& b) {
    if (!(a.field == b.field)) throw invalid_input("operands from different fields");
    return a.field;
  }
};

/// Product of two 0/1 matrices over GF(2).
inline BitMatrix gf2_multiply(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw invalid_input("matrix shape mismatch");
  BitMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k))
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) ^= b(k, j);
  return r;
}

}  // namespace latdist
