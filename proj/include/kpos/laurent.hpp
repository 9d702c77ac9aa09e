#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace kpos {

using BigInt = boost::multiprecision::cpp_int;

// An exact half-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInt whole(std::int64_t value) { return from_twice(2 * value); }

  constexpr std::int64_t twice() const noexcept { return twice_; }
  constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }
  // Only meaningful when is_integer().
  constexpr std::int64_t as_integer() const noexcept { return twice_ / 2; }
  double to_double() const noexcept { return static_cast<double>(twice_) / 2.0; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return from_twice(k * a.twice_); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

  // "3", "-1", "7/2", "-1/2"
  std::string str() const;

 private:
  std::int64_t twice_ = 0;
};

// Exact Laurent polynomial in one variable whose exponents may be half-integers.
// Coefficients are arbitrary precision; zero coefficients are never stored.
class LaurentPoly {
 public:
  using TermMap = std::map<std::int64_t, BigInt>;  // doubled exponent -> coefficient

  LaurentPoly() = default;

  static LaurentPoly constant(const BigInt& c) { return monomial(c, HalfInt{}); }
  static LaurentPoly monomial(const BigInt& c, HalfInt exponent);

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const TermMap& terms() const noexcept { return terms_; }

  // Throw Errc::ZeroPolynomial on the zero polynomial.
  HalfInt min_degree() const;
  HalfInt max_degree() const;
  BigInt coefficient(HalfInt exponent) const;
  BigInt leading_coefficient() const;

  // Sum of coefficients, i.e. the value at 1.
  BigInt value_at_one() const;
  bool has_integer_exponents() const noexcept;
  bool has_half_odd_exponents() const noexcept;

  void add_term(HalfInt exponent, const BigInt& c);

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Multiply by var^shift.
  LaurentPoly shifted(HalfInt shift) const;

  // Substitute var -> var^-1.
  LaurentPoly inverted() const;

  // Exact division; Errc::NotDivisible when the remainder is nonzero.
  LaurentPoly divided_by(const LaurentPoly& divisor) const;

  // Canonical text form, ascending exponents: "t - 2t^2 + t^(5/2) + t^-1".
  std::string to_string(std::string_view var) const;

  // Accepts the canonical form plus a few common spellings:
  // `2*t^3`, `t^(3)`, `t^{-2}`, `t^(-1/2)`, whitespace anywhere.
  static LaurentPoly parse(std::string_view text, std::string_view var);

 private:
  TermMap terms_;
};

}  // namespace kpos
