#include "kpos/laurent.hpp"

#include <cctype>

#include "kpos/error.hpp"

namespace kpos {

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

LaurentPoly LaurentPoly::monomial(const BigInt& c, HalfInt exponent) {
  LaurentPoly p;
  p.add_term(exponent, c);
  return p;
}

HalfInt LaurentPoly::min_degree() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "min degree of the zero polynomial");
  return HalfInt::from_twice(terms_.begin()->first);
}

HalfInt LaurentPoly::max_degree() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "max degree of the zero polynomial");
  return HalfInt::from_twice(terms_.rbegin()->first);
}

BigInt LaurentPoly::coefficient(HalfInt exponent) const {
  auto it = terms_.find(exponent.twice());
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt LaurentPoly::leading_coefficient() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "leading coefficient of the zero polynomial");
  return terms_.rbegin()->second;
}

BigInt LaurentPoly::value_at_one() const {
  BigInt sum = 0;
  for (const auto& [e, c] : terms_) sum += c;
  return sum;
}

bool LaurentPoly::has_integer_exponents() const noexcept {
  for (const auto& [e, c] : terms_)
    if (e % 2 != 0) return false;
  return true;
}

bool LaurentPoly::has_half_odd_exponents() const noexcept {
  for (const auto& [e, c] : terms_)
    if (e % 2 == 0) return false;
  return true;
}

void LaurentPoly::add_term(HalfInt exponent, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent.twice(), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(HalfInt::from_twice(e), c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(HalfInt::from_twice(e), -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(HalfInt::from_twice(ea + eb), ca * cb);
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  *this = *this * other;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

LaurentPoly LaurentPoly::shifted(HalfInt shift) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + shift.twice(), c);
  return out;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

LaurentPoly LaurentPoly::divided_by(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) throw Error(Errc::NotDivisible, "division by the zero polynomial");
  LaurentPoly quotient;
  LaurentPoly rest = *this;
  const auto lead_e = divisor.terms_.rbegin()->first;
  const auto& lead_c = divisor.terms_.rbegin()->second;
  // Quotient exponents cannot go below this floor.
  const auto floor_e = is_zero() ? 0 : terms_.begin()->first - divisor.terms_.begin()->first;
  while (!rest.is_zero()) {
    const auto top_e = rest.terms_.rbegin()->first;
    const BigInt top_c = rest.terms_.rbegin()->second;
    if (top_e - lead_e < floor_e || top_c % lead_c != 0) break;
    const HalfInt qe = HalfInt::from_twice(top_e - lead_e);
    const BigInt qc = top_c / lead_c;
    quotient.add_term(qe, qc);
    for (const auto& [e, c] : divisor.terms_) rest.add_term(HalfInt::from_twice(e + qe.twice()), -qc * c);
  }
  if (!rest.is_zero())
    throw Error(Errc::NotDivisible, to_string("x") + " is not divisible by " + divisor.to_string("x"));
  return quotient;
}

namespace {

std::string power_text(std::int64_t twice, std::string_view var) {
  std::string out(var);
  if (twice == 2) return out;
  if (twice % 2 == 0) return out + "^" + std::to_string(twice / 2);
  return out + "^(" + std::to_string(twice) + "/2)";
}

}  // namespace

std::string LaurentPoly::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str();
    out += power_text(e, var);
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::string_view var) : var_(var) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  LaurentPoly run() {
    LaurentPoly out;
    if (s_.empty()) fail("empty polynomial");
    if (s_ == "0") return out;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      parse_term(out, sign);
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::MalformedPolynomial, why + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  bool read_digits(BigInt& value) {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) return false;
    value = BigInt(s_.substr(start, pos_ - start));
    return true;
  }

  std::int64_t read_small_int() {
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++pos_;
    }
    BigInt v;
    if (!read_digits(v)) fail("expected an integer");
    if (v > 1'000'000'000) fail("exponent out of range");
    auto x = static_cast<std::int64_t>(v);
    return neg ? -x : x;
  }

  // Returns the doubled exponent.
  std::int64_t read_exponent() {
    char open = peek();
    if (open == '(' || open == '{') {
      ++pos_;
      std::int64_t num = read_small_int();
      std::int64_t den = 1;
      if (peek() == '/') {
        ++pos_;
        den = read_small_int();
      }
      if (peek() != (open == '(' ? ')' : '}')) fail("unbalanced exponent bracket");
      ++pos_;
      if (den == 1) return 2 * num;
      if (den == 2) return num;
      fail("exponent denominator must be 1 or 2");
    }
    return 2 * read_small_int();
  }

  void parse_term(LaurentPoly& out, int sign) {
    BigInt coeff = 1;
    bool have_coeff = read_digits(coeff);
    if (have_coeff && peek() == '*') ++pos_;
    std::int64_t twice = 0;
    if (s_.compare(pos_, var_.size(), var_) == 0 && !var_.empty()) {
      pos_ += var_.size();
      twice = 2;
      if (peek() == '^') {
        ++pos_;
        twice = read_exponent();
      }
    } else if (!have_coeff) {
      fail("expected a coefficient or '" + std::string(var_) + "'");
    }
    out.add_term(HalfInt::from_twice(twice), sign * coeff);
  }

  std::string s_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text, std::string_view var) {
  return PolyParser(text, var).run();
}

}  // namespace kpos
