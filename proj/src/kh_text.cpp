#include <cctype>
#include <map>

#include "kpos/error.hpp"
#include "kpos/khovanov.hpp"

namespace kpos {

namespace {

struct KhMonomial {
  std::int64_t coeff = 1;
  int i = 0;
  int j = 0;
  int torsion = 0;  // T exponent, 0 for a free summand
};

using KhSum = std::vector<KhMonomial>;

KhSum multiply(const KhSum& a, const KhSum& b) {
  KhSum out;
  for (const auto& x : a)
    for (const auto& y : b) {
      if (x.torsion && y.torsion) throw Error(Errc::MalformedKhPolynomial, "T appears twice in one term");
      out.push_back({x.coeff * y.coeff, x.i + y.i, x.j + y.j, x.torsion + y.torsion});
    }
  return out;
}

class KhParser {
 public:
  explicit KhParser(std::string_view text) : s_(text) {}

  KhSum run() {
    skip_ws();
    if (pos_ == s_.size()) return {};
    if (s_.substr(pos_) == "0") return {};
    KhSum out = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::MalformedKhPolynomial, why + " at offset " + std::to_string(pos_));
  }

  KhSum sum() {
    KhSum out = term();
    while (peek() == '+') {
      ++pos_;
      KhSum t = term();
      out.insert(out.end(), t.begin(), t.end());
    }
    if (peek() == '-') fail("negative coefficients are not allowed");
    return out;
  }

  KhSum term() {
    KhSum acc{KhMonomial{}};
    int factors = 0;
    for (;;) {
      const char ch = peek();
      if (ch == '*') {
        ++pos_;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        acc = multiply(acc, {{read_int(), 0, 0, 0}});
      } else if (ch == 't' || ch == 'q' || ch == 'T') {
        ++pos_;
        const int e = exponent();
        KhMonomial m;
        if (ch == 't') m.i = e;
        if (ch == 'q') m.j = e;
        if (ch == 'T') {
          if (e != 2)
            throw Error(Errc::UnsupportedTorsionExponent, "T^" + std::to_string(e) + " (only T^2 is understood)");
          m.torsion = e;
        }
        acc = multiply(acc, {m});
      } else if (ch == '(') {
        ++pos_;
        KhSum inner = sum();
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        acc = multiply(acc, inner);
      } else {
        break;
      }
      ++factors;
    }
    if (factors == 0) fail("expected a term");
    return acc;
  }

  int read_int() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) fail("expected an integer");
    const int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  int exponent() {
    if (pos_ >= s_.size() || s_[pos_] != '^') return 1;
    ++pos_;
    const char open = pos_ < s_.size() ? s_[pos_] : '\0';
    if (open == '{' || open == '(') {
      ++pos_;
      const int e = read_int();
      if (peek() != (open == '{' ? '}' : ')')) fail("unbalanced exponent bracket");
      ++pos_;
      return e;
    }
    return read_int();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string power(char var, int e) {
  std::string out(1, var);
  if (e != 1) out += "^" + std::to_string(e);
  return out;
}

std::string monomial_text(std::int64_t coeff, int i, int j, const std::string& torsion) {
  std::string out;
  const auto append = [&](const std::string& f) {
    if (!out.empty()) out += " ";
    out += f;
  };
  if (coeff != 1) append(std::to_string(coeff));
  if (i != 0) append(power('t', i));
  if (j != 0) append(power('q', j));
  if (!torsion.empty()) append(torsion);
  if (out.empty()) out = "1";
  return out;
}

}  // namespace

BigradedGroups parse_kh_polynomial(std::string_view text) {
  BigradedGroups kh;
  for (const auto& m : KhParser(text).run()) {
    if (m.coeff < 0) throw Error(Errc::MalformedKhPolynomial, "negative multiplicity");
    if (m.torsion) {
      kh.add_torsion(m.i, m.j, 2, m.coeff);
    } else {
      kh.add_free(m.i, m.j, m.coeff);
    }
  }
  return kh;
}

std::string to_kh_polynomial(const BigradedGroups& kh) {
  std::map<std::pair<int, int>, const GroupSummand*> by_ji;
  for (const auto& [key, g] : kh.entries()) by_ji[{key.second, key.first}] = &g;
  std::string out;
  const auto append = [&](const std::string& term) {
    if (!out.empty()) out += " + ";
    out += term;
  };
  for (const auto& [ji, g] : by_ji) {
    const auto [j, i] = ji;
    if (g->free_rank) append(monomial_text(g->free_rank, i, j, ""));
    std::map<BigInt, std::int64_t> orders;
    for (const auto& t : g->torsion) ++orders[t];
    for (const auto& [order, count] : orders) append(monomial_text(count, i, j, "T^" + order.str()));
  }
  return out.empty() ? "0" : out;
}

}  // namespace kpos
