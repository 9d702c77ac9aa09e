#include "oracles.hpp"

#include <map>
#include <numeric>

namespace oracle {

namespace {

// Slots joined inside a crossing: A pairs (0,3),(1,2); B pairs (0,1),(2,3).
int partner(int slot, bool b) {
  if (b) return slot ^ 1;
  return 3 - slot;
}

using Poly = std::map<int, BigInt>;

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

BigInt det(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Rational det_rational(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational out = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      out = -out;
    }
    out *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return out;
}

void choose(int n, int k, std::vector<int>& cur, int start, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, cur, i + 1, out);
    cur.pop_back();
  }
}

}  // namespace

int circles(const kpos::Diagram& d, std::uint64_t b_mask) {
  const auto xs = d.crossings();
  const int c = static_cast<int>(xs.size());
  // Each (crossing, slot) is an endpoint; an arc label joins its two endpoints.
  std::map<int, std::vector<int>> ends;
  for (int k = 0; k < c; ++k)
    for (int s = 0; s < 4; ++s) ends[xs[k][s]].push_back(4 * k + s);
  std::vector<int> other(4 * c);
  for (const auto& [label, e] : ends) {
    other[e[0]] = e[1];
    other[e[1]] = e[0];
  }
  std::vector<bool> seen(4 * c, false);
  int count = 0;
  for (int start = 0; start < 4 * c; ++start) {
    if (seen[start]) continue;
    ++count;
    int at = start;
    while (!seen[at]) {
      seen[at] = true;
      const int k = at / 4;
      const int inside = 4 * k + partner(at % 4, (b_mask >> k) & 1U);
      seen[inside] = true;
      at = other[inside];
    }
  }
  return count + d.free_circles();
}

kpos::LaurentPoly jones(const kpos::Diagram& d, int writhe) {
  const int c = d.crossing_count();
  const Poly delta{{2, -1}, {-2, -1}};
  Poly bracket;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << c); ++s) {
    const int b = std::popcount(s);
    Poly term{{c - 2 * b, 1}};
    for (int i = 1; i < circles(d, s); ++i) term = mul(term, delta);
    for (const auto& [e, v] : term) bracket[e] += v;
  }
  const Poly norm{{-3 * writhe, writhe % 2 == 0 ? 1 : -1}};
  const Poly v = mul(bracket, norm);
  kpos::LaurentPoly out;
  for (const auto& [e, coeff] : v) {
    if (coeff == 0) continue;
    // A^e = t^(-e/4), stored doubled as -e/2.
    out.add_term(kpos::HalfInt::from_twice(-e / 2), coeff);
  }
  return out;
}

int sequential_writhe(const kpos::Diagram& d) {
  const int m = d.arc_count();
  int w = 0;
  for (const auto& x : d.crossings()) w += (x[3] == x[1] % m + 1) ? 1 : -1;
  return w;
}

Rational alexander_det(const kpos::Diagram& d, const Rational& t) {
  const auto xs = d.crossings();
  const int c = static_cast<int>(xs.size());
  const int m = d.arc_count();
  // Over-arcs: labels glued through every over-passage.
  std::vector<int> parent(m + 1);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& x : xs) parent[find(x[1])] = find(x[3]);
  std::map<int, int> column;
  for (int l = 1; l <= m; ++l) column.emplace(find(l), static_cast<int>(column.size()));

  std::vector<std::vector<Rational>> a(c, std::vector<Rational>(column.size(), 0));
  for (int k = 0; k < c; ++k) {
    const auto& x = xs[k];
    const int over = column[find(x[1])];
    const int in = column[find(x[0])];
    const int out = column[find(x[2])];
    const bool positive = x[3] == x[1] % m + 1;
    a[k][over] += positive ? Rational(1 - t) : Rational(t - 1);
    a[k][in] += positive ? t : Rational(1);
    a[k][out] += positive ? Rational(-1) : -t;
  }
  a.pop_back();
  for (auto& row : a) row.pop_back();
  return det_rational(a);
}

Rational evaluate(const kpos::LaurentPoly& p, const Rational& t) {
  Rational out = 0;
  for (const auto& [twice, c] : p.terms()) {
    const int e = static_cast<int>(twice / 2);
    Rational power = 1;
    for (int i = 0; i < std::abs(e); ++i) power *= t;
    out += Rational(c) * (e >= 0 ? power : 1 / power);
  }
  return out;
}

int faces(const kpos::Diagram& d) {
  const auto xs = d.crossings();
  const int c = static_cast<int>(xs.size());
  std::map<int, std::vector<int>> ends;
  for (int k = 0; k < c; ++k)
    for (int s = 0; s < 4; ++s) ends[xs[k][s]].push_back(4 * k + s);
  std::vector<int> other(4 * c);
  for (const auto& [label, e] : ends) {
    other[e[0]] = e[1];
    other[e[1]] = e[0];
  }
  // A face is traced by leaving along an endpoint, arriving at the far end, and turning
  // to the next slot in the crossing's cyclic order.
  std::vector<bool> used(4 * c, false);
  int count = 0;
  for (int start = 0; start < 4 * c; ++start) {
    if (used[start]) continue;
    ++count;
    int at = start;
    while (!used[at]) {
      used[at] = true;
      const int arrive = other[at];
      at = 4 * (arrive / 4) + (arrive % 4 + 1) % 4;
    }
  }
  return count;
}

Snf smith(const std::vector<std::vector<std::int64_t>>& m) {
  Snf out;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<BigInt> divisors{1};  // d_0 = 1
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    choose(rows, k, cur, 0, rs);
    choose(cols, k, cur, 0, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<BigInt>> minor(k, std::vector<BigInt>(k));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) minor[i][j] = m[r[i]][c[j]];
        g = boost::multiprecision::gcd(g, BigInt(abs(det(minor))));
      }
    if (g == 0) break;
    divisors.push_back(g);
  }
  out.rank = divisors.size() - 1;
  for (std::size_t k = 1; k < divisors.size(); ++k) {
    const BigInt e = divisors[k] / divisors[k - 1];
    if (e > 1) out.torsion.push_back(e);
  }
  return out;
}

}  // namespace oracle
