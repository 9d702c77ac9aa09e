#include "kpos/jones.hpp"

#include <algorithm>
#include <bit>
#include <iostream>
#include <thread>
#include <vector>

#include "kpos/error.hpp"

namespace kpos {

namespace {

// counts[b][k]: number of states with b B-smoothings and k circles.
using StateCounts = std::vector<std::vector<std::uint64_t>>;

StateCounts count_states(const Diagram& d, unsigned threads) {
  const int c = d.crossing_count();
  const int max_circles = c + 1 + d.free_circles();
  const std::uint64_t total = std::uint64_t{1} << c;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  if (c < 12) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

  std::vector<StateCounts> partial(threads, StateCounts(c + 1, std::vector<std::uint64_t>(max_circles + 1, 0)));
  const auto work = [&](unsigned t) {
    std::vector<int> scratch;
    for (std::uint64_t mask = t; mask < total; mask += threads) {
      const int k = label_state_circles(d, mask, scratch);
      ++partial[t][std::popcount(mask)][k];
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  StateCounts sum(c + 1, std::vector<std::uint64_t>(max_circles + 1, 0));
  for (const auto& p : partial)
    for (int b = 0; b <= c; ++b)
      for (int k = 0; k <= max_circles; ++k) sum[b][k] += p[b][k];
  return sum;
}

}  // namespace

LaurentPoly kauffman_bracket(const Diagram& d, const BracketOptions& opts) {
  const int c = d.crossing_count();
  if (c > opts.crossing_cap)
    std::clog << "warning: Kauffman bracket over " << c << " crossings enumerates 2^" << c << " states\n";
  if (c > 40) throw Error(Errc::CrossingCapExceeded, "state enumeration beyond 40 crossings");

  const StateCounts counts = count_states(d, opts.threads);
  const LaurentPoly delta = LaurentPoly::monomial(-1, HalfInt::whole(2)) + LaurentPoly::monomial(-1, HalfInt::whole(-2));
  std::vector<LaurentPoly> delta_pow{LaurentPoly::constant(1)};
  LaurentPoly bracket;
  for (int b = 0; b <= c; ++b) {
    for (std::size_t k = 1; k < counts[b].size(); ++k) {
      if (counts[b][k] == 0) continue;
      while (delta_pow.size() < k) delta_pow.push_back(delta_pow.back() * delta);
      bracket += (delta_pow[k - 1] * LaurentPoly::monomial(BigInt(counts[b][k]), HalfInt::whole(c - 2 * b)));
    }
  }
  return bracket;
}

LaurentPoly jones_polynomial(const Diagram& d, const BracketOptions& opts) {
  const LaurentPoly bracket = kauffman_bracket(d, opts);
  const int w = crossing_signs(d).writhe();
  const BigInt sign = (w % 2 == 0) ? 1 : -1;
  LaurentPoly v;
  for (const auto& [twice_a, coeff] : bracket.terms()) {
    // A-exponent k = twice_a / 2; shifted by -3w, then A^k = t^(-k/4), doubled: -k/2.
    const std::int64_t k = twice_a / 2 - 3 * static_cast<std::int64_t>(w);
    if (k % 2 != 0) throw Error(Errc::MixedParity, "bracket exponent incompatible with writhe");
    v.add_term(HalfInt::from_twice(-k / 2), sign * coeff);
  }
  return v;
}

LaurentPoly v_to_unnormalized(const LaurentPoly& v) {
  if (!v.has_integer_exponents() && !v.has_half_odd_exponents())
    throw Error(Errc::MixedParity, "Jones polynomial mixes integer and half-integer exponents");
  LaurentPoly sub;
  for (const auto& [m, coeff] : v.terms()) {
    // t^(m/2) = (t^(1/2))^m -> (-q)^m
    sub.add_term(HalfInt::whole(m), (m % 2 == 0) ? coeff : BigInt(-coeff));
  }
  const LaurentPoly q_plus_inv = LaurentPoly::monomial(1, HalfInt::whole(1)) + LaurentPoly::monomial(1, HalfInt::whole(-1));
  return q_plus_inv * sub;
}

LaurentPoly unnormalized_to_v(const LaurentPoly& j) {
  if (!j.has_integer_exponents()) throw Error(Errc::MixedParity, "unnormalized Jones polynomial needs integer exponents");
  const LaurentPoly q_plus_inv = LaurentPoly::monomial(1, HalfInt::whole(1)) + LaurentPoly::monomial(1, HalfInt::whole(-1));
  const LaurentPoly quotient = j.divided_by(q_plus_inv);
  LaurentPoly v;
  for (const auto& [twice, coeff] : quotient.terms()) {
    const std::int64_t m = twice / 2;
    // q^m -> (-1)^m t^(m/2)
    v.add_term(HalfInt::from_twice(m), (m % 2 == 0) ? coeff : BigInt(-coeff));
  }
  return v;
}

JonesSummary jones_summary(const LaurentPoly& v) {
  if (v.is_zero()) throw Error(Errc::ZeroPolynomial, "Jones summary of the zero polynomial");
  JonesSummary s;
  s.min_deg = v.min_degree();
  s.max_deg = v.max_degree();
  s.second_coeff = v.coefficient(s.min_deg + HalfInt::whole(1));
  s.p1 = s.second_coeff < 0 ? BigInt(-s.second_coeff) : s.second_coeff;
  return s;
}

LickorishBounds lickorish_bounds(const Diagram& d) {
  if (!is_positive(d)) throw Error(Errc::NotPositiveDiagram, "Lickorish bounds need a positive diagram");
  const int c = d.crossing_count();
  return {HalfInt::from_twice(c - a_state_circles(d) + 1), HalfInt::from_twice(2 * c + b_state_circles(d) - 1)};
}

}  // namespace kpos
