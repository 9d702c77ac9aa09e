#pragma once

#include <utility>

#include "kpos/diagram.hpp"
#include "kpos/laurent.hpp"

namespace kpos {

struct BracketOptions {
  // Above this many crossings a cost warning is written to std::clog.
  int crossing_cap = 20;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

// Kauffman bracket in the variable A, normalized so a single crossing-free circle is 1.
LaurentPoly kauffman_bracket(const Diagram& d, const BracketOptions& opts = {});

// V_L(t) = (-A)^(-3w) <D> with A^-4 = t.
LaurentPoly jones_polynomial(const Diagram& d, const BracketOptions& opts = {});

// (q + q^-1) V(t) at t^(1/2) = -q. Errc::MixedParity if exponents mix integers and half-integers.
LaurentPoly v_to_unnormalized(const LaurentPoly& v);

// Inverse of v_to_unnormalized. Errc::NotDivisible if j is not a multiple of q + q^-1.
LaurentPoly unnormalized_to_v(const LaurentPoly& j);

struct JonesSummary {
  HalfInt min_deg;
  HalfInt max_deg;
  BigInt second_coeff;  // coefficient of t^(min_deg + 1), zero when absent
  BigInt p1;            // |second_coeff|
};

JonesSummary jones_summary(const LaurentPoly& v);

struct LickorishBounds {
  HalfInt min_deg;    // (c - |s_A| + 1) / 2, equal to min deg V for positive diagrams
  HalfInt max_bound;  // (2c + |s_B| - 1) / 2
};

// Errc::NotPositiveDiagram unless every crossing is positive.
LickorishBounds lickorish_bounds(const Diagram& d);

}  // namespace kpos
