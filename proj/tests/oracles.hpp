#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kpos/diagram.hpp"
#include "kpos/laurent.hpp"

// Deliberately naive reimplementations used to cross-check the library.
namespace oracle {

using kpos::BigInt;
using Rational = boost::multiprecision::cpp_rational;

// Circles of a smoothing found by walking arc endpoints (bit k of b_mask set = B at crossing k).
int circles(const kpos::Diagram& d, std::uint64_t b_mask);

// Kauffman state sum collected into a plain exponent map, then V = (-A^3)^-w <D> at A = t^(-1/4).
kpos::LaurentPoly jones(const kpos::Diagram& d, int writhe);

// Writhe of a knot diagram whose labels run consecutively along the knot.
int sequential_writhe(const kpos::Diagram& d);

// Determinant of the reduced Fox matrix of a knot diagram evaluated at t, which equals the
// Alexander polynomial at t up to a factor +-t^m.
Rational alexander_det(const kpos::Diagram& d, const Rational& t);

Rational evaluate(const kpos::LaurentPoly& p, const Rational& t);

// Faces of the planar 4-valent graph traced from the cyclic order in each tuple.
int faces(const kpos::Diagram& d);

// Invariant factors > 1 and rank from gcds of all k x k minors.
struct Snf {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
};
Snf smith(const std::vector<std::vector<std::int64_t>>& m);

}  // namespace oracle
