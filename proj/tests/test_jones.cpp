#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "kpos/error.hpp"
#include "kpos/jones.hpp"
#include "oracles.hpp"

using namespace kpos;

namespace {

LaurentPoly t(const char* text) { return LaurentPoly::parse(text, "t"); }
LaurentPoly q(const char* text) { return LaurentPoly::parse(text, "q"); }
LaurentPoly a(const char* text) { return LaurentPoly::parse(text, "A"); }

const char* const kV74 = "t - 2t^2 + 3t^3 - 2t^4 + 3t^5 - 2t^6 + t^7 - t^8";
const char* const kJ74 = "q - q^3 + q^5 + q^7 + q^9 + q^11 - q^13 - q^17";

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::MalformedPD;
}

BigInt minus_two_power(int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= -2;
  return out;
}

}  // namespace

TEST_CASE("bracket normalization") {
  CHECK(kauffman_bracket(fx::unknot()) == a("1"));
  CHECK(kauffman_bracket(parse_pd("PD[O[],O[]]")) == a("-A^2 - A^-2"));
}

TEST_CASE("Jones fixtures") {
  CHECK(jones_polynomial(fx::trefoil()) == t("t + t^3 - t^4"));
  CHECK(jones_polynomial(fx::braid("strands=2; 1 1 1")) == t("t + t^3 - t^4"));
  CHECK(jones_polynomial(fx::seven_four()) == t(kV74));
  CHECK(jones_polynomial(fx::unknot()) == t("1"));
  CHECK(jones_polynomial(fx::braid("strands=2; 1")) == t("1"));
  CHECK(jones_polynomial(fx::mirror_trefoil()) == t("t^-1 + t^-3 - t^-4"));
  CHECK(jones_polynomial(fx::hopf()) == t("-t^(1/2) - t^(5/2)"));
  CHECK(jones_polynomial(fx::figure_eight()) == t("t^-2 - t^-1 + 1 - t + t^2"));
}

TEST_CASE("Jones agrees with a naive state sum") {
  for (const auto& [name, d] : fx::corpus()) {
    CAPTURE(name);
    CHECK(jones_polynomial(d) == oracle::jones(d, crossing_signs(d).writhe()));
  }
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 60; ++trial) {
    const int strands = 2 + trial % 3;
    std::uniform_int_distribution<int> gen(1, strands - 1);
    std::vector<int> w;
    int writhe = 0;
    for (int i = 0; i < 2 + trial % 8; ++i) {
      const int l = gen(rng) * (coin(rng) ? 1 : -1);
      writhe += l > 0 ? 1 : -1;
      w.push_back(l);
    }
    const Diagram d = braid_closure(make_braid(w, strands));
    CHECK(jones_polynomial(d) == oracle::jones(d, writhe));
  }
}

TEST_CASE("threaded bracket equals the serial one") {
  const Diagram d = fx::braid("strands=3; 1 2 1 2 1 2 1 2 -1 2 1 2 1");
  CHECK(kauffman_bracket(d, {20, 4}) == kauffman_bracket(d, {20, 1}));
}

TEST_CASE("Jones properties on the corpus") {
  for (const auto& [name, d] : fx::corpus()) {
    CAPTURE(name);
    const LaurentPoly v = jones_polynomial(d);
    const int n = components(d);
    CHECK(v.value_at_one() == minus_two_power(n - 1));
    CHECK(v.has_integer_exponents() == (n % 2 == 1));
    CHECK(v.has_half_odd_exponents() == (n % 2 == 0));
    CHECK(unnormalized_to_v(v_to_unnormalized(v)) == v);
    CHECK(jones_polynomial(reduce_nugatory(d)) == v);
    CHECK(jones_polynomial(d.mirror()) == v.inverted());
  }
}

TEST_CASE("Jones skein relation at every crossing") {
  const LaurentPoly t_inv = t("t^-1");
  const LaurentPoly tt = t("t");
  const LaurentPoly root = t("t^(1/2) - t^(-1/2)");
  for (const auto& [name, d] : fx::corpus()) {
    for (int k = 0; k < d.crossing_count(); ++k) {
      CAPTURE(name);
      CAPTURE(k);
      const LaurentPoly self = jones_polynomial(d);
      const LaurentPoly other = jones_polynomial(d.switched(k));
      const LaurentPoly zero = jones_polynomial(d.oriented_resolution(k));
      const LaurentPoly& plus = d.sign(k) > 0 ? self : other;
      const LaurentPoly& minus = d.sign(k) > 0 ? other : self;
      CHECK(t_inv * plus - tt * minus == root * zero);
    }
  }
}

TEST_CASE("unnormalized conversions") {
  CHECK(v_to_unnormalized(t(kV74)) == q(kJ74));
  CHECK(v_to_unnormalized(t("1")) == q("q + q^-1"));
  CHECK(v_to_unnormalized(t("t + t^3 - t^4")) == q("q + q^3 + q^5 - q^9"));
  CHECK(unnormalized_to_v(q(kJ74)) == t(kV74));
  CHECK(unnormalized_to_v(q("q + q^-1")) == t("1"));
  CHECK(unnormalized_to_v(q("q + q^3 + q^5 - q^9")) == t("t + t^3 - t^4"));
  CHECK(unnormalized_to_v(v_to_unnormalized(t("-t^(1/2) - t^(5/2)"))) == t("-t^(1/2) - t^(5/2)"));
  CHECK(code_of([] { v_to_unnormalized(t("1 + t^(1/2)")); }) == Errc::MixedParity);
  CHECK(code_of([] { unnormalized_to_v(q("q + 1")); }) == Errc::NotDivisible);
  CHECK(code_of([] { unnormalized_to_v(q("q")); }) == Errc::NotDivisible);
}

TEST_CASE("Jones summary") {
  const JonesSummary s74 = jones_summary(t(kV74));
  CHECK(s74.min_deg == HalfInt::whole(1));
  CHECK(s74.max_deg == HalfInt::whole(8));
  CHECK(s74.second_coeff == -2);
  CHECK(s74.p1 == 2);
  const JonesSummary s3 = jones_summary(t("t + t^3 - t^4"));
  CHECK(s3.min_deg == HalfInt::whole(1));
  CHECK(s3.max_deg == HalfInt::whole(4));
  CHECK(s3.second_coeff == 0);
  CHECK(s3.p1 == 0);
  const JonesSummary s12 = jones_summary(t("t^3 + t^5 - t^6 + t^7 - t^8 + t^9 - t^10"));
  CHECK(s12.min_deg == HalfInt::whole(3));
  CHECK(s12.max_deg == HalfInt::whole(10));
  CHECK(s12.p1 == 0);
  CHECK(code_of([] { jones_summary(LaurentPoly{}); }) == Errc::ZeroPolynomial);
}

TEST_CASE("Lickorish bounds") {
  const LickorishBounds b3 = lickorish_bounds(fx::trefoil());
  CHECK(b3.min_deg == HalfInt::whole(1));
  CHECK(b3.max_bound == HalfInt::whole(4));
  const LickorishBounds b0 = lickorish_bounds(fx::unknot());
  CHECK(b0.min_deg == HalfInt::whole(0));
  CHECK(b0.max_bound == HalfInt::whole(0));
  const LickorishBounds b74 = lickorish_bounds(fx::seven_four());
  CHECK(b74.min_deg == HalfInt::whole(1));
  CHECK(b74.max_bound == HalfInt::whole(8));
  CHECK(code_of([] { lickorish_bounds(fx::mirror_trefoil()); }) == Errc::NotPositiveDiagram);
  for (const auto& [name, d] : fx::corpus()) {
    if (!is_positive(d)) continue;
    CAPTURE(name);
    const LaurentPoly v = jones_polynomial(d);
    const LickorishBounds b = lickorish_bounds(d);
    CHECK(v.min_degree() == b.min_deg);
    CHECK(v.max_degree() <= b.max_bound);
  }
}
