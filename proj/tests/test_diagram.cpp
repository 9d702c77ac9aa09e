#include <doctest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "kpos/error.hpp"
#include "oracles.hpp"

using namespace kpos;

namespace {

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

// Number of connected pieces of the 4-valent graph (crossings joined by arcs).
int graph_pieces(const Diagram& d) {
  const auto xs = d.crossings();
  std::vector<int> parent(xs.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<int, int> first;
  for (int k = 0; k < static_cast<int>(xs.size()); ++k)
    for (int l : xs[k]) {
      auto [it, fresh] = first.emplace(l, k);
      if (!fresh) parent[find(k)] = find(it->second);
    }
  int pieces = 0;
  for (int k = 0; k < static_cast<int>(xs.size()); ++k) pieces += find(k) == k;
  return pieces;
}

// Euler's formula for each connected piece of a planar 4-valent graph.
bool planar(const Diagram& d) {
  const int pieces = graph_pieces(d);
  return oracle::faces(d) == d.crossing_count() + 2 * pieces;
}

std::vector<int> random_word(std::mt19937& rng, int strands, int length, bool positive) {
  std::uniform_int_distribution<int> gen(1, strands - 1), coin(0, 1);
  std::vector<int> w;
  for (int i = 0; i < length; ++i) w.push_back(gen(rng) * (positive || coin(rng) ? 1 : -1));
  return w;
}

int permutation_cycles(const BraidWord& b) {
  std::vector<int> perm(b.strands);
  std::iota(perm.begin(), perm.end(), 0);
  for (int l : b.letters) std::swap(perm[std::abs(l) - 1], perm[std::abs(l)]);
  std::vector<bool> seen(b.strands, false);
  int cycles = 0;
  for (int s = 0; s < b.strands; ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int x = s; !seen[x]; x = perm[x]) seen[x] = true;
  }
  return cycles;
}

}  // namespace

TEST_CASE("trefoil PD") {
  const Diagram d = fx::trefoil();
  CHECK(d.crossing_count() == 3);
  CHECK(d.arc_count() == 6);
  CHECK(d.free_circles() == 0);
  CHECK(components(d) == 1);
  const CrossingSigns s = crossing_signs(d);
  CHECK(s.signs == std::vector<int>{1, 1, 1});
  CHECK(s.writhe() == 3);
  CHECK(is_positive(d));
  CHECK(a_state_circles(d) == 2);
  CHECK(b_state_circles(d) == 3);
  CHECK(state_circles(d, State(3, Smoothing::A)) == 2);
  CHECK(state_circles(d, State(3, Smoothing::B)) == 3);
  CHECK(reduce_nugatory(d) == d);
  CHECK(d.is_connected());
}

TEST_CASE("mirror trefoil") {
  const Diagram d = fx::mirror_trefoil();
  CHECK(crossing_signs(d).signs == std::vector<int>{-1, -1, -1});
  CHECK(crossing_signs(d).writhe() == -3);
  CHECK(!is_positive(d));
  CHECK(a_state_circles(d) == 3);
  CHECK(b_state_circles(d) == 2);
}

TEST_CASE("signs agree with an explicit strand-orientation check") {
  for (const char* pd : {fx::kTrefoil, fx::k74}) {
    const Diagram d = parse_pd(pd);
    CHECK(crossing_signs(d).writhe() == oracle::sequential_writhe(d));
    CHECK(crossing_signs(d.mirror()).writhe() == -oracle::sequential_writhe(d));
  }
}

TEST_CASE("zero-crossing diagrams") {
  const Diagram d = fx::unknot();
  CHECK(d.crossing_count() == 0);
  CHECK(d.free_circles() == 1);
  CHECK(components(d) == 1);
  CHECK(crossing_signs(d).signs.empty());
  CHECK(crossing_signs(d).writhe() == 0);
  CHECK(is_positive(d));
  CHECK(state_circles(d, State{}) == 1);
  CHECK(reduce_nugatory(d) == d);
  CHECK(components(parse_pd("PD[O[],O[]]")) == 2);
}

TEST_CASE("PD grammar errors") {
  CHECK(code_of([] { parse_pd("PD[X[1,2,3]]"); }) == Errc::ArityError);
  CHECK(code_of([] { parse_pd("PD[X[1,2,3,4,5]]"); }) == Errc::ArityError);
  CHECK(code_of([] { parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,7]]"); }) == Errc::ArcMultiplicity);
  CHECK(code_of([] { parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3],X[1,2,3,4]]"); }) == Errc::ArcMultiplicity);
  CHECK(code_of([] { parse_pd("PD[Y[1,2,3,4]]"); }) == Errc::MalformedPD);
  CHECK(code_of([] { parse_pd("PD[X[1,4,2,5]"); }) == Errc::MalformedPD);
  CHECK(code_of([] { parse_pd("X[1,4,2,5]"); }) == Errc::MalformedPD);
  CHECK(code_of([] { parse_pd("PD[X[0,4,2,5]]"); }) == Errc::MalformedPD);
  CHECK(code_of([] { parse_pd("PD[]"); }) == Errc::MalformedPD);
  CHECK(code_of([] { parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[6,3,5,2]]"); }) == Errc::OrientationInconsistent);
}

TEST_CASE("whitespace is insignificant") {
  CHECK(parse_pd(" PD [ X[1, 4,2 ,5] ,X[3,6,4,1],\n X[5,2,6,3] ] ") == fx::trefoil());
}

TEST_CASE("PD text round trip") {
  for (const auto& [name, d] : fx::corpus()) {
    CAPTURE(name);
    CHECK(parse_pd(d.to_pd_string()) == d);
  }
}

TEST_CASE("state circles match a traversal oracle on every state") {
  for (const auto& [name, d] : fx::corpus()) {
    CAPTURE(name);
    const int c = d.crossing_count();
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << c); ++s) {
      const int k = state_circles(d, s);
      REQUIRE(k == oracle::circles(d, s));
      CHECK(k >= 1);
      CHECK(k <= c + 1 + d.free_circles());
      for (int b = 0; b < c; ++b) CHECK(std::abs(state_circles(d, s ^ (std::uint64_t{1} << b)) - k) == 1);
    }
  }
}

TEST_CASE("sign counts add up") {
  for (const auto& [name, d] : fx::corpus()) {
    const auto s = crossing_signs(d);
    CHECK(s.positive() + s.negative() == d.crossing_count());
  }
}

TEST_CASE("fixtures are planar") {
  for (const auto& [name, d] : fx::corpus()) {
    CAPTURE(name);
    CHECK(planar(d));
  }
}

TEST_CASE("nugatory reduction") {
  const Diagram kink = fx::braid("strands=2; 1");
  CHECK(kink.crossing_count() == 1);
  CHECK(is_nugatory(kink, 0));
  const Diagram reduced = reduce_nugatory(kink);
  CHECK(reduced.crossing_count() == 0);
  CHECK(reduced.free_circles() == 1);
  CHECK(reduced.to_pd_string() == "PD[O[]]");

  const Diagram stabilized = fx::braid("strands=4; 1 1 1 2 -3");
  const Diagram r = reduce_nugatory(stabilized);
  CHECK(r.crossing_count() == 3);
  CHECK(components(r) == 1);
  for (int k = 0; k < 3; ++k) CHECK(!is_nugatory(fx::trefoil(), k));
}

TEST_CASE("nugatory reduction on random braids") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int strands = 2 + trial % 3;
    const BraidWord b = make_braid(random_word(rng, strands, 1 + trial % 7, false), strands);
    const Diagram d = braid_closure(b);
    const Diagram r = reduce_nugatory(d);
    CAPTURE(b.to_string());
    CHECK(components(r) == components(d));
    CHECK(r.crossing_count() <= d.crossing_count());
    for (int k = 0; k < r.crossing_count(); ++k) CHECK(!is_nugatory(r, k));
    CHECK(planar(r));
    CHECK(reduce_nugatory(r) == r);
  }
}

TEST_CASE("transforms keep diagrams planar") {
  for (const auto& [name, d] : fx::corpus()) {
    CAPTURE(name);
    CHECK(planar(d.mirror()));
    for (int k = 0; k < d.crossing_count(); ++k) {
      const Diagram sw = d.switched(k);
      CHECK(sw.sign(k) == -d.sign(k));
      CHECK(planar(sw));
      const Diagram res = d.oriented_resolution(k);
      CHECK(res.crossing_count() == d.crossing_count() - 1);
      CHECK(planar(res));
      if (is_nugatory(d, k)) {
        const Diagram u = d.untwisted(k);
        CHECK(u.crossing_count() == d.crossing_count() - 1);
        CHECK(components(u) == components(d));
        CHECK(planar(u));
      }
    }
  }
}

TEST_CASE("braid parsing") {
  const BraidWord b = parse_braid("strands=2; 1 1 1");
  CHECK(b.strands == 2);
  CHECK(b.letters == std::vector<int>{1, 1, 1});
  CHECK(parse_braid("strands=2; 1 1 1 1 1 1 1").letters.size() == 7);
  CHECK(parse_braid("strands=3; 1,-2, 1").letters == std::vector<int>{1, -2, 1});
  CHECK(parse_braid(b.to_string()) == b);
  CHECK(code_of([] { parse_braid("strands=2; 0"); }) == Errc::ZeroLetter);
  CHECK(code_of([] { parse_braid("strands=2; 2"); }) == Errc::GeneratorOutOfRange);
  CHECK(code_of([] { parse_braid("strands=2; -2"); }) == Errc::GeneratorOutOfRange);
  CHECK(code_of([] { parse_braid("1 1 1"); }) == Errc::MalformedBraid);
  CHECK(code_of([] { parse_braid("strands=x; 1"); }) == Errc::MalformedBraid);
  CHECK(code_of([] { parse_braid("strands=2; 1 a"); }) == Errc::MalformedBraid);
}

TEST_CASE("braid closures") {
  const Diagram tref = fx::braid("strands=2; 1 1 1");
  CHECK(tref.crossing_count() == 3);
  CHECK(is_positive(tref));
  const Diagram empty = fx::braid("strands=1;");
  CHECK(empty.crossing_count() == 0);
  CHECK(empty.free_circles() == 1);
  CHECK(components(fx::hopf()) == 2);
  CHECK(fx::braid("strands=3; 1 1 1").free_circles() == 1);
  CHECK(crossing_signs(fx::braid("strands=3; 1 -2 1 -2")).signs == std::vector<int>{1, -1, 1, -1});
}

TEST_CASE("closure components equal permutation cycles") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int strands = 1 + trial % 5;
    const BraidWord b =
        strands == 1 ? make_braid({}, 1) : make_braid(random_word(rng, strands, trial % 9, false), strands);
    const Diagram d = braid_closure(b);
    CAPTURE(b.to_string());
    CHECK(components(d) == permutation_cycles(b));
    CHECK(crossing_signs(d).writhe() ==
          std::accumulate(b.letters.begin(), b.letters.end(), 0, [](int a, int l) { return a + (l > 0 ? 1 : -1); }));
  }
}
