#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kpos {

// X[a,b,c,d]: a is the incoming under-strand, the rest follow around the crossing.
// The over-strand runs b->d at a positive crossing and d->b at a negative one.
// Smoothing A joins a-d and b-c; smoothing B joins a-b and c-d.
using PDTuple = std::array<int, 4>;

enum class Smoothing : std::uint8_t { A, B };
using State = std::vector<Smoothing>;

struct CrossingSigns {
  std::vector<int> signs;  // +1 / -1 per crossing, in diagram order

  int positive() const noexcept;
  int negative() const noexcept;
  int writhe() const noexcept { return positive() - negative(); }
};

// An oriented link diagram given by PD tuples plus crossing-free circles.
// Immutable once built; every transformation returns a new diagram.
class Diagram {
 public:
  Diagram() = default;

  // Validates the tuples and infers the orientation of every component:
  // from its under-passages (a -> c) when it has any, otherwise from label succession.
  static Diagram from_tuples(std::vector<PDTuple> crossings, int free_circles);
  // Arc ids are arbitrary integers; signs fix the orientation explicitly. Arcs are
  // relabeled 1..2c along the orientation, components ordered by their smallest id.
  static Diagram from_oriented(std::vector<PDTuple> crossings, std::vector<int> signs, int free_circles);

  std::span<const PDTuple> crossings() const noexcept { return crossings_; }
  int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
  int arc_count() const noexcept { return 2 * crossing_count(); }
  int free_circles() const noexcept { return free_circles_; }
  int component_count() const noexcept { return components_; }
  int sign(int k) const { return signs_.at(static_cast<std::size_t>(k)); }
  std::span<const int> signs() const noexcept { return signs_; }

  // True when the underlying projection is connected (free circles count as pieces).
  bool is_connected() const;

  // Same diagram with crossing k changed from over to under.
  Diagram switched(int k) const;
  // Crossing k replaced by its orientation-respecting smoothing.
  Diagram oriented_resolution(int k) const;
  // Removes a nugatory crossing by turning over one side of the diagram.
  Diagram untwisted(int k) const;
  // Every crossing switched.
  Diagram mirror() const;

  std::string to_pd_string() const;

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  // Relabels arcs along the orientation, components ordered by their smallest input id.
  static Diagram assemble(std::vector<PDTuple> crossings, std::vector<int> signs, int free_circles);
  Diagram without_crossing(int k, std::array<std::pair<int, int>, 2> joins,
                           std::vector<PDTuple> others) const;

  std::vector<PDTuple> crossings_;
  std::vector<int> signs_;
  int free_circles_ = 0;
  int components_ = 0;
};

Diagram parse_pd(std::string_view text);

CrossingSigns crossing_signs(const Diagram& d);
int components(const Diagram& d);
bool is_positive(const Diagram& d);

// Circle count of the state; bit k of b_mask set means crossing k gets a B-smoothing.
int state_circles(const Diagram& d, std::uint64_t b_mask);
int state_circles(const Diagram& d, const State& s);
int a_state_circles(const Diagram& d);
int b_state_circles(const Diagram& d);

// Labels every arc with the index of the state circle containing it (arcs are 1-based,
// slot 0 unused). Circles are numbered by their smallest arc. Free circles are not
// included in the labeling but are counted in the returned total, after the arc circles.
int label_state_circles(const Diagram& d, std::uint64_t b_mask, std::vector<int>& circle_of_arc);

bool is_nugatory(const Diagram& d, int k);
Diagram reduce_nugatory(const Diagram& d);

}  // namespace kpos
