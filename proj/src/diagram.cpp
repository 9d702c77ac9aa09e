#include "kpos/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "kpos/error.hpp"
#include "union_find.hpp"

namespace kpos {

int CrossingSigns::positive() const noexcept {
  return static_cast<int>(std::count(signs.begin(), signs.end(), 1));
}

int CrossingSigns::negative() const noexcept {
  return static_cast<int>(std::count(signs.begin(), signs.end(), -1));
}

namespace {

constexpr int partner_slot(int slot) { return (slot + 2) % 4; }

// Slot through which the over-strand enters.
constexpr int over_in_slot(int sign) { return sign > 0 ? 1 : 3; }
constexpr int over_out_slot(int sign) { return sign > 0 ? 3 : 1; }

bool is_incoming(int slot, int sign) { return slot == 0 || slot == over_in_slot(sign); }

struct Slot {
  int crossing;
  int slot;
};

// For each arc id, the two places it is attached.
std::map<int, std::vector<Slot>> occurrences(std::span<const PDTuple> xs) {
  std::map<int, std::vector<Slot>> occ;
  for (int x = 0; x < static_cast<int>(xs.size()); ++x)
    for (int k = 0; k < 4; ++k) occ[xs[x][k]].push_back({x, k});
  return occ;
}

// Flip a crossing over: reverses the cyclic order and exchanges over and under,
// which leaves the sign and both smoothings unchanged.
PDTuple turned_over(const PDTuple& t, int sign) {
  const auto [a, b, c, d] = t;
  return sign > 0 ? PDTuple{b, a, d, c} : PDTuple{d, c, b, a};
}

}  // namespace

Diagram Diagram::from_tuples(std::vector<PDTuple> crossings, int free_circles) {
  if (free_circles < 0) throw Error(Errc::MalformedPD, "negative free circle count");
  if (crossings.empty() && free_circles == 0) throw Error(Errc::MalformedPD, "empty diagram");
  const int n_arcs = 2 * static_cast<int>(crossings.size());
  std::vector<int> seen(static_cast<std::size_t>(n_arcs) + 1, 0);
  for (const auto& t : crossings) {
    for (int label : t) {
      if (label < 1) throw Error(Errc::MalformedPD, "arc labels must be positive");
      if (label > n_arcs)
        throw Error(Errc::ArcMultiplicity, "label " + std::to_string(label) + " exceeds arc count " +
                                               std::to_string(n_arcs));
      ++seen[label];
    }
  }
  for (int label = 1; label <= n_arcs; ++label)
    if (seen[label] != 2)
      throw Error(Errc::ArcMultiplicity,
                  "label " + std::to_string(label) + " appears " + std::to_string(seen[label]) + " times");

  const auto occ = occurrences(crossings);
  const auto other_end = [&](int x, int k) {
    const auto& v = occ.at(crossings[x][k]);
    return (v[0].crossing == x && v[0].slot == k) ? v[1] : v[0];
  };

  std::vector<int> signs(crossings.size(), 0);
  std::vector<std::array<bool, 4>> visited(crossings.size(), {false, false, false, false});
  int components = 0;
  for (int x0 = 0; x0 < static_cast<int>(crossings.size()); ++x0) {
    for (int k0 = 0; k0 < 4; ++k0) {
      if (visited[x0][k0]) continue;
      ++components;
      // Walk the component treating (x0, k0) as an entry slot; record entry slots.
      std::vector<Slot> entries;
      std::vector<int> labels;
      Slot cur{x0, k0};
      do {
        entries.push_back(cur);
        visited[cur.crossing][cur.slot] = true;
        const int out = partner_slot(cur.slot);
        visited[cur.crossing][out] = true;
        labels.push_back(crossings[cur.crossing][out]);
        cur = other_end(cur.crossing, out);
      } while (cur.crossing != x0 || cur.slot != k0);

      int forward_votes = 0, backward_votes = 0;
      for (const auto& e : entries) {
        if (e.slot == 0) ++forward_votes;
        if (e.slot == 2) ++backward_votes;
      }
      bool forward;
      if (forward_votes > 0 && backward_votes > 0) {
        throw Error(Errc::OrientationInconsistent,
                    "under-strands of one component run in opposite directions (crossing " +
                        std::to_string(x0 + 1) + ")");
      } else if (forward_votes + backward_votes > 0) {
        forward = forward_votes > 0;
      } else {
        // Over-strands only: orient so labels increase along the component.
        std::vector<int> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        const auto succ = [&](int l) {
          auto it = std::upper_bound(sorted.begin(), sorted.end(), l);
          return it == sorted.end() ? sorted.front() : *it;
        };
        int up = 0, down = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
          const int next = labels[(i + 1) % labels.size()];
          if (next == succ(labels[i])) ++up;
          if (labels[i] == succ(next)) ++down;
        }
        forward = up >= down;
      }
      for (const auto& e : entries) {
        const int in_slot = forward ? e.slot : partner_slot(e.slot);
        if (in_slot == 1) signs[e.crossing] = 1;
        if (in_slot == 3) signs[e.crossing] = -1;
      }
    }
  }

  Diagram d;
  d.crossings_ = std::move(crossings);
  d.signs_ = std::move(signs);
  d.free_circles_ = free_circles;
  d.components_ = components + free_circles;
  return d;
}

Diagram Diagram::from_oriented(std::vector<PDTuple> xs, std::vector<int> signs, int free_circles) {
  if (free_circles < 0) throw Error(Errc::MalformedPD, "negative free circle count");
  if (xs.empty() && free_circles == 0) throw Error(Errc::MalformedPD, "empty diagram");
  if (signs.size() != xs.size()) throw Error(Errc::MalformedPD, "one sign per crossing required");
  std::map<int, std::pair<int, int>> ends;  // id -> (entries, exits)
  for (std::size_t x = 0; x < xs.size(); ++x) {
    if (signs[x] != 1 && signs[x] != -1) throw Error(Errc::MalformedPD, "crossing signs must be +1 or -1");
    for (int k = 0; k < 4; ++k) {
      auto& e = ends[xs[x][k]];
      (is_incoming(k, signs[x]) ? e.first : e.second) += 1;
    }
  }
  for (const auto& [id, e] : ends) {
    if (e.first + e.second != 2) throw Error(Errc::ArcMultiplicity, "arc id " + std::to_string(id) + " not used twice");
    if (e.first != 1) throw Error(Errc::OrientationInconsistent, "arc id " + std::to_string(id) + " is not a path");
  }
  return assemble(std::move(xs), std::move(signs), free_circles);
}

Diagram Diagram::assemble(std::vector<PDTuple> xs, std::vector<int> signs, int free_circles) {
  if (xs.empty()) {
    Diagram d;
    d.free_circles_ = free_circles;
    d.components_ = free_circles;
    return d;
  }
  const auto occ = occurrences(xs);
  // Head (entry) and tail (exit) of every arc id.
  std::map<int, Slot> head;
  for (const auto& [id, where] : occ)
    for (const auto& s : where)
      if (is_incoming(s.slot, signs[s.crossing])) head[id] = s;

  std::map<int, int> relabel;
  int next_label = 1;
  int components = 0;
  for (const auto& [id, where] : occ) {
    if (relabel.count(id)) continue;
    ++components;
    int cur = id;
    while (!relabel.count(cur)) {
      relabel[cur] = next_label++;
      const Slot h = head.at(cur);
      cur = xs[h.crossing][partner_slot(h.slot)];
    }
  }
  for (auto& t : xs)
    for (int& label : t) label = relabel.at(label);

  Diagram d;
  d.crossings_ = std::move(xs);
  d.signs_ = std::move(signs);
  d.free_circles_ = free_circles;
  d.components_ = components + free_circles;
  return d;
}

bool Diagram::is_connected() const {
  if (crossings_.empty()) return free_circles_ == 1;
  if (free_circles_ > 0) return false;
  detail::UnionFind uf(crossings_.size());
  const auto occ = occurrences(crossings_);
  for (const auto& [id, where] : occ) uf.unite(where[0].crossing, where[1].crossing);
  for (int x = 1; x < crossing_count(); ++x)
    if (uf.find(x) != uf.find(0)) return false;
  return true;
}

Diagram Diagram::switched(int k) const {
  Diagram d = *this;
  const auto [a, b, c, e] = crossings_.at(static_cast<std::size_t>(k));
  d.crossings_[k] = signs_[k] > 0 ? PDTuple{b, c, e, a} : PDTuple{e, a, b, c};
  d.signs_[k] = -signs_[k];
  return d;
}

Diagram Diagram::mirror() const {
  Diagram d = *this;
  for (int k = 0; k < crossing_count(); ++k) d = d.switched(k);
  return d;
}

Diagram Diagram::without_crossing(int k, std::array<std::pair<int, int>, 2> joins,
                                  std::vector<PDTuple> others) const {
  const PDTuple& gone = crossings_.at(static_cast<std::size_t>(k));
  std::vector<int> signs;
  std::vector<PDTuple> kept;
  for (int x = 0; x < crossing_count(); ++x) {
    if (x == k) continue;
    kept.push_back(others[x]);
    signs.push_back(signs_[x]);
  }
  detail::UnionFind uf(static_cast<std::size_t>(arc_count()) + 1);
  for (const auto& [s, t] : joins) uf.unite(gone[s], gone[t]);
  std::set<int> remaining;
  for (auto& t : kept)
    for (int& label : t) {
      label = uf.find(label);
      remaining.insert(label);
    }
  std::set<int> closed;
  for (int label : gone)
    if (!remaining.count(uf.find(label))) closed.insert(uf.find(label));
  return assemble(std::move(kept), std::move(signs), free_circles_ + static_cast<int>(closed.size()));
}

Diagram Diagram::oriented_resolution(int k) const {
  const int s = sign(k);
  return without_crossing(k, {{{0, over_out_slot(s)}, {over_in_slot(s), 2}}}, crossings_);
}

Diagram Diagram::untwisted(int k) const {
  const PDTuple& v = crossings_.at(static_cast<std::size_t>(k));
  detail::UnionFind uf(static_cast<std::size_t>(arc_count()) + 1);
  for (int x = 0; x < crossing_count(); ++x) {
    if (x == k) continue;
    for (int j = 1; j < 4; ++j) uf.unite(crossings_[x][0], crossings_[x][j]);
  }
  const auto cls = [&](int slot) { return uf.find(v[slot]); };
  int side_slot;
  if (cls(0) == cls(1) && cls(2) == cls(3) && cls(0) != cls(2)) {
    side_slot = 0;
  } else if (cls(1) == cls(2) && cls(3) == cls(0) && cls(0) != cls(1)) {
    side_slot = 1;
  } else {
    throw Error(Errc::MalformedPD, "crossing " + std::to_string(k + 1) + " is not nugatory");
  }
  // Turn over every crossing on the side attached at side_slot.
  std::vector<PDTuple> others = crossings_;
  for (int x = 0; x < crossing_count(); ++x)
    if (x != k && uf.find(crossings_[x][0]) == cls(side_slot))
      others[x] = turned_over(crossings_[x], signs_[x]);
  return without_crossing(k, {{{0, 2}, {1, 3}}}, std::move(others));
}

std::string Diagram::to_pd_string() const {
  std::string out = "PD[";
  bool first = true;
  for (const auto& t : crossings_) {
    if (!first) out += ",";
    first = false;
    out += "X[" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
           std::to_string(t[3]) + "]";
  }
  for (int i = 0; i < free_circles_; ++i) {
    if (!first) out += ",";
    first = false;
    out += "O[]";
  }
  return out + "]";
}

namespace {

class PdParser {
 public:
  explicit PdParser(std::string_view text) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  Diagram run() {
    expect("PD[");
    std::vector<PDTuple> xs;
    int free_circles = 0;
    if (peek() != ']') {
      do {
        if (accept("O[")) {
          expect("]");
          ++free_circles;
        } else if (accept("X[")) {
          xs.push_back(tuple());
        } else {
          fail("expected X[...] or O[]");
        }
      } while (accept(","));
    }
    expect("]");
    if (pos_ != s_.size()) fail("trailing characters");
    return Diagram::from_tuples(std::move(xs), free_circles);
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  bool accept(std::string_view tok) {
    if (s_.compare(pos_, tok.size(), tok) != 0) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::MalformedPD, why + " at offset " + std::to_string(pos_));
  }

  PDTuple tuple() {
    std::vector<int> labels;
    if (peek() != ']') {
      do {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a positive integer label");
        if (pos_ - start > 9) fail("label too large");
        labels.push_back(std::stoi(s_.substr(start, pos_ - start)));
      } while (accept(","));
    }
    expect("]");
    if (labels.size() != 4)
      throw Error(Errc::ArityError, "crossing with " + std::to_string(labels.size()) + " entries");
    return {labels[0], labels[1], labels[2], labels[3]};
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Diagram parse_pd(std::string_view text) { return PdParser(text).run(); }

CrossingSigns crossing_signs(const Diagram& d) {
  return CrossingSigns{std::vector<int>(d.signs().begin(), d.signs().end())};
}

int components(const Diagram& d) { return d.component_count(); }

bool is_positive(const Diagram& d) {
  return std::all_of(d.signs().begin(), d.signs().end(), [](int s) { return s > 0; });
}

int label_state_circles(const Diagram& d, std::uint64_t b_mask, std::vector<int>& circle_of_arc) {
  const int n_arcs = d.arc_count();
  detail::UnionFind uf(static_cast<std::size_t>(n_arcs) + 1);
  const auto xs = d.crossings();
  for (int k = 0; k < d.crossing_count(); ++k) {
    const auto& [a, b, c, e] = xs[k];
    if ((b_mask >> k) & 1U) {
      uf.unite(a, b);
      uf.unite(c, e);
    } else {
      uf.unite(a, e);
      uf.unite(b, c);
    }
  }
  circle_of_arc.assign(static_cast<std::size_t>(n_arcs) + 1, -1);
  int count = 0;
  // Roots are class minima, so circles come out numbered by smallest arc.
  for (int arc = 1; arc <= n_arcs; ++arc) {
    const int root = uf.find(arc);
    if (root == arc) circle_of_arc[arc] = count++;
  }
  for (int arc = 1; arc <= n_arcs; ++arc) circle_of_arc[arc] = circle_of_arc[uf.find(arc)];
  return count + d.free_circles();
}

int state_circles(const Diagram& d, std::uint64_t b_mask) {
  std::vector<int> scratch;
  return label_state_circles(d, b_mask, scratch);
}

int state_circles(const Diagram& d, const State& s) {
  if (static_cast<int>(s.size()) != d.crossing_count())
    throw Error(Errc::MalformedPD, "state length does not match the crossing count");
  if (d.crossing_count() > 64) throw Error(Errc::CrossingCapExceeded, "states limited to 64 crossings");
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] == Smoothing::B) mask |= std::uint64_t{1} << k;
  return state_circles(d, mask);
}

int a_state_circles(const Diagram& d) { return state_circles(d, State(d.crossing_count(), Smoothing::A)); }

int b_state_circles(const Diagram& d) { return state_circles(d, State(d.crossing_count(), Smoothing::B)); }

bool is_nugatory(const Diagram& d, int k) {
  const auto xs = d.crossings();
  const PDTuple& v = xs[k];
  detail::UnionFind uf(static_cast<std::size_t>(d.arc_count()) + 1);
  for (int x = 0; x < d.crossing_count(); ++x) {
    if (x == k) continue;
    for (int j = 1; j < 4; ++j) uf.unite(xs[x][0], xs[x][j]);
  }
  std::set<int> classes;
  for (int label : v) classes.insert(uf.find(label));
  return classes.size() > 1;
}

Diagram reduce_nugatory(const Diagram& d) {
  Diagram cur = d;
  for (;;) {
    int found = -1;
    for (int k = 0; k < cur.crossing_count() && found < 0; ++k)
      if (is_nugatory(cur, k)) found = k;
    if (found < 0) return cur;
    cur = cur.untwisted(found);
  }
}

}  // namespace kpos
