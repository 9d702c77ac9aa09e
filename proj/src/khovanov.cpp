#include "kpos/khovanov.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

#include "kpos/error.hpp"
#include "kpos/smith.hpp"

namespace kpos {

void BigradedGroups::add_free(int i, int j, std::int64_t rank) {
  if (rank == 0) return;
  auto& g = entries_[{i, j}];
  g.free_rank += rank;
  if (g.is_zero()) entries_.erase({i, j});
}

void BigradedGroups::add_torsion(int i, int j, const BigInt& order, std::int64_t count) {
  if (count <= 0 || order < 2) return;
  auto& g = entries_[{i, j}];
  for (std::int64_t n = 0; n < count; ++n) g.torsion.push_back(order);
  g.torsion = invariant_factors(std::move(g.torsion));
}

void BigradedGroups::set(int i, int j, GroupSummand g) {
  g.torsion = invariant_factors(std::move(g.torsion));
  if (g.is_zero()) {
    entries_.erase({i, j});
  } else {
    entries_[{i, j}] = std::move(g);
  }
}

GroupSummand BigradedGroups::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? GroupSummand{} : it->second;
}

namespace {

// Per-state circle data shared by every quantum slice.
struct Cube {
  int crossings = 0;
  int arcs = 0;
  int free_circles = 0;
  std::vector<std::uint8_t> arc_circles;  // number of arc circles per state
  std::vector<std::uint8_t> circle_of;    // [state * (arcs + 1) + arc]
  std::vector<std::uint8_t> rep_arc;      // [state * (arcs + 1) + circle] smallest arc of the circle

  int circles(std::uint32_t s) const { return arc_circles[s] + free_circles; }
  int circle(std::uint32_t s, int arc) const { return circle_of[s * (arcs + 1) + arc]; }
  int rep(std::uint32_t s, int c) const { return rep_arc[s * (arcs + 1) + c]; }
};

Cube build_cube(const Diagram& d) {
  Cube cube;
  cube.crossings = d.crossing_count();
  cube.arcs = d.arc_count();
  cube.free_circles = d.free_circles();
  const std::uint32_t states = std::uint32_t{1} << cube.crossings;
  const std::size_t stride = static_cast<std::size_t>(cube.arcs) + 1;
  cube.arc_circles.resize(states);
  cube.circle_of.assign(states * stride, 0);
  cube.rep_arc.assign(states * stride, 0);
  std::vector<int> labels;
  for (std::uint32_t s = 0; s < states; ++s) {
    const int total = label_state_circles(d, s, labels);
    cube.arc_circles[s] = static_cast<std::uint8_t>(total - cube.free_circles);
    for (int arc = cube.arcs; arc >= 1; --arc) {
      cube.circle_of[s * stride + arc] = static_cast<std::uint8_t>(labels[arc]);
      cube.rep_arc[s * stride + labels[arc]] = static_cast<std::uint8_t>(arc);
    }
  }
  return cube;
}

// Labelings of k circles (bit set = v+) grouped by number of v+ circles, plus the
// position of each labeling inside its group.
struct LabelingTable {
  std::vector<std::vector<std::vector<std::uint32_t>>> by_count;  // [k][p] -> labelings
  std::vector<std::vector<std::uint32_t>> rank;                   // [k][x]

  explicit LabelingTable(int max_k) : by_count(max_k + 1), rank(max_k + 1) {
    for (int k = 0; k <= max_k; ++k) {
      by_count[k].resize(k + 1);
      rank[k].resize(std::size_t{1} << k);
      for (std::uint32_t x = 0; x < (std::uint32_t{1} << k); ++x) {
        auto& group = by_count[k][std::popcount(x)];
        rank[k][x] = static_cast<std::uint32_t>(group.size());
        group.push_back(x);
      }
    }
  }
};

struct SliceHomology {
  int j = 0;
  std::vector<std::int64_t> dims;            // dim C^r_j
  std::vector<SmithInvariants> differential; // d^r : C^r_j -> C^{r+1}_j
};

class SliceBuilder {
 public:
  SliceBuilder(const Diagram& d, const Cube& cube, const LabelingTable& table)
      : d_(d), cube_(cube), table_(table) {
    const auto signs = crossing_signs(d);
    shift_ = signs.positive() - 2 * signs.negative();
  }

  // Number of v+ circles for a generator of state s in quantum grading j, or -1.
  int plus_count(std::uint32_t s, int j) const {
    const int r = std::popcount(s);
    const int k = cube_.circles(s);
    const int twice_p = j - r - shift_ + k;
    if (twice_p % 2 != 0 || twice_p < 0 || twice_p > 2 * k) return -1;
    return twice_p / 2;
  }

  // Transposed differentials of the slice: matrix r has a row per generator of C^r_j
  // and a column per generator of C^{r+1}_j.
  std::vector<SparseIntMatrix> matrices(int j, std::vector<std::int64_t>& dims) const {
    const int c = cube_.crossings;
    const std::uint32_t states = std::uint32_t{1} << c;
    // offset[s]: first index of state s's generators within its chain group.
    std::vector<std::int64_t> offset(states, -1);
    dims.assign(static_cast<std::size_t>(c) + 2, 0);
    for (std::uint32_t s = 0; s < states; ++s) {
      const int p = plus_count(s, j);
      if (p < 0) continue;
      const int r = std::popcount(s);
      offset[s] = dims[r];
      dims[r] += static_cast<std::int64_t>(table_.by_count[cube_.circles(s)][p].size());
    }
    std::vector<SparseIntMatrix> out;
    for (int r = 0; r < c; ++r) {
      SparseIntMatrix m(static_cast<int>(dims[r]), static_cast<int>(dims[r + 1]));
      if (dims[r] > 0 && dims[r + 1] > 0) {
        for (std::uint32_t s = 0; s < states; ++s) {
          if (std::popcount(s) != r || offset[s] < 0) continue;
          add_state_rows(s, j, offset, m);
        }
      }
      out.push_back(std::move(m));
    }
    dims.resize(static_cast<std::size_t>(c) + 1);
    return out;
  }

  SliceHomology compute(int j) const {
    SliceHomology out;
    out.j = j;
    for (const auto& m : matrices(j, out.dims)) out.differential.push_back(smith_invariants(m));
    return out;
  }

 private:
  struct Edge {
    std::uint32_t target;
    int sign;
    bool merge;
    int first, second;          // circles of s touching the crossing (merge) / split circle
    int out_first, out_second;  // resulting circle (merge) / the two new circles (split)
    std::vector<int> image;     // circle of s -> circle of target
  };

  Edge make_edge(std::uint32_t s, int b) const {
    const auto& t = d_.crossings()[b];
    Edge e;
    e.target = s | (std::uint32_t{1} << b);
    e.sign = (std::popcount(s & ((std::uint32_t{1} << b) - 1)) % 2 == 0) ? 1 : -1;
    // A-smoothing joins t0-t3 and t1-t2; the B-smoothing joins t0-t1 and t2-t3.
    e.first = cube_.circle(s, t[0]);
    e.second = cube_.circle(s, t[1]);
    e.merge = e.first != e.second;
    e.out_first = cube_.circle(e.target, t[0]);
    e.out_second = cube_.circle(e.target, t[2]);
    const int k = cube_.circles(s);
    const int arc_k = cube_.arc_circles[s];
    const int target_arc_k = cube_.arc_circles[e.target];
    e.image.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      e.image[i] = i < arc_k ? cube_.circle(e.target, cube_.rep(s, i)) : target_arc_k + (i - arc_k);
    return e;
  }

  void add_state_rows(std::uint32_t s, int j, const std::vector<std::int64_t>& offset, SparseIntMatrix& m) const {
    const int k = cube_.circles(s);
    const int p = plus_count(s, j);
    std::vector<Edge> edges;
    for (int b = 0; b < cube_.crossings; ++b)
      if (!((s >> b) & 1U)) edges.push_back(make_edge(s, b));

    std::vector<std::pair<int, std::int64_t>> row;
    for (std::uint32_t x : table_.by_count[k][p]) {
      row.clear();
      for (const Edge& e : edges) {
        std::uint32_t base = 0;
        for (int i = 0; i < k; ++i)
          if (i != e.first && i != e.second && ((x >> i) & 1U)) base |= std::uint32_t{1} << e.image[i];
        const int tk = cube_.circles(e.target);
        const auto emit = [&](std::uint32_t y) {
          const std::int64_t col = offset[e.target] + table_.rank[tk][y];
          row.emplace_back(static_cast<int>(col), e.sign);
        };
        const bool plus_a = (x >> e.first) & 1U;
        if (e.merge) {
          const bool plus_b = (x >> e.second) & 1U;
          // m(+,+) = +, m(+,-) = m(-,+) = -, m(-,-) = 0
          if (plus_a && plus_b) emit(base | (std::uint32_t{1} << e.out_first));
          else if (plus_a || plus_b) emit(base);
        } else {
          // D(+) = +- + -+, D(-) = --
          if (plus_a) {
            emit(base | (std::uint32_t{1} << e.out_first));
            emit(base | (std::uint32_t{1} << e.out_second));
          } else {
            emit(base);
          }
        }
      }
      std::sort(row.begin(), row.end());
      const int r_index = static_cast<int>(offset[s] + table_.rank[k][x]);
      for (const auto& [col, v] : row) m.add(r_index, col, v);
    }
  }

  const Diagram& d_;
  const Cube& cube_;
  const LabelingTable& table_;
  int shift_ = 0;
};

void check_size(const Diagram& d, const KhovanovOptions& opts) {
  const int c = d.crossing_count();
  if (c > opts.crossing_cap)
    throw Error(Errc::CrossingCapExceeded,
                std::to_string(c) + " crossings exceeds the Khovanov cap of " + std::to_string(opts.crossing_cap));
  if (c > 24) throw Error(Errc::CrossingCapExceeded, "Khovanov computation limited to 24 crossings");
  if (c + 1 + d.free_circles() > 24) throw Error(Errc::CrossingCapExceeded, "too many circles");
}

}  // namespace

std::vector<SparseIntMatrix> khovanov_chain_slice(const Diagram& d, int j, const KhovanovOptions& opts) {
  check_size(d, opts);
  const Cube cube = build_cube(d);
  const LabelingTable table(d.crossing_count() + 1 + d.free_circles());
  const SliceBuilder builder(d, cube, table);
  std::vector<std::int64_t> dims;
  return builder.matrices(j, dims);
}

BigradedGroups khovanov_homology(const Diagram& d, const KhovanovOptions& opts) {
  check_size(d, opts);
  const int c = d.crossing_count();
  const int max_k = c + 1 + d.free_circles();

  const Cube cube = build_cube(d);
  const LabelingTable table(max_k);
  const SliceBuilder builder(d, cube, table);

  const auto signs = crossing_signs(d);
  const int n_plus = signs.positive();
  const int n_minus = signs.negative();
  // Quantum gradings of the chain complex lie in [-max_k + shift, max_k + c + shift].
  const int shift = n_plus - 2 * n_minus;
  std::vector<int> js;
  for (int j = -max_k + shift; j <= max_k + c + shift; ++j) js.push_back(j);

  std::vector<SliceHomology> slices(js.size());
  unsigned threads = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(js.size()));
  if (c < 6) threads = 1;
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t idx = next++; idx < js.size(); idx = next++) slices[idx] = builder.compute(js[idx]);
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  BigradedGroups kh;
  for (const auto& slice : slices) {
    for (int r = 0; r <= c; ++r) {
      const std::size_t rank_out = r < c ? slice.differential[r].rank : 0;
      const std::size_t rank_in = r > 0 ? slice.differential[r - 1].rank : 0;
      GroupSummand g;
      g.free_rank = slice.dims[r] - static_cast<std::int64_t>(rank_out + rank_in);
      if (r > 0) g.torsion = slice.differential[r - 1].torsion;
      kh.set(r - n_minus, slice.j, std::move(g));
    }
  }
  return kh;
}

LaurentPoly euler_characteristic(const BigradedGroups& kh) {
  LaurentPoly chi;
  for (const auto& [key, g] : kh.entries()) {
    const auto [i, j] = key;
    chi.add_term(HalfInt::whole(j), (i % 2 == 0 ? 1 : -1) * BigInt(g.free_rank));
  }
  return chi;
}

std::pair<int, int> extreme_gradings(const BigradedGroups& kh) {
  if (kh.empty()) throw Error(Errc::EmptyHomology, "no nonzero Khovanov groups");
  int lo = kh.entries().begin()->first.second;
  int hi = lo;
  for (const auto& [key, g] : kh.entries()) {
    lo = std::min(lo, key.second);
    hi = std::max(hi, key.second);
  }
  return {lo, hi};
}

GradingSummary extreme_gradings(const BigradedGroups& kh, const Diagram& d) {
  const auto [lo, hi] = extreme_gradings(kh);
  const auto signs = crossing_signs(d);
  const int c = d.crossing_count();
  GradingSummary g;
  g.j_lower = lo;
  g.j_upper = hi;
  g.j_min_potential = c - 3 * signs.negative() - a_state_circles(d);
  g.j_max_potential = -c + 3 * signs.positive() + b_state_circles(d);
  return g;
}

std::int64_t kh1_rank(const BigradedGroups& kh) {
  std::int64_t total = 0;
  for (const auto& [key, g] : kh.entries())
    if (key.first == 1) total += g.free_rank;
  return total;
}

BigradedGroups mirror_groups(const BigradedGroups& kh) {
  BigradedGroups out;
  for (const auto& [key, g] : kh.entries()) {
    const auto [i, j] = key;
    out.add_free(-i, -j, g.free_rank);
    for (const auto& t : g.torsion) out.add_torsion(1 - i, -j, t);
  }
  return out;
}

}  // namespace kpos
