#include "kpos/smith.hpp"

#include <algorithm>
#include <set>

#include <boost/integer/common_factor.hpp>

namespace kpos {

void SparseIntMatrix::add(int r, int c, std::int64_t v) {
  auto& row = entries.at(static_cast<std::size_t>(r));
  if (!row.empty() && row.back().first == c) {
    row.back().second += v;
    if (row.back().second == 0) row.pop_back();
    return;
  }
  if (v != 0) row.emplace_back(c, v);
}

namespace {

struct Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

template <class Int>
Int magnitude(const Int& v) {
  return v < 0 ? Int(-v) : v;
}

template <class Int>
bool is_unit(const Int& v) {
  return v == 1 || v == -1;
}

template <class Int>
class Reducer {
 public:
  using Row = std::vector<std::pair<int, Int>>;

  explicit Reducer(const SparseIntMatrix& m)
      : rows_(static_cast<std::size_t>(m.rows)),
        col_rows_(static_cast<std::size_t>(m.cols)),
        col_count_(static_cast<std::size_t>(m.cols), 0),
        active_(static_cast<std::size_t>(m.rows), true) {
    for (int r = 0; r < m.rows; ++r) {
      for (const auto& [c, v] : m.entries[r]) {
        if (v == 0) continue;
        rows_[r].emplace_back(c, Int(v));
        col_rows_[c].push_back(r);
        ++col_count_[c];
      }
      enqueue(r);
    }
  }

  SmithInvariants run() {
    std::size_t rank = 0;
    while (!queue_.empty()) {
      const int pr = queue_.begin()->second;
      queue_.erase(queue_.begin());
      queued_nnz_[pr] = -1;
      int pc = -1;
      Int pv = 0;
      for (const auto& [c, v] : rows_[pr]) {
        if (is_unit(v) && (pc < 0 || col_count_[c] < col_count_[pc])) {
          pc = c;
          pv = v;
        }
      }
      if (pc < 0) continue;
      eliminate(pr, pc, pv);
      ++rank;
    }

    // Dense phase on whatever has no unit entries left.
    std::vector<int> live_rows;
    std::set<int> live_cols;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!active_[r] || rows_[r].empty()) continue;
      live_rows.push_back(static_cast<int>(r));
      for (const auto& [c, v] : rows_[r]) live_cols.insert(c);
    }
    std::vector<int> col_index(col_count_.size(), -1);
    int n = 0;
    for (int c : live_cols) col_index[c] = n++;
    std::vector<std::vector<Int>> a(live_rows.size(), std::vector<Int>(static_cast<std::size_t>(n), Int(0)));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [c, v] : rows_[live_rows[i]]) a[i][col_index[c]] = v;
    std::vector<BigInt> diagonal = dense_diagonal(a);
    SmithInvariants out;
    out.rank = rank + diagonal.size();
    out.torsion = invariant_factors(std::move(diagonal));
    return out;
  }

 private:
  void enqueue(int r) {
    if (queued_nnz_.empty()) queued_nnz_.assign(rows_.size(), -1);
    if (queued_nnz_[r] >= 0) queue_.erase({queued_nnz_[r], r});
    queued_nnz_[r] = -1;
    if (!active_[r]) return;
    const bool has_unit = std::any_of(rows_[r].begin(), rows_[r].end(), [](const auto& e) { return is_unit(e.second); });
    if (!has_unit) return;
    queued_nnz_[r] = static_cast<int>(rows_[r].size());
    queue_.insert({queued_nnz_[r], r});
  }

  static const Int* find(const Row& row, int c) {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  void eliminate(int pr, int pc, const Int& pv) {
    const Row pivot_row = rows_[pr];
    std::vector<int> targets = col_rows_[pc];
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int r : targets) {
      if (r == pr || !active_[r]) continue;
      const Int* hit = find(rows_[r], pc);
      if (!hit) continue;
      const Int factor = checked_mul(*hit, pv);  // pv is its own inverse
      Row merged;
      merged.reserve(rows_[r].size() + pivot_row.size());
      auto a = rows_[r].begin();
      auto b = pivot_row.begin();
      while (a != rows_[r].end() || b != pivot_row.end()) {
        if (b == pivot_row.end() || (a != rows_[r].end() && a->first < b->first)) {
          merged.push_back(*a++);
        } else if (a == rows_[r].end() || b->first < a->first) {
          merged.emplace_back(b->first, checked_sub(Int(0), checked_mul(factor, b->second)));
          ++col_count_[b->first];
          col_rows_[b->first].push_back(r);
          ++b;
        } else {
          Int v = checked_sub(a->second, checked_mul(factor, b->second));
          if (v == 0) {
            --col_count_[a->first];
          } else {
            merged.emplace_back(a->first, std::move(v));
          }
          ++a;
          ++b;
        }
      }
      rows_[r] = std::move(merged);
      enqueue(r);
    }
    for (const auto& [c, v] : rows_[pr]) --col_count_[c];
    active_[pr] = false;
    rows_[pr].clear();
    col_rows_[pc].clear();
  }

  static std::vector<BigInt> dense_diagonal(std::vector<std::vector<Int>>& a) {
    std::vector<BigInt> diagonal;
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      for (;;) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        std::size_t bi = m, bj = n;
        for (std::size_t i = t; i < m; ++i)
          for (std::size_t j = t; j < n; ++j)
            if (a[i][j] != 0 && (bi == m || magnitude(a[i][j]) < magnitude(a[bi][bj]))) {
              bi = i;
              bj = j;
            }
        if (bi == m) return diagonal;
        std::swap(a[t], a[bi]);
        for (auto& row : a) std::swap(row[t], row[bj]);
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a[i][t] == 0) continue;
          const Int q = a[i][t] / a[t][t];
          for (std::size_t j = t; j < n; ++j) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[t][j]));
          if (a[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[t][j] == 0) continue;
          const Int q = a[t][j] / a[t][t];
          for (std::size_t i = t; i < m; ++i) a[i][j] = checked_sub(a[i][j], checked_mul(q, a[i][t]));
          if (a[t][j] != 0) clean = false;
        }
        if (clean) break;
      }
      diagonal.emplace_back(BigInt(magnitude(a[t][t])));
    }
    return diagonal;
  }

  std::vector<Row> rows_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<int> col_count_;
  std::vector<bool> active_;
  std::vector<int> queued_nnz_;
  std::set<std::pair<int, int>> queue_;
};

}  // namespace

std::vector<BigInt> invariant_factors(std::vector<BigInt> d) {
  for (auto& v : d)
    if (v < 0) v = -v;
  d.erase(std::remove_if(d.begin(), d.end(), [](const BigInt& v) { return v == 0; }), d.end());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const BigInt g = boost::integer::gcd(d[i], d[j]);
      const BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  std::vector<BigInt> out;
  for (auto& v : d)
    if (v != 1) out.push_back(v);
  return out;
}

SmithInvariants smith_invariants(const SparseIntMatrix& m) {
  try {
    return Reducer<std::int64_t>(m).run();
  } catch (const Overflow&) {
    return Reducer<BigInt>(m).run();
  }
}

}  // namespace kpos
