#include "kpos/conway.hpp"

#include <string>
#include <unordered_map>
#include <vector>

#include "kpos/error.hpp"

namespace kpos {

namespace {

class SkeinEvaluator {
 public:
  explicit SkeinEvaluator(const ConwayOptions& opts) : opts_(opts) {}

  LaurentPoly eval(const Diagram& d) {
    if (d.component_count() > 1 && !d.is_connected()) return {};
    const std::string key = d.to_pd_string();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++nodes_ > opts_.node_budget)
      throw Error(Errc::RecursionBudgetExceeded, "skein tree exceeded " + std::to_string(opts_.node_budget) + " nodes");

    LaurentPoly result;
    const int k = first_ascending_crossing(d);
    if (k < 0) {
      // Descending: an unlink, already known to be non-split here.
      if (d.component_count() == 1) result = LaurentPoly::constant(1);
    } else {
      const LaurentPoly z = LaurentPoly::monomial(1, HalfInt::whole(1));
      const LaurentPoly resolved = z * eval(d.oriented_resolution(k));
      const LaurentPoly switched = eval(d.switched(k));
      // C(L+) = C(L-) + z C(L0);  C(L-) = C(L+) - z C(L0)
      result = d.sign(k) > 0 ? switched + resolved : switched - resolved;
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  // Arcs are numbered along the orientation with each component starting at its
  // basepoint, so visiting arc heads in label order is the basepoint traversal.
  static int first_ascending_crossing(const Diagram& d) {
    const auto xs = d.crossings();
    std::vector<int> head_crossing(static_cast<std::size_t>(d.arc_count()) + 1, -1);
    std::vector<bool> head_is_under(head_crossing.size(), false);
    for (int x = 0; x < d.crossing_count(); ++x) {
      head_crossing[xs[x][0]] = x;
      head_is_under[xs[x][0]] = true;
      head_crossing[xs[x][d.sign(x) > 0 ? 1 : 3]] = x;
    }
    std::vector<bool> met(xs.size(), false);
    for (int arc = 1; arc <= d.arc_count(); ++arc) {
      const int x = head_crossing[arc];
      if (met[x]) continue;
      met[x] = true;
      if (head_is_under[arc]) return x;
    }
    return -1;
  }

  ConwayOptions opts_;
  std::unordered_map<std::string, LaurentPoly> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

LaurentPoly conway_polynomial(const Diagram& d, const ConwayOptions& opts) {
  // Parsed labels need not follow the orientation; renumber once so they do.
  std::vector<PDTuple> xs(d.crossings().begin(), d.crossings().end());
  std::vector<int> signs(d.signs().begin(), d.signs().end());
  const Diagram start = Diagram::from_oriented(std::move(xs), std::move(signs), d.free_circles());
  SkeinEvaluator eval(opts);
  return eval.eval(start);
}

BigInt lead_coeff_conway(const Diagram& d, const ConwayOptions& opts) {
  const LaurentPoly c = conway_polynomial(d, opts);
  return c.is_zero() ? BigInt(0) : c.leading_coefficient();
}

}  // namespace kpos
