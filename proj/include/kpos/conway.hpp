#pragma once

#include <cstdint>

#include "kpos/diagram.hpp"
#include "kpos/laurent.hpp"

namespace kpos {

struct ConwayOptions {
  // Distinct skein nodes evaluated before Errc::RecursionBudgetExceeded.
  std::uint64_t node_budget = 1'000'000;
};

// Conway polynomial in z from the skein relation  C(L+) - C(L-) = z C(L0),
// C(unknot) = 1, C(split) = 0. Each node switches the first crossing that a
// traversal from the basepoints meets from below, until the diagram is descending.
LaurentPoly conway_polynomial(const Diagram& d, const ConwayOptions& opts = {});

// Top coefficient; zero for split links.
BigInt lead_coeff_conway(const Diagram& d, const ConwayOptions& opts = {});

}  // namespace kpos
