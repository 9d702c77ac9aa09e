#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kpos/diagram.hpp"

namespace kpos {

// Letter k stands for the Artin generator sigma_|k|, positive or inverted by sign(k).
struct BraidWord {
  std::vector<int> letters;
  int strands = 1;

  std::string to_string() const;
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

// "strands=<n>; <int> <int> ..." (letters separated by whitespace or commas).
BraidWord parse_braid(std::string_view text);

// Validates and returns the word unchanged.
BraidWord make_braid(std::vector<int> letters, int strands);

// PD diagram of the closure. Strands that no letter touches become free circles.
Diagram braid_closure(const BraidWord& b);

}  // namespace kpos
