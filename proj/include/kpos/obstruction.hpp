#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "kpos/khovanov.hpp"
#include "kpos/laurent.hpp"

namespace kpos {

// Everything either inequality consumes. Absent fields make the corresponding test
// not applicable rather than failing.
struct ObstructionInput {
  std::int64_t p1 = 0;  // |second Jones coefficient|
  int n = 1;            // link components
  std::optional<std::int64_t> lead_conway;
  std::optional<HalfInt> jones_min;
  std::optional<HalfInt> jones_max;
  std::optional<int> j_lower;
  std::optional<int> j_upper;
};

enum class TestKind { Jones, Khovanov, KhovanovFromKh1 };
enum class Verdict { Pass, Fail, NotApplicable };
enum class Strength { JonesOnlyFails, KhovanovOnlyFails, BothFail, NeitherFails };

std::string_view to_string(TestKind t);
std::string_view to_string(Verdict v);
std::string_view to_string(Strength s);

// Fail means the inequality every positive link satisfies is violated, so the link is
// not positive. Pass carries no conclusion.
struct ObstructionReport {
  TestKind test = TestKind::Jones;
  bool applicable = false;
  std::int64_t p1 = 0;
  int n = 1;
  std::optional<std::int64_t> lead_conway;
  std::int64_t gamma = 0;
  HalfInt lhs;
  HalfInt rhs;
  Verdict verdict = Verdict::NotApplicable;
  std::string note;

  bool certifies_not_positive() const noexcept { return verdict == Verdict::Fail; }
  bool attains_equality() const noexcept { return applicable && lhs == rhs; }
};

// 0, 2 lead - 2, or lead for p1 = 0, 1, 2. Errc::NotApplicable otherwise.
std::int64_t gamma(std::int64_t p1, std::int64_t lead_conway);

// max deg V <= 4 min deg V + (n - 1)/2 + gamma
ObstructionReport jones_test(const ObstructionInput& in);

// j_upper <= 4 j_lower + n + 4 (p1 = 0), + 4 lead (p1 = 1), + 4 + 2 lead (p1 = 2)
ObstructionReport khovanov_test(const ObstructionInput& in);

// Same inequality with p1 read off as the rank of Kh^1.
ObstructionReport khovanov_test_from_kh1(const BigradedGroups& kh, int n, std::optional<std::int64_t> lead_conway);

// Errc::NotApplicable unless both reports are applicable.
Strength strength_comparison(const ObstructionReport& jones, const ObstructionReport& khovanov);

// "key: value" lines, one field per line.
std::string to_record_text(const ObstructionReport& r);

}  // namespace kpos
