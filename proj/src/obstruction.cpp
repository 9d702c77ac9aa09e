#include "kpos/obstruction.hpp"

#include "kpos/error.hpp"

namespace kpos {

std::string_view to_string(TestKind t) {
  switch (t) {
    case TestKind::Jones: return "JonesTest";
    case TestKind::Khovanov: return "KhovanovTest";
    case TestKind::KhovanovFromKh1: return "KhovanovFromKh1";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "?";
}

std::string_view to_string(Strength s) {
  switch (s) {
    case Strength::JonesOnlyFails: return "JonesOnlyFails";
    case Strength::KhovanovOnlyFails: return "KhovanovOnlyFails";
    case Strength::BothFail: return "BothFail";
    case Strength::NeitherFails: return "NeitherFails";
  }
  return "?";
}

std::int64_t gamma(std::int64_t p1, std::int64_t lead_conway) {
  switch (p1) {
    case 0: return 0;
    case 1: return 2 * lead_conway - 2;
    case 2: return lead_conway;
    default:
      throw Error(Errc::NotApplicable, "p1 = " + std::to_string(p1) + " is outside {0, 1, 2}");
  }
}

namespace {

ObstructionReport start(TestKind kind, const ObstructionInput& in) {
  ObstructionReport r;
  r.test = kind;
  r.p1 = in.p1;
  r.n = in.n;
  r.lead_conway = in.lead_conway;
  return r;
}

// Shared applicability rules; returns false (and fills the note) when the test cannot run.
bool check_family(ObstructionReport& r, const ObstructionInput& in) {
  if (in.p1 < 0 || in.p1 > 2) {
    r.note = "p1 = " + std::to_string(in.p1) + " is outside {0, 1, 2}";
    return false;
  }
  if (in.n < 1) {
    r.note = "component count must be positive";
    return false;
  }
  if (in.p1 > 0 && !in.lead_conway) {
    r.note = "leading Conway coefficient unavailable";
    return false;
  }
  if (in.lead_conway && *in.lead_conway == 0) {
    r.note = "Conway polynomial vanishes; the bounds assume a non-split link";
    return false;
  }
  r.gamma = gamma(in.p1, in.lead_conway.value_or(0));
  return true;
}

void decide(ObstructionReport& r) {
  r.applicable = true;
  r.verdict = r.lhs <= r.rhs ? Verdict::Pass : Verdict::Fail;
}

}  // namespace

ObstructionReport jones_test(const ObstructionInput& in) {
  ObstructionReport r = start(TestKind::Jones, in);
  if (!check_family(r, in)) return r;
  if (!in.jones_min || !in.jones_max) {
    r.note = "Jones degrees unavailable";
    return r;
  }
  r.lhs = *in.jones_max;
  r.rhs = 4 * *in.jones_min + HalfInt::from_twice(in.n - 1) + HalfInt::whole(r.gamma);
  decide(r);
  return r;
}

ObstructionReport khovanov_test(const ObstructionInput& in) {
  ObstructionReport r = start(TestKind::Khovanov, in);
  if (!check_family(r, in)) return r;
  if (!in.j_lower || !in.j_upper) {
    r.note = "extreme quantum gradings unavailable";
    return r;
  }
  const std::int64_t base = 4 * static_cast<std::int64_t>(*in.j_lower) + in.n;
  const std::int64_t lead = in.lead_conway.value_or(0);
  std::int64_t bound = 0;
  switch (in.p1) {
    case 0: bound = base + 4; break;
    case 1: bound = base + 4 * lead; break;
    default: bound = base + 4 + 2 * lead; break;
  }
  r.lhs = HalfInt::whole(*in.j_upper);
  r.rhs = HalfInt::whole(bound);
  decide(r);
  return r;
}

ObstructionReport khovanov_test_from_kh1(const BigradedGroups& kh, int n, std::optional<std::int64_t> lead_conway) {
  ObstructionInput in;
  in.p1 = kh1_rank(kh);
  in.n = n;
  in.lead_conway = lead_conway;
  if (!kh.empty()) {
    const auto [lo, hi] = extreme_gradings(kh);
    in.j_lower = lo;
    in.j_upper = hi;
  }
  ObstructionReport r = khovanov_test(in);
  r.test = TestKind::KhovanovFromKh1;
  const std::string caveat = "p1 taken as rank Kh^1, which equals p1 for positive links";
  r.note = r.note.empty() ? caveat : r.note + "; " + caveat;
  return r;
}

Strength strength_comparison(const ObstructionReport& jones, const ObstructionReport& khovanov) {
  if (!jones.applicable || !khovanov.applicable)
    throw Error(Errc::NotApplicable, "strength comparison needs two applicable reports");
  const bool jf = jones.verdict == Verdict::Fail;
  const bool kf = khovanov.verdict == Verdict::Fail;
  if (jf && kf) return Strength::BothFail;
  if (jf) return Strength::JonesOnlyFails;
  if (kf) return Strength::KhovanovOnlyFails;
  return Strength::NeitherFails;
}

std::string to_record_text(const ObstructionReport& r) {
  std::string out;
  const auto line = [&](std::string_view key, const std::string& value) {
    out += std::string(key) + ": " + value + "\n";
  };
  line("test", std::string(to_string(r.test)));
  line("applicable", r.applicable ? "true" : "false");
  line("p1", std::to_string(r.p1));
  line("n", std::to_string(r.n));
  line("lead_conway", r.lead_conway ? std::to_string(*r.lead_conway) : "none");
  line("gamma", std::to_string(r.gamma));
  line("lhs", r.lhs.str());
  line("rhs", r.rhs.str());
  line("verdict", std::string(to_string(r.verdict)));
  if (r.certifies_not_positive()) line("conclusion", "NotPositive");
  if (!r.note.empty()) line("note", r.note);
  return out;
}

}  // namespace kpos
