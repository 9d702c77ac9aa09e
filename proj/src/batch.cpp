#include "kpos/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "kpos/conway.hpp"
#include "kpos/error.hpp"

namespace kpos {

namespace {

using nlohmann::json;

template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
}

unsigned inner_threads(const BatchConfig& cfg, std::size_t records) {
  return cfg.workers == 1 || records <= 1 ? 0u : 1u;
}

std::int64_t clamp_int(const BigInt& v) {
  constexpr std::int64_t hi = std::numeric_limits<std::int64_t>::max();
  constexpr std::int64_t lo = std::numeric_limits<std::int64_t>::min();
  if (v > hi) return hi;
  if (v < lo) return lo;
  return static_cast<std::int64_t>(v);
}

// z -> -z
LaurentPoly conway_mirror(const LaurentPoly& p) {
  LaurentPoly out;
  for (const auto& [twice, c] : p.terms()) {
    const bool odd = (twice / 2) % 2 != 0;
    out.add_term(HalfInt::from_twice(twice), odd ? BigInt(-c) : c);
  }
  return out;
}

bool is_cap_error(const Error& e) {
  return e.code() == Errc::CrossingCapExceeded || e.code() == Errc::RecursionBudgetExceeded;
}

template <class F>
auto guarded(RecordResult& r, const char* what, F&& compute) -> std::optional<decltype(compute())> {
  try {
    return compute();
  } catch (const Error& e) {
    if (!is_cap_error(e)) throw;
    r.flags.push_back(std::string("skipped ") + what + ": " + e.what());
    return std::nullopt;
  }
}

template <class T>
void reconcile(const char* what, const std::optional<T>& computed, const std::optional<T>& ingested,
               const std::function<std::string(const T&)>& show) {
  if (computed && ingested && !(*computed == *ingested))
    throw Error(Errc::InvariantMismatch,
                std::string(what) + ": computed " + show(*computed) + ", ingested " + show(*ingested));
}

ObstructionReport unavailable(TestKind kind, std::string note) {
  ObstructionReport r;
  r.test = kind;
  r.note = std::move(note);
  return r;
}

void run_tests(RecordResult& r) {
  std::optional<std::int64_t> lead;
  if (r.conway) lead = r.conway->is_zero() ? 0 : clamp_int(r.conway->leading_coefficient());

  if (!r.components) {
    r.reports.push_back(unavailable(TestKind::Jones, "component count unavailable"));
    r.reports.push_back(unavailable(TestKind::Khovanov, "component count unavailable"));
    if (r.kh) r.reports.push_back(unavailable(TestKind::KhovanovFromKh1, "component count unavailable"));
    return;
  }

  if (r.jones_summary) {
    ObstructionInput in;
    in.p1 = clamp_int(r.jones_summary->p1);
    in.n = *r.components;
    in.lead_conway = lead;
    in.jones_min = r.jones_summary->min_deg;
    in.jones_max = r.jones_summary->max_deg;
    if (r.j_extremes) {
      in.j_lower = r.j_extremes->first;
      in.j_upper = r.j_extremes->second;
    }
    r.reports.push_back(jones_test(in));
    r.reports.push_back(khovanov_test(in));
  } else {
    r.reports.push_back(unavailable(TestKind::Jones, "Jones polynomial unavailable"));
    r.reports.push_back(unavailable(TestKind::Khovanov, "Jones polynomial unavailable"));
  }
  if (r.kh) r.reports.push_back(khovanov_test_from_kh1(*r.kh, *r.components, lead));

  const auto* jr = r.report(TestKind::Jones);
  const auto* kr = r.report(TestKind::Khovanov);
  if (jr->applicable && kr->applicable) r.strength = strength_comparison(*jr, *kr);
}

void evaluate(const LinkRecord& rec, const BatchConfig& cfg, bool tests, unsigned threads, RecordResult& r) {
  const std::optional<Diagram> d = rec.diagram();
  if (!d && !rec.jones && !rec.conway && !rec.kh) {
    std::string why = "record carries neither a diagram nor invariants";
    for (const auto& f : rec.flags) why += "; " + f;
    throw std::runtime_error(why);
  }

  std::optional<LaurentPoly> jones;
  std::optional<LaurentPoly> conway;
  std::optional<BigradedGroups> kh;
  if (d) {
    r.source = rec.pd ? d->to_pd_string() : rec.braid->to_string();
    r.crossings = d->crossing_count();
    r.components = d->component_count();
    r.positive_diagram = is_positive(*d);
    if (rec.components && *rec.components != *r.components)
      throw Error(Errc::InvariantMismatch, "components: computed " + std::to_string(*r.components) + ", ingested " +
                                               std::to_string(*rec.components));
    if (cfg.jones || tests)
      jones = guarded(r, "jones", [&] { return jones_polynomial(*d, {cfg.bracket_cap, threads}); });
    if (cfg.conway || tests)
      conway = guarded(r, "conway", [&] { return conway_polynomial(*d, {cfg.skein_budget}); });
    if (cfg.kh || tests) kh = guarded(r, "kh", [&] { return khovanov_homology(*d, {cfg.kh_cap, threads}); });
  } else {
    r.components = rec.components;
  }

  std::optional<LaurentPoly> jones_in = rec.jones;
  std::optional<LaurentPoly> conway_in = rec.conway;
  std::optional<BigradedGroups> kh_in = rec.kh;
  bool mirror = cfg.mirror == MirrorMode::On;
  if (cfg.mirror == MirrorMode::Auto) {
    if (jones && jones_in)
      mirror = *jones != *jones_in && jones_in->inverted() == *jones;
    else if (kh && kh_in)
      mirror = *kh != *kh_in && mirror_groups(*kh_in) == *kh;
    else if (rec.positive.value_or(false) && jones_in && !jones_in->is_zero())
      mirror = jones_in->max_degree() < HalfInt{};
    else if (rec.positive.value_or(false) && kh_in && !kh_in->empty())
      mirror = extreme_gradings(*kh_in).second < 0;
  }
  if (mirror) {
    if (jones_in) jones_in = jones_in->inverted();
    if (conway_in) conway_in = conway_mirror(*conway_in);
    if (kh_in) kh_in = mirror_groups(*kh_in);
  }
  r.mirror_normalized = mirror && (jones_in || conway_in || kh_in);

  reconcile<LaurentPoly>("jones", jones, jones_in, [](const LaurentPoly& p) { return p.to_string("t"); });
  reconcile<LaurentPoly>("conway", conway, conway_in, [](const LaurentPoly& p) { return p.to_string("z"); });
  reconcile<BigradedGroups>("kh", kh, kh_in, [](const BigradedGroups& g) { return to_kh_polynomial(g); });

  r.jones = jones ? jones : jones_in;
  r.conway = conway ? conway : conway_in;
  r.kh = kh ? kh : kh_in;

  if (r.jones && !r.jones->is_zero()) r.jones_summary = jones_summary(*r.jones);
  if (r.kh && !r.kh->empty()) {
    r.j_extremes = extreme_gradings(*r.kh);
    if (d && kh) r.gradings = extreme_gradings(*r.kh, *d);
  }
  if (tests) run_tests(r);
}

RecordResult process(const LinkRecord& rec, const BatchConfig& cfg, bool tests, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  RecordResult r;
  r.name = rec.name;
  r.flags = rec.flags;
  try {
    evaluate(rec, cfg, tests, threads, r);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

BatchResult run_batch(const std::vector<LinkRecord>& input, const BatchConfig& cfg, bool tests) {
  BatchResult out;
  out.records.resize(input.size());
  const unsigned threads = inner_threads(cfg, input.size());
  parallel_for(input.size(), cfg.workers, [&](std::size_t i) { out.records[i] = process(input[i], cfg, tests, threads); });
  return out;
}

// Laws every positive diagram obeys; failures are recorded, not thrown.
void check_positive_laws(const Diagram& d, RecordResult& r) {
  const auto fail = [&](std::string what) { r.violations.push_back(std::move(what)); };
  if (!r.jones || !r.kh) return;
  if (euler_characteristic(*r.kh) != v_to_unnormalized(*r.jones)) fail("euler characteristic differs from J");
  const int c = d.crossing_count();
  const int sa = a_state_circles(d);
  if (r.j_extremes && r.j_extremes->first != c - sa) fail("j_lower != c - |s_A|");
  if (r.jones_summary && r.jones_summary->min_deg != lickorish_bounds(d).min_deg) fail("min deg V != (c - |s_A| + 1)/2");
  if (r.gradings) {
    const auto& g = *r.gradings;
    if (!(g.j_min_potential <= g.j_lower && g.j_lower <= g.j_upper && g.j_upper <= g.j_max_potential))
      fail("potential gradings do not sandwich Kh");
  }
  if (r.jones_summary && BigInt(kh1_rank(*r.kh)) != r.jones_summary->p1) fail("rank Kh^1 != p1");
  for (const auto& rep : r.reports)
    if (rep.test != TestKind::KhovanovFromKh1 && rep.verdict == Verdict::Fail)
      fail(std::string(to_string(rep.test)) + " fails on a positive diagram");
}

std::string verdict_line(const ObstructionReport& rep) {
  std::string s = std::string(to_string(rep.test)) + ": " + std::string(to_string(rep.verdict));
  if (rep.applicable) {
    s += " (" + rep.lhs.str() + (rep.lhs <= rep.rhs ? " <= " : " > ") + rep.rhs.str() + ", p1=" +
         std::to_string(rep.p1) + ", gamma=" + std::to_string(rep.gamma) + ")";
    if (rep.certifies_not_positive()) s += " => not positive";
  }
  if (!rep.note.empty()) s += " [" + rep.note + "]";
  return s;
}

json half_json(HalfInt h) {
  if (h.is_integer()) return h.as_integer();
  return h.to_double();
}

json report_json(const ObstructionReport& rep) {
  json j;
  j["test"] = to_string(rep.test);
  j["applicable"] = rep.applicable;
  j["p1"] = rep.p1;
  j["n"] = rep.n;
  j["lead_conway"] = rep.lead_conway ? json(*rep.lead_conway) : json(nullptr);
  j["gamma"] = rep.gamma;
  j["lhs"] = half_json(rep.lhs);
  j["rhs"] = half_json(rep.rhs);
  j["verdict"] = to_string(rep.verdict);
  j["not_positive"] = rep.certifies_not_positive();
  j["note"] = rep.note;
  return j;
}

template <class T, class F>
json opt_json(const std::optional<T>& v, F&& f) {
  return v ? json(f(*v)) : json(nullptr);
}

}  // namespace

const ObstructionReport* RecordResult::report(TestKind kind) const {
  for (const auto& rep : reports)
    if (rep.test == kind) return &rep;
  return nullptr;
}

bool BatchResult::any_error() const {
  return std::ranges::any_of(records, [](const RecordResult& r) { return r.error.has_value(); });
}

BatchResult cmd_compute(const std::vector<LinkRecord>& input, const BatchConfig& cfg) {
  return run_batch(input, cfg, false);
}

BatchResult cmd_test(const std::vector<LinkRecord>& input, const BatchConfig& cfg) {
  return run_batch(input, cfg, true);
}

std::vector<BraidWord> enumerate_positive_words(const SurveySpec& spec) {
  std::vector<BraidWord> out;
  for (int s = std::max(2, spec.min_strands); s <= spec.max_strands; ++s) {
    const int g = s - 1;
    for (int len = std::max({1, spec.min_length, g}); len <= spec.max_length; ++len) {
      std::vector<int> word(static_cast<std::size_t>(len), 1);
      while (true) {
        std::set<int> used(word.begin(), word.end());
        if (static_cast<int>(used.size()) == g) out.push_back(make_braid(word, s));
        int pos = len - 1;
        while (pos >= 0 && word[static_cast<std::size_t>(pos)] == g) word[static_cast<std::size_t>(pos--)] = 1;
        if (pos < 0) break;
        ++word[static_cast<std::size_t>(pos)];
      }
    }
  }
  return out;
}

SurveyResult cmd_survey(const SurveySpec& spec, const BatchConfig& cfg) {
  SurveyResult out;
  const auto words = enumerate_positive_words(spec);
  out.summary.words = words.size();

  std::vector<std::size_t> keep;
  if (spec.dedupe) {
    std::vector<std::string> prints(words.size());
    parallel_for(words.size(), cfg.workers, [&](std::size_t i) {
      try {
        const Diagram d = braid_closure(words[i]);
        prints[i] = jones_polynomial(d, {cfg.bracket_cap, 1}).to_string("t") + "|" +
                    conway_polynomial(d, {cfg.skein_budget}).to_string("z");
      } catch (const std::exception& e) {
        prints[i] = "error|" + words[i].to_string();
      }
    });
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < words.size(); ++i)
      if (seen.insert(prints[i]).second) keep.push_back(i);
  } else {
    for (std::size_t i = 0; i < words.size(); ++i) keep.push_back(i);
  }
  out.summary.unique = keep.size();

  auto& records = out.batch.records;
  records.resize(keep.size());
  const unsigned threads = inner_threads(cfg, keep.size());
  parallel_for(keep.size(), cfg.workers, [&](std::size_t k) {
    const BraidWord& w = words[keep[k]];
    LinkRecord rec;
    rec.name = w.to_string();
    rec.braid = w;
    records[k] = process(rec, cfg, true, threads);
    if (!records[k].error) check_positive_laws(braid_closure(w), records[k]);
  });

  for (const auto& r : records) {
    const bool skipped = r.error || std::ranges::any_of(r.flags, [](const std::string& f) { return f.starts_with("skipped"); });
    if (skipped) ++out.summary.skipped;
    if (!r.violations.empty()) ++out.summary.violations;
    const auto* jr = r.report(TestKind::Jones);
    const auto* kr = r.report(TestKind::Khovanov);
    if (jr && kr && jr->applicable && kr->applicable) ++out.summary.applicable;
    for (const auto* rep : {jr, kr}) {
      if (!rep || !rep->applicable) continue;
      if (rep->verdict == Verdict::Fail) ++(rep == jr ? out.summary.jones_fail : out.summary.khovanov_fail);
      if (rep->attains_equality())
        out.summary.equality_cases.push_back(r.name + ": " + std::string(to_string(rep->test)) + " " + rep->lhs.str() +
                                             " <= " + rep->rhs.str());
    }
  }
  return out;
}

std::string kh_table(const BigradedGroups& kh) {
  if (kh.empty()) return "(empty)\n";
  int i_lo = 0, i_hi = 0;
  std::set<int, std::greater<>> js;
  bool first = true;
  for (const auto& [key, g] : kh.entries()) {
    if (first) i_lo = i_hi = key.first;
    i_lo = std::min(i_lo, key.first);
    i_hi = std::max(i_hi, key.first);
    js.insert(key.second);
    first = false;
  }
  const auto cell = [&](int i, int j) {
    const GroupSummand g = kh.at(i, j);
    if (g.is_zero()) return std::string(".");
    std::map<BigInt, int> tors;
    for (const auto& t : g.torsion) ++tors[t];
    std::string s = g.free_rank ? std::to_string(g.free_rank) : "";
    for (const auto& [order, count] : tors) {
      if (!s.empty()) s += "+";
      s += "Z" + order.str() + (count > 1 ? "^" + std::to_string(count) : "");
    }
    return s;
  };
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> head{"j\\i"};
  for (int i = i_lo; i <= i_hi; ++i) head.push_back(std::to_string(i));
  grid.push_back(head);
  for (int j : js) {
    std::vector<std::string> row{std::to_string(j)};
    for (int i = i_lo; i <= i_hi; ++i) row.push_back(cell(i, j));
    grid.push_back(row);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& row : grid)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += std::string(width[c] - row[c].size() + (c ? 2 : 0), ' ') + row[c];
    }
    out += "\n";
  }
  return out;
}

std::string format_text(const BatchResult& batch) {
  std::ostringstream out;
  for (const auto& r : batch.records) {
    out << "== " << r.name << "\n";
    if (!r.source.empty() && r.source != r.name) out << "diagram: " << r.source << "\n";
    if (r.crossings) out << "crossings: " << *r.crossings << "\n";
    if (r.components) out << "components: " << *r.components << "\n";
    if (r.positive_diagram) out << "positive diagram: " << (*r.positive_diagram ? "yes" : "no") << "\n";
    if (r.mirror_normalized) out << "ingested invariants mirrored\n";
    if (r.jones) out << "jones: " << r.jones->to_string("t") << "\n";
    if (r.jones_summary)
      out << "jones degrees: " << r.jones_summary->min_deg.str() << " .. " << r.jones_summary->max_deg.str()
          << ", p1 = " << r.jones_summary->p1 << "\n";
    if (r.conway) out << "conway: " << r.conway->to_string("z") << "\n";
    if (r.kh) out << "kh: " << to_kh_polynomial(*r.kh) << "\n" << kh_table(*r.kh);
    if (r.gradings)
      out << "gradings: j_lower=" << r.gradings->j_lower << " j_upper=" << r.gradings->j_upper
          << " j_min(D)=" << r.gradings->j_min_potential << " j_max(D)=" << r.gradings->j_max_potential << "\n";
    else if (r.j_extremes)
      out << "gradings: j_lower=" << r.j_extremes->first << " j_upper=" << r.j_extremes->second << "\n";
    for (const auto& rep : r.reports) out << verdict_line(rep) << "\n";
    if (r.strength) out << "strength: " << to_string(*r.strength) << "\n";
    for (const auto& f : r.flags) out << "flag: " << f << "\n";
    for (const auto& v : r.violations) out << "violation: " << v << "\n";
    if (r.error) out << "error: " << *r.error << "\n";
  }
  return out.str();
}

std::string format_text(const SurveySummary& s) {
  std::ostringstream out;
  out << "words: " << s.words << "\nunique: " << s.unique << "\nskipped: " << s.skipped
      << "\napplicable: " << s.applicable << "\njones fails: " << s.jones_fail
      << "\nkhovanov fails: " << s.khovanov_fail << "\nrecords with violations: " << s.violations << "\n";
  out << "equality cases: " << s.equality_cases.size() << "\n";
  for (const auto& e : s.equality_cases) out << "  " << e << "\n";
  return out.str();
}

std::string to_record_line(const RecordResult& r, bool with_timing) {
  json j;
  j["schema"] = kRecordSchema;
  j["name"] = r.name;
  j["source"] = r.source;
  j["crossings"] = opt_json(r.crossings, [](int v) { return v; });
  j["components"] = opt_json(r.components, [](int v) { return v; });
  j["positive_diagram"] = opt_json(r.positive_diagram, [](bool v) { return v; });
  j["jones"] = opt_json(r.jones, [](const LaurentPoly& p) { return p.to_string("t"); });
  j["conway"] = opt_json(r.conway, [](const LaurentPoly& p) { return p.to_string("z"); });
  j["kh"] = opt_json(r.kh, [](const BigradedGroups& g) { return to_kh_polynomial(g); });
  j["mirror_normalized"] = r.mirror_normalized;
  j["jones_summary"] = opt_json(r.jones_summary, [](const JonesSummary& s) {
    return json{{"min_deg", half_json(s.min_deg)},
                {"max_deg", half_json(s.max_deg)},
                {"second_coeff", s.second_coeff.str()},
                {"p1", s.p1.str()}};
  });
  json g = nullptr;
  if (r.gradings)
    g = json{{"j_lower", r.gradings->j_lower},
             {"j_upper", r.gradings->j_upper},
             {"j_min_potential", r.gradings->j_min_potential},
             {"j_max_potential", r.gradings->j_max_potential}};
  else if (r.j_extremes)
    g = json{{"j_lower", r.j_extremes->first}, {"j_upper", r.j_extremes->second}};
  j["gradings"] = g;
  j["reports"] = json::array();
  for (const auto& rep : r.reports) j["reports"].push_back(report_json(rep));
  j["strength"] = opt_json(r.strength, [](Strength s) { return std::string(to_string(s)); });
  j["flags"] = r.flags;
  j["violations"] = r.violations;
  j["error"] = opt_json(r.error, [](const std::string& e) { return e; });
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j.dump();
}

std::string format_records(const BatchResult& batch, bool with_timing) {
  std::string out;
  for (const auto& r : batch.records) out += to_record_line(r, with_timing) + "\n";
  return out;
}

}  // namespace kpos
