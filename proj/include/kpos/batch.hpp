#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kpos/jones.hpp"
#include "kpos/khovanov.hpp"
#include "kpos/obstruction.hpp"
#include "kpos/records.hpp"

namespace kpos {

inline constexpr const char* kRecordSchema = "kpos.record/1";

// How ingested tables that may list the mirror image are reconciled.
enum class MirrorMode { Auto, Off, On };

struct BatchConfig {
  bool jones = true;
  bool conway = true;
  bool kh = true;
  int kh_cap = 16;
  int bracket_cap = 20;
  std::uint64_t skein_budget = 1'000'000;
  unsigned workers = 0;  // 0: hardware concurrency
  MirrorMode mirror = MirrorMode::Auto;
};

struct RecordResult {
  std::string name;
  std::string source;  // PD code or braid word, empty for table-only records
  std::optional<int> crossings;
  std::optional<int> components;
  std::optional<bool> positive_diagram;

  // Effective invariants: computed when possible, otherwise ingested.
  std::optional<LaurentPoly> jones;
  std::optional<LaurentPoly> conway;
  std::optional<BigradedGroups> kh;
  bool mirror_normalized = false;

  std::optional<JonesSummary> jones_summary;
  std::optional<std::pair<int, int>> j_extremes;  // (j_lower, j_upper)
  std::optional<GradingSummary> gradings;         // with diagram potentials

  std::vector<ObstructionReport> reports;
  std::optional<Strength> strength;

  std::vector<std::string> flags;       // non-fatal
  std::vector<std::string> violations;  // survey property checks that failed
  std::optional<std::string> error;     // hard error; the record produced no verdicts
  double elapsed_ms = 0.0;

  const ObstructionReport* report(TestKind kind) const;
};

struct BatchResult {
  std::vector<RecordResult> records;
  bool any_error() const;
};

BatchResult cmd_compute(const std::vector<LinkRecord>& input, const BatchConfig& cfg);
BatchResult cmd_test(const std::vector<LinkRecord>& input, const BatchConfig& cfg);

struct SurveySpec {
  int min_strands = 2;
  int max_strands = 3;
  int min_length = 1;
  int max_length = 6;
  bool dedupe = true;
};

struct SurveySummary {
  std::size_t words = 0;       // enumerated braid words
  std::size_t unique = 0;      // after (Jones, Conway) dedupe
  std::size_t skipped = 0;     // cap or budget violations
  std::size_t applicable = 0;  // records with both tests applicable
  std::size_t jones_fail = 0;
  std::size_t khovanov_fail = 0;
  std::size_t violations = 0;  // records with any property violation
  std::vector<std::string> equality_cases;
};

struct SurveyResult {
  BatchResult batch;
  SurveySummary summary;
};

// Positive words in which every generator 1..strands-1 occurs, so each closure is a
// connected diagram. Ordered by strands, then length, then lexicographically.
std::vector<BraidWord> enumerate_positive_words(const SurveySpec& spec);

SurveyResult cmd_survey(const SurveySpec& spec, const BatchConfig& cfg);

// Human-readable block per record.
std::string format_text(const BatchResult& batch);
std::string format_text(const SurveySummary& summary);
// One JSON object per line. Byte-identical across runs apart from elapsed_ms.
std::string format_records(const BatchResult& batch, bool with_timing = true);
std::string to_record_line(const RecordResult& r, bool with_timing = true);

// Rows j (descending), columns i; cells like "2", "Z2", "1+Z2^2".
std::string kh_table(const BigradedGroups& kh);

}  // namespace kpos
