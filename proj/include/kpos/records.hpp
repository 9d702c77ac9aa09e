#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kpos/braid.hpp"
#include "kpos/diagram.hpp"
#include "kpos/khovanov.hpp"
#include "kpos/laurent.hpp"

namespace kpos {

// One input link: a diagram to compute from, ingested invariants, or both.
struct LinkRecord {
  std::string name;
  std::optional<Diagram> pd;
  std::optional<BraidWord> braid;
  std::optional<LaurentPoly> jones;   // in t
  std::optional<LaurentPoly> conway;  // in z
  std::optional<BigradedGroups> kh;
  std::optional<int> components;
  std::optional<bool> positive;       // table metadata, used for mirror detection
  std::vector<std::string> flags;     // row-level parse problems

  bool has_diagram() const noexcept { return pd.has_value() || braid.has_value(); }
  // pd if present, else the braid closure.
  std::optional<Diagram> diagram() const;
};

// Record field -> CSV header. Fields: name, pd, braid, jones, conway, kh, components, positive.
using ColumnMap = std::map<std::string, std::string>;

// "name=Name,jones=Jones polynomial"; throws std::invalid_argument on unknown fields.
ColumnMap parse_column_map(std::string_view text);

// RFC 4180 style: comma separated, double quotes, "" escapes, quoted newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

// With an empty map, headers matching field names (case-insensitively) are used.
// Errc::FileUnreadable, Errc::ColumnMissing; bad cells are flagged on their record.
std::vector<LinkRecord> ingest_csv(const std::filesystem::path& path, const ColumnMap& columns = {});
std::vector<LinkRecord> ingest_csv_text(std::string_view text, const ColumnMap& columns = {});

// A PD code or braid word, auto-detected; throws on malformed input.
LinkRecord record_from_text(std::string_view text, std::string name = {});

// One diagram per line, optionally "name: diagram"; blank lines and '#' comments skipped.
// Malformed lines become flagged records rather than aborting the list.
std::vector<LinkRecord> read_diagram_list(const std::filesystem::path& path);

}  // namespace kpos
