#include "kpos/records.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kpos/error.hpp"

namespace kpos {

namespace {

const std::vector<std::string> kFields = {"name", "pd", "braid", "jones", "conway", "kh", "components", "positive"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::ranges::transform(s, s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileUnreadable, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::FileUnreadable, "read failed for " + path.string());
  return ss.str();
}

bool parse_bool(const std::string& cell) {
  const std::string v = lower(cell);
  if (v == "y" || v == "yes" || v == "true" || v == "1") return true;
  if (v == "n" || v == "no" || v == "false" || v == "0") return false;
  throw std::invalid_argument("expected a yes/no value, got '" + cell + "'");
}

int parse_int(const std::string& cell) {
  std::size_t used = 0;
  const int v = std::stoi(cell, &used);
  if (used != cell.size()) throw std::invalid_argument("expected an integer, got '" + cell + "'");
  return v;
}

void fill_field(LinkRecord& r, const std::string& field, const std::string& cell) {
  if (field == "name") r.name = cell;
  else if (field == "pd") r.pd = parse_pd(cell);
  else if (field == "braid") r.braid = parse_braid(cell);
  else if (field == "jones") r.jones = LaurentPoly::parse(cell, "t");
  else if (field == "conway") r.conway = LaurentPoly::parse(cell, "z");
  else if (field == "kh") r.kh = parse_kh_polynomial(cell);
  else if (field == "components") r.components = parse_int(cell);
  else if (field == "positive") r.positive = parse_bool(cell);
}

}  // namespace

std::optional<Diagram> LinkRecord::diagram() const {
  if (pd) return pd;
  if (braid) return braid_closure(*braid);
  return std::nullopt;
}

ColumnMap parse_column_map(std::string_view text) {
  ColumnMap out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string item = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("column mapping '" + item + "' lacks '='");
    const std::string field = lower(trim(item.substr(0, eq)));
    const std::string header = trim(item.substr(eq + 1));
    if (std::ranges::find(kFields, field) == kFields.end())
      throw std::invalid_argument("unknown record field '" + field + "'");
    if (header.empty()) throw std::invalid_argument("empty header for field '" + field + "'");
    out[field] = header;
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool row_has_content = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        row_has_content = true;
        break;
      case ',':
        row.push_back(std::move(cell));
        cell.clear();
        row_has_content = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_has_content || !cell.empty()) {
          row.push_back(std::move(cell));
          rows.push_back(std::move(row));
        }
        row.clear();
        cell.clear();
        row_has_content = false;
        break;
      default:
        cell += ch;
        row_has_content = true;
    }
  }
  if (row_has_content || !cell.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LinkRecord> ingest_csv_text(std::string_view text, const ColumnMap& columns) {
  const auto rows = parse_csv(text);
  if (rows.empty()) return {};
  const auto& header = rows.front();

  std::vector<std::pair<std::string, std::size_t>> used;  // field, column index
  if (columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string h = lower(trim(header[c]));
      if (std::ranges::find(kFields, h) != kFields.end()) used.emplace_back(h, c);
    }
  } else {
    for (const auto& [field, wanted] : columns) {
      const auto it = std::ranges::find_if(header, [&](const std::string& h) { return trim(h) == wanted; });
      if (it == header.end()) throw Error(Errc::ColumnMissing, "no column '" + wanted + "' for field " + field);
      used.emplace_back(field, static_cast<std::size_t>(it - header.begin()));
    }
  }

  std::vector<LinkRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    LinkRecord rec;
    rec.name = "row " + std::to_string(r);
    if (row.size() != header.size())
      rec.flags.push_back("CellParseError: row has " + std::to_string(row.size()) + " cells, header has " +
                          std::to_string(header.size()));
    for (const auto& [field, c] : used) {
      if (c >= row.size()) continue;
      const std::string cell = trim(row[c]);
      if (cell.empty()) continue;
      try {
        fill_field(rec, field, cell);
      } catch (const std::exception& e) {
        rec.flags.push_back("CellParseError: " + field + ": " + e.what());
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<LinkRecord> ingest_csv(const std::filesystem::path& path, const ColumnMap& columns) {
  return ingest_csv_text(read_file(path), columns);
}

LinkRecord record_from_text(std::string_view text, std::string name) {
  LinkRecord rec;
  const std::string body = trim(text);
  rec.name = name.empty() ? body : std::move(name);
  if (body.starts_with("PD")) rec.pd = parse_pd(body);
  else rec.braid = parse_braid(body);
  return rec;
}

std::vector<LinkRecord> read_diagram_list(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<LinkRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::string name;
    std::string diagram = body;
    if (const auto colon = body.find(':'); colon != std::string::npos) {
      name = trim(std::string_view(body).substr(0, colon));
      diagram = trim(std::string_view(body).substr(colon + 1));
    }
    try {
      out.push_back(record_from_text(diagram, name));
    } catch (const std::exception& e) {
      LinkRecord bad;
      bad.name = name.empty() ? "line " + std::to_string(number) : name;
      bad.flags.push_back(std::string("CellParseError: ") + e.what());
      out.push_back(std::move(bad));
    }
  }
  return out;
}

}  // namespace kpos
