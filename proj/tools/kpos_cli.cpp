#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpos/batch.hpp"
#include "kpos/error.hpp"
#include "kpos/records.hpp"

namespace {

struct InputOptions {
  std::vector<std::string> pd;
  std::vector<std::string> braid;
  std::string file;
  std::string columns;
};

struct OutputOptions {
  std::string format = "text";
  std::string out;
};

struct Invariants {
  bool all = false;
  bool jones = false;
  bool conway = false;
  bool kh = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--pd", in.pd, "PD code, e.g. \"PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]\"");
  cmd->add_option("--braid", in.braid, "braid word, e.g. \"strands=3; 1 2 1 2\"");
  cmd->add_option("--file", in.file, "one diagram per line, or a .csv table");
  cmd->add_option("--columns", in.columns, "CSV mapping, e.g. name=Name,jones=Jones");
}

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "output format")->check(CLI::IsMember({"text", "record"}));
  cmd->add_option("--out", out.out, "write output to this path instead of stdout");
}

void add_config_options(CLI::App* cmd, kpos::BatchConfig& cfg, std::string& mirror) {
  cmd->add_option("--cap", cfg.kh_cap, "Khovanov crossing cap")->check(CLI::NonNegativeNumber);
  cmd->add_option("--bracket-cap", cfg.bracket_cap, "crossings above which the bracket warns");
  cmd->add_option("--skein-budget", cfg.skein_budget, "Conway skein node budget");
  cmd->add_option("--workers", cfg.workers, "batch worker threads, 0 for all cores");
  cmd->add_option("--mirror", mirror, "mirror normalization of ingested data")
      ->check(CLI::IsMember({"auto", "off", "on"}));
}

std::vector<kpos::LinkRecord> gather(const InputOptions& in, bool require_csv) {
  std::vector<kpos::LinkRecord> records;
  for (const auto& text : in.pd) records.push_back(kpos::record_from_text(text));
  for (const auto& text : in.braid) records.push_back(kpos::record_from_text(text));
  if (!in.file.empty()) {
    const bool csv = std::filesystem::path(in.file).extension() == ".csv";
    if (require_csv || csv || !in.columns.empty()) {
      kpos::ColumnMap map;
      try {
        map = kpos::parse_column_map(in.columns);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      auto rows = kpos::ingest_csv(in.file, map);
      records.insert(records.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    } else {
      auto rows = kpos::read_diagram_list(in.file);
      records.insert(records.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
    }
  }
  if (records.empty() && in.file.empty()) throw UsageError("no input: give --pd, --braid or --file");
  return records;
}

void apply(const Invariants& inv, const std::string& mirror, kpos::BatchConfig& cfg) {
  const bool any = inv.jones || inv.conway || inv.kh;
  cfg.jones = inv.all || !any || inv.jones;
  cfg.conway = inv.all || !any || inv.conway;
  cfg.kh = inv.all || !any || inv.kh;
  cfg.mirror = mirror == "on" ? kpos::MirrorMode::On : mirror == "off" ? kpos::MirrorMode::Off : kpos::MirrorMode::Auto;
}

void emit(const OutputOptions& out, const std::string& text) {
  if (out.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out.out, std::ios::binary);
  if (!f) throw kpos::Error(kpos::Errc::FileUnreadable, "cannot write " + out.out);
  f << text;
}

std::string render(const kpos::BatchResult& batch, const OutputOptions& out) {
  return out.format == "record" ? kpos::format_records(batch) : kpos::format_text(batch);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivity obstructions from the Jones polynomial and Khovanov homology"};
  app.require_subcommand(1);

  InputOptions in;
  OutputOptions out;
  Invariants inv;
  kpos::BatchConfig cfg;
  std::string mirror = "auto";
  kpos::SurveySpec survey;
  bool no_dedupe = false;

  auto* compute = app.add_subcommand("compute", "compute invariants");
  auto* test = app.add_subcommand("test", "run the Jones and Khovanov positivity tests");
  auto* ingest = app.add_subcommand("ingest", "read a CSV table and cross-check it");
  auto* surv = app.add_subcommand("survey", "enumerate positive braids and check the inequalities");

  for (auto* cmd : {compute, test, ingest}) {
    add_input_options(cmd, in);
    add_output_options(cmd, out);
    add_config_options(cmd, cfg, mirror);
    cmd->add_flag("--all", inv.all, "compute every invariant");
    cmd->add_flag("--jones", inv.jones, "compute the Jones polynomial");
    cmd->add_flag("--conway", inv.conway, "compute the Conway polynomial");
    cmd->add_flag("--kh", inv.kh, "compute Khovanov homology");
  }
  add_output_options(surv, out);
  add_config_options(surv, cfg, mirror);
  surv->add_option("--min-strands", survey.min_strands)->check(CLI::PositiveNumber);
  surv->add_option("--max-strands", survey.max_strands)->check(CLI::NonNegativeNumber);
  surv->add_option("--min-length", survey.min_length)->check(CLI::NonNegativeNumber);
  surv->add_option("--max-length", survey.max_length)->check(CLI::NonNegativeNumber);
  surv->add_flag("--no-dedupe", no_dedupe, "keep words with equal (Jones, Conway) fingerprints");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply(inv, mirror, cfg);
    if (surv->parsed()) {
      survey.dedupe = !no_dedupe;
      const auto result = kpos::cmd_survey(survey, cfg);
      std::string text;
      if (out.format == "record") {
        text = kpos::format_records(result.batch);
        const auto& s = result.summary;
        nlohmann::json summary{{"schema", "kpos.survey/1"},   {"words", s.words},
                               {"unique", s.unique},          {"skipped", s.skipped},
                               {"applicable", s.applicable},  {"jones_fail", s.jones_fail},
                               {"khovanov_fail", s.khovanov_fail}, {"violations", s.violations},
                               {"equality_cases", s.equality_cases}};
        text += summary.dump() + "\n";
      } else {
        text = kpos::format_text(result.summary);
        for (const auto& r : result.batch.records)
          for (const auto& v : r.violations) text += "violation: " + r.name + ": " + v + "\n";
      }
      emit(out, text);
      return result.batch.any_error() ? 1 : 0;
    }

    const auto records = gather(in, ingest->parsed());
    const auto batch = test->parsed() ? kpos::cmd_test(records, cfg) : kpos::cmd_compute(records, cfg);
    emit(out, render(batch, out));
    return batch.any_error() ? 1 : 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
