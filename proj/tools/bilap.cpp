// Command-line front end: one subcommand per suite, plus `report` to
// re-emit a saved JSON report in other formats.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "bilap/errors.hpp"
#include "bilap/lab.hpp"

namespace fs = std::filesystem;
using namespace bilap;

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  bool refine = false;
  std::vector<std::string> formats;
};

std::vector<ReportFormat> formats_for(const Options& o, const nlohmann::json& raw) {
  std::vector<std::string> names = o.formats;
  if (names.empty() && raw.contains("formats")) names = raw.at("formats").get<std::vector<std::string>>();
  if (names.empty()) names = {"csv", "json", "plotdata"};
  std::vector<ReportFormat> out;
  for (const auto& n : names) out.push_back(report_format_from_name(n));
  return out;
}

int emit_all(const SweepReport& report, const Options& o, const nlohmann::json& raw) {
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(dir.string() + ": " + ec.message());

  nlohmann::json summary;
  summary["version"] = kVersion;
  summary["suite"] = report.suite;
  summary["metadata"] = report.metadata;
  summary["rows"] = report.rows.size();
  int failed = 0;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& r : report.rows) {
    if (r.verdict) continue;
    ++failed;
    failures.push_back(r.label);
  }
  summary["failed"] = failed;
  summary["failures"] = failures;
  summary["all_pass"] = report.all_pass();

  nlohmann::json files = nlohmann::json::array();
  for (auto f : formats_for(o, raw)) files.push_back(emit_report(report, f, (dir / report.suite).string()));
  for (const auto& [name, text] : report.attachments) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!(out << text)) throw IoError(path.string() + ": write failed");
    files.push_back(path.string());
  }
  summary["files"] = files;

  const auto path = dir / "summary.json";
  std::ofstream out(path, std::ios::binary);
  if (!(out << summary.dump(2) << '\n')) throw IoError(path.string() + ": write failed");

  for (const auto& r : report.rows) {
    std::cout << (r.verdict ? "PASS " : "FAIL ") << r.label;
    if (!r.note.empty() && !r.verdict) std::cout << "  [" << r.note << ']';
    std::cout << '\n';
  }
  std::cout << report.suite << ": " << report.rows.size() - std::size_t(failed) << '/' << report.rows.size()
            << " rows pass; reports in " << dir.string() << '\n';
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bilinear multiplier lab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Options opt;
  std::function<int()> action;

  const std::map<std::string, std::pair<std::string, std::function<SweepReport(const ExperimentConfig&)>>> suites{
      {"identities", {"exact frequency-side identities", run_identity_suite}},
      {"leibniz", {"fractional Leibniz and smoothing ratio sweeps", run_leibniz_sweep}},
      {"loglemma", {"translated square functions against ln(1+|m|)", run_log_lemma_sweep}},
      {"decay", {"Fourier coefficient decay of the weighted cutoff", run_coefficient_decay}},
      {"embedding", {"frame transform, Hardy embedding and vector maximal bounds", run_embedding_suite}},
      {"symbol", {"symbol regularity, class bounds and maximal domination", run_symbol_report}},
  };

  for (const auto& [name, entry] : suites) {
    auto* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", opt.config, "JSON config file");
    sub->add_option("--out", opt.out, "output directory")->required();
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->add_flag("--refine", opt.refine, "also run on the 2N grid and assert stability");
    sub->add_option("--format", opt.formats, "csv, json or plotdata (repeatable)");
    const auto run = entry.second;
    sub->callback([&opt, &action, run] {
      action = [&opt, run] {
        ExperimentConfig cfg = opt.config.empty() ? parse_config("{}") : load_config(opt.config);
        if (opt.seed) cfg.seed = *opt.seed;
        if (opt.refine) cfg.refine = true;
        return emit_all(run(cfg), opt, cfg.raw);
      };
    });
  }

  auto* rep = app.add_subcommand("report", "re-emit a saved JSON report");
  rep->add_option("--config", opt.config, "JSON report written by a suite")->required();
  rep->add_option("--out", opt.out, "output directory")->required();
  rep->add_option("--format", opt.formats, "csv, json or plotdata (repeatable)");
  rep->callback([&] {
    action = [&opt] { return emit_all(load_report(opt.config), opt, nlohmann::json::object()); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
