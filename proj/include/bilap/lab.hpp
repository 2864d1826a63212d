#pragma once

// Experiment runner: test families, sweep reports and the suites behind the
// command-line subcommands.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bilap/function_norms.hpp"
#include "bilap/spectral_core.hpp"

namespace bilap {

inline constexpr const char* kVersion = "1.0.0";

struct FamilySpec {
  enum class Kind { Gaussian, BumpTensor, RandomBandLimited, ModePair };
  Kind kind = Kind::Gaussian;
  int count = 50;
  double width = 0.0;       // Gaussian standard deviation / bump radius; 0 = period/16
  double width_spread = 0.4;  // widths drawn from [width (1 - spread), width]
  double centre_spread = 0.125;  // centres drawn within +-spread*period of the middle
  double modulation = 0.0;  // max |frequency| of the modulation per axis
  int band = 0;             // RandomBandLimited: max |k_i|; 0 = N/8
  std::array<int, 2> mode_a{1, 0};
  std::array<int, 2> mode_b{2, 0};
};

FamilySpec::Kind family_kind_from_name(const std::string& name);

/// `count` fields (2 * count for pairs) on the grid, band-limited to
/// |k_i| < N/3 with coefficients below 1e-15 of the peak set to zero.
/// Deterministic in (spec, grid, seed).
std::vector<SpectralField> generate_family(const FamilySpec& spec, const TorusGrid& grid, std::uint64_t seed,
                                           int members);

struct ReportRow {
  int index = 0;
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double threshold = 0.0;
  bool verdict = false;
  std::string note;

  bool operator==(const ReportRow&) const = default;
};

struct SweepReport {
  std::string suite;
  std::vector<ReportRow> rows;
  std::map<std::string, double> fits;
  std::map<std::string, std::string> metadata;
  /// Extra files (name -> contents) written next to the report.
  std::map<std::string, std::string> attachments;

  /// Appends a row with verdict = ratio <= threshold.
  void add(std::string label, double lhs, double rhs, double ratio, double threshold, std::string note = "");
  /// Appends a row that is measured but not asserted (threshold +inf).
  void note(std::string label, double lhs, double rhs, double ratio, std::string note = "");
  /// Appends a failed row carrying an error message.
  void add_error(std::string label, const std::string& what);
  bool all_pass() const;

  bool operator==(const SweepReport&) const = default;
};

enum class ReportFormat { Csv, Json, Plotdata };
ReportFormat report_format_from_name(const std::string& name);
std::string format_extension(ReportFormat f);

std::string render_report(const SweepReport& report, ReportFormat format);
/// Writes `base` + extension; IoError with the path on failure.
std::string emit_report(const SweepReport& report, ReportFormat format, const std::string& base);
nlohmann::json report_to_json(const SweepReport& report);
SweepReport report_from_json(const nlohmann::json& j);
SweepReport load_report(const std::string& path);

/// Settings shared by every suite. Suite-specific keys are read from `raw`.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  bool refine = false;
  bool enlarge = false;
  nlohmann::json raw = nlohmann::json::object();
};

/// Parses JSON text; ConfigError on malformed input or bad types.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

SweepReport run_identity_suite(const ExperimentConfig& cfg);
SweepReport run_leibniz_sweep(const ExperimentConfig& cfg);
SweepReport run_log_lemma_sweep(const ExperimentConfig& cfg);
SweepReport run_coefficient_decay(const ExperimentConfig& cfg);
SweepReport run_embedding_suite(const ExperimentConfig& cfg);
SweepReport run_symbol_report(const ExperimentConfig& cfg);

/// Least-squares slope and intercept of y against x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bilap
