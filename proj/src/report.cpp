#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bilap/errors.hpp"
#include "bilap/lab.hpp"

namespace bilap {
namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json json_num(double x) {
  if (std::isfinite(x)) return x;
  return num(x);
}

double from_json_num(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw ConfigError("report: expected a number, got " + j.dump());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string plot_token(std::string s) {
  for (auto& c : s) {
    if (c == ' ' || c == '\t' || c == '\n') c = '_';
  }
  return s.empty() ? "-" : s;
}

}  // namespace

void SweepReport::add(std::string label, double lhs, double rhs, double ratio, double threshold, std::string note) {
  ReportRow row;
  row.index = int(rows.size());
  row.label = std::move(label);
  row.lhs = lhs;
  row.rhs = rhs;
  row.ratio = ratio;
  row.threshold = threshold;
  row.verdict = ratio <= threshold;
  row.note = std::move(note);
  rows.push_back(std::move(row));
}

void SweepReport::note(std::string label, double lhs, double rhs, double ratio, std::string note) {
  add(std::move(label), lhs, rhs, ratio, INFINITY, std::move(note));
}

void SweepReport::add_error(std::string label, const std::string& what) {
  add(std::move(label), 0.0, 0.0, INFINITY, 0.0, "error: " + what);
}

bool SweepReport::all_pass() const {
  for (const auto& r : rows) {
    if (!r.verdict) return false;
  }
  return true;
}

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "plotdata") return ReportFormat::Plotdata;
  throw ConfigError("unknown report format '" + name + "'");
}

std::string format_extension(ReportFormat f) {
  switch (f) {
    case ReportFormat::Csv: return ".csv";
    case ReportFormat::Json: return ".json";
    case ReportFormat::Plotdata: return ".dat";
  }
  return "";
}

nlohmann::json report_to_json(const SweepReport& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["metadata"] = report.metadata;
  nlohmann::json fits = nlohmann::json::object();
  for (const auto& [k, v] : report.fits) fits[k] = json_num(v);
  j["fits"] = fits;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"index", r.index},
                    {"label", r.label},
                    {"lhs", json_num(r.lhs)},
                    {"rhs", json_num(r.rhs)},
                    {"ratio", json_num(r.ratio)},
                    {"threshold", json_num(r.threshold)},
                    {"verdict", r.verdict},
                    {"note", r.note}});
  }
  j["rows"] = rows;
  j["attachments"] = report.attachments;
  j["all_pass"] = report.all_pass();
  return j;
}

SweepReport report_from_json(const nlohmann::json& j) {
  try {
    SweepReport r;
    r.suite = j.at("suite").get<std::string>();
    r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& [k, v] : j.at("fits").items()) r.fits[k] = from_json_num(v);
    if (j.contains("attachments")) r.attachments = j.at("attachments").get<std::map<std::string, std::string>>();
    for (const auto& row : j.at("rows")) {
      ReportRow x;
      x.index = row.at("index").get<int>();
      x.label = row.at("label").get<std::string>();
      x.lhs = from_json_num(row.at("lhs"));
      x.rhs = from_json_num(row.at("rhs"));
      x.ratio = from_json_num(row.at("ratio"));
      x.threshold = from_json_num(row.at("threshold"));
      x.verdict = row.at("verdict").get<bool>();
      x.note = row.at("note").get<std::string>();
      r.rows.push_back(std::move(x));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report: malformed JSON: ") + e.what());
  }
}

SweepReport load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open for reading");
  try {
    return report_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string render_report(const SweepReport& report, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::Json:
      out << report_to_json(report).dump(2) << '\n';
      break;
    case ReportFormat::Csv:
      out << "index,label,lhs,rhs,ratio,threshold,verdict,note\n";
      for (const auto& r : report.rows) {
        out << r.index << ',' << csv_field(r.label) << ',' << num(r.lhs) << ',' << num(r.rhs) << ','
            << num(r.ratio) << ',' << num(r.threshold) << ',' << (r.verdict ? "PASS" : "FAIL") << ','
            << csv_field(r.note) << '\n';
      }
      break;
    case ReportFormat::Plotdata:
      out << "# suite " << plot_token(report.suite) << '\n';
      for (const auto& [k, v] : report.metadata) out << "# " << plot_token(k) << ' ' << plot_token(v) << '\n';
      for (const auto& [k, v] : report.fits) out << "# fit " << plot_token(k) << ' ' << num(v) << '\n';
      out << "# index lhs rhs ratio threshold verdict label\n";
      for (const auto& r : report.rows) {
        out << r.index << ' ' << num(r.lhs) << ' ' << num(r.rhs) << ' ' << num(r.ratio) << ' ' << num(r.threshold)
            << ' ' << (r.verdict ? 1 : 0) << ' ' << plot_token(r.label) << '\n';
      }
      break;
  }
  return out.str();
}

std::string emit_report(const SweepReport& report, ReportFormat format, const std::string& base) {
  const std::string path = base + format_extension(format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << render_report(report, format);
  if (!out) throw IoError(path + ": write failed");
  return path;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  try {
    cfg.raw = nlohmann::json::parse(text);
    if (!cfg.raw.is_object()) throw ConfigError("config: top level must be an object");
    cfg.seed = cfg.raw.value("seed", std::uint64_t(1));
    cfg.refine = cfg.raw.value("refine", false);
    cfg.enlarge = cfg.raw.value("enlarge", false);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DegenerateInput("fit_line: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DegenerateInput("fit_line: constant abscissa");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace bilap
