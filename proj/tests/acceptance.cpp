// Acceptance run: one PASS/FAIL line per criterion, each timed against its
// budget. Exit status 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "bilap/errors.hpp"
#include "bilap/lab.hpp"
#include "oracles.hpp"

using namespace bilap;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

// All rows whose label starts with one of the prefixes must pass, and at
// least one such row must exist.
Outcome rows_pass(const SweepReport& rep, const std::vector<std::string>& prefixes) {
  int seen = 0, failed = 0;
  std::string first_failure;
  for (const auto& r : rep.rows) {
    bool match = false;
    for (const auto& p : prefixes) match = match || r.label.rfind(p, 0) == 0;
    if (!match) continue;
    ++seen;
    if (!r.verdict) {
      ++failed;
      if (first_failure.empty()) first_failure = r.label + (r.note.empty() ? "" : " [" + r.note + "]");
    }
  }
  std::ostringstream out;
  out << seen - failed << '/' << seen << " rows";
  if (!first_failure.empty()) out << "; first failure: " << first_failure;
  return {seen > 0 && failed == 0, out.str()};
}

Outcome suite(SweepReport (*run)(const ExperimentConfig&), const std::string& config,
              const std::vector<std::string>& prefixes) {
  return rows_pass(run(parse_config(config)), prefixes);
}

Outcome infrastructure() {
  std::mt19937_64 rng(2024);
  double round = 0.0, product = 0.0;
  for (int d : {1, 2}) {
    const TorusGrid g(d, 32, 5.0);
    for (int i = 0; i < 20; ++i) {
      const auto v = oracle::random_values(g, rng);
      const auto back = values_of(SpectralField::from_frequency(g, spectrum_of(SpectralField::from_space(g, v))));
      round = std::max(round, oracle::max_diff(back, v));
      const auto a = oracle::random_field(g, 10, rng, true), b = oracle::random_field(g, 10, rng, true);
      product = std::max(product,
                         oracle::max_diff(spectrum_of(dealiased_product(a, b)), oracle::convolve(g, spectrum_of(a), spectrum_of(b))));
    }
  }
  const auto cfg = parse_config(R"({"seed": 99, "n": 64, "fields": 10, "pairs": 3})");
  const auto first = run_identity_suite(cfg), second = run_identity_suite(cfg);
  bool same = true;
  for (auto f : {ReportFormat::Csv, ReportFormat::Json, ReportFormat::Plotdata}) {
    same = same && render_report(first, f) == render_report(second, f);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "round trip %.2e, product vs convolution %.2e, reruns %s", round, product,
                same ? "identical" : "differ");
  return {round < 1e-12 && product < 1e-12 && same, buf};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "calculus identities", 10.0,
       [] { return suite(run_identity_suite, R"({"parts": ["calculus"], "fields": 100, "n": 128})", {"D^s", "d_j"}); }},
      {2, "paraproduct decomposition", 60.0,
       [] { return suite(run_identity_suite, R"({"parts": ["paraproduct"], "pairs": 20, "n": 128})", {"paraproduct"}); }},
      {3, "coefficient decay", 30.0,
       [] { return suite(run_coefficient_decay, R"({"m_max": 512})", {"s=0.5 decay", "s=1.5 decay"}); }},
      {4, "log lemma trend", 120.0, [] { return suite(run_log_lemma_sweep, "{}", {"p=1.5", "p=4", "(p,q)=(3,1.5)"}); }},
      {5, "Leibniz and smoothing sweeps", 300.0,
       [] { return suite(run_leibniz_sweep, R"({"refine": true})", {""}); }},
      {6, "mixed vector maximal bound", 60.0,
       [] { return suite(run_embedding_suite, R"({"refine": true, "parts": ["fefferman_stein"]})", {"vector maximal"}); }},
      {7, "frame transform and embedding", 180.0,
       [] {
         return suite(run_embedding_suite, R"({"refine": true, "parts": ["frame", "embedding"]})",
                      {"frame identity", "reconstruction", "embedding (p,q)=(0.75,2)", "embedding (p,q)=(2,0.75)",
                       "embedding (p,q)=(1.5,3)"});
       }},
      {8, "symbol analysis", 120.0,
       [] {
         return suite(run_symbol_report, R"({"refine": true})", {"k-invariance", "rough divergence", "domination"});
       }},
      {9, "infrastructure", 60.0, infrastructure},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.ok && secs <= c.budget;
    failures += pass ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.1fs of %.0fs", secs, c.budget);
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << ", "
              << timing << (secs > c.budget ? " OVER BUDGET" : "") << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
