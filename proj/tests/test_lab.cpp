#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bilap/errors.hpp"
#include "bilap/lab.hpp"
#include "oracles.hpp"

using namespace bilap;

namespace {

SweepReport sample_report() {
  SweepReport r;
  r.suite = "sample";
  r.metadata["N"] = "64";
  r.fits["slope"] = -1.5;
  r.add("plain", 1.0, 2.0, 0.5, 1.0, "ok");
  r.add("label, with \"quotes\"", 3.0, 1.0, 3.0, 1.0);
  r.note("measured only", 2.0, 1.0, 2.0);
  r.add_error("broken", "went wrong");
  r.attachments["extra.json"] = "{}";
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("lab") {
  TEST_CASE("families are deterministic with stable prefixes") {
    const TorusGrid g(2, 32, 8.0);
    for (auto kind : {FamilySpec::Kind::Gaussian, FamilySpec::Kind::BumpTensor, FamilySpec::Kind::RandomBandLimited}) {
      FamilySpec spec;
      spec.kind = kind;
      spec.modulation = 2.0;
      const auto a = generate_family(spec, g, 7, 6);
      const auto b = generate_family(spec, g, 7, 10);
      const auto c = generate_family(spec, g, 8, 6);
      REQUIRE(a.size() == 6);
      REQUIRE(b.size() == 10);
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(max_abs_difference(a[i], b[i]) == 0.0);
        CHECK(max_abs_difference(a[i], c[i]) > 0.0);
        const auto spec_i = spectrum_of(a[i]);
        const int limit = kind == FamilySpec::Kind::RandomBandLimited ? 32 / 8 : (32 - 1) / 3;
        for (std::size_t p = 0; p < g.size(); ++p) {
          const auto k = g.wavenumbers(p);
          if (std::max(std::abs(k[0]), std::abs(k[1])) > limit) CHECK(spec_i[p] == cplx());
        }
      }
    }
    FamilySpec pair;
    pair.kind = FamilySpec::Kind::ModePair;
    const auto modes = generate_family(pair, g, 1, 2);
    CHECK(max_abs_difference(modes[1], oracle::mode(g, 2, 0)) < 1e-15);
    pair.mode_b = {40, 0};
    CHECK_THROWS_AS(generate_family(pair, g, 1, 2), ConfigError);
    CHECK_THROWS_AS(generate_family(pair, g, 1, -1), ConfigError);
    CHECK_THROWS_AS(family_kind_from_name("poisson"), ConfigError);
  }

  TEST_CASE("report rendering") {
    SweepReport empty;
    empty.suite = "empty";
    CHECK(render_report(empty, ReportFormat::Csv) == "index,label,lhs,rhs,ratio,threshold,verdict,note\n");
    CHECK(empty.all_pass());

    const auto r = sample_report();
    CHECK(!r.all_pass());
    CHECK(r.rows[2].verdict);
    CHECK(std::isinf(r.rows[2].threshold));
    CHECK(!r.rows[3].verdict);
    CHECK(r.rows[3].note.rfind("error: ", 0) == 0);
    CHECK(report_from_json(report_to_json(r)) == r);
    const auto dat = render_report(r, ReportFormat::Plotdata);
    std::istringstream lines(dat);
    std::string first;
    std::getline(lines, first);
    CHECK(first.rfind("# ", 0) == 0);
    CHECK(render_report(r, ReportFormat::Csv).find("\"label, with \"\"quotes\"\"\"") != std::string::npos);
    CHECK(report_format_from_name("plotdata") == ReportFormat::Plotdata);
    CHECK_THROWS_AS(report_format_from_name("xml"), ConfigError);
  }

  TEST_CASE("report files") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "bilap_lab";
    fs::create_directories(dir);
    const auto r = sample_report();
    const auto path = emit_report(r, ReportFormat::Json, (dir / "sample").string());
    CHECK(path == (dir / "sample.json").string());
    CHECK(load_report(path) == r);
    const auto bad = (dir / "missing" / "sample").string();
    try {
      emit_report(r, ReportFormat::Csv, bad);
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(std::string(e.what()).find("missing") != std::string::npos);
    }
    CHECK_THROWS_AS(load_report((dir / "absent.json").string()), IoError);
    std::ofstream((dir / "junk.json").string()) << "{\"suite\": 3}";
    CHECK_THROWS_AS(load_report((dir / "junk.json").string()), ConfigError);
  }

  TEST_CASE("config parsing") {
    const auto cfg = parse_config(R"({"seed": 42, "refine": true, "n": 64})");
    CHECK(cfg.seed == 42);
    CHECK(cfg.refine);
    CHECK(!cfg.enlarge);
    CHECK(cfg.raw.at("n") == 64);
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"seed": "x"})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), IoError);
  }

  TEST_CASE("identity suite") {
    auto cfg = parse_config(R"({"n": 64, "fields": 5, "pairs": 2, "symbols": ["ks_frac"],
                                "paraproduct": [[0.25, 0.5], [1.0, 0.5]]})");
    const auto a = run_identity_suite(cfg);
    CHECK(a.all_pass());
    CHECK(a.rows.size() > 2);
    // reruns are byte-identical
    const auto b = run_identity_suite(cfg);
    CHECK(render_report(a, ReportFormat::Json) == render_report(b, ReportFormat::Json));
    CHECK(render_report(a, ReportFormat::Csv) == render_report(b, ReportFormat::Csv));

    cfg = parse_config(R"({"n": 64, "pairs": 1, "parts": ["paraproduct"], "paraproduct": [[1.0, 0.5]],
                           "aliased_probe": true})");
    const auto probe = run_identity_suite(cfg);
    CHECK(!probe.all_pass());
    const auto& last = probe.rows.back();
    CHECK(last.label == "aliased input");
    CHECK(!last.verdict);
    CHECK(last.note.rfind("error: ", 0) == 0);
  }

  TEST_CASE("leibniz tuples are validated") {
    const auto cfg = parse_config(R"({"tuples": [{"symbol": "one", "p1": 2, "p2": 2, "p": 3}]})");
    try {
      run_leibniz_sweep(cfg);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("tuple") != std::string::npos);
    }
    CHECK_THROWS_AS(run_leibniz_sweep(parse_config(R"({"tuples": [{"mode": "sideways"}]})")), ConfigError);
    CHECK_THROWS_AS(run_leibniz_sweep(parse_config(R"({"tuples": [{"symbol": "what"}]})")), ConfigError);
  }

  TEST_CASE("line fit") {
    const auto [slope, intercept] = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, -1.0, -3.0, -5.0});
    CHECK(slope == doctest::Approx(-2.0));
    CHECK(intercept == doctest::Approx(1.0));
    CHECK_THROWS_AS(fit_line({1.0}, {1.0}), DegenerateInput);
    CHECK_THROWS_AS(fit_line({1.0, 2.0}, {1.0}), DegenerateInput);
  }
}
