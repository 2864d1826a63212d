#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "bilap/errors.hpp"
#include "bilap/phi_transform.hpp"
#include "oracles.hpp"

using namespace bilap;

namespace {

// 64 x 64 grid on a period-16 torus: spacing 1/4, finest cube scale 2.
const TorusGrid kGrid(2, 64, 16.0);

SpectralField band_field(std::mt19937_64& rng) {
  // |k| <= 10 keeps |xi| = 2 pi |k| / 16 below 2^2
  auto c = oracle::random_spectrum(kGrid, 7, rng);
  c[0] = cplx();
  return synchronized(SpectralField::from_frequency(kGrid, std::move(c)));
}

double l2_squared(const SpectralField& f) {
  double e = 0.0;
  for (auto v : values_of(f)) e += std::norm(v);
  return e * kGrid.cell_volume();
}

}  // namespace

TEST_SUITE("phi_transform") {
  const LPFamily energy_fam(kGrid, LPFamily::Normalization::Energy);

  TEST_CASE("scales") {
    CHECK(finest_cube_scale(kGrid) == 2);
    CHECK(finest_cube_scale(TorusGrid(2, 16, 64.0)) == -2);
    CHECK_THROWS_AS(finest_cube_scale(TorusGrid(2, 16, 10.0)), DomainError);
  }

  TEST_CASE("zero field and single mode") {
    const auto zero = analyze(SpectralField::zeros(kGrid), energy_fam);
    CHECK(zero.energy() == 0.0);
    CHECK(zero.j_max() == 2);
    CHECK(zero.j_min() == energy_fam.j_min());

    const cplx amp(0.5, -1.0);
    const auto m = oracle::mode(kGrid, 3, -5, amp);
    const auto tree = analyze(m, energy_fam);
    const FreqVec xi = kGrid.frequency(kGrid.flat(3, kGrid.slot(-5)));
    double worst = 0.0;
    for (const auto& s : tree.scales()) {
      const double side = std::ldexp(1.0, -s.j);
      for (int a = 0; a < s.count; ++a) {
        for (int b = 0; b < s.count; ++b) {
          const cplx want = side * energy_fam.weight(s.j, xi) * amp * std::polar(1.0, xi[0] * a * side + xi[1] * b * side);
          worst = std::max(worst, std::abs(tree.coefficient({s.j, {a, b}}) - want));
        }
      }
    }
    CHECK(worst < 1e-13);
  }

  TEST_CASE("frame identity and reconstruction") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 10; ++i) {
      const auto f = band_field(rng);
      const auto tree = analyze(f, energy_fam);
      CHECK(tree.energy() == doctest::Approx(l2_squared(f)).epsilon(1e-12));
      CHECK(max_abs_difference(synthesize(tree), f) < 1e-12 * max_abs(f));
    }
  }

  TEST_CASE("synthesis of one cube") {
    std::mt19937_64 rng(62);
    const auto tree = analyze(band_field(rng), energy_fam);
    const DyadicCube q{1, {5, 9}};
    const cplx c(2.0, 1.0);
    const auto out = values_of(synthesize(tree.single(q, c)));
    // sum over modes of weight * |Q|^{1/2} c e^{i xi (x - corner)} / L^2
    const FreqVec corner{5 * 0.5, 9 * 0.5};
    const double L2 = 16.0 * 16.0;
    double worst = 0.0;
    for (std::size_t p = 0; p < kGrid.size(); p += 37) {
      const FreqVec x = kGrid.position(p);
      cplx acc = 0.0;
      for (std::size_t i = 1; i < kGrid.size(); ++i) {
        const FreqVec xi = kGrid.frequency(i);
        const double w = energy_fam.weight(1, xi);
        if (w == 0.0) continue;
        acc += w * 0.5 * c * std::polar(1.0, xi[0] * (x[0] - corner[0]) + xi[1] * (x[1] - corner[1])) / L2;
      }
      worst = std::max(worst, std::abs(out[p] - acc));
    }
    CHECK(worst < 1e-14);
  }

  TEST_CASE("discrete square function") {
    std::mt19937_64 rng(63);
    const auto tree = analyze(band_field(rng), energy_fam);
    const DyadicCube q{0, {3, 14}};
    const auto s = values_of(discrete_square_function(tree.single(q, cplx(0.0, 3.0))));
    for (std::size_t p = 0; p < kGrid.size(); ++p) {
      const auto slot = kGrid.axis_slots(p);
      const bool inside = slot[0] / 4 == 3 && slot[1] / 4 == 14;
      CHECK(s[p].real() == doctest::Approx(inside ? 3.0 : 0.0));
    }
    const auto base = values_of(discrete_square_function(tree));
    const auto scaled = values_of(discrete_square_function(tree.scaled(cplx(-1.5, 2.0))));
    for (std::size_t p = 0; p < kGrid.size(); ++p) CHECK(std::abs(scaled[p] - 2.5 * base[p]) <= 1e-12 * std::abs(base[p]));
  }

  TEST_CASE("input checks") {
    CHECK_THROWS_AS(analyze(oracle::mode(kGrid, 11, 0), energy_fam), ScaleRangeError);
    CHECK_THROWS_AS(analyze(oracle::mode(kGrid, 0, 0), energy_fam), ScaleRangeError);
    CHECK_THROWS_AS(analyze(oracle::mode(kGrid, 1, 0), LPFamily(kGrid)), DomainError);
    const TorusGrid line(1, 64, 16.0);
    CHECK_THROWS_AS(analyze(oracle::mode(line, 1), LPFamily(line, LPFamily::Normalization::Energy)), DimensionError);
    const auto tree = analyze(oracle::mode(kGrid, 1, 0), energy_fam);
    CHECK_THROWS_AS(tree.coefficient({3, {0, 0}}), ScaleRangeError);
    CHECK_THROWS_AS(tree.coefficient({0, {16, 0}}), DomainError);
    CHECK_THROWS_AS(embedding_ratio(SpectralField::zeros(kGrid), 2.0, 2.0, LPFamily(kGrid)), DegenerateInput);
  }

  TEST_CASE("tree csv") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "bilap_phi";
    fs::create_directories(dir);
    const auto tree = analyze(oracle::mode(kGrid, 1, 2), energy_fam);
    write_tree_csv((dir / "tree.csv").string(), tree);
    std::ifstream in(dir / "tree.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "j,corner_t,corner_x,re,im");
    std::size_t rows = 0, want = 0;
    for (std::string s; std::getline(in, s);) ++rows;
    for (const auto& s : tree.scales()) want += std::size_t(s.count) * s.count;
    CHECK(rows == want);
    CHECK_THROWS_AS(write_tree_csv((dir / "nope" / "t.csv").string(), tree), IoError);
  }
}
