#include <doctest.h>

#include "bilap/errors.hpp"
#include "bilap/function_norms.hpp"
#include "oracles.hpp"

using namespace bilap;

namespace {

SpectralField from_values(const TorusGrid& g, std::vector<cplx> v) { return synchronized(SpectralField::from_space(g, std::move(v))); }

// Averages over every centred cube of odd side 2h+1, h = 0, 1, 3, 7, ...
std::vector<double> naive_maximal(const TorusGrid& g, const std::vector<cplx>& v) {
  const int n = g.n();
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto s = g.axis_slots(p);
    for (int h = 0; h < n / 2; h = 2 * h + 1) {
      double sum = 0.0;
      int count = 0;
      for (int a = -h; a <= h; ++a) {
        for (int b = (g.dim() == 2 ? -h : 0); b <= (g.dim() == 2 ? h : 0); ++b) {
          const int i0 = ((s[0] + a) % n + n) % n;
          const int i1 = g.dim() == 2 ? ((s[1] + b) % n + n) % n : 0;
          sum += std::abs(v[g.flat(i0, i1)]);
          ++count;
        }
      }
      out[p] = std::max(out[p], sum / count);
    }
  }
  return out;
}

SpectralField shifted(const SpectralField& f, int d0, int d1) {
  const auto& g = f.grid();
  const auto v = values_of(f);
  std::vector<cplx> w(v.size());
  for (std::size_t p = 0; p < v.size(); ++p) {
    const auto s = g.axis_slots(p);
    w[g.flat((s[0] + d0) % g.n(), (s[1] + d1) % g.n())] = v[p];
  }
  return from_values(g, w);
}

}  // namespace

TEST_SUITE("function_norms") {
  TEST_CASE("Lebesgue closed forms") {
    const TorusGrid g(1, 64, 5.0);
    const auto c = from_values(g, std::vector<cplx>(g.size(), 3.0));
    for (double p : {0.5, 1.0, 2.0, 7.0}) CHECK(lebesgue_norm(c, p) == doctest::Approx(3.0 * std::pow(5.0, 1.0 / p)).epsilon(1e-13));
    // exp(-x^2) on a wide torus
    const TorusGrid w(1, 256, 40.0);
    const auto gauss = oracle::gaussian(w, std::sqrt(0.5), {20.0, 0.0});
    CHECK(lebesgue_norm(gauss, 2.0) == doctest::Approx(std::pow(oracle::kPi / 2.0, 0.25)).epsilon(1e-12));
    CHECK(lebesgue_norm(gauss, 1.0) == doctest::Approx(std::sqrt(oracle::kPi)).epsilon(1e-12));
    CHECK_THROWS_AS(lebesgue_norm(c, 0.0), DomainError);
  }

  TEST_CASE("mixed norms") {
    const TorusGrid g(2, 128, 30.0);
    const auto gauss = oracle::gaussian(g, std::sqrt(0.5), {15.0, 15.0});
    for (auto [p, q] : {std::pair{2.0, 2.0}, std::pair{1.5, 3.0}, std::pair{4.0, 0.75}}) {
      const double want = std::pow(oracle::kPi / q, 0.5 / q) * std::pow(oracle::kPi / p, 0.5 / p);
      CHECK(mixed_norm(gauss, p, q) == doctest::Approx(want).epsilon(1e-12));
    }
    std::mt19937_64 rng(41);
    const auto f = oracle::random_field(TorusGrid(2, 16, 3.0), 5, rng);
    for (double p : {0.7, 1.0, 2.5}) CHECK(mixed_norm(f, p, p) == doctest::Approx(lebesgue_norm(f, p)).epsilon(1e-12));

    // support on a single row t0
    const TorusGrid h(2, 16, 4.0);
    std::vector<cplx> v(h.size());
    for (int x = 0; x < 16; ++x) v[h.flat(5, x)] = 1.0 + x;
    double inner = 0.0;
    for (int x = 0; x < 16; ++x) inner += std::pow(1.0 + x, 3.0) * h.spacing();
    const double want = std::pow(h.spacing(), 0.5) * std::pow(inner, 1.0 / 3.0);
    CHECK(mixed_norm(SpectralField::from_space(h, v), 2.0, 3.0) == doctest::Approx(want).epsilon(1e-13));
    CHECK_THROWS_AS(mixed_norm(oracle::mode(TorusGrid(1, 16, 1.0), 1), 2.0, 2.0), DimensionError);
  }

  TEST_CASE("smoothness norms") {
    const TorusGrid g(2, 32, 6.0);
    const auto m = oracle::mode(g, 3, -4);
    const double xi = 2.0 * oracle::kPi * 5.0 / 6.0;
    CHECK(hom_sobolev_norm(m, 1.5, 3.0) == doctest::Approx(std::pow(xi, 1.5) * std::pow(36.0, 1.0 / 3.0)).epsilon(1e-12));
    const LPFamily fam(g);
    std::mt19937_64 rng(42);
    const auto f = project_mean(oracle::random_field(g, 10, rng));
    for (double p : {1.0, 2.0, 3.0}) {
      CHECK(besov_norm(f, 0.7, p, p, fam) == doctest::Approx(triebel_lizorkin_norm(f, 0.7, p, p, fam)).epsilon(1e-12));
    }
    // Hardy norm of a single mode: constant square function
    const FreqVec k{2.0 * oracle::kPi * 3.0 / 6.0, -2.0 * oracle::kPi * 4.0 / 6.0};
    double sq = 0.0;
    for (int j = fam.j_min(); j <= fam.j_max(); ++j) sq += std::pow(fam.weight(j, k), 2);
    const double want = 2.0 * std::sqrt(sq) * std::pow(6.0, 1.0 / 1.5 + 1.0 / 3.0);
    CHECK(hardy_mixed_norm(oracle::mode(g, 3, -4, 2.0), 1.5, 3.0, fam) == doctest::Approx(want).epsilon(1e-12));
    CHECK_THROWS_AS(hardy_mixed_norm(oracle::mode(TorusGrid(1, 16, 1.0), 1), 2.0, 2.0, LPFamily(TorusGrid(1, 16, 1.0))),
                    DimensionError);
  }

  TEST_CASE("Sobolev and Triebel-Lizorkin stay comparable under refinement") {
    std::mt19937_64 rng(43);
    const TorusGrid g(1, 64, 8.0);
    for (int i = 0; i < 5; ++i) {
      const auto f = project_mean(oracle::random_field(g, 15, rng));
      const auto r = refine(f);
      const double a = hom_sobolev_norm(f, 1.0, 3.0) / triebel_lizorkin_norm(f, 1.0, 3.0, 2.0, LPFamily(g));
      const double b = hom_sobolev_norm(r, 1.0, 3.0) / triebel_lizorkin_norm(r, 1.0, 3.0, 2.0, LPFamily(r.grid()));
      CHECK(std::abs(a / b - 1.0) < 0.1);
    }
  }

  TEST_CASE("maximal function") {
    std::mt19937_64 rng(44);
    for (int d : {1, 2}) {
      const TorusGrid g(d, 32, 4.0);
      const auto f = oracle::random_field(g, 10, rng);
      const auto mf = values_of(maximal_function(f));
      const auto naive = naive_maximal(g, values_of(f));
      const auto v = values_of(f);
      double worst = 0.0;
      for (std::size_t p = 0; p < g.size(); ++p) {
        worst = std::max(worst, std::abs(mf[p].real() - naive[p]));
        CHECK(mf[p].real() >= std::abs(v[p]) - 1e-14);
      }
      CHECK(worst < 1e-12);
      const auto h = oracle::random_field(g, 10, rng);
      const auto sum = values_of(maximal_function(combine(1.0, f, 1.0, h)));
      const auto mh = values_of(maximal_function(h));
      for (std::size_t p = 0; p < g.size(); ++p) CHECK(sum[p].real() <= mf[p].real() + mh[p].real() + 1e-12);
      const auto c = values_of(maximal_function(from_values(g, std::vector<cplx>(g.size(), -2.5))));
      for (auto x : c) CHECK(std::abs(x.real() - 2.5) < 1e-13);
    }
  }

  TEST_CASE("vector maximal ratio") {
    const TorusGrid g(2, 16, 4.0);
    const std::vector<SpectralField> consts{from_values(g, std::vector<cplx>(g.size(), 1.0)),
                                            from_values(g, std::vector<cplx>(g.size(), 3.0))};
    CHECK(fefferman_stein_check(consts, 2.0, 3.0, 2.0) == doctest::Approx(1.0).epsilon(1e-13));
    std::mt19937_64 rng(45);
    std::vector<SpectralField> fs, moved;
    for (int i = 0; i < 4; ++i) {
      fs.push_back(oracle::random_field(g, 5, rng));
      moved.push_back(shifted(fs.back(), 3, 7));
    }
    const double ratio = fefferman_stein_check(fs, 2.0, 3.0, 2.0);
    CHECK(ratio >= 1.0);
    CHECK(fefferman_stein_check(moved, 2.0, 3.0, 2.0) == doctest::Approx(ratio).epsilon(1e-12));
    CHECK_THROWS_AS(fefferman_stein_check(fs, 1.0, 3.0, 2.0), DomainError);
    CHECK_THROWS_AS(fefferman_stein_check(fs, 2.0, 3.0, INFINITY), DomainError);
    CHECK_THROWS_AS(fefferman_stein_check({}, 2.0, 3.0, 2.0), DegenerateInput);
    CHECK_THROWS_AS(fefferman_stein_check({oracle::mode(TorusGrid(1, 16, 1.0), 1)}, 2.0, 3.0, 2.0), DimensionError);
    CHECK_THROWS_AS(fefferman_stein_check({SpectralField::zeros(g)}, 2.0, 3.0, 2.0), DegenerateInput);
  }

  TEST_CASE("quasi-triangle inequality") {
    std::mt19937_64 rng(46);
    const TorusGrid g(2, 16, 3.0);
    for (double p : {0.5, 0.8}) {
      for (int i = 0; i < 20; ++i) {
        const auto f = oracle::random_field(g, 5, rng), h = oracle::random_field(g, 5, rng);
        const auto s = combine(1.0, f, 1.0, h);
        CHECK(std::pow(lebesgue_norm(s, p), p) <= std::pow(lebesgue_norm(f, p), p) + std::pow(lebesgue_norm(h, p), p) + 1e-12);
        CHECK(std::pow(mixed_norm(s, p, 0.6), p) <=
              std::pow(mixed_norm(f, p, 0.6), p) + std::pow(mixed_norm(h, p, 0.6), p) + 1e-12);
      }
    }
  }

  TEST_CASE("exponent validation") {
    ExponentTuple e;
    CHECK_NOTHROW(validate(e, NormMode::Lebesgue, 1));
    e.p = 3.0;
    CHECK_THROWS_AS(validate(e, NormMode::Lebesgue, 1), ConfigError);
    e.p = 2.0;
    e.q1 = 3.0;
    CHECK_NOTHROW(validate(e, NormMode::Lebesgue, 2));
    CHECK_THROWS_AS(validate(e, NormMode::Mixed, 2), ConfigError);
    ExponentTuple low{0.5, 2.0, 1.0, 4.0, 1.0, 4.0, 0.5, 0.0};
    // gate max(0, 1/p - 1) = 1 in d = 1
    CHECK(!passes_s_gate(low, NormMode::Lebesgue, 1));
    low.s = 2.0;
    CHECK(passes_s_gate(low, NormMode::Lebesgue, 1));
    low.s = 1.01;
    CHECK(passes_s_gate(low, NormMode::Lebesgue, 1));
    low.s = 0.5;
    CHECK_THROWS_AS(validate(low, NormMode::Lebesgue, 1), ConfigError);
    try {
      validate(low, NormMode::Lebesgue, 1);
    } catch (const ConfigError& err) {
      CHECK(std::string(err.what()).find("gate") != std::string::npos);
    }
    ExponentTuple nu_bad;
    nu_bad.nu = 2.0;
    CHECK_THROWS_AS(validate(nu_bad, NormMode::Lebesgue, 1), ConfigError);
    CHECK_NOTHROW(validate(nu_bad, NormMode::Lebesgue, 2));
    ExponentTuple neg;
    neg.p1 = -4.0;
    CHECK_THROWS_AS(validate(neg, NormMode::Lebesgue, 1), ConfigError);
  }

  TEST_CASE("norm kinds by name") {
    CHECK(norm_kind_from_name("besov") == NormKind::Kind::Besov);
    CHECK_THROWS_AS(norm_kind_from_name("sobolev"), ConfigError);
    const TorusGrid g(1, 16, 2.0);
    NormKind k;
    k.kind = NormKind::Kind::HomSobolev;
    k.s = 1.0;
    const auto m = oracle::mode(g, 1);
    CHECK(evaluate_norm(k, m, LPFamily(g)) == doctest::Approx(hom_sobolev_norm(m, 1.0, 2.0)));
  }
}
