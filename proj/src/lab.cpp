#include "bilap/lab.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "bilap/errors.hpp"
#include "bilap/function_norms.hpp"
#include "bilap/littlewood_paley.hpp"
#include "bilap/operators.hpp"
#include "bilap/phi_transform.hpp"
#include "bilap/potentials.hpp"
#include "bilap/symbol_analysis.hpp"

namespace bilap {
namespace {

using nlohmann::json;

template <class T>
T value_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

bool wants(const json& raw, const std::string& part) {
  if (!raw.contains("parts")) return true;
  for (const auto& p : raw.at("parts")) {
    if (p.get<std::string>() == part) return true;
  }
  return false;
}

FamilySpec family_from(const json& raw, FamilySpec spec) {
  if (!raw.contains("family")) return spec;
  const auto& j = raw.at("family");
  if (j.contains("kind")) spec.kind = family_kind_from_name(value_or<std::string>(j, "kind", ""));
  spec.count = value_or(j, "count", spec.count);
  spec.width = value_or(j, "width", spec.width);
  spec.width_spread = value_or(j, "width_spread", spec.width_spread);
  spec.centre_spread = value_or(j, "centre_spread", spec.centre_spread);
  spec.modulation = value_or(j, "modulation", spec.modulation);
  spec.band = value_or(j, "band", spec.band);
  spec.mode_a = value_or(j, "mode_a", spec.mode_a);
  spec.mode_b = value_or(j, "mode_b", spec.mode_b);
  if (spec.count < 1) throw ConfigError("family: count must be positive");
  return spec;
}

SweepReport start(const std::string& suite, const ExperimentConfig& cfg) {
  SweepReport r;
  r.suite = suite;
  r.metadata["version"] = kVersion;
  r.metadata["seed"] = std::to_string(cfg.seed);
  r.metadata["refine"] = cfg.refine ? "true" : "false";
  r.metadata["enlarge"] = cfg.enlarge ? "true" : "false";
  return r;
}

void guarded(SweepReport& rep, const std::string& label, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rep.add_error(label, e.what());
  }
}

// Deterministic stream for exponents drawn inside a suite.
std::mt19937_64 stream(std::uint64_t seed, std::uint32_t tag) {
  std::seed_seq s{std::uint32_t(seed), std::uint32_t(seed >> 32), tag, 0xbb67ae85u};
  return std::mt19937_64(s);
}

// D^a for a > 0, I_{-a} for a < 0, the mean projection for a = 0.
RadialMultiplier order_multiplier(double a) {
  if (a < 0.0) return RadialMultiplier::riesz_potential(-a);
  return RadialMultiplier::fractional_derivative(a);
}

double relative_change(double now, double before) { return std::abs(now / before - 1.0); }

std::vector<SpectralField> refined_all(const std::vector<SpectralField>& fs) {
  std::vector<SpectralField> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(refine(f));
  return out;
}

std::vector<SpectralField> mean_projected(std::vector<SpectralField> fs) {
  for (auto& f : fs) f = synchronized(project_mean(std::move(f)));
  return fs;
}

std::string file_token(std::string s) {
  for (auto& c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '_';
  }
  return s;
}

// ---------------------------------------------------------------- identities

SpectralField sum3(const SpectralField& a, const SpectralField& b, const SpectralField& c) {
  return combine(1.0, combine(1.0, a, 1.0, b), 1.0, c);
}

void calculus_rows(SweepReport& rep, const ExperimentConfig& cfg, int n, double period, int fields, double tol,
                   const FamilySpec& random) {
  guarded(rep, "D^s I_nu = I_(nu-s), d=1", [&] {
    const TorusGrid grid(1, n, period);
    const auto fs = generate_family(random, grid, cfg.seed, fields);
    auto rng = stream(cfg.seed, 1);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    double err = 0.0, left = 0.0, right = 0.0;
    for (const auto& f : fs) {
      const double nu = u(rng);
      const double s = nu * u(rng);
      const auto a = apply_linear(RadialMultiplier::fractional_derivative(s),
                                  apply_linear(RadialMultiplier::riesz_potential(nu), f));
      const auto b = apply_linear(RadialMultiplier::riesz_potential(nu - s), f);
      err = std::max(err, max_abs_difference(a, b));
      left = std::max(left, max_abs(a));
      right = std::max(right, max_abs(b));
    }
    rep.add("D^s I_nu = I_(nu-s), d=1", left, right, err, tol, std::to_string(fields) + " fields, max abs error");
  });

  const TorusGrid grid2(2, n, period);
  std::vector<SpectralField> fs2;
  guarded(rep, "random fields, d=2", [&] { fs2 = generate_family(random, grid2, cfg.seed, fields); });
  if (fs2.empty()) return;
  guarded(rep, "d_j I_1 = -R_j, d=2", [&] {
    auto rng = stream(cfg.seed, 2);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    double pot = 0.0, comm = 0.0;
    for (const auto& f : fs2) {
      const double s = u(rng);
      for (int axis = 0; axis < 2; ++axis) {
        const auto dev = commutation_check(s, axis, f);
        pot = std::max(pot, dev.potential_derivative);
        comm = std::max(comm, dev.riesz_commute);
      }
    }
    rep.add("d_j I_1 = -R_j, d=2", pot, 0.0, pot, tol, "both axes, max abs error");
    rep.add("D^s R_j = R_j D^s, d=2", comm, 0.0, comm, tol, "both axes, max abs error");
  });
}

void paraproduct_rows(SweepReport& rep, const ExperimentConfig& cfg, int n, double period, int pairs, double tol,
                      const FamilySpec& random) {
  const TorusGrid grid(1, n, period);
  const LPFamily fam(grid);
  const auto fs = generate_family(random, grid, cfg.seed ^ 0x9e3779b97f4a7c15ULL, 2 * pairs);

  std::vector<std::array<double, 2>> points{{2.0, 0.0}, {1.0, 0.5}, {1.5, 1.0}};
  points = value_or(cfg.raw, "paraproduct", points);
  const auto symbols = value_or(cfg.raw, "symbols", std::vector<std::string>{"one", "ks_frac"});

  for (const auto& name : symbols) {
    for (const auto& [s, nu] : points) {
      const std::string label = "paraproduct " + name + " s=" + fmt(s) + " nu=" + fmt(nu);
      guarded(rep, label, [&] {
        // At nu = 0 the fractional symbol is identically 1; keep it on the
        // general summation path rather than the dealiased product.
        const BilinearSymbol m = name == "one"       ? BilinearSymbol::one()
                                 : name != "ks_frac" ? symbol_from_label(name)
                                 : nu > 0.0          ? ks_frac_symbol(nu)
                                                     : BilinearSymbol("ks_frac:0", 0.0, [](const FreqVec&, const FreqVec&) {
                                                         return cplx(1.0);
                                                       });
        const auto split = paraproduct_split(m, s, nu, fam);
        const auto ds = RadialMultiplier::fractional_derivative(s);
        const auto dsn = order_multiplier(s - nu);
        double err = 0.0, left = 0.0, right = 0.0;
        for (int i = 0; i < pairs; ++i) {
          const auto& f = fs[std::size_t(2 * i)];
          const auto& g = fs[std::size_t(2 * i + 1)];
          const auto df = apply_linear(dsn, f);
          const auto dg = apply_linear(dsn, g);
          const auto a = apply_linear(ds, apply_bilinear(m, f, g));
          const auto b = synchronized(sum3(apply_bilinear(split.low_high, df, g),
                                           apply_bilinear(split.high_low, f, dg),
                                           apply_bilinear(split.high_high, f, dg)));
          err = std::max(err, max_abs_difference(a, b));
          left = std::max(left, max_abs(a));
          right = std::max(right, max_abs(b));
        }
        rep.add(label, left, right, err, tol, std::to_string(pairs) + " pairs, max abs error");
      });
    }
  }

  if (value_or(cfg.raw, "aliased_probe", false)) {
    guarded(rep, "aliased input", [&] {
      std::vector<cplx> c(grid.size());
      c[std::size_t(grid.slot(n / 2 - 1))] = 1.0;
      const auto f = synchronized(SpectralField::from_frequency(grid, std::move(c)));
      const auto h = apply_bilinear(ks_frac_symbol(0.5), f, f);
      rep.add("aliased input", max_abs(h), 0.0, 0.0, 0.0, "accepted");
    });
  }
}

// ------------------------------------------------------------------ leibniz

struct LeibnizCase {
  std::string symbol = "one";
  NormMode mode = NormMode::Lebesgue;
  ExponentTuple e;

  std::string name() const {
    std::string s = symbol + " s=" + fmt(e.s);
    if (mode == NormMode::Lebesgue) return s + " (p1,p2,p)=(" + fmt(e.p1) + "," + fmt(e.p2) + "," + fmt(e.p) + ")";
    return s + " mixed (p1,q1;p2,q2;p,q)=(" + fmt(e.p1) + "," + fmt(e.q1) + ";" + fmt(e.p2) + "," + fmt(e.q2) + ";" +
           fmt(e.p) + "," + fmt(e.q) + ")";
  }
};

std::vector<LeibnizCase> default_leibniz_cases() {
  auto leb = [](std::string sym, double s, double p1, double p2) {
    LeibnizCase c;
    c.symbol = std::move(sym);
    c.e.s = s;
    c.e.p1 = c.e.q1 = p1;
    c.e.p2 = c.e.q2 = p2;
    c.e.p = c.e.q = 1.0 / (1.0 / p1 + 1.0 / p2);
    return c;
  };
  auto mixed = [](std::string sym, double s, double p1, double q1, double p2, double q2) {
    LeibnizCase c;
    c.symbol = std::move(sym);
    c.mode = NormMode::Mixed;
    c.e.s = s;
    c.e.p1 = p1;
    c.e.q1 = q1;
    c.e.p2 = p2;
    c.e.q2 = q2;
    c.e.p = 1.0 / (1.0 / p1 + 1.0 / p2);
    c.e.q = 1.0 / (1.0 / q1 + 1.0 / q2);
    return c;
  };
  return {leb("one", 2.0, 2.0, 2.0),          leb("one", 1.5, 1.5, 1.5),
          leb("ks_frac:0.5", 1.0, 2.0, 2.0),  leb("ks_frac:0.5", 1.0, 4.0, 4.0),
          leb("one", 0.5, 3.0, 6.0),          leb("cm_nu:0.5", 1.0, 2.0, 2.0),
          mixed("one", 2.0, 2.0, 1.5, 2.0, 1.5), mixed("ks_frac:0.5", 1.0, 4.0, 1.5, 4.0, 1.5),
          mixed("one", 1.0, 3.0, 3.0, 3.0, 3.0)};
}


double holder(double a, double b) { return 1.0 / (1.0 / a + 1.0 / b); }

LeibnizCase leibniz_case_from(const json& j) {
  LeibnizCase c;
  c.symbol = value_or<std::string>(j, "symbol", "one");
  const auto mode = value_or<std::string>(j, "mode", "lebesgue");
  if (mode == "mixed") {
    c.mode = NormMode::Mixed;
  } else if (mode != "lebesgue") {
    throw ConfigError("tuple mode must be 'lebesgue' or 'mixed', got '" + mode + "'");
  }
  c.e.s = value_or(j, "s", 1.0);
  c.e.p1 = value_or(j, "p1", 2.0);
  c.e.p2 = value_or(j, "p2", 2.0);
  c.e.p = value_or(j, "p", holder(c.e.p1, c.e.p2));
  if (c.mode == NormMode::Mixed) {
    c.e.q1 = value_or(j, "q1", c.e.p1);
    c.e.q2 = value_or(j, "q2", c.e.p2);
    c.e.q = value_or(j, "q", holder(c.e.q1, c.e.q2));
  } else {
    c.e.q1 = c.e.p1;
    c.e.q2 = c.e.p2;
    c.e.q = c.e.p;
  }
  return c;
}

double norm_in(NormMode mode, const SpectralField& f, double p, double q) {
  return mode == NormMode::Lebesgue ? lebesgue_norm(f, p) : mixed_norm(f, p, q);
}

struct MaxRatio {
  double ratio = 0.0, lhs = 0.0, rhs = 0.0;
};

// max over pairs of ||D^s T(f,g)|| / (||D^{s-nu} f|| ||g|| + ||f|| ||D^{s-nu} g||).
MaxRatio leibniz_max(const LeibnizCase& c, const BilinearSymbol& m, const std::vector<SpectralField>& fs, int pairs) {
  const auto& e = c.e;
  const auto ds = RadialMultiplier::fractional_derivative(e.s);
  const auto dsn = order_multiplier(e.s - m.nu());
  MaxRatio best;
  for (int i = 0; i < pairs; ++i) {
    const auto& f = fs[std::size_t(2 * i)];
    const auto& g = fs[std::size_t(2 * i + 1)];
    const double lhs = norm_in(c.mode, apply_linear(ds, apply_bilinear(m, f, g)), e.p, e.q);
    const double rhs = norm_in(c.mode, apply_linear(dsn, f), e.p1, e.q1) * norm_in(c.mode, g, e.p2, e.q2) +
                       norm_in(c.mode, f, e.p1, e.q1) * norm_in(c.mode, apply_linear(dsn, g), e.p2, e.q2);
    if (!(rhs > 0.0)) throw DegenerateInput("leibniz: vanishing right-hand side");
    if (lhs / rhs > best.ratio) best = {lhs / rhs, lhs, rhs};
  }
  return best;
}

std::vector<SpectralField> dilated(const std::vector<SpectralField>& fs, double lambda) {
  std::vector<SpectralField> out;
  for (const auto& f : fs) {
    const auto& g = f.grid();
    const TorusGrid grid(g.dim(), g.n(), g.period() / lambda);
    out.push_back(synchronized(SpectralField::from_space(grid, values_of(f))));
  }
  return out;
}

void pointwise_rows(SweepReport& rep, const ExperimentConfig& cfg, double period) {
  const auto& raw = cfg.raw;
  const double nu = value_or(raw, "pointwise_nu", 0.5);
  struct Setup {
    int dim, n, pairs;
  };
  for (const Setup& st : {Setup{1, value_or(raw, "pointwise_n1", 128), value_or(raw, "pointwise_pairs1", 4)},
                          Setup{2, value_or(raw, "pointwise_n2", 16), value_or(raw, "pointwise_pairs2", 2)}}) {
    const std::string label = "pointwise bound nu=" + fmt(nu) + " d=" + std::to_string(st.dim) +
                              " N=" + std::to_string(st.n);
    guarded(rep, label, [&] {
      const TorusGrid grid(st.dim, st.n, period);
      FamilySpec spec;
      spec.width = period / 16.0;
      const auto fs = generate_family(spec, grid, cfg.seed, 2 * st.pairs);
      double worst = 0.0, k = 0.0;
      for (int i = 0; i < st.pairs; ++i) {
        const auto b = pointwise_potential_bound(nu, fs[std::size_t(2 * i)], fs[std::size_t(2 * i + 1)]);
        worst = std::max(worst, b.max_ratio);
        k = b.constant;
      }
      rep.add(label, worst, k, worst / k, 1.0 + 1e-9, "max pointwise lhs/rhs against the sharp constant");
    });
  }
}

// ----------------------------------------------------------------- loglemma

struct LogCase {
  int dim = 1;
  double p = 2.0, q = 2.0;
};

// -------------------------------------------------------------------- decay

double cutoff_error(const CoefficientTable& full, int m_max, int samples) {
  CoefficientTable t = full;
  t.entries.clear();
  for (const auto& e : full.entries) {
    if (std::abs(e.m[0]) <= m_max && std::abs(e.m[1]) <= m_max) t.entries.push_back(e);
  }
  double err = 0.0;
  for (int i = 0; i < samples; ++i) {
    const FreqVec xi{full.c0 * (-0.5 + (i + 0.5) / samples), 0.0};
    const FreqVec zeta{xi[0] / 16.0, 0.0};
    err = std::max(err, std::abs(t.reconstruct(xi) - weighted_cutoff(full.s, zeta, full.dim)));
  }
  return err;
}

// ---------------------------------------------------------------- embedding

SpectralField radial_band(const SpectralField& f, double radius) {
  auto c = spectrum_of(f);
  const auto& grid = f.grid();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i == 0 || length(grid.frequency(i)) > radius) c[i] = cplx();
  }
  return synchronized(SpectralField::from_frequency(grid, std::move(c)));
}

double l2_energy(const SpectralField& f) {
  double e = 0.0;
  for (auto v : f.space()) e += std::norm(v);
  return e * f.grid().cell_volume();
}

// ------------------------------------------------------------------- symbol

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
}

std::vector<double> growth(const std::vector<double>& norms) {
  std::vector<double> g;
  for (std::size_t i = 1; i < norms.size(); ++i) g.push_back(norms[i] / norms[i - 1]);
  return g;
}

// Largest variation across k among bounds that are not negligible.
double class_variation(const ClassReport& r) {
  double global = 0.0, worst = 0.0;
  for (const auto& b : r.bounds) global = std::max(global, b.constant);
  for (const auto& b : r.bounds) {
    if (b.constant > 1e-9 * global) worst = std::max(worst, b.variation);
  }
  return worst;
}

}  // namespace

SweepReport run_identity_suite(const ExperimentConfig& cfg) {
  const auto& raw = cfg.raw;
  auto rep = start("identities", cfg);
  const int n = value_or(raw, "n", 128);
  const double period = value_or(raw, "period", 16.0);
  const int fields = value_or(raw, "fields", 100);
  const int pairs = value_or(raw, "pairs", 20);
  const double tol = value_or(raw, "tolerance", 1e-10);
  rep.metadata["N"] = std::to_string(n);
  rep.metadata["L"] = fmt(period);
  FamilySpec random;
  random.kind = FamilySpec::Kind::RandomBandLimited;
  random = family_from(raw, random);
  if (wants(raw, "calculus")) calculus_rows(rep, cfg, n, period, fields, tol, random);
  if (wants(raw, "paraproduct")) paraproduct_rows(rep, cfg, n, period, pairs, tol, random);
  return rep;
}

SweepReport run_leibniz_sweep(const ExperimentConfig& cfg) {
  const auto& raw = cfg.raw;
  auto rep = start("leibniz", cfg);
  const double period = value_or(raw, "period", 16.0);
  const int n1 = value_or(raw, "n_lebesgue", 256);
  const int n2 = value_or(raw, "n_mixed", 64);
  const double stability = value_or(raw, "stability", 0.2);
  const double dilation_tol = value_or(raw, "dilation_tolerance", 0.01);
  const auto lambdas = value_or(raw, "dilations", std::vector<double>{1.0, 2.0, 4.0, 8.0});
  FamilySpec spec;
  spec.width = 1.0;
  spec = family_from(raw, spec);
  const int pairs = spec.count;
  rep.metadata["N_lebesgue"] = std::to_string(n1);
  rep.metadata["N_mixed"] = std::to_string(n2);
  rep.metadata["L"] = fmt(period);
  rep.metadata["pairs"] = std::to_string(pairs);

  std::vector<LeibnizCase> cases;
  if (raw.contains("tuples")) {
    for (const auto& j : raw.at("tuples")) cases.push_back(leibniz_case_from(j));
  } else {
    cases = default_leibniz_cases();
  }
  for (auto& c : cases) {
    c.e.nu = symbol_from_label(c.symbol).nu();
    try {
      validate(c.e, c.mode, c.mode == NormMode::Lebesgue ? 1 : 2);
    } catch (const ConfigError& e) {
      throw ConfigError("tuple " + c.name() + ": " + e.what());
    }
  }

  if (wants(raw, "ratios")) {
    bool dilated_mode[2] = {false, false};
    const int members = 2 * pairs * (cfg.enlarge ? 2 : 1);
    std::vector<SpectralField> family[2];
    for (const auto& c : cases) {
      const std::string name = c.name();
      guarded(rep, name, [&] {
        const int slot = c.mode == NormMode::Lebesgue ? 0 : 1;
        const TorusGrid grid(slot + 1, slot == 0 ? n1 : n2, period);
        if (family[slot].empty()) family[slot] = generate_family(spec, grid, cfg.seed, members);
        const auto& fs = family[slot];
        const auto m = symbol_from_label(c.symbol);
        const auto base = leibniz_max(c, m, fs, pairs);
        rep.note(name + " max ratio N=" + std::to_string(grid.n()), base.lhs, base.rhs, base.ratio);
        rep.fits[name + " max ratio"] = base.ratio;
        if (cfg.refine) {
          const auto fine = leibniz_max(c, m, refined_all(std::vector<SpectralField>(fs.begin(), fs.begin() + 2 * pairs)),
                                        pairs);
          rep.add(name + " N->2N", fine.ratio, base.ratio, relative_change(fine.ratio, base.ratio), stability,
                  "relative change of the max ratio");
        }
        if (cfg.enlarge) {
          const auto big = leibniz_max(c, m, fs, 2 * pairs);
          rep.add(name + " family x2", big.ratio, base.ratio, relative_change(big.ratio, base.ratio), stability,
                  "relative change of the max ratio");
        }
        if (wants(raw, "dilation") && !dilated_mode[slot]) {
          dilated_mode[slot] = true;
          double worst = 0.0;
          for (double lambda : lambdas) {
            const auto r = leibniz_max(c, m, dilated(fs, lambda), pairs);
            worst = std::max(worst, relative_change(r.ratio, base.ratio));
          }
          rep.add(name + " dilation invariance", worst, 0.0, worst, dilation_tol,
                  "max relative change over the dilation factors");
        }
      });
    }
  }
  if (wants(raw, "pointwise")) pointwise_rows(rep, cfg, period);
  return rep;
}

SweepReport run_log_lemma_sweep(const ExperimentConfig& cfg) {
  const auto& raw = cfg.raw;
  auto rep = start("loglemma", cfg);
  const double period = value_or(raw, "period", 16.0);
  const int n1 = value_or(raw, "n_lebesgue", 256);
  const int n2 = value_or(raw, "n_mixed", 64);
  const double c0 = value_or(raw, "c0", 64.0);
  const int from = value_or(raw, "trend_from", 64);
  const int m_top = value_or(raw, "m_max", 1024);
  FamilySpec spec;
  spec.width = 1.0;
  spec = family_from(raw, spec);
  rep.metadata["N_lebesgue"] = std::to_string(n1);
  rep.metadata["N_mixed"] = std::to_string(n2);
  rep.metadata["L"] = fmt(period);
  rep.metadata["c0"] = fmt(c0);

  std::vector<LogCase> cases{{1, 1.5, 1.5}, {1, 4.0, 4.0}, {2, 3.0, 1.5}, {1, 2.0, 2.0}};
  if (raw.contains("cases")) {
    cases.clear();
    for (const auto& j : raw.at("cases")) {
      LogCase c;
      c.dim = value_or(j, "dim", 1);
      c.p = value_or(j, "p", 2.0);
      c.q = value_or(j, "q", c.p);
      if (!(c.p > 1.0) || !(c.q > 1.0) || std::isinf(c.p) || std::isinf(c.q)) {
        throw ConfigError("loglemma: exponents must lie in (1, inf)");
      }
      cases.push_back(c);
    }
  }
  std::vector<int> ms{0};
  for (int m = 1; m <= m_top; m *= 2) ms.push_back(m);

  for (const auto& c : cases) {
    const std::string name = c.dim == 1 ? "p=" + fmt(c.p) + " d=1" : "(p,q)=(" + fmt(c.p) + "," + fmt(c.q) + ") d=2";
    guarded(rep, name, [&] {
      const TorusGrid grid(c.dim, c.dim == 1 ? n1 : n2, period);
      const LPFamily fam(grid);
      const auto f = synchronized(project_mean(generate_family(spec, grid, cfg.seed, 1)[0]));
      auto norm = [&](const SpectralField& h) { return c.dim == 1 ? lebesgue_norm(h, c.p) : mixed_norm(h, c.p, c.q); };
      const double base = norm(f);
      std::vector<double> ratio;
      for (int m : ms) ratio.push_back(norm(square_function(f, fam, TranslationIndex{{m, 0}, c0})) / base);

      const double plain = norm(square_function(f, fam)) / base;
      rep.add(name + " m=0 baseline", ratio[0], plain, std::abs(ratio[0] - plain), 0.0,
              "translated and untranslated square functions agree at m=0");

      if (c.p == 2.0 && c.q == 2.0) {
        double worst = 0.0;
        for (double r : ratio) worst = std::max(worst, std::abs(r / ratio[0] - 1.0));
        rep.add(name + " constant in m", worst, 0.0, worst, 1e-12, "max relative deviation from m=0");
        return;
      }
      std::vector<double> x, y;
      for (std::size_t i = 1; i < ms.size(); ++i) {
        x.push_back(std::log1p(ms[i]));
        y.push_back(ratio[i]);
        rep.fits[name + " ratio m=" + std::to_string(ms[i])] = ratio[i];
      }
      const auto [slope, intercept] = fit_line(x, y);
      rep.fits[name + " slope vs ln(1+m)"] = slope;
      rep.fits[name + " intercept"] = intercept;
      double c_sup = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) c_sup = std::max(c_sup, y[i] / x[i]);
      rep.fits[name + " C"] = c_sup;
      for (std::size_t i = 1; i + 1 < ms.size(); ++i) {
        if (ms[i] < from) continue;
        const double a = ratio[i] / std::log1p(ms[i]);
        const double b = ratio[i + 1] / std::log1p(ms[i + 1]);
        rep.add(name + " m=" + std::to_string(ms[i + 1]) + " vs " + std::to_string(ms[i]), b, a, b / a, 1.0,
                "ratio/ln(1+m) must not increase");
      }
    });
  }
  return rep;
}

SweepReport run_coefficient_decay(const ExperimentConfig& cfg) {
  const auto& raw = cfg.raw;
  auto rep = start("decay", cfg);
  const double c0 = value_or(raw, "c0", 64.0);
  const int m_max = value_or(raw, "m_max", 512);
  const double slack = value_or(raw, "slack", 0.3);
  const auto ss = value_or(raw, "s", std::vector<double>{0.5, 1.5});
  const auto cuts = value_or(raw, "reconstruction_cuts", std::vector<int>{64, 128, 256, 512});
  const int samples = value_or(raw, "reconstruction_samples", 1000);
  rep.metadata["c0"] = fmt(c0);
  rep.metadata["m_max"] = std::to_string(m_max);
  const TorusGrid grid(1, 64, 16.0);
  const LPFamily fam(grid);

  for (double s : ss) {
    const std::string name = "s=" + fmt(s);
    guarded(rep, name, [&] {
      const auto table = fourier_coefficients(s, c0, m_max, fam);
      std::vector<double> x, y;
      for (int m = 1; m <= m_max; ++m) {
        const double c = table.magnitude_at(m);
        if (c == 0.0) continue;
        x.push_back(std::log1p(m));
        y.push_back(std::log(c));
      }
      const auto [slope, intercept] = fit_line(x, y);
      rep.fits[name + " slope"] = slope;
      rep.fits[name + " intercept"] = intercept;
      rep.add(name + " decay slope", slope, -(s + 1.0), slope, -(s + 1.0) + slack,
              "log|C_m| against log(1+|m|), 1 <= |m| <= " + std::to_string(m_max));
      for (int cut : cuts) {
        if (cut > m_max) continue;
        const double err = cutoff_error(table, cut, samples);
        rep.fits[name + " reconstruction error M=" + std::to_string(cut)] = err;
        rep.note(name + " reconstruction M=" + std::to_string(cut), err, 0.0, err, "sup error of the partial sum");
      }
    });
  }
  if (wants(raw, "symmetry")) {
    guarded(rep, "s=0 even real coefficients", [&] {
      const auto table = fourier_coefficients(0.0, c0, std::min(m_max, 128), fam);
      double worst = 0.0, peak = 0.0;
      for (const auto& e : table.entries) {
        peak = std::max(peak, std::abs(e.value));
        worst = std::max(worst, std::abs(e.value.imag()));
        for (const auto& o : table.entries) {
          if (o.m[0] == -e.m[0] && o.m[1] == -e.m[1]) worst = std::max(worst, std::abs(o.value - e.value));
        }
      }
      rep.add("s=0 even real coefficients", worst, peak, worst / peak, 1e-12,
              "max of |Im C_m| and |C_m - C_-m| relative to max |C_m|");
    });
  }
  return rep;
}

SweepReport run_embedding_suite(const ExperimentConfig& cfg) {
  const auto& raw = cfg.raw;
  auto rep = start("embedding", cfg);
  const int n = value_or(raw, "n", 64);
  const double period = value_or(raw, "period", 16.0);
  const double stability = value_or(raw, "stability", 0.2);
  const double tol = value_or(raw, "tolerance", 1e-8);
  rep.metadata["N"] = std::to_string(n);
  rep.metadata["L"] = fmt(period);
  const TorusGrid grid(2, n, period);
  const LPFamily fam(grid);

  if (wants(raw, "frame")) {
    guarded(rep, "frame", [&] {
      const LPFamily gen(grid, LPFamily::Normalization::Energy);
      const double cover = std::ldexp(1.0, finest_cube_scale(grid));
      FamilySpec random;
      random.kind = FamilySpec::Kind::RandomBandLimited;
      const int count = value_or(raw, "frame_fields", 50);
      double frame = 0.0, recon = 0.0, homog = 0.0;
      std::vector<SpectralField> fs;
      for (const auto& f : generate_family(random, grid, cfg.seed, count)) {
        const auto h = radial_band(f, cover);
        const auto tree = analyze(h, gen);
        const double e = l2_energy(h);
        frame = std::max(frame, std::abs(tree.energy() - e) / e);
        recon = std::max(recon, max_abs_difference(synthesize(tree), h));
        const auto s1 = discrete_square_function(tree);
        const auto s2 = discrete_square_function(tree.scaled(cplx(-1.5, 2.0)));
        homog = std::max(homog, max_abs_difference(s2, combine(2.5, s1, 0.0, s1)) / std::max(max_abs(s2), 1e-300));
        fs.push_back(h);
      }
      rep.add("frame identity", frame, 0.0, frame, tol, "max relative error of the coefficient energy");
      rep.add("reconstruction", recon, 0.0, recon, tol, "max sup error of synthesize(analyze(f))");
      rep.add("discrete square function homogeneity", homog, 0.0, homog, 1e-12, "scaling by |c| = 2.5");
      for (const auto& [p, q] : {std::pair{2.0, 2.0}, std::pair{1.5, 3.0}}) {
        double lo = INFINITY, hi = 0.0;
        for (const auto& h : fs) {
          const double r = mixed_norm(discrete_square_function(analyze(h, gen)), p, q) / hardy_mixed_norm(h, p, q, fam);
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
        rep.note("discrete vs continuous square function (p,q)=(" + fmt(p) + "," + fmt(q) + ")", hi, lo, hi / lo,
                 "lhs = max, rhs = min of the norm ratio");
      }
    });
  }

  FamilySpec bumps;
  bumps.kind = FamilySpec::Kind::BumpTensor;
  bumps.width = 2.0;
  bumps.modulation = 3.0;
  bumps = family_from(raw, bumps);

  if (wants(raw, "embedding")) {
    std::vector<std::array<double, 2>> cases{{0.75, 2.0}, {2.0, 0.75}, {1.5, 3.0}, {2.0, 2.0}};
    cases = value_or(raw, "cases", cases);
    std::vector<SpectralField> fs, fine;
    guarded(rep, "embedding family", [&] {
      fs = mean_projected(generate_family(bumps, grid, cfg.seed, bumps.count));
      if (cfg.refine) fine = refined_all(fs);
    });
    for (const auto& [p, q] : cases) {
      const std::string name = "embedding (p,q)=(" + fmt(p) + "," + fmt(q) + ")";
      if (fs.empty()) break;
      guarded(rep, name, [&] {
        auto scan = [&](const std::vector<SpectralField>& family) {
          const LPFamily lp(family.front().grid());
          std::pair<double, double> out{0.0, 0.0};  // max ratio, max inverse ratio
          for (const auto& f : family) {
            const double r = embedding_ratio(f, p, q, lp);
            out.first = std::max(out.first, r);
            out.second = std::max(out.second, 1.0 / r);
          }
          return out;
        };
        const auto [hi, inverse] = scan(fs);
        rep.fits[name + " max ratio"] = hi;
        rep.note(name + " max mixed/Hardy", hi, 0.0, hi);
        rep.note(name + " max Hardy/mixed", inverse, 0.0, inverse, "converse direction, not asserted");
        if (cfg.refine) {
          const double again = scan(fine).first;
          rep.add(name + " N->2N", again, hi, relative_change(again, hi), stability,
                  "relative change of the max ratio");
        }
      });
    }
  }

  if (wants(raw, "fefferman_stein")) {
    const double p = value_or(raw, "fs_p", 2.0), q = value_or(raw, "fs_q", 3.0), r = value_or(raw, "fs_r", 2.0);
    const int count = value_or(raw, "fs_fields", 16);
    const std::string name = "vector maximal (p,q,r)=(" + fmt(p) + "," + fmt(q) + "," + fmt(r) + ")";
    guarded(rep, name, [&] {
      FamilySpec g;
      g.modulation = 2.0;
      const auto fs = generate_family(g, grid, cfg.seed, count);
      const double base = fefferman_stein_check(fs, p, q, r);
      rep.fits[name + " ratio"] = base;
      rep.note(name + " ratio N=" + std::to_string(n), base, 0.0, base, std::to_string(count) + " fields");
      if (cfg.refine) {
        const double again = fefferman_stein_check(refined_all(fs), p, q, r);
        rep.add(name + " N->2N", again, base, relative_change(again, base), stability,
                "relative change of the ratio");
      }
    });
  }
  return rep;
}

SweepReport run_symbol_report(const ExperimentConfig& cfg) {
  const auto& raw = cfg.raw;
  auto rep = start("symbol", cfg);
  const double tol = value_or(raw, "tolerance", 1e-13);

  if (wants(raw, "invariance")) {
    const auto labels = value_or(raw, "symbols", std::vector<std::string>{"ks_frac:0.5", "cm_nu:0.5"});
    const double r = value_or(raw, "r", 1.0);
    const int k_lo = value_or(raw, "k_lo", -3), k_hi = value_or(raw, "k_hi", 3);
    const int dim = value_or(raw, "dim", 1);
    const int res = value_or(raw, "res", 0);
    for (const auto& label : labels) {
      const std::string name = "k-invariance " + label;
      guarded(rep, name, [&] {
        const auto m = symbol_from_label(label);
        const auto score = regularity_score(m, m.nu(), r, k_lo, k_hi, dim, res, 0);
        rep.attachments["regularity_" + file_token(label) + ".json"] = score.to_json();
        rep.fits[name + " sup"] = score.sup;
        const double sp = spread(score.norms);
        rep.add(name, score.sup, *std::min_element(score.norms.begin(), score.norms.end()), sp, tol,
                "relative spread of the piece norms over k");
      });
    }
  }

  if (wants(raw, "rough")) {
    const int res = value_or(raw, "rough_res", 64);
    const int steps = value_or(raw, "rough_refinements", 3);
    const double r = value_or(raw, "rough_r", 2.0);
    const BilinearSymbol rough("sign(xi_1)", 0.0, [](const FreqVec& xi, const FreqVec&) {
      return cplx(xi[0] > 0.0 ? 1.0 : xi[0] < 0.0 ? -1.0 : 0.0);
    });
    for (const auto& m : {rough, BilinearSymbol::one()}) {
      const bool expect_divergent = m.label() == rough.label();
      const std::string name = (expect_divergent ? "rough divergence " : "smooth control ") + m.label();
      guarded(rep, name, [&] {
        const auto score = regularity_score(m, 0.0, r, 0, 0, 1, res, steps);
        rep.attachments["regularity_" + file_token(m.label()) + ".json"] = score.to_json();
        const auto g = growth(score.refinement_norms);
        if (g.size() < 2) throw DegenerateInput("refinement scan needs two doublings");
        if (expect_divergent) {
          const double weakest = std::min(g[g.size() - 1], g[g.size() - 2]);
          rep.add(name, score.refinement_norms.back(), score.refinement_norms.front(), 2.0 / weakest, 1.0,
                  score.divergent ? "divergent" : "not divergent");
        } else {
          const double strongest = *std::max_element(g.begin(), g.end());
          rep.add(name, score.refinement_norms.back(), score.refinement_norms.front(), strongest, 2.0,
                  score.divergent ? "divergent" : "not divergent");
        }
      });
    }
  }

  if (wants(raw, "class")) {
    const double nu = value_or(raw, "class_nu", 0.5);
    const int order = value_or(raw, "class_order", 2);
    const std::vector<int> ks{-2, -1, 0, 1, 2, 3, 4};
    const AnnulusWindow w{1};
    const SymbolFamily typical = [nu, w](int k, const FreqVec& xi, const FreqVec& eta) {
      const double s = std::ldexp(1.0, -k);
      return std::pow(norm2(xi) + norm2(eta), 0.5 * nu) * w({s * xi[0], 0.0}, {s * eta[0], 0.0});
    };
    const SymbolFamily broken = [typical](int k, const FreqVec& xi, const FreqVec& eta) {
      return std::ldexp(typical(k, xi, eta), k);
    };
    guarded(rep, "class bounds, homogeneous family", [&] {
      const double v = class_variation(class_mnu_check(typical, nu, order, 1, ks));
      rep.add("class bounds, homogeneous family", v, 0.0, v, 0.2, "max variation of the derivative bounds over k");
    });
    guarded(rep, "class bounds, scale-dependent family detected", [&] {
      const double v = class_variation(class_mnu_check(broken, nu, order, 1, ks));
      rep.add("class bounds, scale-dependent family detected", v, 0.2, 0.2 / v, 1.0,
              "variation must reach 0.2");
    });
  }

  if (wants(raw, "domination")) {
    const auto label = value_or<std::string>(raw, "domination_symbol", "ks_frac:0.5");
    const int n = value_or(raw, "n", 256);
    const double period = value_or(raw, "period", 16.0);
    const int pairs = value_or(raw, "domination_pairs", 4);
    const int res = value_or(raw, "domination_res", 64);
    const double l = value_or(raw, "l", 1.5), r = value_or(raw, "domination_r", 1.0);
    const double stability = value_or(raw, "stability", 0.2);
    const std::string name = "domination " + label;
    guarded(rep, name, [&] {
      const auto m = symbol_from_label(label);
      const AnnulusWindow w{1};
      const auto sigma = rescaled_piece(m, m.nu(), 0, w, res);
      FamilySpec spec;
      spec.width = 1.0;
      spec.modulation = 2.0;
      const TorusGrid grid(1, n, period);
      const auto fs = generate_family(spec, grid, cfg.seed, 2 * pairs);
      auto sweep = [&](const std::vector<SpectralField>& family, const RescaledPiece& piece, bool raw_sup) {
        std::vector<double> per_j;
        for (int j = -2; j <= 4; ++j) {
          double worst = 0.0;
          for (int i = 0; i < pairs; ++i) {
            const auto d = maximal_domination_check(piece, family[std::size_t(2 * i)],
                                                    family[std::size_t(2 * i + 1)], j, l, r);
            worst = std::max(worst, raw_sup ? d.raw_sup : d.sup_ratio);
          }
          per_j.push_back(worst);
        }
        return per_j;
      };
      const auto per_j = sweep(fs, sigma, false);
      for (int j = -2; j <= 4; ++j) rep.fits[name + " j=" + std::to_string(j)] = per_j[std::size_t(j + 2)];
      const double top = *std::max_element(per_j.begin(), per_j.end());
      rep.note(name + " max over j", top, *std::min_element(per_j.begin(), per_j.end()), top,
               "lhs = max, rhs = min over j in -2..4");
      if (cfg.refine) {
        const auto again = sweep(refined_all(fs), sigma, false);
        const double top2 = *std::max_element(again.begin(), again.end());
        rep.add(name + " N->2N", top2, top, relative_change(top2, top), stability,
                "relative change of the max over j");
      }
      if (wants(raw, "sharp")) {
        const auto rule = m;
        const auto sharp = tabulate_piece(
            [rule](const FreqVec& xi, const FreqVec& eta) {
              const double v = std::sqrt(norm2(xi) + norm2(eta));
              return v >= 0.5 && v <= 2.0 ? rule(xi, eta) : cplx();
            },
            1, res);
        const auto smooth_raw = sweep(fs, sigma, true);
        const auto sharp_raw = sweep(fs, sharp, true);
        const double a = *std::max_element(smooth_raw.begin(), smooth_raw.end());
        const double b = *std::max_element(sharp_raw.begin(), sharp_raw.end());
        rep.note(name + " sharp vs smooth window", b, a, b / a, "raw sup without the symbol norm");
        rep.note(name + " sharp window norm", product_sobolev_norm(sharp, r, r), product_sobolev_norm(sigma, r, r),
                 product_sobolev_norm(sharp, r, r) / product_sobolev_norm(sigma, r, r));
      }
    });
  }
  return rep;
}

}  // namespace bilap
