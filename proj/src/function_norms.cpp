#include "bilap/function_norms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bilap/errors.hpp"
#include "bilap/operators.hpp"

namespace bilap {
namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

bool holder(double total, double a, double b) {
  return std::abs(1.0 / total - (1.0 / a + 1.0 / b)) <= 1e-12 * (1.0 / total);
}

std::string describe(const ExponentTuple& e) {
  std::ostringstream out;
  out << "(p=" << e.p << ", q=" << e.q << ", p1=" << e.p1 << ", q1=" << e.q1 << ", p2=" << e.p2
      << ", q2=" << e.q2 << ", s=" << e.s << ", nu=" << e.nu << ")";
  return out.str();
}

std::vector<double> moduli(const SpectralField& f) {
  auto v = values_of(f);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]);
  return out;
}

double lebesgue_of(const std::vector<double>& a, double cell, double p) {
  double sum = 0.0;
  for (double x : a) sum += std::pow(x, p);
  return std::pow(sum * cell, 1.0 / p);
}

double mixed_of(const std::vector<double>& a, int n, double h, double p, double q) {
  double outer = 0.0;
  for (int t = 0; t < n; ++t) {
    double inner = 0.0;
    for (int x = 0; x < n; ++x) inner += std::pow(a[std::size_t(t) * n + x], q);
    outer += std::pow(inner * h, p / q);
  }
  return std::pow(outer * h, 1.0 / p);
}

// Periodic sums of `a` over windows of `width` consecutive entries centred
// on each index, along one axis of an n x rows array.
void box_sum_axis(std::vector<double>& a, int n, int dim, int axis, int half) {
  const std::size_t lines = dim == 1 ? 1 : std::size_t(n);
  // Three periods: windows start at i - half + n >= n/2 and end below 5n/2.
  std::vector<double> prefix(3 * std::size_t(n) + 1);
  auto at = [&](std::size_t line, int i) -> double& {
    if (dim == 1) return a[std::size_t(i)];
    return axis == 0 ? a[std::size_t(i) * n + line] : a[line * n + std::size_t(i)];
  };
  for (std::size_t line = 0; line < lines; ++line) {
    prefix[0] = 0.0;
    for (int i = 0; i < 3 * n; ++i) prefix[std::size_t(i) + 1] = prefix[std::size_t(i)] + at(line, i % n);
    for (int i = 0; i < n; ++i) {
      // indices i-half .. i+half, shifted by n to stay nonnegative
      const int lo = i - half + n;
      at(line, i) = prefix[std::size_t(lo + 2 * half + 1)] - prefix[std::size_t(lo)];
    }
  }
}

}  // namespace

bool passes_s_gate(const ExponentTuple& e, NormMode mode, int dim) {
  const double s = e.s;
  if (s > 0.0 && std::fmod(s, 2.0) == 0.0) return true;
  double gate = std::max(0.0, dim / e.p - dim);
  if (mode == NormMode::Mixed) gate = std::max(gate, dim / e.q - dim);
  return s > gate;
}

void validate(const ExponentTuple& e, NormMode mode, int dim) {
  const std::string where = describe(e);
  if (!positive_finite(e.p) || !positive_finite(e.p1) || !positive_finite(e.p2)) {
    throw ConfigError("exponents " + where + ": p, p1, p2 must be positive and finite");
  }
  if (!holder(e.p, e.p1, e.p2)) throw ConfigError("exponents " + where + ": 1/p != 1/p1 + 1/p2");
  if (mode == NormMode::Mixed) {
    if (!positive_finite(e.q) || !positive_finite(e.q1) || !positive_finite(e.q2)) {
      throw ConfigError("exponents " + where + ": q, q1, q2 must be positive and finite");
    }
    if (!holder(e.q, e.q1, e.q2)) throw ConfigError("exponents " + where + ": 1/q != 1/q1 + 1/q2");
  }
  if (!(e.nu >= 0.0 && e.nu < 2.0 * dim)) throw ConfigError("exponents " + where + ": nu outside [0, 2d)");
  if (!passes_s_gate(e, mode, dim)) throw ConfigError("exponents " + where + ": s fails the gate");
}

double lebesgue_norm(const SpectralField& f, double p) {
  if (!(p > 0.0)) throw DomainError("lebesgue_norm: p must be positive");
  return lebesgue_of(moduli(f), f.grid().cell_volume(), p);
}

double mixed_norm(const SpectralField& f, double p, double q) {
  const auto& g = f.grid();
  if (g.dim() != 2) throw DimensionError("mixed_norm: needs a two-dimensional grid");
  if (!(p > 0.0 && q > 0.0)) throw DomainError("mixed_norm: exponents must be positive");
  return mixed_of(moduli(f), g.n(), g.spacing(), p, q);
}

double hom_sobolev_norm(const SpectralField& f, double s, double p) {
  return lebesgue_norm(apply_linear(RadialMultiplier::fractional_derivative(s), f), p);
}

double besov_norm(const SpectralField& f, double s, double p, double q, const LPFamily& fam) {
  double sum = 0.0;
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    sum += std::pow(std::pow(2.0, s * j) * lebesgue_norm(lp_piece(f, j, fam), p), q);
  }
  return std::pow(sum, 1.0 / q);
}

double triebel_lizorkin_norm(const SpectralField& f, double s, double p, double q, const LPFamily& fam) {
  const auto& g = f.grid();
  std::vector<double> acc(g.size(), 0.0);
  for (int j = fam.j_min(); j <= fam.j_max(); ++j) {
    const auto piece = lp_piece(f, j, fam);
    const double w = std::pow(2.0, s * j);
    auto v = piece.space();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::pow(w * std::abs(v[i]), q);
  }
  for (auto& x : acc) x = std::pow(x, 1.0 / q);
  return lebesgue_of(acc, g.cell_volume(), p);
}

double hardy_mixed_norm(const SpectralField& f, double p, double q, const LPFamily& fam) {
  if (f.grid().dim() != 2) throw DimensionError("hardy_mixed_norm: needs a two-dimensional grid");
  return mixed_norm(square_function(f, fam), p, q);
}

SpectralField maximal_function(const SpectralField& f) {
  const auto& g = f.grid();
  const int n = g.n();
  const auto base = moduli(f);
  std::vector<double> best = base;
  for (int half = 1; half < n / 2; half = 2 * half + 1) {
    // half = 2^r - 1 cells on each side
    auto box = base;
    for (int axis = 0; axis < g.dim(); ++axis) box_sum_axis(box, n, g.dim(), axis, half);
    const double count = std::pow(2.0 * half + 1.0, g.dim());
    for (std::size_t i = 0; i < box.size(); ++i) best[i] = std::max(best[i], box[i] / count);
  }
  std::vector<cplx> out(best.begin(), best.end());
  return SpectralField::from_space(g, std::move(out));
}

double fefferman_stein_check(const std::vector<SpectralField>& fs, double p, double q, double r) {
  auto open = [](double x) { return x > 1.0 && std::isfinite(x); };
  if (!open(p) || !open(q) || !open(r)) throw DomainError("fefferman_stein_check: exponents must lie in (1, inf)");
  if (fs.empty()) throw DegenerateInput("fefferman_stein_check: empty vector");
  const auto& g = fs.front().grid();
  if (g.dim() != 2) throw DimensionError("fefferman_stein_check: needs a two-dimensional grid");
  std::vector<double> top(g.size(), 0.0), bottom(g.size(), 0.0);
  for (const auto& f : fs) {
    if (!(f.grid() == g)) throw DimensionError("fefferman_stein_check: fields live on different grids");
    auto mf = values_of(maximal_function(f));
    auto a = moduli(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
      top[i] += std::pow(mf[i].real(), r);
      bottom[i] += std::pow(a[i], r);
    }
  }
  for (auto& x : top) x = std::pow(x, 1.0 / r);
  for (auto& x : bottom) x = std::pow(x, 1.0 / r);
  const double den = mixed_of(bottom, g.n(), g.spacing(), p, q);
  if (!(den > 0.0)) throw DegenerateInput("fefferman_stein_check: zero denominator");
  return mixed_of(top, g.n(), g.spacing(), p, q) / den;
}

NormKind::Kind norm_kind_from_name(const std::string& name) {
  using K = NormKind::Kind;
  if (name == "lebesgue") return K::Lebesgue;
  if (name == "mixed") return K::Mixed;
  if (name == "hom_sobolev") return K::HomSobolev;
  if (name == "besov") return K::Besov;
  if (name == "triebel_lizorkin") return K::TriebelLizorkin;
  if (name == "hardy_mixed") return K::HardyMixed;
  throw ConfigError("unknown norm kind '" + name + "'");
}

double evaluate_norm(const NormKind& k, const SpectralField& f, const LPFamily& fam) {
  using K = NormKind::Kind;
  switch (k.kind) {
    case K::Lebesgue: return lebesgue_norm(f, k.p);
    case K::Mixed: return mixed_norm(f, k.p, k.q);
    case K::HomSobolev: return hom_sobolev_norm(f, k.s, k.p);
    case K::Besov: return besov_norm(f, k.s, k.p, k.q, fam);
    case K::TriebelLizorkin: return triebel_lizorkin_norm(f, k.s, k.p, k.q, fam);
    case K::HardyMixed: return hardy_mixed_norm(f, k.p, k.q, fam);
  }
  return 0.0;
}

}  // namespace bilap
