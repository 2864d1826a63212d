#include "bilap/operators.hpp"

#include <algorithm>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "bilap/errors.hpp"

namespace bilap {
namespace {

struct Mode {
  std::array<int, 2> k;
  FreqVec xi;
  cplx c;
};

std::vector<Mode> support_of(const SpectralField& f) {
  const auto& grid = f.grid();
  auto c = spectrum_of(f);
  std::vector<Mode> modes;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == cplx()) continue;
    modes.push_back({grid.wavenumbers(i), grid.frequency(i), c[i]});
  }
  return modes;
}

double parse_number(const std::string& text, const std::string& label) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) throw ConfigError("symbol label '" + label + "': bad number");
  return v;
}

std::string format_order(double nu) {
  std::ostringstream out;
  out << nu;
  return out.str();
}

}  // namespace

RadialMultiplier RadialMultiplier::fractional_derivative(double s) {
  return {Kind::FractionalDerivative, s, 0, ZeroModeRule::Zero};
}

RadialMultiplier RadialMultiplier::riesz_potential(double nu) {
  if (!(nu > 0.0)) throw DomainError("riesz_potential: nu must be positive");
  return {Kind::RieszPotential, nu, 0, ZeroModeRule::Zero};
}

RadialMultiplier RadialMultiplier::inhomogeneous(double s) {
  return {Kind::Inhomogeneous, s, 0, ZeroModeRule::Keep};
}

RadialMultiplier RadialMultiplier::riesz_transform(int axis) {
  if (axis < 0 || axis > 1) throw DomainError("riesz_transform: axis must be 0 or 1");
  return {Kind::RieszTransform, 0.0, axis, ZeroModeRule::Zero};
}

RadialMultiplier RadialMultiplier::derivative(int axis) {
  if (axis < 0 || axis > 1) throw DomainError("derivative: axis must be 0 or 1");
  return {Kind::Derivative, 1.0, axis, ZeroModeRule::Keep};
}

cplx RadialMultiplier::value(const FreqVec& xi) const {
  const double r = length(xi);
  switch (kind) {
    case Kind::FractionalDerivative: return std::pow(r, order);
    case Kind::RieszPotential: return std::pow(r, -order);
    case Kind::Inhomogeneous: return std::pow(1.0 + r * r, 0.5 * order);
    case Kind::RieszTransform: return cplx(0.0, -xi[axis] / r);
    case Kind::Derivative: return cplx(0.0, xi[axis]);
  }
  return 0.0;
}

SpectralField apply_linear(const RadialMultiplier& mult, const SpectralField& f) {
  const auto& grid = f.grid();
  if (mult.kind == RadialMultiplier::Kind::RieszPotential && !(mult.order < grid.dim())) {
    throw DomainError("riesz_potential: nu must lie in (0, d)");
  }
  if ((mult.kind == RadialMultiplier::Kind::RieszTransform || mult.kind == RadialMultiplier::Kind::Derivative) &&
      mult.axis >= grid.dim()) {
    throw DomainError("apply_linear: axis exceeds grid dimension");
  }
  auto c = spectrum_of(f);
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] != cplx()) c[i] *= mult.value(grid.frequency(i));
  }
  if (mult.zero_mode == ZeroModeRule::Zero) c[0] = cplx();
  return synchronized(SpectralField::from_frequency(grid, std::move(c)));
}

BilinearSymbol::BilinearSymbol(std::string label, double nu, Rule rule, std::optional<cplx> origin)
    : label_(std::move(label)), nu_(nu), rule_(std::move(rule)), origin_(origin) {
  if (!(nu >= 0.0 && nu < 4.0)) throw DomainError("BilinearSymbol '" + label_ + "': nu must lie in [0, 4)");
  if (!origin_ && nu_ > 0.0) origin_ = cplx();
}

cplx BilinearSymbol::operator()(const FreqVec& xi, const FreqVec& eta) const {
  if (origin_ && norm2(xi) == 0.0 && norm2(eta) == 0.0) return *origin_;
  return rule_(xi, eta);
}

BilinearSymbol BilinearSymbol::one() {
  BilinearSymbol m("one", 0.0, [](const FreqVec&, const FreqVec&) { return cplx(1.0); });
  m.unit_ = true;
  return m;
}

BilinearSymbol ks_frac_symbol(double nu) {
  if (!(nu > 0.0)) throw DomainError("ks_frac: nu must be positive");
  return BilinearSymbol("ks_frac:" + format_order(nu), nu, [nu](const FreqVec& xi, const FreqVec& eta) {
    return cplx(std::pow(norm2(xi) + norm2(eta), -0.5 * nu));
  });
}

BilinearSymbol cm_nu_symbol(double nu) {
  return BilinearSymbol("cm_nu:" + format_order(nu), nu, [nu](const FreqVec& xi, const FreqVec& eta) {
    const double a = norm2(xi);
    if (a == 0.0) return cplx();
    return cplx(a * std::pow(a + norm2(eta), -1.0 - 0.5 * nu));
  });
}

BilinearSymbol table_symbol(const std::string& path, double nu) {
  auto field = read_field(path);
  const auto& tg = field.grid();
  if (tg.dim() != 2) throw IoError(path + ": symbol table must be two-dimensional");
  auto values = values_of(field);
  const int n = tg.n();
  const double to_k = tg.period() / (2.0 * std::numbers::pi);
  auto lookup = [values = std::move(values), n, to_k, path](const FreqVec& xi, const FreqVec& eta) {
    auto index = [&](double w) {
      const double kr = w * to_k;
      const long k = std::lround(kr);
      if (std::abs(kr - double(k)) > 1e-6 || k < -n / 2 || k >= n / 2) {
        throw DomainError(path + ": frequency off the table lattice");
      }
      return int(k >= 0 ? k : k + n);
    };
    if (xi[1] != 0.0 || eta[1] != 0.0) throw DimensionError(path + ": tabulated symbols are one-dimensional");
    return values[std::size_t(index(xi[0])) * std::size_t(n) + std::size_t(index(eta[0]))];
  };
  return BilinearSymbol("table:" + path, nu, std::move(lookup), nu > 0.0 ? std::optional<cplx>() : values_of(field)[0]);
}

BilinearSymbol symbol_from_label(const std::string& label) {
  if (label == "one") return BilinearSymbol::one();
  auto colon = label.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown symbol label '" + label + "'");
  const std::string head = label.substr(0, colon);
  const std::string rest = label.substr(colon + 1);
  if (head == "ks_frac") return ks_frac_symbol(parse_number(rest, label));
  if (head == "cm_nu") return cm_nu_symbol(parse_number(rest, label));
  if (head == "table") {
    auto at = rest.rfind('@');
    if (at == std::string::npos) return table_symbol(rest);
    return table_symbol(rest.substr(0, at), parse_number(rest.substr(at + 1), label));
  }
  throw ConfigError("unknown symbol label '" + label + "'");
}

double size_constant(const BilinearSymbol& m, const TorusGrid& grid) {
  double c = 0.0;
  for (std::size_t a = 0; a < grid.size(); ++a) {
    const FreqVec xi = grid.frequency(a);
    for (std::size_t b = 0; b < grid.size(); ++b) {
      if (a == 0 && b == 0) continue;
      const FreqVec eta = grid.frequency(b);
      const double scale = std::pow(length(xi) + length(eta), -m.nu());
      c = std::max(c, std::abs(m(xi, eta)) / scale);
    }
  }
  return c;
}

SpectralField apply_bilinear(const BilinearSymbol& m, const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw DimensionError("apply_bilinear: fields live on different grids");
  const auto& grid = f.grid();
  if (!(m.nu() < 2.0 * grid.dim())) throw DomainError("apply_bilinear: symbol order exceeds 2d");
  if (m.is_unit()) return dealiased_product(f, g);
  require_band_limited(f, "apply_bilinear");
  require_band_limited(g, "apply_bilinear");

  const auto fs = support_of(f);
  const auto gs = support_of(g);
  std::vector<cplx> out(grid.size());
  for (const auto& a : fs) {
    for (const auto& b : gs) {
      const int z0 = a.k[0] + b.k[0];
      const int z1 = a.k[1] + b.k[1];
      if (!grid.representable(z0) || !grid.representable(z1)) continue;
      out[grid.flat(grid.slot(z0), grid.dim() == 1 ? 0 : grid.slot(z1))] += m(a.xi, b.xi) * a.c * b.c;
    }
  }
  return synchronized(SpectralField::from_frequency(grid, std::move(out)));
}

SpectralField bilinear_fractional(double nu, const SpectralField& f, const SpectralField& g) {
  if (!(nu > 0.0 && nu < 2.0 * f.grid().dim())) throw DomainError("bilinear_fractional: nu must lie in (0, 2d)");
  return apply_bilinear(ks_frac_symbol(nu), f, g);
}

CommutationDeviation commutation_check(double s, int axis, const SpectralField& f) {
  if (f.grid().dim() < 2) throw DomainError("commutation_check: Riesz transforms need d >= 2");
  const auto ds = RadialMultiplier::fractional_derivative(s);
  const auto rj = RadialMultiplier::riesz_transform(axis);
  CommutationDeviation dev;
  dev.riesz_commute = max_abs_difference(apply_linear(ds, apply_linear(rj, f)), apply_linear(rj, apply_linear(ds, f)));
  const auto dj_i1 = apply_linear(RadialMultiplier::derivative(axis),
                                  apply_linear(RadialMultiplier::riesz_potential(1.0), f));
  dev.potential_derivative = max_abs(combine(1.0, dj_i1, 1.0, apply_linear(rj, f)));
  return dev;
}

}  // namespace bilap
