#include <random>

#include "bilap/errors.hpp"
#include "bilap/lab.hpp"

namespace bilap {
namespace {

double wrapped(double x, double period) {
  x = std::fmod(x, period);
  if (x >= 0.5 * period) x -= period;
  if (x < -0.5 * period) x += period;
  return x;
}

SpectralField finish(const TorusGrid& grid, std::vector<cplx> space) {
  auto c = spectrum_of(SpectralField::from_space(grid, std::move(space)));
  const int kmax = (grid.n() - 1) / 3;
  double peak = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto k = grid.wavenumbers(i);
    if (std::abs(k[0]) > kmax || std::abs(k[1]) > kmax) c[i] = cplx();
    peak = std::max(peak, std::abs(c[i]));
  }
  for (auto& v : c) {
    if (std::abs(v) < 1e-15 * peak) v = cplx();
  }
  return synchronized(SpectralField::from_frequency(grid, std::move(c)));
}

}  // namespace

FamilySpec::Kind family_kind_from_name(const std::string& name) {
  if (name == "gaussian") return FamilySpec::Kind::Gaussian;
  if (name == "bump_tensor") return FamilySpec::Kind::BumpTensor;
  if (name == "random_band_limited") return FamilySpec::Kind::RandomBandLimited;
  if (name == "mode_pair") return FamilySpec::Kind::ModePair;
  throw ConfigError("unknown family kind '" + name + "'");
}

std::vector<SpectralField> generate_family(const FamilySpec& spec, const TorusGrid& grid, std::uint64_t seed,
                                           int members) {
  if (members < 0) throw ConfigError("family: negative member count");
  const double period = grid.period();
  const int d = grid.dim();
  const double width = spec.width > 0.0 ? spec.width : period / 16.0;
  std::vector<SpectralField> out;
  out.reserve(std::size_t(members));
  for (int i = 0; i < members; ++i) {
    // One stream per member so enlarging a family keeps its prefix.
    std::seed_seq sequence{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(i), 0x6a09e667u};
    std::mt19937_64 rng(sequence);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<cplx> v(grid.size());

    switch (spec.kind) {
      case FamilySpec::Kind::Gaussian:
      case FamilySpec::Kind::BumpTensor: {
        const double w = width * (1.0 - spec.width_spread * 0.5 * (1.0 + unit(rng)));
        FreqVec centre{0.5 * period, d == 1 ? 0.0 : 0.5 * period};
        FreqVec mod{};
        for (int a = 0; a < d; ++a) centre[a] += spec.centre_spread * period * unit(rng);
        for (int a = 0; a < d; ++a) mod[a] = spec.modulation * unit(rng);
        for (std::size_t p = 0; p < v.size(); ++p) {
          const FreqVec x = grid.position(p);
          double phase = 0.0, value = 1.0;
          for (int a = 0; a < d; ++a) {
            const double u = wrapped(x[a] - centre[a], period);
            phase += mod[a] * u;
            if (spec.kind == FamilySpec::Kind::Gaussian) {
              value *= std::exp(-0.5 * u * u / (w * w));
            } else {
              const double t = u / w;
              value *= std::abs(t) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
            }
          }
          v[p] = std::polar(value, phase);
        }
        out.push_back(finish(grid, std::move(v)));
        break;
      }
      case FamilySpec::Kind::RandomBandLimited: {
        const int band = spec.band > 0 ? spec.band : grid.n() / 8;
        if (3 * band >= grid.n()) throw ConfigError("family: band must stay below N/3");
        std::normal_distribution<double> normal;
        std::vector<cplx> c(grid.size());
        const double modes = std::pow(2.0 * band + 1.0, d);
        const double amplitude = 1.0 / std::sqrt(modes);
        for (std::size_t p = 1; p < c.size(); ++p) {
          auto k = grid.wavenumbers(p);
          if (std::abs(k[0]) <= band && std::abs(k[1]) <= band) c[p] = amplitude * cplx(normal(rng), normal(rng));
        }
        out.push_back(synchronized(SpectralField::from_frequency(grid, std::move(c))));
        break;
      }
      case FamilySpec::Kind::ModePair: {
        const auto& k = i % 2 == 0 ? spec.mode_a : spec.mode_b;
        if (!grid.representable(k[0]) || !grid.representable(k[1])) throw ConfigError("family: mode off the grid");
        std::vector<cplx> c(grid.size());
        c[grid.flat(grid.slot(k[0]), d == 1 ? 0 : grid.slot(k[1]))] = 1.0;
        out.push_back(synchronized(SpectralField::from_frequency(grid, std::move(c))));
        break;
      }
    }
  }
  return out;
}

}  // namespace bilap
