#include "bilap/symbol_analysis.hpp"

#include <algorithm>
#include <json.hpp>
#include <numbers>
#include <random>

#include "bilap/errors.hpp"
#include "bilap/function_norms.hpp"
#include "bilap/littlewood_paley.hpp"
#include "fft.hpp"

namespace bilap {
namespace {

std::size_t table_size(int dim, int res) {
  std::size_t n = 1;
  for (int a = 0; a < 2 * dim; ++a) n *= std::size_t(res);
  return n;
}

// Coordinates (xi, eta) of table entry `flat`.
std::pair<FreqVec, FreqVec> table_point(std::size_t flat, int dim, int res) {
  std::array<double, 4> c{};
  const double h = 4.0 / res;
  for (int a = 2 * dim - 1; a >= 0; --a) {
    c[std::size_t(a)] = -2.0 + h * double(flat % std::size_t(res));
    flat /= std::size_t(res);
  }
  if (dim == 1) return {{c[0], 0.0}, {c[1], 0.0}};
  return {{c[0], c[1]}, {c[2], c[3]}};
}

int default_res(int dim) { return dim == 1 ? 128 : 32; }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::array<double, 4>> unit_directions(int dim) {
  std::vector<std::array<double, 4>> dirs;
  if (dim == 1) {
    for (int i = 0; i < 16; ++i) {
      const double t = 0.1 + i * 2.0 * std::numbers::pi / 16.0;
      dirs.push_back({std::cos(t), std::sin(t), 0.0, 0.0});
    }
    return dirs;
  }
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 32; ++i) {
    std::array<double, 4> v{};
    double n2 = 0.0;
    for (auto& x : v) {
      x = normal(rng);
      n2 += x * x;
    }
    for (auto& x : v) x /= std::sqrt(n2);
    dirs.push_back(v);
  }
  return dirs;
}

std::vector<std::array<int, 4>> multi_indices(int coords, int max_order) {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> a{};
  std::function<void(int, int)> rec = [&](int c, int left) {
    if (c == coords) {
      out.push_back(a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[std::size_t(c)] = v;
      rec(c + 1, left - v);
    }
    a[std::size_t(c)] = 0;
  };
  rec(0, max_order);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    const int sx = x[0] + x[1] + x[2] + x[3], sy = y[0] + y[1] + y[2] + y[3];
    return sx != sy ? sx < sy : x > y;
  });
  return out;
}

}  // namespace

double AnnulusWindow::operator()(const FreqVec& xi, const FreqVec& eta) const {
  return psi_profile(std::sqrt(norm2(xi) + norm2(eta)));
}

double AnnulusWindow::partition_error(int samples) const {
  double worst = 0.0;
  const auto dirs = unit_directions(dim);
  for (double radius : {0.3, 0.77, 1.0, 1.41, 3.9, 17.0}) {
    for (int i = 0; i < samples; ++i) {
      const auto& u = dirs[std::size_t(i) % dirs.size()];
      const double r = radius * (1.0 + 0.01 * i);
      double total = 0.0;
      const int top = int(std::floor(std::log2(r)));
      for (int k = top - 2; k <= top + 2; ++k) {
        const double s = std::ldexp(r, -k);
        FreqVec xi{s * u[0], dim == 1 ? 0.0 : s * u[1]};
        FreqVec eta{dim == 1 ? s * u[1] : s * u[2], dim == 1 ? 0.0 : s * u[3]};
        total += (*this)(xi, eta);
      }
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  return worst;
}

RescaledPiece tabulate_piece(BilinearSymbol::Rule rule, int dim, int res) {
  if (dim != 1 && dim != 2) throw DomainError("tabulate_piece: dim must be 1 or 2");
  if (res < 8 || (res & (res - 1)) != 0) throw DomainError("tabulate_piece: res must be a power of two >= 8");
  RescaledPiece p;
  p.dim = dim;
  p.res = res;
  p.values.resize(table_size(dim, res));
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    auto [xi, eta] = table_point(i, dim, res);
    p.values[i] = rule(xi, eta);
  }
  p.rule = std::move(rule);
  return p;
}

RescaledPiece rescaled_piece(const BilinearSymbol& m, double nu, int k, const AnnulusWindow& w, int res) {
  const double lift = std::pow(2.0, k * nu);
  const double scale = std::ldexp(1.0, k);
  auto rule = [m, w, lift, scale](const FreqVec& xi, const FreqVec& eta) -> cplx {
    const double window = w(xi, eta);
    if (window == 0.0) return 0.0;
    return lift * m({scale * xi[0], scale * xi[1]}, {scale * eta[0], scale * eta[1]}) * window;
  };
  auto p = tabulate_piece(rule, w.dim, res);
  p.k = k;
  p.nu = nu;
  return p;
}

RescaledPiece piece_product(const RescaledPiece& a, const RescaledPiece& b) {
  if (a.dim != b.dim || a.res != b.res) throw DimensionError("piece_product: layouts differ");
  RescaledPiece p = a;
  for (std::size_t i = 0; i < p.values.size(); ++i) p.values[i] *= b.values[i];
  auto ra = a.rule, rb = b.rule;
  p.rule = [ra, rb](const FreqVec& xi, const FreqVec& eta) { return ra(xi, eta) * rb(xi, eta); };
  return p;
}

double product_sobolev_norm(const RescaledPiece& piece, double r1, double r2) {
  if (!(r1 >= 0.0 && r2 >= 0.0)) throw DomainError("product_sobolev_norm: weights must be nonnegative");
  const int d = piece.dim;
  const int res = piece.res;
  std::vector<cplx> h = piece.values;
  detail::fft_in_place(2 * d, res, -1, h);
  const double cell = std::pow(piece.spacing(), 2 * d);
  const double dual = 2.0 * std::numbers::pi / 4.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::size_t rest = i;
    double x2 = 0.0, y2 = 0.0;
    for (int a = 2 * d - 1; a >= 0; --a) {
      const int slot = int(rest % std::size_t(res));
      rest /= std::size_t(res);
      const double w = dual * (slot < res / 2 ? slot : slot - res);
      (a < d ? x2 : y2) += w * w;
    }
    const double weight = std::pow(1.0 + x2, r1) * std::pow(1.0 + y2, r2);
    sum += weight * std::norm(cell * h[i]);
  }
  return std::sqrt(sum * std::pow(4.0, -2.0 * d));
}

double piece_l2_norm(const RescaledPiece& piece) {
  double sum = 0.0;
  for (auto v : piece.values) sum += std::norm(v);
  return std::sqrt(sum * std::pow(piece.spacing(), 2 * piece.dim));
}

std::string RegularityReport::to_json() const {
  nlohmann::json j;
  j["label"] = label;
  j["nu"] = nu;
  j["r"] = r;
  j["res"] = res;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) rows.push_back({{"k", ks[i]}, {"norm", norms[i]}});
  j["pieces"] = rows;
  j["sup"] = sup;
  j["argmax_k"] = argmax_k;
  j["attained"] = interior ? "interior" : "boundary";
  nlohmann::json curve = nlohmann::json::array();
  for (std::size_t i = 0; i < refinement_res.size(); ++i) {
    curve.push_back({{"res", refinement_res[i]}, {"norm", refinement_norms[i]}});
  }
  j["refinement"] = curve;
  j["divergent"] = divergent;
  return j.dump(2);
}

RegularityReport regularity_score(const BilinearSymbol& m, double nu, double r, int k_lo, int k_hi, int dim,
                                  int res, int refinements) {
  if (k_hi < k_lo) throw DomainError("regularity_score: empty k range");
  if (res == 0) res = default_res(dim);
  const AnnulusWindow w{dim};
  RegularityReport rep;
  rep.label = m.label();
  rep.nu = nu;
  rep.r = r;
  rep.res = res;
  for (int k = k_lo; k <= k_hi; ++k) {
    rep.ks.push_back(k);
    rep.norms.push_back(product_sobolev_norm(rescaled_piece(m, nu, k, w, res), r, r));
  }
  auto best = std::max_element(rep.norms.begin(), rep.norms.end());
  rep.sup = *best;
  const std::size_t at = std::size_t(best - rep.norms.begin());
  rep.argmax_k = rep.ks[at];
  rep.interior = at > 0 && at + 1 < rep.ks.size();

  // Refinement scan, capped at 2^24 table entries.
  int level = res;
  for (int i = 0; i <= refinements && table_size(dim, level) <= (std::size_t(1) << 24); ++i, level *= 2) {
    rep.refinement_res.push_back(level);
    rep.refinement_norms.push_back(product_sobolev_norm(rescaled_piece(m, nu, rep.argmax_k, w, level), r, r));
  }
  int streak = 0;
  for (std::size_t i = 1; i < rep.refinement_norms.size(); ++i) {
    streak = rep.refinement_norms[i] > 2.0 * rep.refinement_norms[i - 1] ? streak + 1 : 0;
    if (streak >= 2) rep.divergent = true;
  }
  return rep;
}

ClassReport class_mnu_check(const SymbolFamily& family, double nu, int max_order, int dim,
                            const std::vector<int>& ks) {
  if (ks.empty()) throw DomainError("class_mnu_check: no scales");
  if (max_order < 0 || max_order > 4) throw DomainError("class_mnu_check: max_order must lie in [0, 4]");
  const int coords = 2 * dim;
  const auto dirs = unit_directions(dim);
  const auto alphas = multi_indices(coords, max_order);

  ClassReport rep;
  rep.ks = ks;
  for (const auto& alpha : alphas) {
    ClassBound b;
    b.alpha = alpha;
    const int order = alpha[0] + alpha[1] + alpha[2] + alpha[3];
    for (int k : ks) {
      const double scale = std::ldexp(1.0, k);
      const double h = scale / 256.0;
      double worst = 0.0;
      for (double radius : {0.75, 1.0, 1.5}) {
        for (const auto& u : dirs) {
          std::array<double, 4> centre{};
          for (int c = 0; c < coords; ++c) centre[std::size_t(c)] = scale * radius * u[std::size_t(c)];
          // Tensor central difference: sum over stencil offsets per coordinate.
          std::array<int, 4> l{};
          double acc = 0.0;
          bool done = false;
          while (!done) {
            std::array<double, 4> x = centre;
            double coeff = 1.0;
            for (int c = 0; c < coords; ++c) {
              const int a = alpha[std::size_t(c)];
              x[std::size_t(c)] += (0.5 * a - l[std::size_t(c)]) * h;
              coeff *= (l[std::size_t(c)] % 2 ? -1.0 : 1.0) * binomial(a, l[std::size_t(c)]);
            }
            const FreqVec xi{x[0], dim == 1 ? 0.0 : x[1]};
            const FreqVec eta{dim == 1 ? x[1] : x[2], dim == 1 ? 0.0 : x[3]};
            acc += coeff * family(k, xi, eta);
            done = true;
            for (int c = 0; c < coords; ++c) {
              if (++l[std::size_t(c)] <= alpha[std::size_t(c)]) {
                done = false;
                break;
              }
              l[std::size_t(c)] = 0;
            }
          }
          const double deriv = acc / std::pow(h, order);
          const FreqVec xi{centre[0], dim == 1 ? 0.0 : centre[1]};
          const FreqVec eta{dim == 1 ? centre[1] : centre[2], dim == 1 ? 0.0 : centre[3]};
          const double size = std::pow(length(xi) + length(eta), nu - order);
          worst = std::max(worst, std::abs(deriv) / size);
        }
      }
      b.per_k.push_back(worst);
    }
    const auto [lo, hi] = std::minmax_element(b.per_k.begin(), b.per_k.end());
    b.constant = *hi;
    b.variation = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
    rep.bounds.push_back(b);
  }
  // Bounds that vanish identically (odd derivatives at symmetric samples)
  // carry no scale information and are ignored.
  double global = 0.0;
  for (const auto& b : rep.bounds) global = std::max(global, b.constant);
  rep.k_independent = true;
  for (auto& b : rep.bounds) {
    b.k_independent = b.constant <= 1e-9 * global || b.variation < 0.2;
    rep.k_independent = rep.k_independent && b.k_independent;
  }
  return rep;
}

DominationReport maximal_domination_check(const RescaledPiece& sigma, const SpectralField& f,
                                          const SpectralField& g, int j, double l, double r) {
  const int d = f.grid().dim();
  if (!(l > std::max(1.0, d / r) && l < 2.0)) throw DomainError("maximal_domination_check: need max(1, d/r) < l < 2");
  if (sigma.dim != d) throw DimensionError("maximal_domination_check: symbol and field dimensions differ");
  const double shrink = std::ldexp(1.0, -j);
  auto rule = sigma.rule;
  BilinearSymbol dilated("sigma_j", 0.0, [rule, shrink](const FreqVec& xi, const FreqVec& eta) {
    return rule({shrink * xi[0], shrink * xi[1]}, {shrink * eta[0], shrink * eta[1]});
  }, sigma.rule(FreqVec{}, FreqVec{}));

  const auto lhs = values_of(apply_bilinear(dilated, f, g));
  const auto mf = values_of(maximal_function(modulus(f, l)));
  const auto mg = values_of(maximal_function(modulus(g, l)));

  DominationReport rep;
  rep.sigma_norm = product_sobolev_norm(sigma, r, r);
  rep.ratio.resize(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const double bound = std::pow(mf[i].real(), 1.0 / l) * std::pow(mg[i].real(), 1.0 / l);
    const double raw = bound > 0.0 ? std::abs(lhs[i]) / bound : 0.0;
    rep.raw_sup = std::max(rep.raw_sup, raw);
    rep.ratio[i] = raw / rep.sigma_norm;
    rep.sup_ratio = std::max(rep.sup_ratio, rep.ratio[i]);
  }
  return rep;
}

}  // namespace bilap
