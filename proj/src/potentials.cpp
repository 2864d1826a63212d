#include "bilap/potentials.hpp"

#include <algorithm>
#include <numbers>

#include "bilap/errors.hpp"

namespace bilap {
namespace {

using Point = std::array<double, 4>;

constexpr double kNodes[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
constexpr double kWeights[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};

int ipow(int base, int e) {
  int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Tensor Gauss-Legendre over the cube of side h centred at `centre`, split
// into split^D equal subcubes.
template <class Kernel>
double cube_quadrature(const Kernel& kernel, int dim, const Point& centre, double h, int split) {
  const double sub = h / split;
  const int cells = ipow(split, dim);
  const int nodes = ipow(4, dim);
  double total = 0.0;
  for (int c = 0; c < cells; ++c) {
    Point mid{};
    for (int a = 0, rest = c; a < dim; ++a, rest /= split) {
      mid[a] = centre[a] - 0.5 * h + (rest % split + 0.5) * sub;
    }
    for (int q = 0; q < nodes; ++q) {
      Point x{};
      double w = 1.0;
      for (int a = 0, rest = q; a < dim; ++a, rest /= 4) {
        x[a] = mid[a] + 0.5 * sub * kNodes[rest % 4];
        w *= kWeights[rest % 4];
      }
      total += w * kernel(x);
    }
  }
  return total * std::pow(0.5 * sub, dim);
}

// Integral of a kernel homogeneous of degree `degree` over the cube of side h
// centred at the origin. Halving the cube scales the integral by
// 2^-(degree + dim), so the whole equals the shell between the cube and its
// half divided by 1 - 2^-(degree + dim).
template <class Kernel>
double origin_cube(const Kernel& kernel, int dim, double h, double degree) {
  const double quarter = 0.25 * h;
  double shell = 0.0;
  for (int c = 0; c < ipow(4, dim); ++c) {
    Point centre{};
    bool inner = true;
    for (int a = 0, rest = c; a < dim; ++a, rest /= 4) {
      centre[a] = -0.5 * h + (rest % 4 + 0.5) * quarter;
      inner = inner && std::abs(centre[a]) < quarter;
    }
    if (!inner) shell += cube_quadrature(kernel, dim, centre, quarter, 2);
  }
  return shell / (1.0 - std::pow(2.0, -(degree + dim)));
}

}  // namespace

double riesz_kernel_constant(int dim, double order) {
  return std::tgamma(0.5 * (dim - order)) /
         (std::pow(std::numbers::pi, 0.5 * dim) * std::pow(2.0, order) * std::tgamma(0.5 * order));
}

double pointwise_bound_constant(int dim, double nu) {
  const double c = riesz_kernel_constant(dim, 0.5 * nu);
  return riesz_kernel_constant(2 * dim, nu) * std::pow(2.0, -(dim - 0.5 * nu)) / (c * c);
}

PointwiseBound pointwise_potential_bound(double nu, const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw DimensionError("pointwise_potential_bound: fields live on different grids");
  const auto& grid = f.grid();
  const int d = grid.dim();
  if (!(nu > 0.0 && nu < 2.0 * d)) throw DomainError("pointwise_potential_bound: nu must lie in (0, 2d)");
  const double h = grid.spacing();

  // Cell kernels depend only on the absolute offsets between cells.
  const std::size_t offsets = grid.size();
  auto offset_point = [&](std::size_t o) {
    auto s = grid.axis_slots(o);
    return std::array<int, 2>{s[0], d == 1 ? 0 : s[1]};
  };

  const double one_degree = -(d - 0.5 * nu);
  auto single = [&](const Point& y) {
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += y[a] * y[a];
    return std::pow(r2, 0.5 * one_degree);
  };
  std::vector<double> k1(offsets);
  for (std::size_t o = 0; o < offsets; ++o) {
    auto u = offset_point(o);
    if (u[0] == 0 && u[1] == 0) {
      k1[o] = origin_cube(single, d, h, one_degree);
    } else {
      const int split = std::max(u[0], u[1]) <= 2 ? 2 : 1;
      k1[o] = cube_quadrature(single, d, Point{u[0] * h, u[1] * h}, h, split);
    }
  }

  const double two_degree = -(2.0 * d - nu);
  auto pair = [&](const Point& y) {
    double r2 = 0.0;
    for (int a = 0; a < 2 * d; ++a) r2 += y[a] * y[a];
    return std::pow(r2, 0.5 * two_degree);
  };
  std::vector<double> k2(offsets * offsets);
  for (std::size_t a = 0; a < offsets; ++a) {
    auto u = offset_point(a);
    for (std::size_t b = 0; b < offsets; ++b) {
      auto v = offset_point(b);
      const int reach = std::max({u[0], u[1], v[0], v[1]});
      double value;
      if (reach == 0) {
        value = origin_cube(pair, 2 * d, h, two_degree);
      } else {
        Point centre{};
        if (d == 1) {
          centre = {u[0] * h, v[0] * h, 0.0, 0.0};
        } else {
          centre = {u[0] * h, u[1] * h, v[0] * h, v[1] * h};
        }
        value = cube_quadrature(pair, 2 * d, centre, h, reach <= 2 ? 2 : 1);
      }
      k2[a * offsets + b] = value;
    }
  }

  const auto fv = values_of(f);
  const auto gv = values_of(g);
  const double c_pair = riesz_kernel_constant(2 * d, nu);
  const double c_half = riesz_kernel_constant(d, 0.5 * nu);

  PointwiseBound out;
  out.constant = pointwise_bound_constant(d, nu);
  out.lhs.resize(grid.size());
  out.rhs.resize(grid.size());
  std::vector<std::size_t> rel(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto si = grid.axis_slots(i);
    for (std::size_t p = 0; p < grid.size(); ++p) {
      auto sp = grid.axis_slots(p);
      rel[p] = grid.flat(std::abs(si[0] - sp[0]), d == 1 ? 0 : std::abs(si[1] - sp[1]));
    }
    cplx lhs = 0.0;
    double pf = 0.0, pg = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      pf += std::abs(fv[p]) * k1[rel[p]];
      pg += std::abs(gv[p]) * k1[rel[p]];
      if (fv[p] == cplx()) continue;
      const double* row = &k2[rel[p] * offsets];
      cplx inner = 0.0;
      for (std::size_t q = 0; q < grid.size(); ++q) inner += gv[q] * row[rel[q]];
      lhs += fv[p] * inner;
    }
    out.lhs[i] = c_pair * std::abs(lhs);
    out.rhs[i] = c_half * c_half * pf * pg;
  }

  out.holds = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (out.rhs[i] > 0.0) out.max_ratio = std::max(out.max_ratio, out.lhs[i] / out.rhs[i]);
    if (out.lhs[i] > out.constant * out.rhs[i] * (1.0 + 1e-9)) out.holds = false;
  }
  return out;
}

}  // namespace bilap
