#pragma once

// Regularity of bilinear symbols: dyadic rescaled pieces on the unit
// annulus, their product Sobolev norms, derivative bounds across scales, and
// the pointwise maximal-function domination of the associated operators.

#include <functional>
#include <string>
#include <vector>

#include "bilap/operators.hpp"
#include "bilap/spectral_core.hpp"

namespace bilap {

/// Radial window on R^{2d} supported in 1/2 <= |(xi,eta)| <= 2 whose dyadic
/// dilates sum to 1 off the origin.
struct AnnulusWindow {
  int dim = 1;
  double operator()(const FreqVec& xi, const FreqVec& eta) const;
  /// Max deviation of sum_k Psi(v / 2^k) from 1 over `samples` points on
  /// each of a few shells.
  double partition_error(int samples = 64) const;
};

struct RescaledPiece {
  int k = 0;
  double nu = 0.0;
  int dim = 1;
  int res = 128;  // points per axis on [-2, 2)^{2d}
  /// Row-major over (xi_1..xi_d, eta_1..eta_d), coordinate -2 + 4 i / res.
  std::vector<cplx> values;
  /// The same function at arbitrary points, for exact lattice evaluation.
  BilinearSymbol::Rule rule;

  double spacing() const { return 4.0 / res; }
  cplx operator()(const FreqVec& xi, const FreqVec& eta) const { return rule(xi, eta); }
};

/// Tabulates 2^{k nu} m(2^k xi, 2^k eta) Psi(xi, eta). res must be a power
/// of two >= 8 (32 or more for meaningful norms).
RescaledPiece rescaled_piece(const BilinearSymbol& m, double nu, int k, const AnnulusWindow& w, int res);

/// Piece built from an arbitrary rule with the same layout (no window).
RescaledPiece tabulate_piece(BilinearSymbol::Rule rule, int dim, int res);

/// Pointwise product of two pieces on the same layout.
RescaledPiece piece_product(const RescaledPiece& a, const RescaledPiece& b);

/// (int (1+|x|^2)^r1 (1+|y|^2)^r2 |h^(x,y)|^2 dx dy)^{1/2} with the
/// continuous transform approximated by the scaled DFT of the table and the
/// integral normalized by (2 pi)^{-2d}, so r1 = r2 = 0 gives the L^2 norm.
double product_sobolev_norm(const RescaledPiece& piece, double r1, double r2);

/// L^2 norm of the table (cell-weighted).
double piece_l2_norm(const RescaledPiece& piece);

struct RegularityReport {
  std::string label;
  double nu = 0.0;
  double r = 0.0;
  int res = 0;
  std::vector<int> ks;
  std::vector<double> norms;  // per k
  double sup = 0.0;
  int argmax_k = 0;
  bool interior = false;  // sup attained strictly inside the k range
  std::vector<int> refinement_res;
  std::vector<double> refinement_norms;  // piece at argmax_k, res doubling
  bool divergent = false;  // growth > 2x on two consecutive doublings

  std::string to_json() const;
};

/// Sup over k in [k_lo, k_hi] of the W^{(r,r),2} norm of the rescaled pieces,
/// plus a refinement scan of the maximizing piece over `refinements`
/// resolution doublings starting at res.
RegularityReport regularity_score(const BilinearSymbol& m, double nu, double r, int k_lo, int k_hi, int dim,
                                  int res = 0, int refinements = 3);

/// Phi(k, xi, eta): a member of a scale-indexed symbol family.
using SymbolFamily = std::function<double(int k, const FreqVec& xi, const FreqVec& eta)>;

struct ClassBound {
  std::array<int, 4> alpha{};  // derivative orders over (xi, eta) coordinates
  std::vector<double> per_k;   // smallest constant at each k
  double constant = 0.0;       // max over k
  double variation = 0.0;      // (max - min) / max over k
  bool k_independent = false;  // variation < 0.2
};

struct ClassReport {
  std::vector<int> ks;
  std::vector<ClassBound> bounds;
  bool k_independent = false;  // every bound k-independent
};

/// Central finite-difference estimates of sup |d^alpha Phi_k| (|xi|+|eta|)^{|alpha|-nu}
/// over |alpha| <= max_order at sample points 2^k u (u on shells of radius
/// 3/4, 1, 3/2), step 2^k / 256.
ClassReport class_mnu_check(const SymbolFamily& family, double nu, int max_order, int dim,
                            const std::vector<int>& ks);

struct DominationReport {
  std::vector<double> ratio;  // normalized ratio field
  double sup_ratio = 0.0;     // max of ratio
  double raw_sup = 0.0;       // sup of lhs / maximal product, without the symbol norm
  double sigma_norm = 0.0;
};

/// Ratio of |T_{sigma(2^-j .)}(f,g)| to ||sigma||_{W^{(r,r),2}}
/// (M|f|^l)^{1/l} (M|g|^l)^{1/l}, pointwise. DomainError unless
/// max(1, d/r) < l < 2.
DominationReport maximal_domination_check(const RescaledPiece& sigma, const SpectralField& f,
                                          const SpectralField& g, int j, double l, double r);

}  // namespace bilap
