#pragma once

// Linear Fourier multipliers and bilinear multiplier application on the torus.

#include <functional>
#include <optional>
#include <string>

#include "bilap/spectral_core.hpp"

namespace bilap {

enum class ZeroModeRule { Zero, Keep };

struct RadialMultiplier {
  enum class Kind {
    FractionalDerivative,  // |xi|^s
    RieszPotential,        // |xi|^-nu
    Inhomogeneous,         // (1+|xi|^2)^(s/2)
    RieszTransform,        // -i xi_j / |xi|
    Derivative,            // i xi_j
  };

  Kind kind = Kind::FractionalDerivative;
  double order = 0.0;  // s or nu
  int axis = 0;        // Riesz transform / derivative direction
  ZeroModeRule zero_mode = ZeroModeRule::Zero;

  static RadialMultiplier fractional_derivative(double s);
  /// Throws DomainError unless nu > 0; the upper limit nu < d is checked on
  /// application, once the dimension is known.
  static RadialMultiplier riesz_potential(double nu);
  static RadialMultiplier inhomogeneous(double s);
  static RadialMultiplier riesz_transform(int axis);
  static RadialMultiplier derivative(int axis);

  /// Multiplier value at a nonzero frequency.
  cplx value(const FreqVec& xi) const;
};

/// Multiplies the spectrum of f by the multiplier; both representations of
/// the result are valid.
SpectralField apply_linear(const RadialMultiplier& mult, const SpectralField& f);

class BilinearSymbol {
 public:
  using Rule = std::function<cplx(const FreqVec& xi, const FreqVec& eta)>;

  /// nu is the decay order (the symbol is homogeneous-like of degree -nu),
  /// with 0 <= nu < 4 here and nu < 2d enforced on application. The origin
  /// value defaults to 0 for nu > 0 and to the rule's value for nu = 0.
  BilinearSymbol(std::string label, double nu, Rule rule, std::optional<cplx> origin = std::nullopt);

  cplx operator()(const FreqVec& xi, const FreqVec& eta) const;

  const std::string& label() const { return label_; }
  double nu() const { return nu_; }
  double order() const { return -nu_; }
  /// True for the constant symbol 1, which apply_bilinear routes through
  /// dealiased_product.
  bool is_unit() const { return unit_; }

  static BilinearSymbol one();

 private:
  std::string label_;
  double nu_;
  Rule rule_;
  std::optional<cplx> origin_;
  bool unit_ = false;
};

/// (|xi|^2 + |eta|^2)^(-nu/2), the symbol of the bilinear fractional integral.
BilinearSymbol ks_frac_symbol(double nu);
/// |xi|^2 (|xi|^2 + |eta|^2)^(-1-nu/2): smooth off the origin, homogeneous of
/// degree -nu, and not symmetric in (xi, eta).
BilinearSymbol cm_nu_symbol(double nu);
/// Tabulated symbol for d = 1: a two-dimensional field file whose axis 0
/// indexes the xi wavenumber slot and axis 1 the eta slot (FFT order). The
/// file period is the torus period the table was sampled for. nu is the
/// declared order.
BilinearSymbol table_symbol(const std::string& path, double nu = 0.0);

/// Resolves "one", "ks_frac:<nu>", "cm_nu:<nu>" and "table:<path>[@<nu>]".
/// Throws ConfigError on unknown labels.
BilinearSymbol symbol_from_label(const std::string& label);

/// Smallest C with |m(xi,eta)| <= C (|xi|+|eta|)^-nu over all nonzero lattice
/// pairs of the grid.
double size_constant(const BilinearSymbol& m, const TorusGrid& grid);

/// h^(zeta) = sum over xi+eta=zeta of m(xi,eta) f^(xi) g^(eta). Output
/// wavenumbers outside the grid band are dropped, as in dealiased_product.
/// Throws BandLimitExceeded for inputs above the N/3 cutoff and DomainError
/// when nu >= 2d.
SpectralField apply_bilinear(const BilinearSymbol& m, const SpectralField& f, const SpectralField& g);

/// apply_bilinear with ks_frac_symbol(nu); DomainError unless 0 < nu < 2d.
SpectralField bilinear_fractional(double nu, const SpectralField& f, const SpectralField& g);

struct CommutationDeviation {
  double riesz_commute = 0.0;          // max |D^s R_j f - R_j D^s f|
  double potential_derivative = 0.0;   // max |d_j I_1 f + R_j f|
  double max() const { return riesz_commute > potential_derivative ? riesz_commute : potential_derivative; }
};

/// Checks D^s R_j = R_j D^s and the derivative/potential relation on f.
/// DomainError when d < 2.
CommutationDeviation commutation_check(double s, int axis, const SpectralField& f);

}  // namespace bilap
