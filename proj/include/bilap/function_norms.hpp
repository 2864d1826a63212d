#pragma once

// Lebesgue, mixed, Sobolev, Besov, Triebel-Lizorkin and mixed Hardy
// (quasi-)norms on the torus, plus a discrete centred maximal operator.
// Integrals are uniform Riemann sums with cell-volume weights.

#include <string>
#include <vector>

#include "bilap/littlewood_paley.hpp"
#include "bilap/spectral_core.hpp"

namespace bilap {

enum class NormMode { Lebesgue, Mixed };

/// Exponents of a bilinear estimate L^{p1}(L^{q1}) x L^{p2}(L^{q2}) -> L^p(L^q)
/// with smoothness s and symbol order nu. In Lebesgue mode q, q1, q2 are
/// ignored.
struct ExponentTuple {
  double p = 2.0, q = 2.0;
  double p1 = 4.0, q1 = 4.0;
  double p2 = 4.0, q2 = 4.0;
  double s = 1.0;
  double nu = 0.0;
};

/// True when s is a positive even integer or exceeds the dimension gate
/// max(0, D/p - D) (and D/q - D in mixed mode), D the space dimension.
bool passes_s_gate(const ExponentTuple& e, NormMode mode, int dim);

/// Throws ConfigError naming the violated invariant: positivity, the Hoelder
/// relations 1/p = 1/p1 + 1/p2 (and for q), the s-gate, or 0 <= nu < 2 dim.
void validate(const ExponentTuple& e, NormMode mode, int dim);

double lebesgue_norm(const SpectralField& f, double p);

/// Inner L^q over axis 1 (x) on each row, outer L^p over axis 0 (t).
/// DimensionError unless d = 2.
double mixed_norm(const SpectralField& f, double p, double q);

/// || D^s f ||_p on the mean-projected part of f.
double hom_sobolev_norm(const SpectralField& f, double s, double p);

double besov_norm(const SpectralField& f, double s, double p, double q, const LPFamily& fam);
double triebel_lizorkin_norm(const SpectralField& f, double s, double p, double q, const LPFamily& fam);

/// Mixed norm of the square function; DimensionError unless d = 2.
double hardy_mixed_norm(const SpectralField& f, double p, double q, const LPFamily& fam);

/// Max over centred cubes of half-width 2^r cells (grid offsets |o_i| < 2^r,
/// r = 0..log2(N/2)) of the periodic average of |f|.
SpectralField maximal_function(const SpectralField& f);

/// ||(sum_j M(f_j)^r)^{1/r}||_{L^pL^q} / ||(sum_j |f_j|^r)^{1/r}||_{L^pL^q}.
/// DomainError unless 1 < p, q, r < inf; DimensionError unless d = 2.
double fefferman_stein_check(const std::vector<SpectralField>& fs, double p, double q, double r);

struct NormKind {
  enum class Kind { Lebesgue, Mixed, HomSobolev, Besov, TriebelLizorkin, HardyMixed };
  Kind kind = Kind::Lebesgue;
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
};

/// Parses "lebesgue", "mixed", "hom_sobolev", "besov", "triebel_lizorkin",
/// "hardy_mixed"; ConfigError otherwise.
NormKind::Kind norm_kind_from_name(const std::string& name);
double evaluate_norm(const NormKind& kind, const SpectralField& f, const LPFamily& fam);

}  // namespace bilap
