#pragma once

// Spectrum of the momentum operator, the closed-form eigen-maps L and T and
// their zero / pole sets.

#include <array>
#include <string_view>
#include <vector>

#include "worldline/curvature.hpp"
#include "worldline/frame.hpp"
#include "worldline/lorentz.hpp"

namespace worldline {

enum class SpectralKind { RegularReal, RegularComplex, Exceptional };

std::string_view to_string(SpectralKind k) noexcept;

struct Eigenvalue {
  cplx value;
  int multiplicity = 1;
};

struct SpectralData {
  std::array<double, 7> characteristic{};  // p0..p6 of the sextic
  std::array<double, 4> q2{};              // s^3 + 2 c1 s^2 + (c2 + 1) s + c3^2, low to high
  cplx rho1, rho2, rho3;
  std::array<cplx, 6> lambda{};  // lambda_0..lambda_5; repeated in the exceptional case
  std::vector<Eigenvalue> distinct;
  SpectralKind kind = SpectralKind::RegularReal;
  double discriminant = 0.0;  // of the cubic
  double eps_disc = 0.0;
  double fredholm_residual = 0.0;  // exceptional case only
};

/// Roots of the cubic and the eigenvalues of the momentum. A root pair is
/// treated as double when |rho2 - rho3|^2 < eps_disc = 1e-9 max(1, |rho|^2);
/// the roots are then replaced by the exact double/simple root formulas.
/// Throws Error(DegenerateSpectrum) if the double-root branch fails its
/// generalized-eigenvector check.
SpectralData characteristic_data(const EllipticData& d);

/// Discriminant of the cubic as a function of the phase parameters.
double cubic_discriminant(const EllipticData& d);

/// Closed-form eigen-map L_lambda.
CVec6 L_vector(cplx lambda, const CurvatureSample& s);
CVec6 L_vector(cplx lambda, double u, const EllipticData& d);

/// Closed-form generalized eigen-map T_lambda for a real double root.
/// Throws Error(SingularPoint) when |lambda^2 - k2^2| <= threshold.
Vec6 T_vector(double lambda, const CurvatureSample& s, double threshold = 1e-12);
Vec6 T_vector(double lambda, double u, const EllipticData& d, double threshold = 1e-12);

struct SingularSets {
  bool empty = true;     // non-real lambda
  double alpha = 0.0;
  double p = 0.0;        // p_lambda in (0, omega/2]
  double omega = 0.0;
  double zero_base = 0.0;  // D_lambda = { zero_base + n omega }
  double pole_base = 0.0;  // poles of T: { pole_base + n omega }
  double eps = 0.0;        // exclusion radius
  /// Distance from u to the nearest point of D_lambda (or of the pole set).
  double distance_to_zero(double u) const;
  double distance_to_pole(double u) const;
  bool near_zero(double u) const { return !empty && distance_to_zero(u) < eps; }
  bool near_pole(double u) const { return !empty && distance_to_pole(u) < eps; }
};

/// Throws Error(AlphaOutOfRange) when 1/alpha is not in [0, 1].
SingularSets singular_sets(cplx lambda, const EllipticData& d, double eps_factor = 1e-4);

}  // namespace worldline
