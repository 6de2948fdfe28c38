#pragma once

// Phase parameters, derived elliptic constants and the closed-form conformal
// curvatures of a world-line in standard configuration (u0 = 0).

#include <vector>

namespace worldline {

struct PhaseParams {
  double e1 = -1.0;
  double e2 = 1.0;
  double e3 = 2.0;
};

struct EllipticData {
  PhaseParams e;
  double l1 = 0.0, l2 = 0.0, l3 = 0.0, l4 = 0.0;
  double m = 0.0;
  double sqrt_l3 = 0.0;
  double K = 0.0;      // K(m)
  double E = 0.0;      // E(m)
  double omega = 0.0;  // period of k2, 2K/sqrt(l3)
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

/// Throws Error(InvalidPhaseParams) unless e1 < 0 < e2 < e3.
EllipticData derive(const PhaseParams& e);

/// Q1(t) = t^3 + 2 c1 t^2 + c2 t + c3^2.
double q1(const EllipticData& d, double t);

struct Curvatures {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k2_dot = 0.0;
  double k2_ddot = 0.0;
  double k1_dot = 0.0;
  double k3_dot = 0.0;
};

/// All curvatures and their derivatives at u. `shift` evaluates at u - shift.
Curvatures curvatures(const EllipticData& d, double u, double shift = 0.0);

double k2(const EllipticData& d, double u);
double k2_dot(const EllipticData& d, double u);
double k1(const EllipticData& d, double u);
double k3(const EllipticData& d, double u);

/// Second derivative as printed with the extra -4 k2 term. Kept only so that
/// tests can show it violates the constraint system.
double k2_ddot_printed_variant(const EllipticData& d, double u);

struct OdeResiduals {
  double constraint = 0.0;   // |k2'^2 + k2^4 + c3^2 k2^-2 + 2 c1 k2^2 + c2|
  double cubic = 0.0;        // |(k2 k2')^2 + (k2^2-e1)(k2^2-e2)(k2^2-e3)|
  double second = 0.0;       // |k2'' - k2 (k3^2 + k2^2 - 2 k1)|
  double helicity = 0.0;     // |k2 k3' + 2 k3 k2'|
  double first = 0.0;        // |k1' - 3 k2 k2'|
  double max() const;
};

/// Residuals of the world-line equations over the grid. The optional
/// c2_offset perturbs c2 in the first residual (sensitivity check).
OdeResiduals verify_world_line_odes(const EllipticData& d, const std::vector<double>& grid,
                                    double c2_offset = 0.0);

/// n+1 equally spaced points on [a, b].
std::vector<double> linspace(double a, double b, int n);

}  // namespace worldline
