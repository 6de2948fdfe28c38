#pragma once

// The canonical frame equation B' = B K(u), the momentum operator H(u), a
// Dormand-Prince oracle for B(u), and constant-curvature orbits.

#include <array>
#include <functional>
#include <vector>

#include "worldline/curvature.hpp"
#include "worldline/lorentz.hpp"

namespace worldline {

struct CurvatureSample {
  double u = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k2_dot = 0.0;
};

CurvatureSample sample_curvatures(const EllipticData& d, double u);

Mat6 K_matrix(const CurvatureSample& s);
Mat6 H_matrix(const CurvatureSample& s);

/// Entrywise derivative of H along a world-line, from the closed-form
/// derivatives of the curvatures.
Mat6 H_dot(const Curvatures& c);

/// Coefficients (p0, ..., p6) of det(t I - X) = sum p_k t^k, by
/// Faddeev-LeVerrier.
std::array<double, 7> characteristic_coefficients(const Mat6& x);

/// Coefficients of t^6 + 2 c1 t^4 + (c2 + 1) t^2 + c3^2 in the same layout.
std::array<double, 7> expected_characteristic(const EllipticData& d);

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-10;
  double fixed_step = 0.0;  // > 0 disables step control
  double min_step = 1e-13;  // relative to max(1, |u|)
  long max_steps = 5'000'000;
};

struct FramePath {
  std::vector<double> u;
  std::vector<Mat6> B;
  std::vector<double> error_estimate;  // accumulated local error estimate
  std::vector<double> metric_defect;   // ||B^t m B - m||_inf
  long steps = 0;
  long rejected = 0;
  double max_metric_defect() const;
};

using CoefficientField = std::function<Mat6(double)>;

/// Solves B' = B X(u), B(0) = Id, landing exactly on every requested output
/// point. The grid must be non-decreasing and start at a point >= 0.
/// Throws Error(StepSizeUnderflow) when the step controller collapses.
FramePath integrate_linear(const CoefficientField& x, const std::vector<double>& grid,
                           const IntegratorOptions& opt = {});

/// Frame of the standard configuration. Throws Error(Domain) when rtol is
/// outside [1e-13, 1e-6].
FramePath integrate_frame(const EllipticData& d, const std::vector<double>& grid,
                          const IntegratorOptions& opt = {});

struct LaxReport {
  double lax = 0.0;            // max ||H' - (H K - K H)||
  double conservation = 0.0;   // max ||B H B^-1 - H(0)||
  double characteristic = 0.0; // max coefficient deviation from the expected polynomial
};

LaxReport lax_and_conservation_residuals(const EllipticData& d, const FramePath& path);

/// K matrix of constant curvatures. Throws Error(ConstraintViolated) unless
/// k1 = (k2^2 + k3^2)/2 within 1e-12 (relative) and k2, k3 > 0.
Mat6 constant_curvature_K(double k1, double k2, double k3);

/// exp(u K) by scaling and squaring.
Mat6 constant_curvature_frame(double k1, double k2, double k3, double u);

NullRay constant_curvature_orbit(double k1, double k2, double k3, double u);

}  // namespace worldline
