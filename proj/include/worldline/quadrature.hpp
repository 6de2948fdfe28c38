#pragma once

// Integrating factors of the first and second kind, principal vectors and the
// closed-form reconstruction of a world-line from its momentum.

#include <array>
#include <optional>
#include <vector>

#include "worldline/curvature.hpp"
#include "worldline/frame.hpp"
#include "worldline/lorentz.hpp"
#include "worldline/spectrum.hpp"

namespace worldline {

/// Constants of the integrating factors for one eigenvalue. Public so that
/// tests and fault injection can alter individual entries.
struct FactorConstants {
  cplx lambda;
  cplx a, b, c, d;
  cplx alpha2;  // b / a
  bool real = false;

  // Real eigenvalues: data of the real primitive g1 (in v = sqrt(l3) u).
  double alpha = 0.0;
  double p_v = 0.0;  // sn^-1(1/alpha) in v units
  double w = 0.0;    // alpha / sqrt((alpha^2 - m)(alpha^2 - 1))
  double zeta_p = 0.0;
  double nome = 0.0;
  double zero_base = 0.0;  // base point of D_lambda in u units

  // Double roots: partial fractions of s_lambda in x = 1 - alpha^2 sn^2.
  bool second_kind = false;
  double C0 = 0.0, C1 = 0.0, C2 = 0.0;
  std::array<double, 4> co{};  // derivative of sn cn dn / x as sum co_k x^(k-2)
};

/// Throws Error(SingularPoint) if a denominator (a, b, alpha^2 - 1,
/// alpha^2 - m) is below eps_den.
FactorConstants factor_constants(cplx lambda, const EllipticData& d, bool second_kind = false,
                                 double eps_den = 1e-12);

/// r = (k2 k2' + lambda)/(k2^2 - lambda^2), s = (lambda^2 + k2^2 - 2 lambda k2 k2')/(lambda^2 - k2^2)^2.
/// Throws Error(SingularPoint) when k2^2 = lambda^2 within 1e-14.
struct RS {
  cplx r;
  cplx s;
};
RS r_s_functions(cplx lambda, double u, const EllipticData& d);

/// Real primitive of 1/(1 - alpha^2 sn^2(v)) in v units, zero at v = 0.
double g1(const FactorConstants& f, double v, const EllipticData& d);

/// delta_lambda(u) with delta(0) = 0. For real lambda the imaginary part is
/// pi times the signed number of points of D_lambda in (0, u].
cplx delta_first_kind(const FactorConstants& f, double u, const EllipticData& d);

/// eta_lambda(u) with eta(0) = 0, for a real double root.
double eta_second_kind(const FactorConstants& f, double u, const EllipticData& d);

struct CompensatedProducts {
  CVec6 first;   // e^-delta L
  CVec6 second;  // e^-delta (T - eta L), double roots only
  bool has_second = false;
  bool extrapolated = false;
};

/// Evaluates the compensated products at any u. Within eps of a zero or pole
/// of lambda^2 - k2^2 the value is interpolated from the samples at distance
/// eps and 2 eps on both sides (fourth order).
CompensatedProducts compensated_products(const FactorConstants& f, double u,
                                         const EllipticData& d, double eps);

struct PrincipalVectors {
  std::array<cplx, 6> lambda{};
  CMat6 A;  // columns A_0..A_5, or (A_0, A_1, A_2, A_3, C_2, C_3)
  double eigen_residual = 0.0;       // max ||m A - lambda A|| / ||A||
  double generalized_residual = 0.0; // max ||m C - lambda C - A|| / ||C||
  double condition = 0.0;            // 1-norm condition estimate of A
  bool exceptional = false;
};

/// Throws Error(DegenerateVectors) when a principal vector vanishes or C, A
/// are parallel.
PrincipalVectors principal_vectors(const EllipticData& d, const SpectralData& spec);

struct TrajectorySample {
  double u = 0.0;
  Vec6 ray = Vec6::Zero();          // normalized real representative
  double imag_residual = 0.0;       // max |Im| / max |Re| before dropping
  std::optional<Vec4> chart;        // Minkowski chart, if defined
  double oracle_deviation = -1.0;   // < 0 when no oracle was supplied
  Mat6 frame = Mat6::Identity();    // reconstructed B(u)
};

struct Trajectory {
  PhaseParams e;
  SpectralKind kind = SpectralKind::RegularReal;
  double condition = 0.0;
  std::vector<TrajectorySample> samples;
  double max_oracle_deviation() const;
  double max_imag_residual() const;
};

struct ReconstructOptions {
  double eps_factor = 1e-4;   // exclusion radius as a fraction of omega
  double max_condition = 1e12;
  double chart_tol = 1e-12;
  /// Applied to every factor constant right after construction (test hook).
  void (*perturb)(FactorConstants&) = nullptr;
};

/// Closed-form trajectory. If `oracle` is given it must share the grid.
/// Throws Error(SingularMatrix) when the principal-vector matrix is too
/// ill-conditioned.
Trajectory reconstruct(const EllipticData& d, const SpectralData& spec,
                       const std::vector<double>& grid, const FramePath* oracle = nullptr,
                       const ReconstructOptions& opt = {});

/// Max-norm distance between two rays after normalization.
double ray_distance(const Vec6& a, const Vec6& b);

}  // namespace worldline
