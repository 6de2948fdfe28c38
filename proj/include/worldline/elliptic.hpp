#pragma once

// Jacobi elliptic functions, Legendre elliptic integrals (through Carlson's
// symmetric forms, real or complex characteristic), the nome and theta_1.
// All functions use the parameter convention m = k^2.

#include <complex>

namespace worldline::elliptic {

using cplx = std::complex<double>;

/// Truncation and tolerance constants of the kernel.
struct Config {
  double agm_tol = 1e-15;        // stop AGM / Landen when |c_n| <= agm_tol
  double carlson_tol = 1e-16;    // r in Carlson's error bound
  double theta_rel_tol = 1e-16;  // theta series: term / running sum
  int max_iter = 100;
};

inline constexpr Config kConfig{};

/// Complete integrals of the first and second kind, 0 <= m < 1, by AGM.
/// Throw Error(Domain) outside [0, 1).
double complete_K(double m);
double complete_E(double m);

struct JacobiValues {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  double am = 0.0;  // continuous amplitude, am(0) = 0
};

/// sn, cn, dn and am for real u by descending Landen transformation.
JacobiValues jacobi(double u, double m);

/// Inverse of sn on [0, 1] -> [0, K(m)].
double inverse_sn(double x, double m);

/// Incomplete integrals for any real phi (quasi-periodic extension).
double incomplete_F(double phi, double m);
double incomplete_E(double phi, double m);

/// Incomplete integral of the third kind
///   Pi(n, phi, m) = int_0^phi dtheta / ((1 - n sin^2) sqrt(1 - m sin^2)).
/// Throws Error(PoleOnPath) when a real n puts a pole of the integrand on
/// [0, phi]. No principal-value continuation is attempted.
double incomplete_Pi(double n, double phi, double m);

/// Analytic continuation in n; valid for n off the real half-line [1, inf).
cplx incomplete_Pi(cplx n, double phi, double m);

/// Jacobi zeta function Z(u) = E(am u, m) - (E(m)/K(m)) u.
double jacobi_zeta(double u, double m);

/// q = exp(-pi K(1-m) / K(m)); returns 0 for m = 0.
double nome(double m);

/// First Jacobi theta function, theta_1(z, q) = 2 sum (-1)^k q^{(k+1/2)^2}
/// sin((2k+1) z). Throws Error(Domain) unless 0 < q < 1.
double theta1(double z, double q);

/// The square root branch used throughout: the ordinary root on [0, inf) and
/// the root with positive imaginary part everywhere else.
cplx sqrt_upper(cplx z);

// Carlson symmetric integrals. Real arguments must be non-negative (at most one
// zero); complex arguments must lie off the negative real axis.
double carlson_rf(double x, double y, double z);
cplx carlson_rf(cplx x, cplx y, cplx z);
double carlson_rd(double x, double y, double z);
cplx carlson_rd(cplx x, cplx y, cplx z);
double carlson_rj(double x, double y, double z, double p);
cplx carlson_rj(cplx x, cplx y, cplx z, cplx p);
double carlson_rc(double x, double y);
cplx carlson_rc(cplx x, cplx y);

}  // namespace worldline::elliptic
