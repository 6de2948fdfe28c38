#include "worldline/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "worldline/elliptic.hpp"
#include "worldline/errors.hpp"

namespace worldline {

std::string_view to_string(SpectralKind k) noexcept {
  switch (k) {
    case SpectralKind::RegularReal: return "Regular-Real";
    case SpectralKind::RegularComplex: return "Regular-Complex";
    case SpectralKind::Exceptional: return "Exceptional";
  }
  return "Unknown";
}

namespace {

cplx q2_eval(const std::array<double, 4>& q, cplx s) {
  return ((s + q[2]) * s + q[1]) * s + q[0];
}

cplx q2_deriv(const std::array<double, 4>& q, cplx s) {
  return (3.0 * s + 2.0 * q[2]) * s + q[1];
}

cplx polish(const std::array<double, 4>& q, cplx s) {
  for (int it = 0; it < 4; ++it) {
    const cplx dq = q2_deriv(q, s);
    if (std::abs(dq) == 0.0) break;
    const cplx step = q2_eval(q, s) / dq;
    s -= step;
    if (std::abs(step) <= 1e-16 * std::abs(s)) break;
  }
  return s;
}

// Roots of s^3 + b s^2 + c s + d: three real (ascending) or one real and a
// conjugate pair (real first, then the root with positive imaginary part).
std::array<cplx, 3> cubic_roots(double b, double c, double d) {
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  std::array<cplx, 3> r;
  if (disc >= 0.0 && p < 0.0) {
    const double rr = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * rr), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    std::array<double, 3> x;
    for (int k = 0; k < 3; ++k) {
      x[k] = rr * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift;
    }
    std::sort(x.begin(), x.end());
    for (int k = 0; k < 3; ++k) r[k] = x[k];
  } else {
    const double sq = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    const double re = -(u + v) / 2.0 + shift;
    const double im = std::sqrt(3.0) / 2.0 * std::abs(u - v);
    r[0] = u + v + shift;
    r[1] = cplx(re, im);
    r[2] = cplx(re, -im);
  }
  return r;
}

}  // namespace

double cubic_discriminant(const EllipticData& d) {
  const double b = 2.0 * d.c1, c = d.c2 + 1.0, dd = d.c3 * d.c3;
  return 18.0 * b * c * dd - 4.0 * b * b * b * dd + b * b * c * c - 4.0 * c * c * c -
         27.0 * dd * dd;
}

SpectralData characteristic_data(const EllipticData& d) {
  SpectralData sd;
  sd.characteristic = expected_characteristic(d);
  sd.q2 = {d.c3 * d.c3, d.c2 + 1.0, 2.0 * d.c1, 1.0};
  sd.discriminant = cubic_discriminant(d);

  auto r = cubic_roots(sd.q2[2], sd.q2[1], sd.q2[0]);
  for (auto& x : r) x = polish(sd.q2, x);
  const bool real_case = r[1].imag() == 0.0;
  if (real_case) {
    std::array<double, 3> x{r[0].real(), r[1].real(), r[2].real()};
    std::sort(x.begin(), x.end());
    sd.rho1 = x[0];
    sd.rho2 = x[1];
    sd.rho3 = x[2];
  } else {
    sd.rho1 = cplx(r[0].real(), 0.0);
    sd.rho2 = r[1].imag() > 0.0 ? r[1] : r[2];
    sd.rho3 = std::conj(sd.rho2);
  }

  const double scale = std::max({1.0, std::norm(sd.rho2), std::norm(sd.rho3)});
  sd.eps_disc = 1e-9 * scale;
  const double gap2 = std::norm(sd.rho2 - sd.rho3);

  if (gap2 < sd.eps_disc) {
    // a s^3 + b s^2 + c s + e with a = 1
    const double b = sd.q2[2], c = sd.q2[1], e = sd.q2[0];
    const double den = b * b - 3.0 * c;
    const double dbl = (9.0 * e - b * c) / (2.0 * den);
    const double simple = (4.0 * b * c - 9.0 * e - b * b * b) / den;
    sd.rho1 = simple;
    sd.rho2 = dbl;
    sd.rho3 = dbl;
    sd.kind = SpectralKind::Exceptional;
  } else {
    sd.kind = real_case ? SpectralKind::RegularReal : SpectralKind::RegularComplex;
  }

  const cplx l0(0.0, std::sqrt(std::abs(sd.rho1.real())));
  const cplx l2 = elliptic::sqrt_upper(sd.rho2);
  const cplx l4 = elliptic::sqrt_upper(sd.rho3);
  sd.lambda = {l0, -l0, l2, -l2, l4, -l4};

  if (sd.kind == SpectralKind::Exceptional) {
    sd.distinct = {{l0, 1}, {-l0, 1}, {l2, 2}, {-l2, 2}};
    // The generalized eigenvector equation must be solvable at u = 0.
    const CurvatureSample s0 = sample_curvatures(d, 0.0);
    const Mat6 h = H_matrix(s0);
    for (double lam : {l2.real(), -l2.real()}) {
      const Vec6 t = T_vector(lam, s0);
      const CVec6 l = L_vector(lam, s0);
      const Vec6 res = h * t - lam * t - l.real();
      sd.fredholm_residual =
          std::max(sd.fredholm_residual, res.cwiseAbs().maxCoeff() / t.cwiseAbs().maxCoeff());
    }
    if (!(sd.fredholm_residual < 1e-7)) {
      throw Error(ErrorKind::DegenerateSpectrum,
                  "near-double root of the characteristic cubic without a generalized "
                  "eigenvector");
    }
  } else {
    for (const cplx& l : sd.lambda) sd.distinct.push_back({l, 1});
  }
  return sd;
}

CVec6 L_vector(cplx lambda, const CurvatureSample& s) {
  const cplx q = lambda * lambda - s.k2 * s.k2;
  CVec6 l;
  l(0) = lambda * q * (lambda * lambda + s.k1 - s.k2 * s.k2);
  l(1) = lambda * (lambda - s.k2 * s.k2_dot);
  l(2) = -lambda * lambda * q;
  l(3) = lambda * (lambda * s.k2_dot - s.k2);
  l(4) = s.k2 * s.k3 * q;
  l(5) = lambda * q;
  return l;
}

CVec6 L_vector(cplx lambda, double u, const EllipticData& d) {
  return L_vector(lambda, sample_curvatures(d, u));
}

Vec6 T_vector(double lambda, const CurvatureSample& s, double threshold) {
  const double k22 = s.k2 * s.k2;
  const double q = lambda * lambda - k22;
  if (std::abs(q) <= threshold) {
    throw Error(ErrorKind::SingularPoint, "T is singular where lambda^2 = k2^2");
  }
  const double c1 = s.k1 - 1.5 * k22;
  Vec6 t;
  t(0) = 0.5 * q * (6.0 * lambda * lambda + 2.0 * c1 + k22);
  t(1) = s.k2 * (k22 * s.k2_dot + lambda * lambda * s.k2_dot - 2.0 * lambda * s.k2) / q;
  t(2) = -2.0 * lambda * q;
  t(3) = s.k2 * (lambda * lambda + k22 - 2.0 * lambda * s.k2 * s.k2_dot) / q;
  t(4) = 0.0;
  t(5) = q;
  return t;
}

Vec6 T_vector(double lambda, double u, const EllipticData& d, double threshold) {
  return T_vector(lambda, sample_curvatures(d, u), threshold);
}

namespace {

double distance_to_lattice(double u, double base, double omega) {
  const double x = std::remainder(u - base, omega);
  return std::abs(x);
}

}  // namespace

double SingularSets::distance_to_zero(double u) const {
  return empty ? INFINITY : distance_to_lattice(u, zero_base, omega);
}

double SingularSets::distance_to_pole(double u) const {
  return empty ? INFINITY : distance_to_lattice(u, pole_base, omega);
}

SingularSets singular_sets(cplx lambda, const EllipticData& d, double eps_factor) {
  SingularSets s;
  s.omega = d.omega;
  s.eps = eps_factor * d.omega;
  if (lambda.imag() != 0.0) {
    return s;
  }
  const double lam = lambda.real();
  const double a = d.l1 - lam * lam * d.l3;
  const double b = d.l2 - lam * lam * d.l4;
  const double alpha2 = b / a;
  if (!(alpha2 >= 1.0) || !std::isfinite(alpha2)) {
    throw Error(ErrorKind::AlphaOutOfRange, "1/alpha must lie in [0, 1] for a real eigenvalue");
  }
  s.empty = false;
  s.alpha = std::sqrt(alpha2);
  s.p = elliptic::inverse_sn(1.0 / s.alpha, d.m) / d.sqrt_l3;
  const double sign = lam > 0.0 ? 1.0 : -1.0;
  s.zero_base = sign * s.p;
  s.pole_base = -sign * s.p;
  return s;
}

}  // namespace worldline
