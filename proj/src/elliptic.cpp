#include "worldline/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "worldline/errors.hpp"

namespace worldline::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;

void check_parameter(double m) {
  if (!(m >= 0.0 && m < 1.0)) {
    throw Error(ErrorKind::Domain, "elliptic parameter m must lie in [0, 1), got " +
                                       std::to_string(m));
  }
}

using std::abs;
using std::sqrt;

template <class T>
T rc_impl(T x, T y) {
  const double tol = kConfig.carlson_tol;
  const T a0 = (x + y + y) / 3.0;
  const double q = std::pow(3.0 * tol, -1.0 / 8.0) * abs(a0 - x);
  T a = a0;
  double pow4 = 1.0;
  const T y0 = y;
  for (int it = 0; it < kConfig.max_iter && pow4 * q >= abs(a); ++it) {
    const T lam = 2.0 * sqrt(x) * sqrt(y) + y;
    a = (a + lam) / 4.0;
    x = (x + lam) / 4.0;
    y = (y + lam) / 4.0;
    pow4 /= 4.0;
  }
  const T s = (y0 - a0) * pow4 / a;
  const T s2 = s * s;
  const T poly = 1.0 + s2 * (3.0 / 10.0) + s2 * s / 7.0 + s2 * s2 * (3.0 / 8.0) +
                 s2 * s2 * s * (9.0 / 22.0) + s2 * s2 * s2 * (159.0 / 208.0) +
                 s2 * s2 * s2 * s * (9.0 / 8.0);
  return poly / sqrt(a);
}

template <class T>
T rf_impl(T x, T y, T z) {
  const double tol = kConfig.carlson_tol;
  const T a0 = (x + y + z) / 3.0;
  const double q =
      std::pow(3.0 * tol, -1.0 / 6.0) * std::max({abs(a0 - x), abs(a0 - y), abs(a0 - z)});
  T a = a0;
  double pow4 = 1.0;
  const T x0 = x, y0 = y;
  for (int it = 0; it < kConfig.max_iter && pow4 * q >= abs(a); ++it) {
    const T sx = sqrt(x), sy = sqrt(y), sz = sqrt(z);
    const T lam = sx * sy + sx * sz + sy * sz;
    a = (a + lam) / 4.0;
    x = (x + lam) / 4.0;
    y = (y + lam) / 4.0;
    z = (z + lam) / 4.0;
    pow4 /= 4.0;
  }
  const T xx = (a0 - x0) * pow4 / a;
  const T yy = (a0 - y0) * pow4 / a;
  const T zz = -(xx + yy);
  const T e2 = xx * yy - zz * zz;
  const T e3 = xx * yy * zz;
  return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / sqrt(a);
}

template <class T>
T rd_impl(T x, T y, T z) {
  const double tol = kConfig.carlson_tol;
  const T a0 = (x + y + 3.0 * z) / 5.0;
  const double q =
      std::pow(tol / 4.0, -1.0 / 6.0) * std::max({abs(a0 - x), abs(a0 - y), abs(a0 - z)});
  T a = a0;
  double pow4 = 1.0;
  T sum = 0.0;
  const T x0 = x, y0 = y;
  for (int it = 0; it < kConfig.max_iter && pow4 * q >= abs(a); ++it) {
    const T sx = sqrt(x), sy = sqrt(y), sz = sqrt(z);
    const T lam = sx * sy + sx * sz + sy * sz;
    sum += pow4 / (sz * (z + lam));
    a = (a + lam) / 4.0;
    x = (x + lam) / 4.0;
    y = (y + lam) / 4.0;
    z = (z + lam) / 4.0;
    pow4 /= 4.0;
  }
  const T xx = (a0 - x0) * pow4 / a;
  const T yy = (a0 - y0) * pow4 / a;
  const T zz = -(xx + yy) / 3.0;
  const T xy = xx * yy;
  const T z2 = zz * zz;
  const T e2 = xy - 6.0 * z2;
  const T e3 = (3.0 * xy - 8.0 * z2) * zz;
  const T e4 = 3.0 * (xy - z2) * z2;
  const T e5 = xy * z2 * zz;
  const T series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                   9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return pow4 * series / (a * sqrt(a)) + 3.0 * sum;
}

template <class T>
T rj_impl(T x, T y, T z, T p) {
  const double tol = kConfig.carlson_tol;
  const T a0 = (x + y + z + 2.0 * p) / 5.0;
  const T delta = (p - x) * (p - y) * (p - z);
  const double q = std::pow(tol / 4.0, -1.0 / 6.0) *
                   std::max({abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p)});
  T a = a0;
  double pow4 = 1.0;
  T sum = 0.0;
  const T x0 = x, y0 = y, z0 = z;
  for (int it = 0; it < kConfig.max_iter && pow4 * q >= abs(a); ++it) {
    const T sx = sqrt(x), sy = sqrt(y), sz = sqrt(z), sp = sqrt(p);
    const T lam = sx * sy + sx * sz + sy * sz;
    const T d = (sp + sx) * (sp + sy) * (sp + sz);
    const T e = pow4 * pow4 * pow4 * delta / (d * d);
    sum += pow4 * rc_impl<T>(T(1.0), T(1.0) + e) / d;
    a = (a + lam) / 4.0;
    x = (x + lam) / 4.0;
    y = (y + lam) / 4.0;
    z = (z + lam) / 4.0;
    p = (p + lam) / 4.0;
    pow4 /= 4.0;
  }
  const T xx = (a0 - x0) * pow4 / a;
  const T yy = (a0 - y0) * pow4 / a;
  const T zz = (a0 - z0) * pow4 / a;
  const T pp = -(xx + yy + zz) / 2.0;
  const T p2 = pp * pp;
  const T e2 = xx * yy + xx * zz + yy * zz - 3.0 * p2;
  const T e3 = xx * yy * zz + 2.0 * e2 * pp + 4.0 * p2 * pp;
  const T e4 = (2.0 * xx * yy * zz + e2 * pp + 3.0 * p2 * pp) * pp;
  const T e5 = xx * yy * zz * p2;
  const T series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                   9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
  return pow4 * series / (a * sqrt(a)) + 6.0 * sum;
}

// Splits phi = k*pi + r with r in [-pi/2, pi/2].
struct Reduced {
  double periods;
  double rest;
};

Reduced reduce_amplitude(double phi) {
  const double k = std::nearbyint(phi / kPi);
  return {k, phi - k * kPi};
}

template <class T>
T pi_principal(T n, double phi, double m) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double s2 = s * s;
  const T x(c * c), y(1.0 - m * s2), z(1.0);
  return s * rf_impl<T>(x, y, z) +
         n * (s * s2 / 3.0) * rj_impl<T>(x, y, z, T(1.0) - n * s2);
}

template <class T>
T pi_complete(T n, double m) {
  return rf_impl<T>(T(0.0), T(1.0 - m), T(1.0)) +
         n / 3.0 * rj_impl<T>(T(0.0), T(1.0 - m), T(1.0), T(1.0) - n);
}

}  // namespace

double carlson_rf(double x, double y, double z) { return rf_impl<double>(x, y, z); }
cplx carlson_rf(cplx x, cplx y, cplx z) { return rf_impl<cplx>(x, y, z); }
double carlson_rd(double x, double y, double z) { return rd_impl<double>(x, y, z); }
cplx carlson_rd(cplx x, cplx y, cplx z) { return rd_impl<cplx>(x, y, z); }
double carlson_rj(double x, double y, double z, double p) { return rj_impl<double>(x, y, z, p); }
cplx carlson_rj(cplx x, cplx y, cplx z, cplx p) { return rj_impl<cplx>(x, y, z, p); }
double carlson_rc(double x, double y) { return rc_impl<double>(x, y); }
cplx carlson_rc(cplx x, cplx y) { return rc_impl<cplx>(x, y); }

double complete_K(double m) {
  check_parameter(m);
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int it = 0; it < kConfig.max_iter && std::abs(a - b) > kConfig.agm_tol * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

double complete_E(double m) {
  check_parameter(m);
  // E = K (1 - sum_{n>=0} 2^{n-1} c_n^2), c_0^2 = m.
  double a = 1.0, b = std::sqrt(1.0 - m);
  double sum = 0.5 * m;
  double weight = 0.5;
  for (int it = 0; it < kConfig.max_iter && std::abs(a - b) > kConfig.agm_tol * a; ++it) {
    const double c = 0.5 * (a - b);
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
    weight *= 2.0;
    sum += weight * c * c;
  }
  const double K = kPi / (a + b);
  return K * (1.0 - sum);
}

JacobiValues jacobi(double u, double m) {
  check_parameter(m);
  JacobiValues v;
  if (m == 0.0) {
    v.sn = std::sin(u);
    v.cn = std::cos(u);
    v.dn = 1.0;
    v.am = u;
    return v;
  }
  std::array<double, 64> a{}, c{};
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (std::abs(c[n]) > kConfig.agm_tol && n + 1 < static_cast<int>(a.size())) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i >= 1; --i) {
    phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  }
  v.am = phi;
  v.sn = std::sin(phi);
  v.cn = std::cos(phi);
  v.dn = std::sqrt(1.0 - m * v.sn * v.sn);
  return v;
}

double inverse_sn(double x, double m) {
  check_parameter(m);
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::Domain, "inverse_sn argument must lie in [0, 1]");
  }
  return x * carlson_rf(1.0 - x * x, 1.0 - m * x * x, 1.0);
}

double incomplete_F(double phi, double m) {
  check_parameter(m);
  const auto [k, r] = reduce_amplitude(phi);
  const double s = std::sin(r), c = std::cos(r);
  const double principal = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
  return k == 0.0 ? principal : 2.0 * k * complete_K(m) + principal;
}

double incomplete_E(double phi, double m) {
  check_parameter(m);
  const auto [k, r] = reduce_amplitude(phi);
  const double s = std::sin(r), c = std::cos(r);
  const double x = c * c, y = 1.0 - m * s * s;
  const double principal = s * carlson_rf(x, y, 1.0) - m * s * s * s / 3.0 * carlson_rd(x, y, 1.0);
  return k == 0.0 ? principal : 2.0 * k * complete_E(m) + principal;
}

double incomplete_Pi(double n, double phi, double m) {
  check_parameter(m);
  if (n >= 1.0) {
    // Pole at sin^2(theta) = 1/n, i.e. theta = asin(1/sqrt(n)) <= pi/2.
    const double pole = std::asin(1.0 / std::sqrt(n));
    if (std::abs(phi) >= pole) {
      throw Error(ErrorKind::PoleOnPath,
                  "incomplete_Pi: characteristic n >= 1 puts a pole on the path");
    }
  }
  const auto [k, r] = reduce_amplitude(phi);
  const double principal = pi_principal<double>(n, r, m);
  return k == 0.0 ? principal : 2.0 * k * pi_complete<double>(n, m) + principal;
}

cplx incomplete_Pi(cplx n, double phi, double m) {
  check_parameter(m);
  if (n.imag() == 0.0) {
    return incomplete_Pi(n.real(), phi, m);
  }
  const auto [k, r] = reduce_amplitude(phi);
  const cplx principal = pi_principal<cplx>(n, r, m);
  return k == 0.0 ? principal : 2.0 * k * pi_complete<cplx>(n, m) + principal;
}

double jacobi_zeta(double u, double m) {
  const JacobiValues j = jacobi(u, m);
  return incomplete_E(j.am, m) - complete_E(m) / complete_K(m) * u;
}

double nome(double m) {
  check_parameter(m);
  if (m == 0.0) {
    return 0.0;
  }
  return std::exp(-kPi * complete_K(1.0 - m) / complete_K(m));
}

double theta1(double z, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorKind::Domain, "theta1 requires a nome 0 < q < 1");
  }
  const double logq = std::log(q);
  double sum = 0.0;
  for (int k = 0; k < 10 * kConfig.max_iter; ++k) {
    const double e = (k + 0.5) * (k + 0.5);
    const double weight = std::exp(e * logq);
    const double term = (k % 2 == 0 ? weight : -weight) * std::sin((2 * k + 1) * z);
    sum += term;
    // The bound uses the weight so that a vanishing sin does not stop early.
    if (weight <= kConfig.theta_rel_tol * std::abs(sum) || weight < 1e-300) {
      break;
    }
  }
  return 2.0 * sum;
}

cplx sqrt_upper(cplx z) {
  if (z.imag() == 0.0 && z.real() >= 0.0) {
    return {std::sqrt(z.real()), 0.0};
  }
  cplx r = std::sqrt(z);
  if (r.imag() < 0.0) {
    r = -r;
  }
  return r;
}

}  // namespace worldline::elliptic
