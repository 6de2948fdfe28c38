#include "worldline/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "worldline/elliptic.hpp"
#include "worldline/errors.hpp"

namespace worldline {

EllipticData derive(const PhaseParams& e) {
  if (!(std::isfinite(e.e1) && std::isfinite(e.e2) && std::isfinite(e.e3)) ||
      !(e.e1 < 0.0 && 0.0 < e.e2 && e.e2 < e.e3)) {
    std::ostringstream msg;
    msg << "phase parameters must satisfy e1 < 0 < e2 < e3, got (" << e.e1 << ", " << e.e2
        << ", " << e.e3 << ")";
    throw Error(ErrorKind::InvalidPhaseParams, msg.str());
  }
  EllipticData d;
  d.e = e;
  d.l3 = e.e3 - e.e1;
  d.l4 = e.e3 - e.e2;
  d.l1 = e.e2 * d.l3;
  d.l2 = e.e1 * d.l4;
  d.m = d.l4 / d.l3;
  d.sqrt_l3 = std::sqrt(d.l3);
  d.K = elliptic::complete_K(d.m);
  d.E = elliptic::complete_E(d.m);
  d.omega = 2.0 * d.K / d.sqrt_l3;
  d.c1 = -0.5 * (e.e1 + e.e2 + e.e3);
  d.c2 = e.e1 * e.e2 + e.e1 * e.e3 + e.e2 * e.e3;
  d.c3 = std::sqrt(-e.e1 * e.e2 * e.e3);
  return d;
}

double q1(const EllipticData& d, double t) {
  return ((t + 2.0 * d.c1) * t + d.c2) * t + d.c3 * d.c3;
}

Curvatures curvatures(const EllipticData& d, double u, double shift) {
  const auto j = elliptic::jacobi(d.sqrt_l3 * (u - shift), d.m);
  const double s2 = j.sn * j.sn;
  const double num = d.l1 - d.l2 * s2;
  const double den = d.l3 - d.l4 * s2;
  Curvatures c;
  const double k22 = num / den;
  c.k2 = std::sqrt(k22);
  // d(k2^2)/du
  const double dk22 =
      2.0 * j.sn * j.cn * j.dn * d.sqrt_l3 * (d.l4 * num - d.l2 * den) / (den * den);
  c.k2_dot = dk22 / (2.0 * c.k2);
  c.k1 = 1.5 * k22 + d.c1;
  c.k3 = d.c3 / k22;
  c.k2_ddot = -2.0 * k22 * c.k2 + d.c3 * d.c3 / (k22 * c.k2) - 2.0 * d.c1 * c.k2;
  c.k1_dot = 3.0 * c.k2 * c.k2_dot;
  c.k3_dot = -2.0 * d.c3 * c.k2_dot / (k22 * c.k2);
  return c;
}

double k2(const EllipticData& d, double u) { return curvatures(d, u).k2; }
double k2_dot(const EllipticData& d, double u) { return curvatures(d, u).k2_dot; }
double k1(const EllipticData& d, double u) { return curvatures(d, u).k1; }
double k3(const EllipticData& d, double u) { return curvatures(d, u).k3; }

double k2_ddot_printed_variant(const EllipticData& d, double u) {
  const Curvatures c = curvatures(d, u);
  return c.k2_ddot - 4.0 * c.k2;
}

double OdeResiduals::max() const {
  return std::max({constraint, cubic, second, helicity, first});
}

OdeResiduals verify_world_line_odes(const EllipticData& d, const std::vector<double>& grid,
                                    double c2_offset) {
  OdeResiduals r;
  const auto& e = d.e;
  for (double u : grid) {
    const Curvatures c = curvatures(d, u);
    const double k22 = c.k2 * c.k2;
    const double c2 = d.c2 + c2_offset;
    r.constraint = std::max(r.constraint, std::abs(c.k2_dot * c.k2_dot + k22 * k22 +
                                                   d.c3 * d.c3 / k22 + 2.0 * d.c1 * k22 + c2));
    const double kk = c.k2 * c.k2_dot;
    r.cubic = std::max(r.cubic,
                       std::abs(kk * kk + (k22 - e.e1) * (k22 - e.e2) * (k22 - e.e3)));
    r.second = std::max(
        r.second, std::abs(c.k2_ddot - c.k2 * (c.k3 * c.k3 + k22 - 2.0 * c.k1)));
    r.helicity = std::max(r.helicity, std::abs(c.k2 * c.k3_dot + 2.0 * c.k3 * c.k2_dot));
    r.first = std::max(r.first, std::abs(c.k1_dot - 3.0 * c.k2 * c.k2_dot));
  }
  return r;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    g[i] = a + (b - a) * static_cast<double>(i) / n;
  }
  return g;
}

}  // namespace worldline
