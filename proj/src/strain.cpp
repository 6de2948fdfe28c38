#include "worldline/strain.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "worldline/errors.hpp"

namespace worldline {

namespace {

CurveJet stencil(const CurveFunction& f, double t, double h, const Vec4& z) {
  const Vec4 m2 = f(t - 2.0 * h), m1 = f(t - h), p1 = f(t + h), p2 = f(t + 2.0 * h);
  CurveJet j;
  j.t = t;
  j.p = z;
  j.p1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
  j.p2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
  j.p3 = (-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * h * h * h);
  return j;
}

}  // namespace

// One Richardson step on the stencils at h and h/2: sixth order for the first
// two derivatives, fourth order for the third.
CurveJet differentiate(const CurveFunction& f, double t, double h) {
  const Vec4 z = f(t);
  const CurveJet c = stencil(f, t, h, z);
  CurveJet j = stencil(f, t, 0.5 * h, z);
  j.p1 = (64.0 * j.p1 - c.p1) / 63.0;
  j.p2 = (64.0 * j.p2 - c.p2) / 63.0;
  j.p3 = (16.0 * j.p3 - c.p3) / 15.0;
  return j;
}

SampledCurve sample_curve(const CurveFunction& f, const std::vector<double>& grid, double h) {
  SampledCurve c;
  c.jets.reserve(grid.size());
  for (double t : grid) c.jets.push_back(differentiate(f, t, h));
  return c;
}

LiftJet null_lift(const CurveJet& j) {
  const double speed = minkowski_product(j.p1, j.p1);
  if (!(speed < 0.0)) {
    throw Error(ErrorKind::NotTimelike, "curve is not time-like at t = " + std::to_string(j.t));
  }
  auto embed = [](double head, const Vec4& v, double tail) {
    Vec6 y;
    y << head, v(0), v(1), v(2), v(3), tail;
    return y;
  };
  LiftJet g;
  g.g0 = embed(1.0, j.p, 0.5 * minkowski_product(j.p, j.p));
  g.g1 = embed(0.0, j.p1, minkowski_product(j.p, j.p1));
  g.g2 = embed(0.0, j.p2, speed + minkowski_product(j.p, j.p2));
  g.g3 = embed(0.0, j.p3,
               3.0 * minkowski_product(j.p1, j.p2) + minkowski_product(j.p, j.p3));
  return g;
}

std::vector<LiftJet> null_lift(const SampledCurve& c) {
  std::vector<LiftJet> out;
  out.reserve(c.jets.size());
  for (const auto& j : c.jets) out.push_back(null_lift(j));
  return out;
}

LiftJet rescale_lift(const LiftJet& g, double phi, double phi1, double phi2, double phi3) {
  LiftJet r;
  r.g0 = phi * g.g0;
  r.g1 = phi * g.g1 + phi1 * g.g0;
  r.g2 = phi * g.g2 + 2.0 * phi1 * g.g1 + phi2 * g.g0;
  r.g3 = phi * g.g3 + 3.0 * phi1 * g.g2 + 3.0 * phi2 * g.g1 + phi3 * g.g0;
  return r;
}

LiftJet transform_lift(const Mat6& x, const LiftJet& g) {
  return {x * g.g0, x * g.g1, x * g.g2, x * g.g3};
}

OsculatingBasis osculating_basis(const LiftJet& g, double tol) {
  const double speed = -scalar_product(g.g1, g.g1);
  Eigen::Matrix<double, 6, 3> span;
  span << g.g0.normalized(), g.g1.normalized(), g.g2.normalized();
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix<double, 6, 3>>(span).singularValues();
  if (!(speed > 0.0) || !(sv(2) > tol * sv(0))) {
    throw Error(ErrorKind::DegenerateOsculating, "osculating space is degenerate");
  }
  OsculatingBasis b;
  const double s = std::sqrt(speed);
  b.a1 = g.g1 / s;
  // X is orthogonal to A1, and <Gamma, X> = <Gamma, Gamma''> = speed.
  const Vec6 x = g.g2 + scalar_product(g.g2, b.a1) * b.a1;
  const double gx = scalar_product(g.g0, x);
  const Vec6 y = x - scalar_product(x, x) / (2.0 * gx) * g.g0;  // null, <Gamma, Y> = gx
  const double n = std::sqrt(2.0 * std::abs(gx));
  const Vec6 minus = (g.g0 - y) / n;
  const Vec6 plus = (g.g0 + y) / n;
  // gx > 0 for any lift with positive factor; the signs below follow it.
  b.a2 = gx > 0.0 ? minus : plus;
  b.a3 = gx > 0.0 ? plus : minus;
  return b;
}

double strain_coefficient(const LiftJet& g) {
  const OsculatingBasis b = osculating_basis(g);
  Vec6 pr = g.g3;
  pr += scalar_product(g.g3, b.a1) * b.a1;
  pr += scalar_product(g.g3, b.a2) * b.a2;
  pr -= scalar_product(g.g3, b.a3) * b.a3;
  return scalar_product(pr, pr) / std::abs(scalar_product(g.g1, g.g1));
}

StrainReport conformal_strain(const SampledCurve& c, double vertex_tol, double abs_tol) {
  StrainReport r;
  r.vertex_tol = vertex_tol;
  double qmax = 0.0;
  for (const auto& j : c.jets) {
    const double q = strain_coefficient(null_lift(j));
    r.t.push_back(j.t);
    r.Q.push_back(q);
    r.upsilon.push_back(std::pow(std::abs(q), 0.25));
    qmax = std::max(qmax, std::abs(q));
  }
  r.totally_degenerate = qmax < abs_tol;
  for (double q : r.Q) {
    r.vertex.push_back(r.totally_degenerate || std::abs(q) < vertex_tol * qmax);
  }
  r.u.assign(r.t.size(), 0.0);
  for (std::size_t i = 1; i < r.t.size(); ++i) {
    r.u[i] = r.u[i - 1] + 0.5 * (r.t[i] - r.t[i - 1]) * (r.upsilon[i] + r.upsilon[i - 1]);
  }
  return r;
}

namespace {

double hermite(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
         (s3 - s2) * h * d1;
}

std::size_t segment(const std::vector<double>& x, double v) {
  const auto it = std::upper_bound(x.begin(), x.end(), v);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x.begin(), 1));
  return std::min(i, x.size() - 1) - 1;
}

constexpr double kGaussNodes[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                                   -0.9061798459386640, 0.9061798459386640};
constexpr double kGaussWeights[5] = {0.5688888888888889, 0.4786286704993665,
                                     0.4786286704993665, 0.2369268850561891,
                                     0.2369268850561891};

}  // namespace

double ConformalReparameterization::density(double t) const {
  return std::pow(std::abs(strain_coefficient(null_lift(jet_(t)))), 0.25);
}

double ConformalReparameterization::integral(std::size_t i, double t) const {
  const double a = t_[i];
  const double half = 0.5 * (t - a), mid = 0.5 * (t + a);
  double s = 0.0;
  for (int k = 0; k < 5; ++k) s += kGaussWeights[k] * density(mid + half * kGaussNodes[k]);
  return u_[i] + half * s;
}

void ConformalReparameterization::build(double t0, double t1, int nodes, double vertex_tol) {
  if (!(t1 > t0) || nodes < 2) {
    throw Error(ErrorKind::Domain, "reparameterization needs t1 > t0 and at least two nodes");
  }
  // Vertex scan on the nodes and interval midpoints.
  SampledCurve c;
  const int fine = 2 * nodes;
  for (int i = 0; i <= fine; ++i) c.jets.push_back(jet_(t0 + (t1 - t0) * i / fine));
  const StrainReport rep = conformal_strain(c, vertex_tol);
  for (std::size_t i = 0; i < rep.vertex.size(); ++i) {
    if (rep.vertex[i]) {
      throw Error(ErrorKind::VertexOnSegment,
                  "vertex at t = " + std::to_string(rep.t[i]) + " on the segment");
    }
  }
  t_.assign(1, rep.t[0]);
  u_.assign(1, 0.0);
  upsilon_.assign(1, rep.upsilon[0]);
  for (std::size_t i = 2; i < rep.t.size(); i += 2) {
    const double u = integral(t_.size() - 1, rep.t[i]);
    t_.push_back(rep.t[i]);
    u_.push_back(u);
    upsilon_.push_back(rep.upsilon[i]);
  }
}

double ConformalReparameterization::u_of_t(double t) const { return integral(segment(t_, t), t); }

double ConformalReparameterization::t_of_u(double u) const {
  const std::size_t i = segment(u_, u);
  double t = hermite(u_[i], u_[i + 1], t_[i], t_[i + 1], 1.0 / upsilon_[i],
                     1.0 / upsilon_[i + 1], u);
  for (int it = 0; it < 4; ++it) {
    const double step = (integral(i, t) - u) / density(t);
    t -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

ConformalReparameterization reparameterize_by_conformal_parameter(
    const CurveFunction& p, double t0, double t1, int nodes, double vertex_tol, double h) {
  ConformalReparameterization r;
  r.curve_ = p;
  r.jet_ = [p, h](double t) { return differentiate(p, t, h); };
  r.build(t0, t1, nodes, vertex_tol);
  return r;
}

ConformalReparameterization reparameterize_by_conformal_parameter(const JetFunction& p, double t0,
                                                                  double t1, int nodes,
                                                                  double vertex_tol) {
  ConformalReparameterization r;
  r.curve_ = [p](double t) { return p(t).p; };
  r.jet_ = p;
  r.build(t0, t1, nodes, vertex_tol);
  return r;
}

}  // namespace worldline
