#include "worldline/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "worldline/elliptic.hpp"
#include "worldline/errors.hpp"

namespace worldline {

namespace {

constexpr double kPi = std::numbers::pi;

using Poly = std::array<double, 4>;  // coefficients in x, low to high

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly r{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; i + j < 4; ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

Poly poly_add(const Poly& p, const Poly& q, double s = 1.0) {
  Poly r;
  for (int i = 0; i < 4; ++i) r[i] = p[i] + s * q[i];
  return r;
}

}  // namespace

FactorConstants factor_constants(cplx lambda, const EllipticData& d, bool second_kind,
                                 double eps_den) {
  FactorConstants f;
  f.lambda = lambda;
  const cplx l2 = lambda * lambda;
  f.a = d.l1 - l2 * d.l3;
  f.b = d.l2 - l2 * d.l4;
  if (std::abs(f.a) < eps_den || std::abs(f.b) < eps_den) {
    throw Error(ErrorKind::SingularPoint, "integrating factor denominator vanishes");
  }
  f.c = lambda * d.l4 / f.b;
  f.d = lambda * (d.l2 * d.l3 - d.l1 * d.l4) / (f.a * f.b);
  f.alpha2 = f.b / f.a;
  f.real = lambda.imag() == 0.0;
  if (!f.real) {
    if (second_kind) {
      throw Error(ErrorKind::Domain, "integrating factor of the second kind needs real lambda");
    }
    return f;
  }

  const double al2 = f.alpha2.real();
  if (!(al2 > 1.0 + eps_den) || std::abs(al2 - d.m) < eps_den) {
    throw Error(ErrorKind::AlphaOutOfRange, "real eigenvalue with alpha^2 <= 1");
  }
  f.alpha = std::sqrt(al2);
  f.p_v = elliptic::inverse_sn(1.0 / f.alpha, d.m);
  f.w = f.alpha / std::sqrt((al2 - d.m) * (al2 - 1.0));
  f.zeta_p = elliptic::jacobi_zeta(f.p_v, d.m);
  f.nome = elliptic::nome(d.m);
  f.zero_base = (lambda.real() > 0.0 ? 1.0 : -1.0) * f.p_v / d.sqrt_l3;

  if (second_kind) {
    f.second_kind = true;
    const double lam2 = l2.real();
    const double a = f.a.real();
    const double n = al2;
    const double p0 = d.l1 + lam2 * d.l3;
    const double p1 = d.l2 + lam2 * d.l4;
    const double u0 = p0 - p1 / n, u1 = p1 / n;
    const double w0 = d.l3 - d.l4 / n, w1 = d.l4 / n;
    f.C2 = u0 * w0 / (a * a);
    f.C1 = (u0 * w1 + u1 * w0) / (a * a);
    f.C0 = u1 * w1 / (a * a);
    // (sn cn dn / x)' x^2 = (1 - 2(1+m) t + 3 m t^2) x + 2 n t (1 - t)(1 - m t),
    // t = sn^2 = (1 - x)/n.
    const Poly x{0.0, 1.0, 0.0, 0.0};
    const Poly t{1.0 / n, -1.0 / n, 0.0, 0.0};
    const Poly one{1.0, 0.0, 0.0, 0.0};
    Poly lin = poly_add(one, t, -2.0 * (1.0 + d.m));
    lin = poly_add(lin, poly_mul(t, t), 3.0 * d.m);
    Poly cub = poly_mul(poly_mul(t, poly_add(one, t, -1.0)), poly_add(one, t, -d.m));
    for (double& c : cub) c *= 2.0 * n;
    f.co = poly_add(poly_mul(lin, x), cub);
  }
  return f;
}

RS r_s_functions(cplx lambda, double u, const EllipticData& d) {
  const Curvatures c = curvatures(d, u);
  const double k22 = c.k2 * c.k2;
  const cplx den = k22 - lambda * lambda;
  if (std::abs(den) <= 1e-14 * std::max(1.0, k22)) {
    throw Error(ErrorKind::SingularPoint, "r and s are singular where k2^2 = lambda^2");
  }
  RS rs;
  rs.r = (c.k2 * c.k2_dot + lambda) / den;
  rs.s = (lambda * lambda + k22 - 2.0 * lambda * c.k2 * c.k2_dot) / (den * den);
  return rs;
}

double g1(const FactorConstants& f, double v, const EllipticData& d) {
  const double scale = kPi / (2.0 * d.K);
  const double num = elliptic::theta1(scale * (f.p_v + v), f.nome);
  const double den = elliptic::theta1(scale * (f.p_v - v), f.nome);
  return 0.5 * f.w * std::log(std::abs(num / den)) - f.w * f.zeta_p * v;
}

cplx delta_first_kind(const FactorConstants& f, double u, const EllipticData& d) {
  const double v = d.sqrt_l3 * u;
  const auto j = elliptic::jacobi(v, d.m);
  const double s2 = j.sn * j.sn;
  const double den = d.l3 - d.l4 * s2;
  if (!f.real) {
    const cplx pi3 = elliptic::incomplete_Pi(f.alpha2, j.am, d.m);
    return 0.5 * std::log((f.a - f.b * s2) / den) - 0.5 * std::log(f.a / d.l3) + f.c * u +
           f.d / d.sqrt_l3 * pi3;
  }
  const double a = f.a.real(), b = f.b.real();
  const double re = 0.5 * std::log(std::abs((a - b * s2) / den)) -
                    0.5 * std::log(std::abs(a / d.l3)) + f.c.real() * u +
                    f.d.real() * g1(f, v, d) / d.sqrt_l3;
  const double count = std::floor((u - f.zero_base) / d.omega) -
                       std::floor(-f.zero_base / d.omega);
  return {re, kPi * count};
}

double eta_second_kind(const FactorConstants& f, double u, const EllipticData& d) {
  if (!f.second_kind) {
    throw Error(ErrorKind::Domain, "factor constants were built without the second kind");
  }
  const double lam = f.lambda.real();
  const double n = f.alpha2.real();
  const double v = d.sqrt_l3 * u;
  const auto j = elliptic::jacobi(v, d.m);
  const double x = 1.0 - n * j.sn * j.sn;
  const double y = j.sn * j.cn * j.dn / x;
  const double g = g1(f, v, d);
  const double ev = elliptic::incomplete_E(j.am, d.m);
  const auto& co = f.co;
  const double i2 =
      (y - co[1] * g - (co[2] + co[3]) * v + co[3] * n * (v - ev) / d.m) / co[0];
  const double k22 = curvatures(d, u).k2 * curvatures(d, u).k2;
  return lam / (k22 - lam * lam) - lam / (d.e.e2 - lam * lam) +
         (f.C0 * v + f.C1 * g + f.C2 * i2) / d.sqrt_l3;
}

namespace {

CompensatedProducts direct_products(const FactorConstants& f, double u, const EllipticData& d) {
  const CurvatureSample s = sample_curvatures(d, u);
  const cplx scale = std::exp(-delta_first_kind(f, u, d));
  CompensatedProducts out;
  const CVec6 l = L_vector(f.lambda, s);
  out.first = scale * l;
  if (f.second_kind) {
    const double lam = f.lambda.real();
    const Vec6 t = T_vector(lam, s, 0.0);
    const double eta = eta_second_kind(f, u, d);
    out.second = scale * (t.cast<cplx>() - eta * l);
    out.has_second = true;
  }
  return out;
}

double nearest_lattice_point(double u, double base, double omega) {
  return base + omega * std::nearbyint((u - base) / omega);
}

}  // namespace

CompensatedProducts compensated_products(const FactorConstants& f, double u,
                                         const EllipticData& d, double eps) {
  if (!f.real) return direct_products(f, u, d);
  const double zero = nearest_lattice_point(u, f.zero_base, d.omega);
  const double pole = nearest_lattice_point(u, -f.zero_base, d.omega);
  double center = 0.0;
  if (std::abs(u - zero) < eps) {
    center = zero;
  } else if (std::abs(u - pole) < eps) {
    center = pole;
  } else {
    return direct_products(f, u, d);
  }
  const std::array<double, 4> nodes{center - 2.0 * eps, center - eps, center + eps,
                                    center + 2.0 * eps};
  CompensatedProducts out;
  out.first.setZero();
  out.second.setZero();
  for (int i = 0; i < 4; ++i) {
    double w = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k != i) w *= (u - nodes[k]) / (nodes[i] - nodes[k]);
    }
    const CompensatedProducts p = direct_products(f, nodes[i], d);
    out.first += w * p.first;
    if (p.has_second) out.second += w * p.second;
    out.has_second = p.has_second;
  }
  out.extrapolated = true;
  return out;
}

PrincipalVectors principal_vectors(const EllipticData& d, const SpectralData& spec) {
  PrincipalVectors pv;
  pv.lambda = spec.lambda;
  pv.exceptional = spec.kind == SpectralKind::Exceptional;
  const CurvatureSample s0 = sample_curvatures(d, 0.0);
  const CMat6 mom = H_matrix(s0).cast<cplx>();
  const int simple = pv.exceptional ? 4 : 6;
  for (int j = 0; j < simple; ++j) {
    const CVec6 a = L_vector(spec.lambda[j], s0);
    const double na = a.cwiseAbs().maxCoeff();
    if (!(na > 1e-12)) {
      throw Error(ErrorKind::DegenerateVectors, "principal vector vanishes");
    }
    pv.A.col(j) = a;
    pv.eigen_residual = std::max(
        pv.eigen_residual, (mom * a - spec.lambda[j] * a).cwiseAbs().maxCoeff() / na);
  }
  if (pv.exceptional) {
    for (int j = 2; j < 4; ++j) {
      const double lam = spec.lambda[j].real();
      const CVec6 c = T_vector(lam, s0).cast<cplx>();
      const CVec6 a = pv.A.col(j);
      const double nc = c.cwiseAbs().maxCoeff();
      Eigen::Matrix<cplx, 6, 2> pair;
      pair << a, c;
      Eigen::JacobiSVD<Eigen::Matrix<cplx, 6, 2>> svd(pair);
      const auto sv = svd.singularValues();
      if (!(nc > 1e-12) || sv(1) <= 1e-12 * sv(0)) {
        throw Error(ErrorKind::DegenerateVectors,
                    "secondary principal vector is parallel to the principal vector");
      }
      pv.A.col(j + 2) = c;
      pv.generalized_residual =
          std::max(pv.generalized_residual,
                   (mom * c - lam * c - a).cwiseAbs().maxCoeff() / nc);
    }
  }
  const CMat6 inv = pv.A.partialPivLu().inverse();
  auto norm1 = [](const CMat6& x) { return x.cwiseAbs().colwise().sum().maxCoeff(); };
  pv.condition = norm1(pv.A) * norm1(inv);
  return pv;
}

double Trajectory::max_oracle_deviation() const {
  double r = 0.0;
  for (const auto& s : samples) r = std::max(r, s.oracle_deviation);
  return r;
}

double Trajectory::max_imag_residual() const {
  double r = 0.0;
  for (const auto& s : samples) r = std::max(r, s.imag_residual);
  return r;
}

double ray_distance(const Vec6& a, const Vec6& b) {
  return (a / a.cwiseAbs().maxCoeff() - b / b.cwiseAbs().maxCoeff()).cwiseAbs().maxCoeff();
}

Trajectory reconstruct(const EllipticData& d, const SpectralData& spec,
                       const std::vector<double>& grid, const FramePath* oracle,
                       const ReconstructOptions& opt) {
  if (oracle != nullptr && oracle->u.size() != grid.size()) {
    throw Error(ErrorKind::Domain, "oracle path does not share the reconstruction grid");
  }
  const PrincipalVectors pv = principal_vectors(d, spec);
  if (!(pv.condition <= opt.max_condition)) {
    throw Error(ErrorKind::SingularMatrix, "principal-vector matrix is not invertible");
  }
  const CMat6 a_inv_t = pv.A.partialPivLu().inverse().transpose();
  const CMat6 m = metric_matrix().cast<cplx>();

  std::array<FactorConstants, 6> fc;
  const int simple = pv.exceptional ? 4 : 6;
  for (int j = 0; j < simple; ++j) {
    const bool second = pv.exceptional && (j == 2 || j == 3);
    fc[j] = factor_constants(spec.lambda[j], d, second);
    if (opt.perturb != nullptr) opt.perturb(fc[j]);
  }
  const double eps = opt.eps_factor * d.omega;

  Trajectory traj;
  traj.e = d.e;
  traj.kind = spec.kind;
  traj.condition = pv.condition;
  traj.samples.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = grid[i];
    CMat6 x;
    for (int j = 0; j < simple; ++j) {
      const CompensatedProducts p = compensated_products(fc[j], u, d, eps);
      x.row(j) = p.first.transpose();
      if (p.has_second) x.row(j + 2) = p.second.transpose();
    }
    const CMat6 b = m * a_inv_t * x * m;
    TrajectorySample s;
    s.u = u;
    const CVec6 g = b.col(0);
    const double re = g.real().cwiseAbs().maxCoeff();
    s.imag_residual = g.imag().cwiseAbs().maxCoeff() / re;
    s.ray = g.real() / re;
    s.frame = b.real();
    try {
      s.chart = minkowski_chart(NullRay::unchecked(s.ray), opt.chart_tol);
    } catch (const Error&) {
      s.chart.reset();
    }
    if (oracle != nullptr) {
      s.oracle_deviation = ray_distance(s.ray, oracle->B[i].col(0));
    }
    traj.samples.push_back(s);
  }
  return traj;
}

}  // namespace worldline
