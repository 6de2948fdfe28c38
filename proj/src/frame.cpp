#include "worldline/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "worldline/errors.hpp"

namespace worldline {

CurvatureSample sample_curvatures(const EllipticData& d, double u) {
  const Curvatures c = curvatures(d, u);
  return {u, c.k1, c.k2, c.k3, c.k2_dot};
}

Mat6 K_matrix(const CurvatureSample& s) {
  Mat6 k;
  k << 0, -s.k1, 1, 0, 0, 0,
       1, 0, 0, 0, 0, s.k1,
       0, 0, 0, -s.k2, 0, 1,
       0, 0, s.k2, 0, -s.k3, 0,
       0, 0, 0, s.k3, 0, 0,
       0, -1, 0, 0, 0, 0;
  return k;
}

Mat6 H_matrix(const CurvatureSample& s) {
  const double a = s.k1 - s.k2 * s.k2;
  const double h = s.k2 * s.k3;
  Mat6 x;
  x << 0, -1, a, s.k2_dot, h, 0,
       0, 0, 0, -s.k2, 0, 1,
       -1, 0, 0, 0, 0, a,
       0, -s.k2, 0, 0, 0, s.k2_dot,
       0, 0, 0, 0, 0, h,
       0, 0, -1, 0, 0, 0;
  return x;
}

Mat6 H_dot(const Curvatures& c) {
  const double a = c.k1_dot - 2.0 * c.k2 * c.k2_dot;
  const double h = c.k2_dot * c.k3 + c.k2 * c.k3_dot;
  Mat6 x = Mat6::Zero();
  x(0, 2) = a;
  x(0, 3) = c.k2_ddot;
  x(0, 4) = h;
  x(1, 3) = -c.k2_dot;
  x(2, 5) = a;
  x(3, 1) = -c.k2_dot;
  x(3, 5) = c.k2_ddot;
  x(4, 5) = h;
  return x;
}

std::array<double, 7> characteristic_coefficients(const Mat6& x) {
  std::array<double, 7> p{};
  p[6] = 1.0;
  Mat6 mk = Mat6::Zero();
  for (int k = 1; k <= 6; ++k) {
    mk = x * mk + p[7 - k] * Mat6::Identity();
    p[6 - k] = -(x * mk).trace() / k;
  }
  return p;
}

std::array<double, 7> expected_characteristic(const EllipticData& d) {
  return {d.c3 * d.c3, 0.0, d.c2 + 1.0, 0.0, 2.0 * d.c1, 0.0, 1.0};
}

double FramePath::max_metric_defect() const {
  double r = 0.0;
  for (double x : metric_defect) r = std::max(r, x);
  return r;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double d1 = 71.0 / 57600, d3 = -71.0 / 16695, d4 = 71.0 / 1920,
                 d5 = -17253.0 / 339200, d6 = 22.0 / 525, d7 = -1.0 / 40;

struct Step {
  Mat6 y;
  Mat6 err;
  Mat6 k_last;
};

Step dp_step(const CoefficientField& x, double t, const Mat6& y, const Mat6& k1, double h) {
  const Mat6 k2 = (y + h * a21 * k1) * x(t + c2 * h);
  const Mat6 k3 = (y + h * (a31 * k1 + a32 * k2)) * x(t + c3 * h);
  const Mat6 k4 = (y + h * (a41 * k1 + a42 * k2 + a43 * k3)) * x(t + c4 * h);
  const Mat6 k5 = (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)) * x(t + c5 * h);
  const Mat6 k6 =
      (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)) * x(t + h);
  Step s;
  s.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  s.k_last = s.y * x(t + h);
  s.err = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * s.k_last);
  return s;
}

double metric_defect(const Mat6& b) {
  const Mat6& m = metric_matrix();
  return (b.transpose() * m * b - m).cwiseAbs().maxCoeff();
}

}  // namespace

FramePath integrate_linear(const CoefficientField& x, const std::vector<double>& grid,
                           const IntegratorOptions& opt) {
  FramePath path;
  if (grid.empty()) return path;
  if (grid.front() < 0.0 || !std::is_sorted(grid.begin(), grid.end())) {
    throw Error(ErrorKind::Domain, "output grid must be non-decreasing and start at u >= 0");
  }
  double t = 0.0;
  Mat6 y = Mat6::Identity();
  Mat6 k = x(t);
  double err_acc = 0.0;
  double h = opt.fixed_step > 0.0 ? opt.fixed_step : 1e-3;
  double err_prev = 1.0;
  const double beta = 0.04, alpha = 0.2 - 0.75 * beta;

  for (double target : grid) {
    while (t < target) {
      double hh = std::min(h, target - t);
      const bool truncated = hh < h;
      if (path.steps + path.rejected > opt.max_steps ||
          hh < opt.min_step * std::max(1.0, std::abs(t))) {
        if (target - t > opt.min_step * std::max(1.0, std::abs(t))) {
          std::ostringstream msg;
          msg << "step size underflow at u = " << t;
          throw Error(ErrorKind::StepSizeUnderflow, msg.str());
        }
        // Remaining gap is below resolution: take it as one step.
        hh = target - t;
      }
      Step s = dp_step(x, t, y, k, hh);
      if (opt.fixed_step > 0.0) {
        t = (hh == target - t) ? target : t + hh;
        y = s.y;
        k = s.k_last;
        err_acc += s.err.cwiseAbs().maxCoeff();
        ++path.steps;
        continue;
      }
      double en = 0.0;
      for (int i = 0; i < 36; ++i) {
        const double sc = opt.atol + opt.rtol * std::max(std::abs(y(i)), std::abs(s.y(i)));
        const double ei = std::abs(s.err(i)) / sc;
        if (!std::isfinite(ei) || !std::isfinite(s.y(i))) {
          en = std::numeric_limits<double>::infinity();
          break;
        }
        en = std::max(en, ei);
      }
      if (en <= 1.0) {
        t = (hh == target - t) ? target : t + hh;
        y = s.y;
        k = s.k_last;
        err_acc += s.err.cwiseAbs().maxCoeff();
        ++path.steps;
        double fac = en == 0.0 ? 10.0
                               : 0.9 * std::pow(en, -alpha) * std::pow(err_prev, beta);
        fac = std::clamp(fac, 0.2, 10.0);
        err_prev = std::max(en, 1e-4);
        // A step shortened to hit an output point keeps the proposed size.
        h = truncated ? std::max(h, hh * fac) : hh * fac;
      } else {
        ++path.rejected;
        h = hh * std::max(0.2, 0.9 * std::pow(en, -alpha));
      }
    }
    path.u.push_back(target);
    path.B.push_back(y);
    path.error_estimate.push_back(err_acc);
    path.metric_defect.push_back(metric_defect(y));
  }
  return path;
}

FramePath integrate_frame(const EllipticData& d, const std::vector<double>& grid,
                          const IntegratorOptions& opt) {
  if (opt.fixed_step <= 0.0 && !(opt.rtol >= 1e-13 && opt.rtol <= 1e-6)) {
    throw Error(ErrorKind::Domain, "integrator tolerance must lie in [1e-13, 1e-6]");
  }
  return integrate_linear([&d](double u) { return K_matrix(sample_curvatures(d, u)); }, grid,
                          opt);
}

LaxReport lax_and_conservation_residuals(const EllipticData& d, const FramePath& path) {
  LaxReport r;
  const Mat6 h0 = H_matrix(sample_curvatures(d, 0.0));
  const auto expected = expected_characteristic(d);
  for (std::size_t i = 0; i < path.u.size(); ++i) {
    const Curvatures c = curvatures(d, path.u[i]);
    const CurvatureSample s{path.u[i], c.k1, c.k2, c.k3, c.k2_dot};
    const Mat6 h = H_matrix(s);
    const Mat6 k = K_matrix(s);
    r.lax = std::max(r.lax, (H_dot(c) - (h * k - k * h)).cwiseAbs().maxCoeff());
    const Mat6& b = path.B[i];
    r.conservation = std::max(
        r.conservation, (b * h * b.partialPivLu().inverse() - h0).cwiseAbs().maxCoeff());
    const auto p = characteristic_coefficients(h);
    for (int j = 0; j < 7; ++j) {
      r.characteristic = std::max(r.characteristic, std::abs(p[j] - expected[j]));
    }
  }
  return r;
}

Mat6 constant_curvature_K(double k1, double k2, double k3) {
  const double target = 0.5 * (k2 * k2 + k3 * k3);
  if (!(k2 > 0.0 && k3 > 0.0) ||
      std::abs(k1 - target) > 1e-12 * std::max(1.0, std::abs(target))) {
    throw Error(ErrorKind::ConstraintViolated,
                "constant curvatures need k2, k3 > 0 and k1 = (k2^2 + k3^2)/2");
  }
  return K_matrix({0.0, k1, k2, k3, 0.0});
}

Mat6 constant_curvature_frame(double k1, double k2, double k3, double u) {
  const Mat6 k = constant_curvature_K(k1, k2, k3);
  return (u * k).exp();
}

NullRay constant_curvature_orbit(double k1, double k2, double k3, double u) {
  return NullRay(constant_curvature_frame(k1, k2, k3, u).col(0), 1e-8);
}

}  // namespace worldline
