#include "worldline/lorentz.hpp"

#include <cmath>
#include <string>

#include "worldline/errors.hpp"

namespace worldline {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::ChartSingular: return "ChartSingular";
    case ErrorKind::NotTimelike: return "NotTimelike";
    case ErrorKind::DegenerateOsculating: return "DegenerateOsculating";
    case ErrorKind::VertexOnSegment: return "VertexOnSegment";
    case ErrorKind::InvalidPhaseParams: return "InvalidPhaseParams";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::PoleOnPath: return "PoleOnPath";
    case ErrorKind::DegenerateVectors: return "DegenerateVectors";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain:
    case ErrorKind::NotTimelike:
    case ErrorKind::InvalidPhaseParams:
    case ErrorKind::ConstraintViolated:
    case ErrorKind::MalformedInput:
    case ErrorKind::VertexOnSegment:
      return true;
    default:
      return false;
  }
}

Vec6 basis_vector(int i) {
  Vec6 e = Vec6::Zero();
  e(i) = 1.0;
  return e;
}

double scalar_product(const Vec6& y, const Vec6& z) {
  return -(y(0) * z(5) + y(5) * z(0)) - y(1) * z(1) + y(2) * z(2) + y(3) * z(3) +
         y(4) * z(4);
}

cplx scalar_product(const CVec6& y, const CVec6& z) {
  return -(y(0) * z(5) + y(5) * z(0)) - y(1) * z(1) + y(2) * z(2) + y(3) * z(3) +
         y(4) * z(4);
}

const Mat6& metric_matrix() {
  static const Mat6 m = [] {
    Mat6 g = Mat6::Zero();
    g(0, 5) = g(5, 0) = -1.0;
    g(1, 1) = -1.0;
    g(2, 2) = g(3, 3) = g(4, 4) = 1.0;
    return g;
  }();
  return m;
}

double orientation_functional(const Vec6& v, const Vec6& w) {
  Mat6 cols;
  cols.col(0) = v;
  cols.col(1) = w;
  cols.col(2) = basis_vector(2);
  cols.col(3) = basis_vector(3);
  cols.col(4) = basis_vector(4);
  cols.col(5) = basis_vector(5) - basis_vector(0);
  return cols.determinant();
}

FrameCheck is_conformal_frame(const Mat6& b, double tol) {
  const Mat6& m = metric_matrix();
  FrameCheck r;
  r.metric_residual = (b.transpose() * m * b - m).cwiseAbs().maxCoeff();
  r.det_residual = std::abs(b.determinant() - 1.0);
  r.orientation = orientation_functional(b.col(0), b.col(1) + b.col(2));
  r.ok = r.metric_residual <= tol && r.det_residual <= tol && r.orientation > tol;
  return r;
}

double lie_algebra_residual(const Mat6& x) {
  const Mat6& m = metric_matrix();
  return (x.transpose() * m + m * x).cwiseAbs().maxCoeff();
}

double lie_algebra_residual(const CMat6& x) {
  const CMat6 m = metric_matrix().cast<cplx>();
  return (x.transpose() * m + m * x).cwiseAbs().maxCoeff();
}

bool is_lie_algebra_element(const Mat6& x, double tol) {
  return lie_algebra_residual(x) <= tol;
}

double minkowski_product(const Vec4& p, const Vec4& q) {
  return -p(0) * q(0) + p(1) * q(1) + p(2) * q(2) + p(3) * q(3);
}

NullRay::NullRay(const Vec6& y, double tol) {
  const double scale = y.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::Domain, "null ray representative must be finite and nonzero");
  }
  rep_ = y / scale;
  if (std::abs(scalar_product(rep_, rep_)) > tol) {
    throw Error(ErrorKind::Domain, "vector is not isotropic");
  }
}

NullRay NullRay::unchecked(const Vec6& y) {
  NullRay r;
  const double scale = y.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::Domain, "null ray representative must be finite and nonzero");
  }
  r.rep_ = y / scale;
  return r;
}

double NullRay::distance(const NullRay& other) const {
  return (rep_ - other.rep_).cwiseAbs().maxCoeff();
}

NullRay minkowski_embed(const Vec4& p) {
  Vec6 y;
  y << 1.0, p(0), p(1), p(2), p(3), 0.5 * minkowski_product(p, p);
  return NullRay(y, 1e-12);
}

Vec4 minkowski_chart(const NullRay& r, double tol) {
  const Vec6& y = r.representative();
  if (std::abs(y(0)) <= tol) {
    throw Error(ErrorKind::ChartSingular, "ray lies at conformal infinity (y0 = 0)");
  }
  return Vec4(y(1), y(2), y(3), y(4)) / y(0);
}

}  // namespace worldline
