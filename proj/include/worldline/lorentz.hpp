#pragma once

// Linear algebra of R^{2,4} in the standard light-cone basis (E0, ..., E5):
//   <Y, Z> = -(y0 z5 + y5 z0) - y1 z1 + y2 z2 + y3 z3 + y4 z4.
// Points of the 4-dimensional Einstein universe are oriented null rays.

#include <complex>

#include <Eigen/Dense>

namespace worldline {

using cplx = std::complex<double>;

using Vec4 = Eigen::Matrix<double, 4, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using CVec6 = Eigen::Matrix<cplx, 6, 1>;
using CMat6 = Eigen::Matrix<cplx, 6, 6>;

/// Default relative tolerance used by the frame and algebra checks.
inline constexpr double kDefaultAlgebraTol = 1e-9;

/// i-th vector of the standard light-cone basis.
Vec6 basis_vector(int i);

double scalar_product(const Vec6& y, const Vec6& z);
cplx scalar_product(const CVec6& y, const CVec6& z);

/// Gram matrix m_{ji} = <E_j, E_i>. It is symmetric and squares to the identity.
const Mat6& metric_matrix();

/// Orientation functional on isotropic bivectors,
/// V(V ^ W) = det(V, W, E2, E3, E4, E5 - E0). Positive on E0 ^ (E1 + E2).
double orientation_functional(const Vec6& v, const Vec6& w);

struct FrameCheck {
  bool ok = false;
  double metric_residual = 0.0;  // ||B^t m B - m||_inf
  double det_residual = 0.0;     // |det B - 1|
  double orientation = 0.0;      // V(B0 ^ (B1 + B2))
};

/// Membership test for the restricted conformal group A(2,4): pseudo-orthogonal,
/// unimodular and preserving the positive half cone of isotropic bivectors.
FrameCheck is_conformal_frame(const Mat6& b, double tol = kDefaultAlgebraTol);

/// Residual ||X^t m + m X||_inf of the Lie algebra condition.
double lie_algebra_residual(const Mat6& x);
double lie_algebra_residual(const CMat6& x);
bool is_lie_algebra_element(const Mat6& x, double tol = kDefaultAlgebraTol);

/// Minkowski product (p, q) = -p1 q1 + p2 q2 + p3 q3 + p4 q4.
double minkowski_product(const Vec4& p, const Vec4& q);

/// An oriented null ray with its representative scaled by a positive factor so
/// that the largest-magnitude entry is +1 or -1.
class NullRay {
 public:
  /// Throws Error(Domain) if y is zero or not isotropic within tol
  /// (relative to |y|^2).
  explicit NullRay(const Vec6& y, double tol = 1e-8);

  /// Builds a ray without the isotropy check (for approximate trajectories).
  static NullRay unchecked(const Vec6& y);

  const Vec6& representative() const { return rep_; }

  /// Max-norm distance between normalized representatives.
  double distance(const NullRay& other) const;

 private:
  NullRay() = default;
  Vec6 rep_ = Vec6::Zero();
};

/// Conformal embedding j(p) = [ (1, p1, ..., p4, (p,p)/2) ].
NullRay minkowski_embed(const Vec4& p);

/// Left inverse of minkowski_embed. Throws Error(ChartSingular) when the ray
/// lies at conformal infinity (|y0| <= tol * max|y|).
Vec4 minkowski_chart(const NullRay& r, double tol = 1e-12);

}  // namespace worldline
