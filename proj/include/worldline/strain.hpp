#pragma once

// Conformal strain of time-like curves given in the Minkowski chart: null
// lifts, osculating spaces, the strain quartic, vertices and the conformal
// parameter.

#include <functional>
#include <vector>

#include "worldline/lorentz.hpp"

namespace worldline {

using CurveFunction = std::function<Vec4(double)>;

/// Position and derivatives up to order three at one parameter value.
struct CurveJet {
  double t = 0.0;
  Vec4 p = Vec4::Zero();
  Vec4 p1 = Vec4::Zero();
  Vec4 p2 = Vec4::Zero();
  Vec4 p3 = Vec4::Zero();
};

struct SampledCurve {
  std::vector<CurveJet> jets;
};

/// A curve with analytic derivatives.
using JetFunction = std::function<CurveJet(double)>;

/// Default step of the auxiliary differentiation grid.
inline constexpr double kDefaultStencilStep = 2e-3;

/// Five-point centered stencils for the first three derivatives at steps h
/// and h/2, combined by one Richardson step.
CurveJet differentiate(const CurveFunction& f, double t, double h = kDefaultStencilStep);
SampledCurve sample_curve(const CurveFunction& f, const std::vector<double>& grid,
                          double h = kDefaultStencilStep);

/// A lift and its first three derivatives.
struct LiftJet {
  Vec6 g0 = Vec6::Zero();
  Vec6 g1 = Vec6::Zero();
  Vec6 g2 = Vec6::Zero();
  Vec6 g3 = Vec6::Zero();
};

/// Gamma = (1, p, (p,p)/2) with derivatives. Throws Error(NotTimelike) when
/// (p', p') >= 0.
LiftJet null_lift(const CurveJet& j);
std::vector<LiftJet> null_lift(const SampledCurve& c);

/// (phi Gamma) and its derivatives, given phi and its first three derivatives.
LiftJet rescale_lift(const LiftJet& g, double phi, double phi1, double phi2, double phi3);

/// X Gamma for a constant matrix X.
LiftJet transform_lift(const Mat6& x, const LiftJet& g);

/// Basis of the osculating space span(Gamma, Gamma', Gamma'') with
/// <A1,A1> = <A2,A2> = -1, <A3,A3> = 1, pairwise orthogonal. Throws
/// Error(DegenerateOsculating) when the normalized vectors have a singular
/// value ratio below tol.
struct OsculatingBasis {
  Vec6 a1, a2, a3;
};
OsculatingBasis osculating_basis(const LiftJet& g, double tol = 1e-10);

/// <pr Gamma''', pr Gamma'''> / |<Gamma', Gamma'>|, pr the orthogonal
/// projection off the osculating space. Independent of the lift.
double strain_coefficient(const LiftJet& g);

struct StrainReport {
  std::vector<double> t;
  std::vector<double> Q;
  std::vector<double> upsilon;  // |Q|^(1/4)
  std::vector<double> u;        // trapezoid integral of upsilon
  std::vector<bool> vertex;
  bool totally_degenerate = false;
  double vertex_tol = 1e-7;
};

/// Vertices are the samples with |Q| < vertex_tol max|Q|. A curve whose
/// largest |Q| is below abs_tol is reported as totally degenerate.
StrainReport conformal_strain(const SampledCurve& c, double vertex_tol = 1e-7,
                              double abs_tol = 1e-12);

/// Conformal parameter of a curve without vertices on [t0, t1]. The map
/// t -> u integrates upsilon by 5-point Gauss-Legendre on each node interval;
/// the inverse starts from cubic Hermite interpolation and is polished by
/// Newton steps, so both maps are smooth to rounding.
class ConformalReparameterization {
 public:
  double u_max() const { return u_.back(); }
  double t_of_u(double u) const;
  double u_of_t(double t) const;
  /// The curve in conformal parameter.
  Vec4 operator()(double u) const { return curve_(t_of_u(u)); }
  const std::vector<double>& t_nodes() const { return t_; }
  const std::vector<double>& u_nodes() const { return u_; }

 private:
  friend ConformalReparameterization reparameterize_by_conformal_parameter(
      const CurveFunction&, double, double, int, double, double);
  friend ConformalReparameterization reparameterize_by_conformal_parameter(const JetFunction&,
                                                                           double, double, int,
                                                                           double);
  void build(double t0, double t1, int nodes, double vertex_tol);
  double density(double t) const;
  double integral(std::size_t i, double t) const;

  CurveFunction curve_;
  JetFunction jet_;
  std::vector<double> t_, u_, upsilon_;
};

/// Throws Error(VertexOnSegment) if a vertex lies on [t0, t1]. The first form
/// differentiates p with the default stencils.
ConformalReparameterization reparameterize_by_conformal_parameter(
    const CurveFunction& p, double t0, double t1, int nodes = 2000, double vertex_tol = 1e-7,
    double h = kDefaultStencilStep);
ConformalReparameterization reparameterize_by_conformal_parameter(const JetFunction& p, double t0,
                                                                  double t1, int nodes = 2000,
                                                                  double vertex_tol = 1e-7);

}  // namespace worldline
