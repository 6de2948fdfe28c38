#pragma once

#include <cmath>
#include <functional>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracle_values.hpp"
#include "worldline/curvature.hpp"
#include "worldline/spectrum.hpp"

namespace support {

inline worldline::PhaseParams exceptional_params() { return {-1.0, 1.0, oracle::kExceptionalE3}; }

/// Adaptive Gauss-Kronrod integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14, &err);
}

/// Random ordered phase parameters e1 < 0 < e2 < e3 in [-10, 10].
inline worldline::PhaseParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> neg(-10.0, -0.1), pos(0.1, 9.0);
  const double e1 = neg(rng);
  double e2 = pos(rng), e3 = pos(rng);
  if (e2 > e3) std::swap(e2, e3);
  if (e3 - e2 < 0.05) e3 = e2 + 0.05 + 0.5 * (10.0 - e2 - 0.05);
  return {e1, e2, e3};
}

/// Bisection on the cubic discriminant for the e3 giving a double root, with
/// e1, e2 fixed. The bracket must contain one sign change.
inline double exceptional_e3_by_bisection(double e1, double e2, double lo, double hi) {
  auto disc = [&](double e3) {
    return worldline::cubic_discriminant(worldline::derive({e1, e2, e3}));
  };
  double flo = disc(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = disc(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace support
