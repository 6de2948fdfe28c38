#include "worldline/verify.hpp"

#include <algorithm>
#include <cmath>

#include "worldline/errors.hpp"
#include "worldline/frame.hpp"
#include "worldline/io.hpp"
#include "worldline/quadrature.hpp"
#include "worldline/spectrum.hpp"

namespace worldline {

bool VerificationReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

const ResidualEntry* VerificationReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

namespace {

void flip_sign(FactorConstants& f) { f.c = -f.c; }

// Largest relative deviation of a five-point difference of delta (or eta)
// from r (or s). The step shrinks with the distance to the singular sets and
// points closer than 1e-3 omega are skipped.
double primitive_residual(const FactorConstants& f, const EllipticData& d,
                          const std::vector<double>& grid, bool second) {
  const double skip = 1e-3 * d.omega;
  double worst = 0.0;
  for (double u : grid) {
    double h = 1e-3;
    if (f.real) {
      const double zero = std::abs(std::remainder(u - f.zero_base, d.omega));
      const double pole = std::abs(std::remainder(u + f.zero_base, d.omega));
      const double dist = std::min(zero, pole);
      if (dist < skip) continue;
      h = std::min(h, 1e-2 * dist);
    }
    if (u < 2.0 * h) continue;
    auto prim = [&](double x) -> cplx {
      return second ? cplx(eta_second_kind(f, x, d)) : delta_first_kind(f, x, d);
    };
    const cplx fd = (prim(u - 2.0 * h) - 8.0 * prim(u - h) + 8.0 * prim(u + h) -
                     prim(u + 2.0 * h)) / (12.0 * h);
    const RS rs = r_s_functions(f.lambda, u, d);
    const cplx exact = second ? rs.s : rs.r;
    worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), 1.0));
  }
  return worst;
}

}  // namespace

VerificationReport run_verification(const PhaseParams& e, const VerifyOptions& opt) {
  const EllipticData d = derive(e);
  const SpectralData spec = characteristic_data(d);
  VerificationReport rep;
  rep.schema = io::kSchemaVersion;
  rep.e = e;
  rep.kind = std::string(to_string(spec.kind));
  auto add = [&rep](std::string name, double value, double tol) {
    rep.entries.push_back({std::move(name), value, tol, std::isfinite(value) && value <= tol});
  };

  const int n = std::max(16, static_cast<int>(std::lround(opt.periods * opt.samples_per_period)));
  const double u_max = opt.periods * d.omega;
  const std::vector<double> grid = linspace(0.0, u_max, n);

  IntegratorOptions io;
  io.rtol = opt.rtol;
  io.atol = opt.rtol;
  const FramePath path = integrate_frame(d, grid, io);
  add("metric_defect", path.max_metric_defect(), 1e-8);
  double det = 0.0;
  for (const auto& b : path.B) det = std::max(det, std::abs(b.determinant() - 1.0));
  add("determinant", det, 1e-7);

  const LaxReport lax = lax_and_conservation_residuals(d, path);
  add("lax", lax.lax, 1e-7);
  add("conservation", lax.conservation, 1e-7);
  add("characteristic_polynomial", lax.characteristic, 1e-8);

  const OdeResiduals ode = verify_world_line_odes(d, grid);
  add("ode_constraint", ode.constraint, 1e-8);
  add("ode_cubic", ode.cubic, 1e-8);
  add("ode_second_order", ode.second, 1e-8);
  add("ode_helicity", ode.helicity, 1e-8);
  add("ode_first_curvature", ode.first, 1e-8);

  double eig = 0.0, gen = 0.0;
  for (double u : grid) {
    const CurvatureSample s = sample_curvatures(d, u);
    const CMat6 h = H_matrix(s).cast<cplx>();
    for (const auto& ev : spec.distinct) {
      const CVec6 l = L_vector(ev.value, s);
      const double nl = l.cwiseAbs().maxCoeff();
      if (nl > 1e-8) eig = std::max(eig, (h * l - ev.value * l).cwiseAbs().maxCoeff() / nl);
      if (ev.multiplicity == 2) {
        const double lam = ev.value.real();
        if (std::abs(lam * lam - s.k2 * s.k2) < 1e-6) continue;
        const CVec6 t = T_vector(lam, s).cast<cplx>();
        gen = std::max(gen, (h * t - lam * t - l).cwiseAbs().maxCoeff() /
                                t.cwiseAbs().maxCoeff());
      }
    }
  }
  add("eigen_map", eig, 1e-8);
  if (spec.kind == SpectralKind::Exceptional) add("generalized_eigen_map", gen, 1e-7);

  const PrincipalVectors pv = principal_vectors(d, spec);
  add("principal_vectors", pv.eigen_residual, 1e-9);
  if (pv.exceptional) add("secondary_principal_vectors", pv.generalized_residual, 1e-9);

  double prim1 = 0.0, prim2 = 0.0;
  const std::vector<double> coarse = linspace(0.0, u_max, 200);
  for (const auto& ev : spec.distinct) {
    const bool second = ev.multiplicity == 2;
    FactorConstants f = factor_constants(ev.value, d, second);
    if (opt.fault == Fault::FlipFactorSign) flip_sign(f);
    prim1 = std::max(prim1, primitive_residual(f, d, coarse, false));
    if (second) prim2 = std::max(prim2, primitive_residual(f, d, coarse, true));
  }
  add("primitive_first_kind", prim1, 1e-6);
  if (spec.kind == SpectralKind::Exceptional) add("primitive_second_kind", prim2, 1e-5);

  ReconstructOptions ro;
  if (opt.fault == Fault::FlipFactorSign) ro.perturb = &flip_sign;
  const Trajectory traj = reconstruct(d, spec, grid, &path, ro);
  const double rec_tol = spec.kind == SpectralKind::Exceptional ? 1e-5 : 1e-6;
  add("reconstruction", traj.max_oracle_deviation(), rec_tol);
  add("reconstruction_imaginary_part", traj.max_imag_residual(), 1e-6);

  // One period shift: grid points u and u + omega, monodromy from the oracle.
  const int per = std::max(16, opt.samples_per_period);
  const std::vector<double> g2 = linspace(0.0, 2.0 * d.omega, 2 * per);
  const FramePath p2 = integrate_frame(d, g2, io);
  const Trajectory t2 = reconstruct(d, spec, g2, nullptr, ro);
  const Mat6& mono = p2.B[per];
  double cyc = 0.0;
  for (int i = 0; i <= per; ++i) {
    const Vec6 moved = mono * t2.samples[i].ray;
    cyc = std::max(cyc, ray_distance(moved, t2.samples[i + per].ray));
  }
  add("cyclic_symmetry", cyc, 1e-6);
  return rep;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    entries.push_back(
        {{"name", e.name}, {"value", e.value}, {"tolerance", e.tolerance}, {"pass", e.pass}});
  }
  return {{"schema", r.schema},
          {"phase_params", io::to_json(r.e)},
          {"kind", r.kind},
          {"all_pass", r.all_pass()},
          {"residuals", entries}};
}

VerificationReport report_from_json(const nlohmann::json& j) {
  try {
    VerificationReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != io::kSchemaVersion) {
      throw Error(ErrorKind::MalformedInput, "unsupported report schema " + r.schema);
    }
    const auto& e = j.at("phase_params");
    r.e = {e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()};
    r.kind = j.at("kind").get<std::string>();
    for (const auto& x : j.at("residuals")) {
      r.entries.push_back({x.at("name").get<std::string>(), x.at("value").get<double>(),
                           x.at("tolerance").get<double>(), x.at("pass").get<bool>()});
    }
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::MalformedInput, std::string("bad verification report: ") + ex.what());
  }
}

}  // namespace worldline
