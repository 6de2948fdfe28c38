// Acceptance suite: one PASS/FAIL line per criterion. The first argument is
// the path of the command-line tool.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "support.hpp"
#include "worldline/elliptic.hpp"
#include "worldline/errors.hpp"
#include "worldline/frame.hpp"
#include "worldline/quadrature.hpp"
#include "worldline/strain.hpp"
#include "worldline/verify.hpp"

using namespace worldline;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what, double value) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << ' ' << value << (ok ? "" : " [fail]");
  }
};

const double kPi = std::acos(-1.0);

double direction_gap(const CVec6& a, const CVec6& b) {
  const CVec6 v = b.normalized();
  return (a - v.dot(a) * v).norm() / a.norm();
}

Mat6 random_group_element(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 0.5);
  Mat6 a = Mat6::Zero();
  for (int i = 0; i < 6; ++i) {
    for (int k = i + 1; k < 6; ++k) {
      a(i, k) = g(rng);
      a(k, i) = -a(i, k);
    }
  }
  return Mat6(metric_matrix() * a).exp();
}

void special_functions(Outcome& o) {
  using namespace elliptic;
  double ident = 0.0, legendre = 0.0, pi_dev = 0.0;
  for (double m = 0.05; m < 0.99; m += 0.07) {
    for (double u = -6.0; u <= 6.0; u += 0.37) {
      const JacobiValues j = jacobi(u, m);
      ident = std::max({ident, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0),
                        std::abs(j.dn * j.dn + m * j.sn * j.sn - 1.0)});
    }
    const double k = complete_K(m), kp = complete_K(1.0 - m);
    legendre = std::max(legendre, std::abs(complete_E(m) * kp + complete_E(1.0 - m) * k -
                                           k * kp - 0.5 * kPi));
    for (double n : {-2.0, -0.5, 0.3, 0.8}) {
      for (double phi : {0.3, 1.0, 1.5, 2.8, 4.0}) {
        if (n > 0.0 && std::abs(std::sin(phi)) * std::sqrt(n) >= 0.95) continue;
        const double q = support::integrate(
            [&](double t) {
              const double s2 = std::sin(t) * std::sin(t);
              return 1.0 / ((1.0 - n * s2) * std::sqrt(1.0 - m * s2));
            },
            0.0, phi);
        pi_dev = std::max(pi_dev, std::abs(incomplete_Pi(n, phi, m) - q) / std::abs(q));
      }
    }
  }
  o.require(ident <= 1e-9, "jacobi identities", ident);
  o.require(legendre <= 1e-9, "legendre", legendre);
  o.require(pi_dev <= 1e-9, "Pi vs quadrature", pi_dev);
}

void curvature_odes(Outcome& o) {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const EllipticData d = derive(support::random_params(rng));
    worst = std::max(worst, verify_world_line_odes(d, linspace(0.0, 2.0 * d.omega, 1000)).max());
  }
  o.require(worst <= 1e-8, "max residual", worst);
}

void frame_oracle(Outcome& o) {
  const EllipticData d = derive({-1.0, 1.0, 2.0});
  const auto grid = linspace(0.0, 4.0 * d.omega, 400);
  IntegratorOptions opt;
  opt.rtol = opt.atol = 1e-10;
  const FramePath p = integrate_frame(d, grid, opt);
  double det = 0.0;
  for (const auto& b : p.B) det = std::max(det, std::abs(b.determinant() - 1.0));
  o.require(p.max_metric_defect() <= 1e-8, "metric defect", p.max_metric_defect());
  o.require(det <= 1e-7, "det deviation", det);

  // Order check: halving the step of the fixed-step scheme.
  const std::vector<double> end{d.omega};
  const FramePath ref = integrate_frame(d, end, {1e-13, 1e-13});
  auto err = [&](double h) {
    IntegratorOptions f;
    f.fixed_step = h;
    return (integrate_frame(d, end, f).B[0] - ref.B[0]).cwiseAbs().maxCoeff();
  };
  const double ratio = err(d.omega / 40) / err(d.omega / 80);
  o.require(ratio >= 4.0, "error ratio at half step", ratio);
  // Tolerance halving under step control, reported only.
  auto tol_err = [&](double tol) {
    return (integrate_frame(d, end, {tol, tol}).B[0] - ref.B[0]).cwiseAbs().maxCoeff();
  };
  o.detail << "; adaptive ratio at half tolerance " << tol_err(1e-8) / tol_err(5e-9);
}

void isospectral(Outcome& o) {
  const EllipticData d = derive({-1.0, 1.0, 2.0});
  const FramePath p = integrate_frame(d, linspace(0.0, 2.0 * d.omega, 400), {1e-10, 1e-10});
  const LaxReport r = lax_and_conservation_residuals(d, p);
  o.require(r.lax <= 1e-7, "lax", r.lax);
  o.require(r.conservation <= 1e-7, "conservation", r.conservation);
  o.require(r.characteristic <= 1e-8, "characteristic", r.characteristic);
}

void eigen_structure(Outcome& o) {
  double gap = 0.0, tgap = 0.0, kernel = 1e300;
  bool dim_one = true;
  for (const PhaseParams& e :
       {PhaseParams{-1.0, 1.0, 2.0}, PhaseParams{-1.0, 1.0, 5.0}, support::exceptional_params()}) {
    const EllipticData d = derive(e);
    const SpectralData s = characteristic_data(d);
    for (double u : linspace(0.0, 2.0 * d.omega, 200)) {
      const CurvatureSample cs = sample_curvatures(d, u);
      const CMat6 h = H_matrix(cs).cast<cplx>();
      for (const auto& ev : s.distinct) {
        const SingularSets ss = singular_sets(ev.value, d);
        if (ss.near_zero(u) || ss.near_pole(u)) continue;
        Eigen::JacobiSVD<CMat6> svd(h - ev.value * CMat6::Identity(), Eigen::ComputeFullV);
        const auto sv = svd.singularValues();
        kernel = std::min(kernel, sv(4) / sv(0));
        if (!(sv(5) <= 1e-10 * sv(0) && sv(4) > 1e-6 * sv(0))) dim_one = false;
        const CVec6 l = L_vector(ev.value, cs);
        gap = std::max(gap, direction_gap(l, svd.matrixV().col(5)));
        if (ev.multiplicity == 2) {
          // min-norm solution of (H - lambda) x = L is T without its L component
          const double lam = ev.value.real();
          const Mat6 a = H_matrix(cs) - lam * Mat6::Identity();
          const Vec6 lr = l.real();
          const Vec6 x = a.completeOrthogonalDecomposition().solve(lr);
          const Vec6 t = T_vector(lam, cs);
          const Vec6 t_perp = t - (lr.dot(t) / lr.squaredNorm()) * lr;
          tgap = std::max(tgap, (t_perp - x).norm() / x.norm());
        }
      }
    }
  }
  o.require(gap <= 1e-8, "L direction", gap);
  o.require(tgap <= 1e-8, "T direction", tgap);
  o.require(dim_one, "dim ker = 1, smallest nonzero singular ratio", kernel);
}

void integrating_factors(Outcome& o) {
  const VerificationReport reg = run_verification({-1.0, 1.0, 5.0});
  const VerificationReport exc = run_verification(support::exceptional_params());
  const double r1 = std::max(reg.find("primitive_first_kind")->value,
                             exc.find("primitive_first_kind")->value);
  const double r2 = exc.find("primitive_second_kind")->value;
  o.require(r1 <= 1e-6, "delta' = r", r1);
  o.require(r2 <= 1e-5, "eta' = s", r2);

  // compensated products across D and across the poles
  const EllipticData d = derive(support::exceptional_params());
  const SpectralData s = characteristic_data(d);
  const double eps = 1e-4 * d.omega;
  double jump = 0.0;
  bool bounded = true;
  for (int j = 2; j < 4; ++j) {
    const FactorConstants f = factor_constants(s.lambda[j], d, true);
    const SingularSets ss = singular_sets(s.lambda[j], d);
    for (double base : {ss.zero_base, ss.pole_base}) {
      const double z = base + d.omega;
      const CompensatedProducts a = compensated_products(f, z - 3.0 * eps, d, eps);
      const CompensatedProducts b = compensated_products(f, z, d, eps);
      const CompensatedProducts c = compensated_products(f, z + 3.0 * eps, d, eps);
      for (const auto* p : {&a, &b, &c}) {
        bounded = bounded && std::isfinite(p->first.norm()) && std::isfinite(p->second.norm());
      }
      const double scale = 1.0 + b.first.norm() + b.second.norm();
      jump = std::max({jump, ((a.first - b.first).norm() + (a.second - b.second).norm()) / scale,
                       ((c.first - b.first).norm() + (c.second - b.second).norm()) / scale});
    }
  }
  o.require(bounded, "bounded", bounded ? 1.0 : 0.0);
  o.require(jump <= 1e-2, "relative change over 3 eps", jump);

  double drift = 0.0;
  for (const PhaseParams& e : {PhaseParams{-1.0, 1.0, 2.0}, PhaseParams{-1.0, 1.0, 5.0}}) {
    const EllipticData dd = derive(e);
    const SpectralData ss = characteristic_data(dd);
    const auto grid = linspace(0.0, 2.0 * dd.omega, 200);
    const FramePath path = integrate_frame(dd, grid, {1e-12, 1e-12});
    for (const cplx& lam : ss.lambda) {
      const FactorConstants f = factor_constants(lam, dd);
      const CVec6 a0 = L_vector(lam, 0.0, dd);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const CVec6 v =
            path.B[i].cast<cplx>() * compensated_products(f, grid[i], dd, 1e-4 * dd.omega).first;
        drift = std::max(drift, (v - a0).cwiseAbs().maxCoeff() / a0.cwiseAbs().maxCoeff());
      }
    }
  }
  o.require(drift <= 1e-6, "B e^-delta L drift", drift);
}

double reconstruction_deviation(const PhaseParams& e, SpectralKind* kind = nullptr) {
  const EllipticData d = derive(e);
  const SpectralData s = characteristic_data(d);
  if (kind != nullptr) *kind = s.kind;
  const auto grid = linspace(0.0, 2.0 * d.omega, 512);
  const FramePath path = integrate_frame(d, grid, {1e-12, 1e-12});
  return reconstruct(d, s, grid, &path).max_oracle_deviation();
}

void reconstruction_regular(Outcome& o) {
  o.require(reconstruction_deviation({-1.0, 1.0, 2.0}) <= 1e-6, "e = (-1,1,2)",
            reconstruction_deviation({-1.0, 1.0, 2.0}));
  std::mt19937_64 rng(77);
  int done = 0;
  double worst = 0.0;
  while (done < 5) {
    const PhaseParams e = support::random_params(rng);
    SpectralKind kind;
    const double dev = reconstruction_deviation(e, &kind);
    if (kind == SpectralKind::Exceptional) continue;
    worst = std::max(worst, dev);
    ++done;
  }
  o.require(worst <= 1e-6, "5 random triples", worst);
}

void reconstruction_exceptional(Outcome& o) {
  const double e3 = support::exceptional_e3_by_bisection(-1.0, 1.0, 2.0, 3.0);
  const double disc = std::abs(cubic_discriminant(derive({-1.0, 1.0, e3})));
  o.require(disc < 1e-12, "|disc|", disc);
  SpectralKind kind;
  const double dev = reconstruction_deviation({-1.0, 1.0, e3}, &kind);
  o.require(kind == SpectralKind::Exceptional, "classified exceptional",
            kind == SpectralKind::Exceptional ? 1.0 : 0.0);
  o.require(dev <= 1e-5, "deviation", dev);
}

void cyclic_symmetry(Outcome& o) {
  double worst = 0.0;
  for (const PhaseParams& e : {PhaseParams{-1.0, 1.0, 2.0}, PhaseParams{-1.0, 1.0, 5.0}}) {
    const EllipticData d = derive(e);
    const SpectralData s = characteristic_data(d);
    const int per = 100;
    const auto grid = linspace(0.0, 2.0 * d.omega, 2 * per);
    const FramePath path = integrate_frame(d, grid, {1e-12, 1e-12});
    const Trajectory t = reconstruct(d, s, grid);
    const Mat6 shift = path.B[per] * path.B[0].inverse();
    for (int i = 0; i <= per; ++i) {
      worst = std::max(worst, ray_distance(shift * t.samples[i].ray, t.samples[i + per].ray));
    }
  }
  o.require(worst <= 1e-6, "shift deviation", worst);
}

CurveJet wobbly(double t) {
  CurveJet j;
  j.t = t;
  j.p << 2.0 * t + 0.1 * t * t, 0.5 * std::cos(t) + 0.1 * t, 0.3 * std::sin(2.0 * t),
      0.2 * std::sin(t);
  j.p1 << 2.0 + 0.2 * t, -0.5 * std::sin(t) + 0.1, 0.6 * std::cos(2.0 * t), 0.2 * std::cos(t);
  j.p2 << 0.2, -0.5 * std::cos(t), -1.2 * std::sin(2.0 * t), -0.2 * std::sin(t);
  j.p3 << 0.0, 0.5 * std::sin(t), -2.4 * std::cos(2.0 * t), -0.2 * std::cos(t);
  return j;
}

void strain_module(Outcome& o) {
  std::mt19937_64 rng(31);
  double inv = 0.0;
  bool group_ok = true;
  for (int k = 0; k < 20; ++k) {
    const Mat6 x = random_group_element(rng);
    group_ok = group_ok && is_conformal_frame(x, 1e-9).ok;
    for (double t : {0.2, 0.9, 1.7, 2.6}) {
      const LiftJet g = null_lift(wobbly(t));
      const double q = strain_coefficient(g);
      inv = std::max(inv, std::abs(strain_coefficient(transform_lift(x, g)) - q) / q);
    }
  }
  o.require(group_ok, "group elements accepted", group_ok ? 1.0 : 0.0);
  o.require(inv <= 1e-8, "invariance", inv);

  double scaling = 0.0;
  for (double t : linspace(0.0, 2.0, 20)) {
    CurveJet j = wobbly(2.0 * t);
    const double q = strain_coefficient(null_lift(j));
    j.t = t;
    j.p1 *= 2.0;
    j.p2 *= 4.0;
    j.p3 *= 8.0;
    scaling = std::max(scaling, std::abs(strain_coefficient(null_lift(j)) / (16.0 * q) - 1.0));
  }
  o.require(scaling <= 1e-8, "reparameterization scaling", scaling);

  const StrainReport axis = conformal_strain(
      sample_curve([](double t) { return Vec4(t, 0.0, 0.0, 0.0); }, linspace(0.0, 2.0, 50)));
  o.require(axis.totally_degenerate, "time axis degenerate", axis.totally_degenerate ? 1.0 : 0.0);
}

void constant_curvature(Outcome& o) {
  double ode = 0.0, group = 0.0;
  for (double k2 : {0.4, 1.3}) {
    for (double k3 : {0.7, 2.0}) {
      const double k1 = 0.5 * (k2 * k2 + k3 * k3);
      const Mat6 k = constant_curvature_K(k1, k2, k3);
      const auto grid = linspace(0.0, 5.0, 60);
      const FramePath p = integrate_linear([&k](double) { return k; }, grid, {1e-12, 1e-12});
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const Mat6 e = constant_curvature_frame(k1, k2, k3, grid[i]);
        ode = std::max(ode, (p.B[i] - e).cwiseAbs().maxCoeff() / e.cwiseAbs().maxCoeff());
      }
      for (double s : {0.3, 1.1}) {
        for (double t : {0.5, 2.2}) {
          const Mat6 st = constant_curvature_frame(k1, k2, k3, s + t);
          const Mat6 prod =
              constant_curvature_frame(k1, k2, k3, s) * constant_curvature_frame(k1, k2, k3, t);
          group = std::max(group, (st - prod).cwiseAbs().maxCoeff() / st.cwiseAbs().maxCoeff());
        }
      }
    }
  }
  o.require(ode <= 1e-8, "exp vs ODE", ode);
  o.require(group <= 1e-9, "one-parameter property", group);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cli_determinism(Outcome& o, const std::string& cli) {
  const fs::path root = fs::temp_directory_path() / "worldline_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  for (const char* run : {"a", "b"}) {
    const std::string cmd = "\"" + cli + "\" generate -e -1,1,2 --out \"" +
                            (root / run).string() + "\" > \"" + (root / run).string() +
                            ".stdout\" 2>&1";
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, std::string("run ") + run + " exit status", rc);
  }
  int files = 0;
  bool same = true;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const fs::path other = root / "b" / entry.path().filename();
    same = same && fs::exists(other) && slurp(entry.path()) == slurp(other);
    ++files;
  }
  same = same && slurp(root.string() + "/a.stdout") == slurp(root.string() + "/b.stdout");
  o.require(files >= 3, "output files", files);
  o.require(same, "byte-identical", same ? 1.0 : 0.0);
  fs::remove_all(root);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to worldline tool>\n";
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    const char* title;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"special-function kernel", special_functions},
      {"curvature ODE suite, 20 random phase parameters", curvature_odes},
      {"frame oracle over [0, 4 omega]", frame_oracle},
      {"isospectral flow", isospectral},
      {"eigen-structure against nullspace oracle", eigen_structure},
      {"integrating factors", integrating_factors},
      {"reconstruction, regular case", reconstruction_regular},
      {"reconstruction, exceptional case", reconstruction_exceptional},
      {"cyclic symmetry", cyclic_symmetry},
      {"strain module", strain_module},
      {"constant-curvature orbits", constant_curvature},
      {"CLI determinism", [&cli](Outcome& o) { cli_determinism(o, cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << (o.detail.tellp() > 0 ? "; " : "") << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].title, o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
