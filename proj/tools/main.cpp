// Command-line front end: generate, verify, classify, strain.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "worldline/errors.hpp"
#include "worldline/frame.hpp"
#include "worldline/io.hpp"
#include "worldline/quadrature.hpp"
#include "worldline/spectrum.hpp"
#include "worldline/strain.hpp"
#include "worldline/verify.hpp"

namespace fs = std::filesystem;
using namespace worldline;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kValidation = 2, kNumerical = 3 };

struct Config {
  std::string phase = "-1,1,2";
  double periods = 2.0;
  int samples = 256;
  double rtol = 1e-10;
  std::string out = ".";
  std::string format = "both";
  unsigned long long seed = 0;
  std::string input;
  std::string fault = "none";
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error(ErrorKind::MalformedInput, "cannot write " + p.string());
  os << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void validate(const Config& c) {
  if (!(c.periods > 0.0) || !std::isfinite(c.periods)) {
    throw Error(ErrorKind::Domain, "--periods must be positive");
  }
  if (c.samples < 16) throw Error(ErrorKind::Domain, "--samples must be at least 16 per period");
  if (!(c.rtol >= 1e-13 && c.rtol <= 1e-6)) {
    throw Error(ErrorKind::Domain, "--rtol must lie in [1e-13, 1e-6]");
  }
  if (c.format != "json" && c.format != "csv" && c.format != "both") {
    throw Error(ErrorKind::Domain, "--format must be json, csv or both");
  }
}

int cmd_generate(const Config& c) {
  validate(c);
  const EllipticData d = derive(io::parse_phase_params(c.phase));
  const SpectralData spec = characteristic_data(d);
  const int n = static_cast<int>(std::lround(c.periods * c.samples));
  const std::vector<double> grid = linspace(0.0, c.periods * d.omega, n);
  IntegratorOptions opt;
  opt.rtol = opt.atol = c.rtol;
  const FramePath oracle = integrate_frame(d, grid, opt);
  const Trajectory traj = reconstruct(d, spec, grid, &oracle);
  const double tol = spec.kind == SpectralKind::Exceptional ? 1e-5 : 1e-6;

  fs::create_directories(c.out);
  if (c.format != "csv") write_file(fs::path(c.out) / "trajectory.json", dump(io::to_json(traj)));
  if (c.format != "json") {
    std::ostringstream os;
    io::write_trajectory_csv(os, traj);
    write_file(fs::path(c.out) / "trajectory.csv", os.str());
  }
  json summary = {{"schema", io::kSchemaVersion},
                  {"elliptic", io::to_json(d)},
                  {"spectrum", io::to_json(spec, d)},
                  {"periods", c.periods},
                  {"samples_per_period", c.samples},
                  {"rtol", c.rtol},
                  {"max_oracle_deviation", traj.max_oracle_deviation()},
                  {"tolerance", tol},
                  {"pass", traj.max_oracle_deviation() <= tol}};
  write_file(fs::path(c.out) / "summary.json", dump(summary));
  std::cout << dump(summary);
  return traj.max_oracle_deviation() <= tol ? kOk : kCheckFailed;
}

int cmd_verify(const Config& c) {
  validate(c);
  VerifyOptions opt;
  opt.periods = c.periods;
  opt.samples_per_period = c.samples;
  opt.rtol = c.rtol;
  if (c.fault == "flip-factor-sign") {
    opt.fault = Fault::FlipFactorSign;
  } else if (c.fault != "none") {
    throw Error(ErrorKind::Domain, "unknown fault " + c.fault);
  }
  VerificationReport rep = run_verification(io::parse_phase_params(c.phase), opt);
  if (c.seed != 0) {
    // Extra reconstruction checks on random regular triples.
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> neg(-5.0, -0.2), pos(0.2, 3.0), gap(0.2, 4.0);
    for (int k = 0; k < 5; ++k) {
      PhaseParams e{neg(rng), pos(rng), 0.0};
      e.e3 = e.e2 + gap(rng);
      const EllipticData d = derive(e);
      const std::vector<double> grid = linspace(0.0, 2.0 * d.omega, 2 * c.samples);
      IntegratorOptions io;
      io.rtol = io.atol = c.rtol;
      const FramePath oracle = integrate_frame(d, grid, io);
      const double dev = reconstruct(d, characteristic_data(d), grid, &oracle).max_oracle_deviation();
      rep.entries.push_back({"random_reconstruction_" + std::to_string(k), dev, 1e-6, dev <= 1e-6});
    }
  }
  const std::string text = dump(to_json(rep));
  fs::create_directories(c.out);
  write_file(fs::path(c.out) / "verify.json", text);
  std::cout << text;
  return rep.all_pass() ? kOk : kCheckFailed;
}

int cmd_classify(const Config& c) {
  const EllipticData d = derive(io::parse_phase_params(c.phase));
  const SpectralData spec = characteristic_data(d);
  json j = {{"elliptic", io::to_json(d)}, {"spectrum", io::to_json(spec, d)}};
  std::cout << dump(j);
  return kOk;
}

int cmd_strain(const Config& c) {
  if (!(c.format == "json" || c.format == "csv" || c.format == "both")) {
    throw Error(ErrorKind::Domain, "--format must be json, csv or both");
  }
  std::ifstream is(c.input);
  if (!is) throw Error(ErrorKind::MalformedInput, "cannot open " + c.input);
  const SampledCurve curve = io::read_curve_csv(is);
  const StrainReport rep = conformal_strain(curve);
  fs::create_directories(c.out);
  if (c.format != "csv") write_file(fs::path(c.out) / "strain.json", dump(io::to_json(rep)));
  if (c.format != "json") {
    std::ostringstream os;
    io::write_strain_csv(os, rep);
    write_file(fs::path(c.out) / "strain.csv", os.str());
  }
  int vertices = 0;
  for (bool v : rep.vertex) vertices += v ? 1 : 0;
  std::cout << dump({{"samples", rep.t.size()},
                     {"vertices", vertices},
                     {"totally_degenerate", rep.totally_degenerate}});
  return kOk;
}

int report_error(const Error& e) {
  json j = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  std::cerr << j.dump(2) << "\n";
  return is_validation_error(e.kind()) ? kValidation : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal world-lines in the Einstein universe"};
  app.require_subcommand(1);
  Config c;

  auto add_common = [&c](CLI::App* sub) {
    sub->add_option("-e,--phase-params", c.phase, "phase parameters e1,e2,e3")
        ->allow_extra_args(false);
    sub->add_option("--periods", c.periods, "length of the u-range in periods");
    sub->add_option("--samples", c.samples, "samples per period");
    sub->add_option("--rtol", c.rtol, "integrator tolerance");
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--format", c.format, "json, csv or both");
    sub->add_option("--seed", c.seed, "seed for randomized checks");
  };

  auto* gen = app.add_subcommand("generate", "closed-form trajectory with oracle comparison");
  add_common(gen);
  gen->get_option("--phase-params")->required();
  auto* ver = app.add_subcommand("verify", "full residual report");
  add_common(ver);
  ver->add_option("--inject-fault", c.fault, "test hook: none or flip-factor-sign");
  auto* cls = app.add_subcommand("classify", "spectral classification");
  add_common(cls);
  auto* str = app.add_subcommand("strain", "conformal strain of a curve CSV");
  str->add_option("input", c.input, "curve CSV")->required();
  str->add_option("--out", c.out, "output directory");
  str->add_option("--format", c.format, "json, csv or both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (gen->parsed()) return cmd_generate(c);
    if (ver->parsed()) return cmd_verify(c);
    if (cls->parsed()) return cmd_classify(c);
    if (str->parsed()) return cmd_strain(c);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << json({{"error", "Internal"}, {"message", e.what()}}).dump(2) << "\n";
    return kNumerical;
  }
  return kOk;
}
