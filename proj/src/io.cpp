#include "worldline/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "worldline/errors.hpp"

namespace worldline::io {

namespace {

json matrix_rows(const Mat6& b) {
  json rows = json::array();
  for (int i = 0; i < 6; ++i) {
    json r = json::array();
    for (int k = 0; k < 6; ++k) r.push_back(b(i, k));
    rows.push_back(r);
  }
  return rows;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<double> parse_row(const std::string& line, std::size_t lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    if (b == std::string::npos) {
      throw Error(ErrorKind::MalformedInput, "empty cell on line " + std::to_string(lineno));
    }
    double v = 0.0;
    const char* first = cell.data() + b;
    const char* last = cell.data() + e + 1;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      throw Error(ErrorKind::MalformedInput,
                  "not a finite number on line " + std::to_string(lineno) + ": " + cell);
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json to_json(const PhaseParams& e) { return json::array({e.e1, e.e2, e.e3}); }

json to_json(const EllipticData& d) {
  return {{"phase_params", to_json(d.e)},
          {"l1", d.l1}, {"l2", d.l2}, {"l3", d.l3}, {"l4", d.l4},
          {"m", d.m}, {"omega", d.omega},
          {"c1", d.c1}, {"c2", d.c2}, {"c3", d.c3}};
}

json to_json(const FramePath& p) {
  json samples = json::array();
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    samples.push_back({{"u", p.u[i]},
                       {"B", matrix_rows(p.B[i])},
                       {"error_estimate", p.error_estimate[i]},
                       {"metric_defect", p.metric_defect[i]}});
  }
  return {{"schema", kSchemaVersion}, {"steps", p.steps}, {"rejected", p.rejected},
          {"samples", samples}};
}

json to_json(const SpectralData& s, const EllipticData& d) {
  json lambdas = json::array();
  for (const auto& l : s.distinct) {
    json entry = {{"value", complex_json(l.value)}, {"multiplicity", l.multiplicity}};
    if (l.value.imag() == 0.0) {
      const SingularSets ss = singular_sets(l.value, d);
      entry["p_lambda"] = ss.p;
      entry["alpha"] = ss.alpha;
    }
    lambdas.push_back(entry);
  }
  return {{"schema", kSchemaVersion},
          {"kind", std::string(to_string(s.kind))},
          {"characteristic", s.characteristic},
          {"roots", json::array({complex_json(s.rho1), complex_json(s.rho2),
                                 complex_json(s.rho3)})},
          {"discriminant", s.discriminant},
          {"eigenvalues", lambdas}};
}

json to_json(const Trajectory& t) {
  json samples = json::array();
  for (const auto& s : t.samples) {
    json row = {{"u", s.u}, {"ray", std::vector<double>(s.ray.data(), s.ray.data() + 6)}};
    row["chart"] = s.chart ? json(std::vector<double>(s.chart->data(), s.chart->data() + 4))
                           : json(nullptr);
    row["oracle_deviation"] = s.oracle_deviation < 0.0 ? json(nullptr) : json(s.oracle_deviation);
    samples.push_back(row);
  }
  return {{"schema", kSchemaVersion},
          {"phase_params", to_json(t.e)},
          {"kind", std::string(to_string(t.kind))},
          {"condition", t.condition},
          {"samples", samples}};
}

json to_json(const StrainReport& r) {
  return {{"schema", kSchemaVersion},
          {"t", r.t},
          {"Q", r.Q},
          {"upsilon", r.upsilon},
          {"u", r.u},
          {"vertex", r.vertex},
          {"vertex_tol", r.vertex_tol},
          {"totally_degenerate", r.totally_degenerate}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << "u,y0,y1,y2,y3,y4,y5,x1,x2,x3,x4,oracle_deviation\n";
  for (const auto& s : t.samples) {
    os << format_double(s.u);
    for (int i = 0; i < 6; ++i) os << ',' << format_double(s.ray(i));
    for (int i = 0; i < 4; ++i) {
      os << ',';
      if (s.chart) os << format_double((*s.chart)(i));
    }
    os << ',';
    if (s.oracle_deviation >= 0.0) os << format_double(s.oracle_deviation);
    os << '\n';
  }
}

void write_strain_csv(std::ostream& os, const StrainReport& r) {
  os << "t,Q,upsilon,u,vertex\n";
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    os << format_double(r.t[i]) << ',' << format_double(r.Q[i]) << ','
       << format_double(r.upsilon[i]) << ',' << format_double(r.u[i]) << ','
       << (r.vertex[i] ? 1 : 0) << '\n';
  }
}

SampledCurve read_curve_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) {
    throw Error(ErrorKind::MalformedInput, "empty curve file");
  }
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_row(line, lineno));
    if (rows.back().size() != 5 && rows.back().size() != 17) {
      throw Error(ErrorKind::MalformedInput,
                  "expected 5 or 17 columns on line " + std::to_string(lineno));
    }
    if (rows.back().size() != rows.front().size()) {
      throw Error(ErrorKind::MalformedInput,
                  "inconsistent column count on line " + std::to_string(lineno));
    }
  }
  if (rows.empty()) throw Error(ErrorKind::MalformedInput, "curve file has no samples");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i][0] > rows[i - 1][0])) {
      throw Error(ErrorKind::MalformedInput, "curve parameter must be strictly increasing");
    }
  }
  auto pos = [&](std::size_t i) { return Vec4(rows[i][1], rows[i][2], rows[i][3], rows[i][4]); };
  SampledCurve c;
  if (rows.front().size() == 17) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CurveJet j;
      j.t = rows[i][0];
      j.p = pos(i);
      const auto& r = rows[i];
      j.p1 = Vec4(r[5], r[6], r[7], r[8]);
      j.p2 = Vec4(r[9], r[10], r[11], r[12]);
      j.p3 = Vec4(r[13], r[14], r[15], r[16]);
      c.jets.push_back(j);
    }
    return c;
  }
  if (rows.size() < 5) {
    throw Error(ErrorKind::MalformedInput, "at least five samples are needed for differencing");
  }
  const double h = rows[1][0] - rows[0][0];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - rows[i - 1][0] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw Error(ErrorKind::MalformedInput,
                  "grid must be uniform when derivative columns are absent");
    }
  }
  for (std::size_t i = 2; i + 2 < rows.size(); ++i) {
    const Vec4 m2 = pos(i - 2), m1 = pos(i - 1), z = pos(i), p1 = pos(i + 1), p2 = pos(i + 2);
    CurveJet j;
    j.t = rows[i][0];
    j.p = z;
    j.p1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    j.p2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
    j.p3 = (-m2 + 2.0 * m1 - 2.0 * p1 + p2) / (2.0 * h * h * h);
    c.jets.push_back(j);
  }
  return c;
}

PhaseParams parse_phase_params(const std::string& text) {
  std::vector<double> v;
  try {
    v = parse_row(text, 1);
  } catch (const Error&) {
    v.clear();
  }
  if (v.size() != 3) {
    throw Error(ErrorKind::MalformedInput, "phase parameters must be three numbers e1,e2,e3");
  }
  return {v[0], v[1], v[2]};
}

}  // namespace worldline::io
