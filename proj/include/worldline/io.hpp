#pragma once

// JSON and CSV serialization of paths, spectra, trajectories and strain
// reports, and the curve CSV reader.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "worldline/frame.hpp"
#include "worldline/quadrature.hpp"
#include "worldline/spectrum.hpp"
#include "worldline/strain.hpp"

namespace worldline::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "worldline/1";

json to_json(const PhaseParams& e);
json to_json(const EllipticData& d);
json to_json(const FramePath& p);
json to_json(const SpectralData& s, const EllipticData& d);
json to_json(const Trajectory& t);
json to_json(const StrainReport& r);

/// Columns: u, y0..y5, x1..x4 (empty at chart singularities), oracle_deviation.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

/// Columns: t, Q, upsilon, u, vertex.
void write_strain_csv(std::ostream& os, const StrainReport& r);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double x);

/// Reads a curve CSV: a header line, then rows t, p1..p4 and optionally
/// twelve derivative columns (p1', .., p4', p1'', .., p4'''). Without
/// derivative columns the grid must be uniform and five-point stencils are
/// applied at interior rows. Throws Error(MalformedInput).
SampledCurve read_curve_csv(std::istream& is);

/// Parses "a,b,c" into phase parameters. Throws Error(MalformedInput).
PhaseParams parse_phase_params(const std::string& text);

}  // namespace worldline::io
