#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "gs/study.hpp"

namespace gs {

std::string format_float(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  if (x != 0.0 && std::abs(x) < 1e-3)
    std::snprintf(buf, sizeof buf, "%.5e", x);
  else
    std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

namespace {

std::string cell(const std::optional<double>& x) { return x ? format_float(*x) : std::string(); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table) {
  out << kConvergenceCsvHeader << '\n';
  for (const auto& r : table.rows) {
    auto val = [&](double x) -> std::optional<double> {
      if (r.failed) return std::nullopt;
      return x;
    };
    out << table.example << ',' << table.q << ',' << format_float(r.h) << ','
        << format_float(r.sigma) << ',' << cell(val(r.norms.norm_exact_u)) << ','
        << cell(val(r.norms.norm_num_u)) << ',' << cell(val(r.norms.err_u)) << ',' << cell(r.co_u)
        << ',' << cell(val(r.norms.norm_exact_v)) << ',' << cell(val(r.norms.norm_num_v)) << ','
        << cell(val(r.norms.err_v)) << ',' << cell(r.co_v) << ',' << format_float(r.setup_s)
        << ',' << format_float(r.solve_s) << '\n';
  }
  if (!out) throw IoError("failed writing convergence table");
}

std::vector<CsvRow> read_convergence_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kConvergenceCsvHeader)
    throw Error("convergence CSV: unexpected header");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 14) throw Error("convergence CSV: expected 14 columns");
    CsvRow row;
    row.example = std::stoi(fields[0]);
    row.q = std::stoi(fields[1]);
    for (std::size_t i = 2; i < fields.size(); ++i)
      row.values.push_back(fields[i].empty() ? std::nullopt
                                             : std::optional<double>(std::stod(fields[i])));
    rows.push_back(std::move(row));
  }
  return rows;
}

FieldSnapshot sample_snapshot(const SpectralCoeffs& coeffs, const SpectralBasis& basis,
                              int resolution) {
  if (resolution < 2) throw Error("snapshot resolution must be at least 2");
  const FeSpace& space = basis.space();
  const RectDomain& dom = space.mesh().domain();
  FieldSnapshot snap;
  snap.time = coeffs.time;
  snap.resolution = resolution;
  snap.domain = dom;

  std::vector<ElementPoint> points;
  points.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int j = 0; j < resolution; ++j)
    for (int i = 0; i < resolution; ++i) {
      const Point2 p{dom.x_min + dom.width() * i / (resolution - 1),
                     dom.y_min + dom.height() * j / (resolution - 1)};
      const auto loc = space.mesh().locate(p);
      points.push_back({loc.triangle, loc.ref});
    }
  const auto u = evaluate_fe_function(basis.to_nodal(coeffs.u), space, points);
  const auto v = evaluate_fe_function(basis.to_nodal(coeffs.v), space, points);
  snap.u.reserve(u.size());
  snap.v.reserve(v.size());
  for (const auto& s : u) snap.u.push_back(s.value);
  for (const auto& s : v) snap.v.push_back(s.value);
  return snap;
}

void write_snapshot(std::ostream& out, const FieldSnapshot& snap) {
  const int r = snap.resolution;
  out.precision(17);
  out << "# gs-snapshot v1 time=" << snap.time << " nx=" << r << " ny=" << r
      << " xmin=" << snap.domain.x_min << " xmax=" << snap.domain.x_max
      << " ymin=" << snap.domain.y_min << " ymax=" << snap.domain.y_max << '\n';
  auto block = [&](const std::vector<double>& vals) {
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < r; ++i) {
        if (i) out << ' ';
        out << vals[static_cast<std::size_t>(j) * r + i];
      }
      out << '\n';
    }
  };
  block(snap.u);
  out << '\n';
  block(snap.v);
  if (!out) throw IoError("failed writing snapshot");
}

FieldSnapshot read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# gs-snapshot v1 ", 0) != 0)
    throw Error("snapshot: bad header");
  FieldSnapshot snap;
  int nx = 0, ny = 0;
  std::istringstream hdr(line.substr(17));
  std::string tok;
  while (hdr >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error("snapshot: bad header token " + tok);
    const std::string key = tok.substr(0, eq);
    const double val = std::stod(tok.substr(eq + 1));
    if (key == "time") snap.time = val;
    else if (key == "nx") nx = static_cast<int>(val);
    else if (key == "ny") ny = static_cast<int>(val);
    else if (key == "xmin") snap.domain.x_min = val;
    else if (key == "xmax") snap.domain.x_max = val;
    else if (key == "ymin") snap.domain.y_min = val;
    else if (key == "ymax") snap.domain.y_max = val;
    else throw Error("snapshot: unknown header key " + key);
  }
  if (nx != ny || nx < 2) throw Error("snapshot: bad resolution");
  snap.resolution = nx;
  const std::size_t count = static_cast<std::size_t>(nx) * nx;
  snap.u.resize(count);
  snap.v.resize(count);
  for (auto& x : snap.u) in >> x;
  for (auto& x : snap.v) in >> x;
  if (!in) throw Error("snapshot: truncated data");
  return snap;
}

}  // namespace gs
