#include "lpa/surfaces.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lpa/rng.hpp"

namespace lpa {

std::string surface_name(Surface s) {
  switch (s) {
    case Surface::AnisotropicRadial: return "anisotropic-radial";
    case Surface::DampedRipples: return "damped-ripples";
    case Surface::ExponentialSaddle: return "exponential-saddle";
    case Surface::QuadWarped: return "quad-warped";
    case Surface::StandingWaveGrid: return "standing-wave-grid";
    case Surface::AsymmetricPowerWave: return "asymmetric-power-wave";
    case Surface::LocalizedStripes: return "localized-stripes";
    case Surface::LogCentralWell: return "log-central-well";
  }
  throw std::invalid_argument("surface_name: invalid surface id");
}

Surface parse_surface(const std::string& name) {
  for (Surface s : kAllSurfaces) {
    if (surface_name(s) == name) return s;
  }
  std::string known;
  for (Surface s : kAllSurfaces) {
    if (!known.empty()) known += ", ";
    known += surface_name(s);
  }
  throw std::invalid_argument("unknown surface '" + name +
                              "' (expected one of: " + known + ")");
}

double eval_target(Surface s, double x, double y) {
  switch (s) {
    case Surface::AnisotropicRadial:
      return std::sin(4.0 * x * x + y * y) /
             std::sqrt(x * x + y * y + 0.001);
    case Surface::DampedRipples:
      return std::sin(10.0 * (x * x + y * y)) / (x * x + y * y + 0.1);
    case Surface::ExponentialSaddle:
      return std::exp(x * x - y * y);
    case Surface::QuadWarped:
      return std::sin(5.0 * x * x) + std::cos(3.0 * y * y);
    case Surface::StandingWaveGrid:
      return std::sin(3.0 * x) * std::cos(3.0 * y);
    case Surface::AsymmetricPowerWave:
      return (std::pow(std::fabs(x), 0.7) + std::pow(std::fabs(y), 1.3)) *
             std::sin(4.0 * x);
    case Surface::LocalizedStripes:
      return std::exp(-5.0 * (x * x + y * y)) * std::sin(10.0 * x);
    case Surface::LogCentralWell:
      return std::log(x * x + y * y + 1e-5) * std::cos(5.0 * x);
  }
  throw std::invalid_argument("eval_target: invalid surface id");
}

Dataset sample_dataset(Surface s, std::size_t n, std::uint64_t seed,
                       const Domain& domain) {
  if (n == 0) {
    throw std::invalid_argument("sample_dataset: n must be >= 1");
  }
  if (!(domain.xmin < domain.xmax) || !(domain.ymin < domain.ymax)) {
    throw std::invalid_argument("sample_dataset: degenerate domain");
  }
  Dataset d;
  d.surface = s;
  d.seed = seed;
  d.domain = domain;
  d.inputs.reserve(n);
  d.targets.reserve(n);
  Xoshiro256pp rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform(domain.xmin, domain.xmax);
    const double y = rng.uniform(domain.ymin, domain.ymax);
    d.inputs.push_back({x, y});
    d.targets.push_back(eval_target(s, x, y));
  }
  return d;
}

void export_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("export_csv: cannot open '" + path +
                             "' for writing");
  }
  out << "x,y,f\n";
  char buf[96];
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", d.inputs[i][0],
                  d.inputs[i][1], d.targets[i]);
    out << buf;
  }
  if (!out) {
    throw std::runtime_error("export_csv: write failed for '" + path + "'");
  }
}

namespace {

double parse_field(const std::string& field, std::size_t line_no,
                   const std::string& path) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != field.size() || field.empty()) {
    throw std::runtime_error("import_csv: non-numeric field '" + field +
                             "' at line " + std::to_string(line_no) + " of " +
                             path);
  }
  return v;
}

}  // namespace

Dataset import_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("import_csv: cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("import_csv: '" + path + "' is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,f") {
    throw std::runtime_error("import_csv: bad header '" + line + "' in " +
                             path + " (expected 'x,y,f')");
  }
  Dataset d;
  d.surface = std::nullopt;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string fx, fy, ff, extra;
    if (!std::getline(ss, fx, ',') || !std::getline(ss, fy, ',') ||
        !std::getline(ss, ff, ',')) {
      throw std::runtime_error("import_csv: malformed row at line " +
                               std::to_string(line_no) + " of " + path);
    }
    if (std::getline(ss, extra, ',')) {
      throw std::runtime_error("import_csv: too many fields at line " +
                               std::to_string(line_no) + " of " + path);
    }
    const double x = parse_field(fx, line_no, path);
    const double y = parse_field(fy, line_no, path);
    const double f = parse_field(ff, line_no, path);
    d.inputs.push_back({x, y});
    d.targets.push_back(f);
  }
  return d;
}

}  // namespace lpa
