#ifndef LPA_SURFACES_HPP
#define LPA_SURFACES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lpa {

/// The eight synthetic target surfaces, each a closed-form f(x, y).
enum class Surface {
  AnisotropicRadial,
  DampedRipples,
  ExponentialSaddle,
  QuadWarped,
  StandingWaveGrid,
  AsymmetricPowerWave,
  LocalizedStripes,
  LogCentralWell,
};

inline constexpr std::array<Surface, 8> kAllSurfaces = {
    Surface::AnisotropicRadial, Surface::DampedRipples,
    Surface::ExponentialSaddle, Surface::QuadWarped,
    Surface::StandingWaveGrid,  Surface::AsymmetricPowerWave,
    Surface::LocalizedStripes,  Surface::LogCentralWell,
};

/// Kebab-case name used by the CLI and file metadata.
std::string surface_name(Surface s);
/// Parses a kebab-case surface name; throws std::invalid_argument listing
/// the accepted names on failure.
Surface parse_surface(const std::string& name);

struct Domain {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;
};

double eval_target(Surface s, double x, double y);

/// Sampled (x, y) -> f(x, y) pairs. `surface` is empty for datasets read
/// back from CSV, where the generating function is unknown.
struct Dataset {
  std::optional<Surface> surface;
  std::vector<std::array<double, 2>> inputs;
  std::vector<double> targets;
  std::uint64_t seed = 0;
  Domain domain;

  std::size_t size() const { return targets.size(); }
};

/// Draws n i.i.d. uniform points over the domain from a generator seeded
/// with `seed`; output is bit-identical for identical arguments.
Dataset sample_dataset(Surface s, std::size_t n, std::uint64_t seed,
                       const Domain& domain = Domain{});

/// Writes `x,y,f` CSV with 17-significant-digit floats (round-trip exact).
void export_csv(const Dataset& d, const std::string& path);
Dataset import_csv(const std::string& path);

}  // namespace lpa

#endif  // LPA_SURFACES_HPP
