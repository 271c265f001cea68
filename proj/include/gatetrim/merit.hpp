#pragma once

#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "gatetrim/ansatz.hpp"

namespace gatetrim {

/// Shape of the angle-dependent error of an entangling gate. Every shape
/// satisfies xi(0) = 0 and xi(pi/2) = 1 and is extended evenly to negative
/// angles.
enum class XiShape {
  Quadratic,   ///< |t|(3pi - 2|t|) / pi^2
  Linear,      ///< 2|t| / pi
  SinSquared,  ///< sin^2 t
};

std::string_view xi_shape_name(XiShape shape);
bool xi_shape_from_name(std::string_view name, XiShape& shape);

struct NoiseModel {
  /// Error rate E of a fully entangling gate, in [0, 1).
  double default_error_rate = 0.01;
  /// Per-gate E keyed by gate position in the ansatz; wins over both the
  /// gate's own error_rate and the default.
  std::map<int, double> overrides;
  XiShape shape = XiShape::Quadratic;
};

/// Lower clamp for a per-gate factor 1 - E*xi(theta).
inline constexpr double kFactorFloor = 1e-6;
/// |tr| below which the overlap phase is treated as undefined.
inline constexpr double kDegenerateOverlap = 1e-12;

double xi(double theta, XiShape shape);
/// d/dtheta of xi(|theta|); 0 at theta == 0 (see xi_slope_at_zero()).
double xi_derivative(double theta, XiShape shape);
/// One-sided slope of xi at 0+, i.e. the size of the kink of xi(|theta|).
double xi_slope_at_zero(XiShape shape);

/// Effective E for every gate of the ansatz (0 for one-qubit gates).
std::vector<double> gate_error_rates(const Ansatz& ansatz, const NoiseModel& noise);

/// Product over entangling gates of max(1 - E_g * xi(theta_g), kFactorFloor).
double fidelity_multiplier(const Ansatz& ansatz, std::span<const double> theta,
                           const NoiseModel& noise);

struct MeritEvaluation {
  double merit = 0.0;
  double fidelity_multiplier = 1.0;
  double raw_overlap = 0.0;
  /// Indexed by parameter.
  std::vector<double> gradient;
  /// Indexed by parameter: for a parameter sitting exactly at 0, the slope of
  /// the |theta| kink the noise term puts there (merit falls by kink*|dtheta|
  /// on top of the gradient term). Zero elsewhere.
  std::vector<double> kink;
  bool clamped = false;
  bool degenerate_overlap = false;
};

enum class GradientKernel { Sweep, Reference };

/// merit = F(theta) * |tr(target^dagger U(theta))| with its analytic gradient.
MeritEvaluation evaluate(const UnitaryMatrix& target, const Ansatz& ansatz,
                         std::span<const double> theta, const NoiseModel& noise,
                         GradientKernel kernel = GradientKernel::Sweep);

}  // namespace gatetrim
