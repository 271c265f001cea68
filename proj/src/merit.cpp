#include "gatetrim/merit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "gatetrim/kernels.hpp"

namespace gatetrim {

namespace {

using std::numbers::pi;

double sign(double x) { return (x > 0) - (x < 0); }

void check_length(const Ansatz& ansatz, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != ansatz.n_params) {
    throw std::invalid_argument("expected " + std::to_string(ansatz.n_params) +
                                " parameters, got " + std::to_string(theta.size()));
  }
}

}  // namespace

std::string_view xi_shape_name(XiShape shape) {
  switch (shape) {
    case XiShape::Quadratic:
      return "quadratic";
    case XiShape::Linear:
      return "linear";
    case XiShape::SinSquared:
      return "sin2";
  }
  return "quadratic";
}

bool xi_shape_from_name(std::string_view name, XiShape& shape) {
  for (auto s : {XiShape::Quadratic, XiShape::Linear, XiShape::SinSquared}) {
    if (xi_shape_name(s) == name) {
      shape = s;
      return true;
    }
  }
  return false;
}

double xi(double theta, XiShape shape) {
  const double t = std::abs(theta);
  switch (shape) {
    case XiShape::Quadratic:
      return t * (3 * pi - 2 * t) / (pi * pi);
    case XiShape::Linear:
      return 2 * t / pi;
    case XiShape::SinSquared: {
      const double s = std::sin(t);
      return s * s;
    }
  }
  return 0.0;
}

double xi_derivative(double theta, XiShape shape) {
  const double t = std::abs(theta);
  switch (shape) {
    case XiShape::Quadratic:
      return sign(theta) * (3 * pi - 4 * t) / (pi * pi);
    case XiShape::Linear:
      return sign(theta) * 2 / pi;
    case XiShape::SinSquared:
      return std::sin(2 * theta);
  }
  return 0.0;
}

double xi_slope_at_zero(XiShape shape) {
  switch (shape) {
    case XiShape::Quadratic:
      return 3 / pi;
    case XiShape::Linear:
      return 2 / pi;
    case XiShape::SinSquared:
      return 0.0;
  }
  return 0.0;
}

std::vector<double> gate_error_rates(const Ansatz& ansatz, const NoiseModel& noise) {
  std::vector<double> rates(ansatz.structure.size(), 0.0);
  for (std::size_t i = 0; i < ansatz.structure.size(); ++i) {
    const auto& g = ansatz.structure[i];
    if (!is_entangling(g.kind)) continue;
    if (auto it = noise.overrides.find(static_cast<int>(i)); it != noise.overrides.end()) {
      rates[i] = it->second;
    } else {
      rates[i] = g.error_rate.value_or(noise.default_error_rate);
    }
  }
  return rates;
}

double fidelity_multiplier(const Ansatz& ansatz, std::span<const double> theta,
                           const NoiseModel& noise) {
  check_length(ansatz, theta);
  const auto rates = gate_error_rates(ansatz, noise);
  double f = 1.0;
  for (std::size_t i = 0; i < ansatz.structure.size(); ++i) {
    if (rates[i] == 0.0) continue;
    const double factor = 1.0 - rates[i] * xi(theta[ansatz.structure[i].parameter], noise.shape);
    f *= std::max(factor, kFactorFloor);
  }
  return f;
}

MeritEvaluation evaluate(const UnitaryMatrix& target, const Ansatz& ansatz,
                         std::span<const double> theta, const NoiseModel& noise,
                         GradientKernel kernel) {
  check_length(ansatz, theta);
  const Eigen::Index d = Eigen::Index{1} << ansatz.n_qubits;
  if (target.rows() != d || target.cols() != d) {
    throw std::invalid_argument("target is " + std::to_string(target.rows()) + "x" +
                                std::to_string(target.cols()) + ", ansatz needs " +
                                std::to_string(d) + "x" + std::to_string(d));
  }
  const std::size_t m = ansatz.structure.size();

  std::vector<kernels::LocalOp> ops;
  ops.reserve(m);
  for (const auto& g : ansatz.structure) {
    ops.push_back(kernels::make_op(g.kind, g.qubits, theta[g.parameter]));
  }
  const auto sweep = kernel == GradientKernel::Sweep
                         ? kernels::overlap_gradient(target, ops, ansatz.n_qubits,
                                                     ansatz.global_phase)
                         : kernels::overlap_gradient_reference(target, ops, ansatz.n_qubits,
                                                               ansatz.global_phase);

  MeritEvaluation ev;
  ev.gradient.assign(ansatz.n_params, 0.0);
  ev.kink.assign(ansatz.n_params, 0.0);

  // Per-gate noise factors and their derivatives.
  const auto rates = gate_error_rates(ansatz, noise);
  std::vector<double> factor(m, 1.0);
  std::vector<double> dfactor(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (rates[i] == 0.0) continue;
    const double t = theta[ansatz.structure[i].parameter];
    factor[i] = 1.0 - rates[i] * xi(t, noise.shape);
    dfactor[i] = -rates[i] * xi_derivative(t, noise.shape);
    if (factor[i] <= kFactorFloor) {
      factor[i] = kFactorFloor;
      dfactor[i] = 0.0;
      ev.clamped = true;
    }
  }
  // Product of all factors except i, without dividing by a possibly tiny factor.
  std::vector<double> others(m, 1.0);
  double running = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    others[i] = running;
    running *= factor[i];
  }
  ev.fidelity_multiplier = running;
  running = 1.0;
  for (std::size_t i = m; i-- > 0;) {
    others[i] *= running;
    running *= factor[i];
  }

  const Complex z = sweep.overlap;
  ev.raw_overlap = std::abs(z);
  ev.merit = ev.fidelity_multiplier * ev.raw_overlap;
  ev.degenerate_overlap = ev.raw_overlap < kDegenerateOverlap;
  const Complex phase = ev.degenerate_overlap ? Complex{0.0, 0.0} : std::conj(z) / ev.raw_overlap;

  for (std::size_t i = 0; i < m; ++i) {
    const int p = ansatz.structure[i].parameter;
    const double d_overlap = (phase * sweep.derivatives[i]).real();
    ev.gradient[p] += dfactor[i] * others[i] * ev.raw_overlap + ev.fidelity_multiplier * d_overlap;
    if (theta[p] == 0.0 && rates[i] > 0.0) {
      ev.kink[p] += rates[i] * xi_slope_at_zero(noise.shape) * others[i] * ev.raw_overlap;
    }
  }
  return ev;
}

}  // namespace gatetrim
