#include "gatetrim/gates.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gatetrim {

namespace {

constexpr Complex kI{0.0, 1.0};

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  bool native;
};

constexpr std::array<KindInfo, 14> kKinds{{
    {GateKind::RX, "rx", 1, true},    {GateKind::RY, "ry", 1, true},
    {GateKind::RZ, "rz", 1, true},    {GateKind::RZZ, "rzz", 2, true},
    {GateKind::FECR, "fecr", 2, true}, {GateKind::H, "h", 1, false},
    {GateKind::X, "x", 1, false},     {GateKind::Z, "z", 1, false},
    {GateKind::S, "s", 1, false},     {GateKind::SDG, "sdg", 1, false},
    {GateKind::T, "t", 1, false},     {GateKind::TDG, "tdg", 1, false},
    {GateKind::CX, "cx", 2, false},   {GateKind::ECR, "ecr", 2, false},
}};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k;
  }
  throw std::invalid_argument("unknown gate kind");
}

GateMatrix fecr(double theta) {
  const Complex c = std::cos(theta / 2);
  const Complex s = std::sin(theta / 2);
  GateMatrix m(4, 4);
  m << 0, 0, kI * c, -s,  //
      0, 0, -s, kI * c,   //
      kI * c, s, 0, 0,    //
      s, kI * c, 0, 0;
  return m;
}

}  // namespace

int arity(GateKind kind) { return info(kind).arity; }

bool is_entangling(GateKind kind) { return arity(kind) == 2; }

bool is_native(GateKind kind) { return info(kind).native; }

std::string_view gate_name(GateKind kind) { return info(kind).name; }

bool gate_kind_from_name(std::string_view name, GateKind& kind) {
  for (const auto& k : kKinds) {
    if (k.name == name) {
      kind = k.kind;
      return true;
    }
  }
  return false;
}

GateMatrix gate_matrix(GateKind kind, double theta) {
  using std::numbers::pi;
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Complex lo = std::polar(1.0, -theta / 2);
  const Complex hi = std::polar(1.0, theta / 2);
  const double r = std::numbers::sqrt2 / 2;
  GateMatrix m;
  switch (kind) {
    case GateKind::RX:
      m.resize(2, 2);
      m << c, -kI * s, -kI * s, c;
      return m;
    case GateKind::RY:
      m.resize(2, 2);
      m << c, -s, s, c;
      return m;
    case GateKind::RZ:
      m = GateMatrix::Zero(2, 2);
      m(0, 0) = lo;
      m(1, 1) = hi;
      return m;
    case GateKind::RZZ:
      m = GateMatrix::Zero(4, 4);
      m(0, 0) = lo;
      m(1, 1) = hi;
      m(2, 2) = hi;
      m(3, 3) = lo;
      return m;
    case GateKind::FECR:
      return fecr(theta);
    case GateKind::H:
      m.resize(2, 2);
      m << r, r, r, -r;
      return m;
    case GateKind::X:
      m.resize(2, 2);
      m << 0, 1, 1, 0;
      return m;
    case GateKind::Z:
      m = GateMatrix::Identity(2, 2);
      m(1, 1) = -1;
      return m;
    case GateKind::S:
    case GateKind::SDG:
    case GateKind::T:
    case GateKind::TDG: {
      double phase = kind == GateKind::S     ? pi / 2
                     : kind == GateKind::SDG ? -pi / 2
                     : kind == GateKind::T   ? pi / 4
                                             : -pi / 4;
      m = GateMatrix::Identity(2, 2);
      m(1, 1) = std::polar(1.0, phase);
      return m;
    }
    case GateKind::CX:
      m = GateMatrix::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 1) = 1;
      m(2, 3) = 1;
      m(3, 2) = 1;
      return m;
    case GateKind::ECR:
      return fecr(pi / 2);
  }
  throw std::invalid_argument("unknown gate kind");
}

GateMatrix gate_matrix_derivative(GateKind kind, double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  // d/dt cos(t/2) = -s/2, d/dt sin(t/2) = c/2
  const double dc = -s / 2;
  const double ds = c / 2;
  const Complex dlo = -kI / 2.0 * std::polar(1.0, -theta / 2);
  const Complex dhi = kI / 2.0 * std::polar(1.0, theta / 2);
  GateMatrix m;
  switch (kind) {
    case GateKind::RX:
      m.resize(2, 2);
      m << dc, -kI * ds, -kI * ds, dc;
      return m;
    case GateKind::RY:
      m.resize(2, 2);
      m << dc, -ds, ds, dc;
      return m;
    case GateKind::RZ:
      m = GateMatrix::Zero(2, 2);
      m(0, 0) = dlo;
      m(1, 1) = dhi;
      return m;
    case GateKind::RZZ:
      m = GateMatrix::Zero(4, 4);
      m(0, 0) = dlo;
      m(1, 1) = dhi;
      m(2, 2) = dhi;
      m(3, 3) = dlo;
      return m;
    case GateKind::FECR:
      m.resize(4, 4);
      m << 0, 0, kI * dc, -ds,  //
          0, 0, -ds, kI * dc,   //
          kI * dc, ds, 0, 0,    //
          ds, kI * dc, 0, 0;
      return m;
    default:
      throw std::invalid_argument("gate '" + std::string(gate_name(kind)) +
                                  "' has no angle parameter");
  }
}

UnitaryMatrix embed(const GateMatrix& matrix, std::span<const int> qubits, int n,
                    int limit) {
  if (n < 0 || n > limit) {
    throw std::invalid_argument("register of " + std::to_string(n) +
                                " qubits exceeds the dense simulation limit of " +
                                std::to_string(limit));
  }
  const auto k = static_cast<int>(qubits.size());
  if (matrix.rows() != (Eigen::Index{1} << k) || matrix.cols() != matrix.rows()) {
    throw std::invalid_argument("gate matrix size does not match qubit count");
  }
  std::uint32_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument("qubit index " + std::to_string(q) +
                                  " out of range for " + std::to_string(n) +
                                  "-qubit register");
    }
    const std::uint32_t bit = 1u << (n - 1 - q);
    if (mask & bit) {
      throw std::invalid_argument("duplicate qubit index " + std::to_string(q));
    }
    mask |= bit;
  }

  auto local_index = [&](std::uint32_t index) {
    std::uint32_t sub = 0;
    for (int q : qubits) sub = (sub << 1) | ((index >> (n - 1 - q)) & 1u);
    return sub;
  };

  const std::uint32_t dim = 1u << n;
  UnitaryMatrix out = UnitaryMatrix::Zero(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      out(r, c) = matrix(local_index(r), local_index(c));
    }
  }
  return out;
}

}  // namespace gatetrim
