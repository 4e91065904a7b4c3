#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "nhqc/algebra.hpp"

namespace nhqc {

/// Target holonomic gate: rotation axis n = (sin θ cos φ, sin θ sin φ, cos θ)
/// and geometric phase γ_g.
struct GateParams {
  double theta = 0.0;
  double phi = 0.0;
  double gamma_g = 0.0;

  // theta in [0, pi]; phi and gamma_g wrapped into [0, 2pi).
  GateParams normalized() const;
  void validate() const;

  static GateParams x_half() { return {kPi / 2, 0.0, kPi / 2}; }
  static GateParams s_gate() { return {0.0, 0.0, kPi / 2}; }
};

/// One constant-amplitude drive interval. With Ω = Ω_m = 1 the duration equals the area.
struct PulseSegment {
  double area = 0.0;
  double phi0 = 0.0;

  double duration(double omega = 1.0) const { return area / omega; }
};

enum class SchemeId { nhqc, tlnhqc, dcnhqc, opnhqc };

inline constexpr std::array<SchemeId, 4> kAllSchemes = {SchemeId::nhqc, SchemeId::tlnhqc,
                                                       SchemeId::dcnhqc, SchemeId::opnhqc};

std::string_view scheme_name(SchemeId id);
// Case-insensitive; throws ConfigError listing valid names.
SchemeId parse_scheme(std::string_view name);

/// Segment list of a scheme. Phases are stored unwrapped.
std::vector<PulseSegment> build_sequence(SchemeId scheme, const GateParams& g, double phi0_base = 0.0);

double total_area(const std::vector<PulseSegment>& segments);

/// e^{iγ/2} e^{-i(γ/2) n·σ} in the computational basis.
Matrix target_gate(const GateParams& g);

struct BrightDark {
  Matrix bright;  // sin(θ/2)|0> - cos(θ/2)e^{iφ}|1>
  Matrix dark;    // -cos(θ/2)e^{-iφ}|0> - sin(θ/2)|1>
};

BrightDark bright_dark_basis(const GateParams& g);

// Wrap an angle into [0, 2pi).
double wrap_angle(double a);

}  // namespace nhqc
