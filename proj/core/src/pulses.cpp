#include "nhqc/pulses.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "nhqc/errors.hpp"

namespace nhqc {

double wrap_angle(double a) {
  double w = std::fmod(a, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  if (w >= 2.0 * kPi) w = 0.0;
  return w;
}

GateParams GateParams::normalized() const {
  validate();
  return {theta, wrap_angle(phi), wrap_angle(gamma_g)};
}

void GateParams::validate() const {
  if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(gamma_g)) {
    throw ValidationError("GateParams: angles must be finite");
  }
  if (theta < -1e-12 || theta > kPi + 1e-12) throw ValidationError("GateParams: theta must lie in [0, pi]");
}

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::nhqc:
      return "NHQC";
    case SchemeId::tlnhqc:
      return "TLNHQC";
    case SchemeId::dcnhqc:
      return "DCNHQC";
    case SchemeId::opnhqc:
      return "OPNHQC";
  }
  throw ValidationError("scheme_name: unknown scheme");
}

SchemeId parse_scheme(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (SchemeId id : kAllSchemes)
    if (scheme_name(id) == upper) return id;
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected NHQC, TLNHQC, DCNHQC or OPNHQC)");
}

std::vector<PulseSegment> build_sequence(SchemeId scheme, const GateParams& g, double phi0_base) {
  g.validate();
  if (!std::isfinite(phi0_base)) throw ValidationError("build_sequence: phi0_base must be finite");
  const double p = phi0_base;
  const double gg = g.gamma_g;
  constexpr double half = kPi / 2;
  constexpr double quarter = kPi / 4;

  switch (scheme) {
    case SchemeId::nhqc:
      return {{half, p}, {half, p + kPi - gg}};
    case SchemeId::opnhqc:
      return {{half, p}, {half, p + kPi - gg / 2}, {half, p + kPi - gg}, {half, p + 2 * kPi - 1.5 * gg}};
    case SchemeId::tlnhqc:
      return {{half, p}, {half, p + kPi - gg / 2}, {half, p}, {half, p + kPi - gg / 2}};
    case SchemeId::dcnhqc:
      return {{quarter, p},           {half, p + kPi / 2},       {quarter, p},
              {quarter, p + kPi - gg}, {half, p - kPi / 2 - gg}, {quarter, p + kPi - gg}};
  }
  throw ValidationError("build_sequence: unknown scheme");
}

double total_area(const std::vector<PulseSegment>& segments) {
  double a = 0.0;
  for (const auto& s : segments) a += s.area;
  return a;
}

Matrix target_gate(const GateParams& g) {
  g.validate();
  const double c = std::cos(g.gamma_g / 2);
  const double s = std::sin(g.gamma_g / 2);
  const double ct = std::cos(g.theta);
  const double st = std::sin(g.theta);
  const Complex global = std::polar(1.0, g.gamma_g / 2);
  Matrix u{{Complex{c, -s * ct}, -kI * s * st * std::polar(1.0, -g.phi)},
           {-kI * s * st * std::polar(1.0, g.phi), Complex{c, s * ct}}};
  return u * global;
}

BrightDark bright_dark_basis(const GateParams& g) {
  g.validate();
  const double s = std::sin(g.theta / 2);
  const double c = std::cos(g.theta / 2);
  return {Matrix::column({s, -c * std::polar(1.0, g.phi)}),
          Matrix::column({-c * std::polar(1.0, -g.phi), -s})};
}

}  // namespace nhqc
