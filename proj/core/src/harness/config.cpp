#include "nhqc/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nhqc/errors.hpp"

namespace nhqc::harness {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const auto v = lower(trim(text));
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError(std::string(key) + ": expected a boolean, got '" + std::string(text) + "'");
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  const auto v = trim(text);
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" + std::string(text) + "'");
  return out;
}

std::vector<SchemeId> parse_scheme_list(std::string_view text) {
  if (lower(trim(text)) == "all") return {kAllSchemes.begin(), kAllSchemes.end()};
  std::vector<SchemeId> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto name = trim(text.substr(start, comma - start));
    if (!name.empty()) {
      const auto id = parse_scheme(name);
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("scheme: empty scheme list");
  return out;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    auto key = lower(trim(line.substr(0, eq)));
    std::replace(key.begin(), key.end(), '-', '_');
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    kv[key] = std::string(value);
  }
  return kv;
}

KeyValues load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_key_values(os.str());
}

double parse_angle(std::string_view text) {
  auto s = lower(trim(text));
  const auto p = s.find("pi");
  if (p == std::string::npos) {
    if (auto v = to_double(s)) return *v;
    throw ConfigError("invalid angle '" + std::string(text) + "'");
  }
  const std::string_view head = std::string_view(s).substr(0, p);
  const std::string_view tail = std::string_view(s).substr(p + 2);
  double factor = 1.0;
  const auto h = trim(head);
  if (h == "-") {
    factor = -1.0;
  } else if (h == "+" || h.empty()) {
    factor = 1.0;
  } else {
    auto hv = h;
    if (hv.back() == '*') hv.remove_suffix(1);
    const auto v = to_double(hv);
    if (!v) throw ConfigError("invalid angle '" + std::string(text) + "'");
    factor = *v;
  }
  double divisor = 1.0;
  const auto t = trim(tail);
  if (!t.empty()) {
    if (t.front() != '/') throw ConfigError("invalid angle '" + std::string(text) + "'");
    const auto v = to_double(t.substr(1));
    if (!v || *v == 0.0) throw ConfigError("invalid angle '" + std::string(text) + "'");
    divisor = *v;
  }
  return factor * kPi / divisor;
}

double parse_number(std::string_view key, std::string_view text) {
  if (auto v = to_double(text)) return *v;
  throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
}

std::vector<double> Grid::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  out.back() = max;
  return out;
}

void Grid::validate(std::string_view name) const {
  const std::string n(name);
  if (count == 0) throw ConfigError(n + ": grid count must be at least 1");
  if (!std::isfinite(min) || !std::isfinite(max)) throw ConfigError(n + ": grid bounds must be finite");
  if (max < min) throw ConfigError(n + ": grid max is below min");
  if (count > 1 && max == min) throw ConfigError(n + ": several points on an empty interval");
}

GatePreset parse_gate_preset(std::string_view name) {
  const auto n = lower(trim(name));
  if (n == "x2" || n == "x/2" || n == "x_half") return GatePreset::x_half;
  if (n == "s" || n == "s_gate") return GatePreset::s_gate;
  if (n == "custom") return GatePreset::custom;
  throw ConfigError("unknown gate '" + std::string(name) + "' (expected x2, s or custom)");
}

std::string_view gate_preset_name(GatePreset g) {
  switch (g) {
    case GatePreset::x_half: return "x2";
    case GatePreset::s_gate: return "s";
    case GatePreset::custom: return "custom";
  }
  return "custom";
}

void SweepConfig::validate() const {
  if (schemes.empty()) throw ConfigError("no schemes selected");
  params.validate();
  noise.validate();
  epsilon.validate("epsilon");
  for (double e : epsilon.values())
    if (std::abs(e) > 0.5) throw ConfigError("epsilon grid leaves [-0.5, 0.5]");
  if (delta) {
    delta->validate("delta");
    for (double v : delta->values())
      if (std::abs(v) > 0.5) throw ConfigError("delta grid leaves [-0.5, 0.5]");
  }
  if (rate) {
    rate->validate("rate");
    if (rate->min < 0.0) throw ConfigError("rate grid must be non-negative");
  }
  if (!(gamma_rate >= 0.0)) throw ConfigError("gamma_rate must be non-negative");
  if (!(step > 0.0) || !std::isfinite(step)) throw ConfigError("step must be positive");
  if (samples < 2) throw ConfigError("samples must be at least 2");
  two.validate();
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scheme",    "gate",      "theta",       "phi",        "gamma_g",   "phi0",      "epsilon",
      "delta",     "gamma_rate", "eps_min",    "eps_max",    "eps_count", "delta_min", "delta_max",
      "delta_count", "rate_min", "rate_max",   "rate_count", "step",      "samples",   "workers",
      "out",       "dfs",       "level",       "chi",        "eta",       "eta4",      "model"};
  return keys;
}

SweepConfig make_config(const KeyValues& kv) {
  const auto& keys = config_keys();
  for (const auto& [k, v] : kv)
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError("unknown config key '" + k + "'");

  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto any = [&](std::initializer_list<const char*> ks) {
    return std::any_of(ks.begin(), ks.end(), [&](const char* k) { return kv.count(k) > 0; });
  };

  SweepConfig c;
  if (auto v = get("scheme")) c.schemes = parse_scheme_list(*v);
  if (auto v = get("gate")) c.gate = parse_gate_preset(*v);
  if (c.gate == GatePreset::s_gate) c.params = GateParams::s_gate();
  if (any({"theta", "phi", "gamma_g"})) {
    c.gate = GatePreset::custom;
    if (auto v = get("theta")) c.params.theta = parse_angle(*v);
    if (auto v = get("phi")) c.params.phi = parse_angle(*v);
    if (auto v = get("gamma_g")) c.params.gamma_g = parse_angle(*v);
  }
  if (auto v = get("phi0")) c.phi0 = parse_angle(*v);

  if (auto v = get("epsilon")) c.noise.epsilon = parse_number("epsilon", *v);
  if (auto v = get("delta")) c.noise.delta = parse_number("delta", *v);
  if (auto v = get("gamma_rate")) c.gamma_rate = parse_number("gamma_rate", *v);

  if (any({"eps_min", "eps_max", "eps_count"})) {
    if (auto v = get("eps_min")) c.epsilon.min = parse_number("eps_min", *v);
    if (auto v = get("eps_max")) c.epsilon.max = parse_number("eps_max", *v);
    if (auto v = get("eps_count")) c.epsilon.count = parse_count("eps_count", *v);
  } else if (get("epsilon")) {
    c.epsilon = Grid{c.noise.epsilon, c.noise.epsilon, 1};
  }
  if (any({"delta_min", "delta_max", "delta_count"})) {
    Grid g{-0.1, 0.1, 21};
    if (auto v = get("delta_min")) g.min = parse_number("delta_min", *v);
    if (auto v = get("delta_max")) g.max = parse_number("delta_max", *v);
    if (auto v = get("delta_count")) g.count = parse_count("delta_count", *v);
    c.delta = g;
  }
  if (any({"rate_min", "rate_max", "rate_count"})) {
    Grid g{0.0, 5e-4, 11};
    if (auto v = get("rate_min")) g.min = parse_number("rate_min", *v);
    if (auto v = get("rate_max")) g.max = parse_number("rate_max", *v);
    if (auto v = get("rate_count")) g.count = parse_count("rate_count", *v);
    c.rate = g;
  }

  if (auto v = get("step")) c.step = parse_number("step", *v);
  if (auto v = get("samples")) c.samples = parse_count("samples", *v);
  if (auto v = get("workers")) c.workers = static_cast<unsigned>(parse_count("workers", *v));
  if (auto v = get("out")) c.out = *v;
  if (auto v = get("dfs")) c.dfs = parse_bool("dfs", *v);
  if (auto v = get("level")) c.level = parse_dfs_level(*v);
  if (auto v = get("chi")) c.two.chi = parse_angle(*v);
  if (auto v = get("eta")) c.two.eta = parse_angle(*v);
  if (auto v = get("eta4")) c.two.eta4 = parse_angle(*v);
  if (auto v = get("model")) {
    c.model = parse_operator_set(*v);
    c.model_set = true;
  }
  // The two-qubit geometric phase follows the single-qubit gamma_g setting.
  c.two.gamma_g = c.params.gamma_g;

  c.validate();
  return c;
}

}  // namespace nhqc::harness
