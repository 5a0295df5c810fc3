#include "minlen/deformation.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "minlen/errors.hpp"

namespace minlen {

namespace {

constexpr int kGridPoints = 1001;
constexpr double kOddTolerance = 1e-9;
constexpr double kSlopeStep = 1e-6;
constexpr double kMinSlope = 1e-12;
constexpr double kEndpointInset = 1e-15;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError(std::string("invalid value for ") + what + ": '" + text + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(ClosedFormId id) {
  switch (id) {
    case ClosedFormId::Cutoff: return "cutoff";
    case ClosedFormId::Power32: return "power32";
    case ClosedFormId::Kempf: return "kempf";
  }
  return "?";
}

std::optional<ClosedFormId> parse_closed_form_id(std::string_view name) {
  if (name == "cutoff") return ClosedFormId::Cutoff;
  if (name == "power32") return ClosedFormId::Power32;
  if (name == "kempf") return ClosedFormId::Kempf;
  return std::nullopt;
}

double DeformationProfile::k_regular(double y) const {
  if (std::abs(y) < 1.0) return k_(y);
  const double inset = std::copysign(1.0 - kEndpointInset, y);
  try {
    const double v = k_(y);
    if (std::isfinite(v)) return v;
  } catch (const EvalError&) {
  }
  return k_(inset);
}

DeformationProfile DeformationProfile::with_bound(double b) const {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw ProfileError(ProfileError::Kind::BadBound, "momentum bound b must be positive and finite");
  }
  DeformationProfile copy = *this;
  copy.b_ = b;
  return copy;
}

DeformationProfile DeformationProfile::with_momentum_limit(double a) const {
  DeformationProfile copy = *this;
  copy.momentum_limit_ = a;
  return copy;
}

DeformationProfile make_builtin(ClosedFormId id) {
  DeformationProfile p;
  p.name_ = std::string(to_string(id));
  p.closed_form_ = id;
  p.slope_ = 1.0;
  switch (id) {
    case ClosedFormId::Cutoff:
      p.k_ = [](double y) { return y; };
      break;
    case ClosedFormId::Power32:
      p.k_ = [](double y) { return y / std::sqrt(1.0 - y * y); };
      p.momentum_limit_ = std::numeric_limits<double>::infinity();
      break;
    case ClosedFormId::Kempf:
      p.k_ = [](double y) { return 2.0 / std::numbers::pi * std::tan(std::numbers::pi * y / 2.0); };
      p.momentum_limit_ = std::numeric_limits<double>::infinity();
      break;
  }
  return p;
}

DeformationProfile make_custom(const Expr& expr, double b, std::string name) {
  DeformationProfile p;
  p.name_ = std::move(name);
  p.expr_source_ = expr.source();
  p.k_ = [expr](double y) { return expr.eval(y); };
  p = p.with_bound(b);

  std::vector<double> grid(kGridPoints);
  std::vector<double> values(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    grid[i] = static_cast<double>(2 * i - (kGridPoints - 1)) / (kGridPoints - 1);
  }
  for (int i = 0; i < kGridPoints; ++i) {
    try {
      values[i] = p.k_regular(grid[i]);
    } catch (const EvalError& e) {
      throw ProfileError(ProfileError::Kind::NotEvaluable,
                         "k(y) cannot be evaluated on [-1, 1]: " + std::string(e.what()));
    }
  }

  for (int i = 0; i < kGridPoints; ++i) {
    const double plus = values[i];
    const double minus = values[kGridPoints - 1 - i];
    const double scale = std::max(1.0, std::abs(plus));
    if (std::abs(plus + minus) > kOddTolerance * scale) {
      throw ProfileError(ProfileError::Kind::NotOdd,
                         "k(y) is not odd: k(" + std::to_string(grid[i]) + ") + k(" +
                             std::to_string(-grid[i]) + ") = " + std::to_string(plus + minus));
    }
  }

  const int mid = (kGridPoints - 1) / 2;
  for (int i = mid; i + 1 < kGridPoints - 1; ++i) {
    if (!(values[i + 1] > values[i])) {
      throw ProfileError(ProfileError::Kind::NotMonotone,
                         "k(y) is not strictly increasing near y=" + std::to_string(grid[i]));
    }
  }

  p.slope_ = (p.k_(kSlopeStep) - p.k_(-kSlopeStep)) / (2.0 * kSlopeStep);
  if (!(p.slope_ > kMinSlope)) {
    throw ProfileError(ProfileError::Kind::ZeroSlopeAtOrigin,
                       "k'(0) = " + std::to_string(p.slope_) + " is not positive; I2(0) would diverge");
  }
  return p;
}

double resolve_bound(const PhysicalParams& p, const DeformationProfile& profile) {
  if (!p.scale) return profile.b();
  const double v = p.scale->value;
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("deformation scale must be positive");
  if (p.scale->kind == DeformationScale::Kind::Bound) return v;
  const auto id = profile.closed_form();
  if (id == ClosedFormId::Power32) return 1.0 / std::sqrt(v);
  if (id == ClosedFormId::Kempf) return std::numbers::pi / (2.0 * std::sqrt(v));
  throw DomainError("beta is only defined for the power32 and kempf deformations; give b instead");
}

DimensionlessCouplings to_dimensionless(const PhysicalParams& p, const DeformationProfile& profile) {
  if (!(p.hbar > 0.0)) throw DomainError("hbar must be positive");
  if (!(p.mass > 0.0)) throw DomainError("mass must be positive");
  const double b = resolve_bound(p, profile);
  const double pi = std::numbers::pi;
  const double hbar2 = p.hbar * p.hbar;
  const double km = p.kappa * p.mass;
  DimensionlessCouplings c;
  c.alpha = (km * km) / (pi * pi * hbar2 * hbar2);
  c.gamma = p.lambda * p.mass / (b * pi * p.hbar);
  return c;
}

double energy_from_eps(double eps, double b, const PhysicalParams& p) {
  if (eps < 0.0) throw DomainError("eps must be non-negative");
  const double q = eps * b;
  return -(q * q) / (2.0 * p.mass);
}

std::string to_key_value(const DeformationProfile& profile) {
  std::ostringstream out;
  out.precision(17);
  out << "name=" << profile.name() << '\n';
  out << "kind=" << (profile.is_builtin() ? "builtin" : "custom") << '\n';
  if (!profile.is_builtin()) out << "expr=" << profile.expr_source() << '\n';
  out << "b=" << profile.b() << '\n';
  return out.str();
}

DeformationProfile profile_from_key_value(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("profile line without '=': '" + t + "'");
    kv[trim(std::string_view(t).substr(0, eq))] = trim(std::string_view(t).substr(eq + 1));
  }
  const std::string kind = kv.count("kind") ? kv["kind"] : "builtin";
  const double b = kv.count("b") ? parse_real(kv["b"], "b") : 1.0;
  if (kind == "builtin") {
    const auto id = parse_closed_form_id(kv["name"]);
    if (!id) throw ConfigError("unknown built-in profile '" + kv["name"] + "'");
    return make_builtin(*id).with_bound(b);
  }
  if (kind == "custom") {
    if (!kv.count("expr") || kv["expr"].empty()) throw ConfigError("custom profile requires expr=");
    const std::string name = kv.count("name") && !kv["name"].empty() ? kv["name"] : "custom";
    return make_custom(Expr::parse(kv["expr"]), b, name);
  }
  throw ConfigError("profile kind must be builtin or custom, got '" + kind + "'");
}

}  // namespace minlen
