#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "minlen/expr.hpp"

namespace minlen {

/// Deformations whose I1/I2 integrals are known in closed form.
enum class ClosedFormId { Cutoff, Power32, Kempf };

std::string_view to_string(ClosedFormId id);
std::optional<ClosedFormId> parse_closed_form_id(std::string_view name);

/// Scaled deformation k(y) = g(b*y)/b on [-1, 1] together with its momentum
/// bound b. Immutable; copies share the underlying expression.
class DeformationProfile {
 public:
  const std::string& name() const noexcept { return name_; }
  double b() const noexcept { return b_; }
  double slope_at_origin() const noexcept { return slope_; }
  std::optional<ClosedFormId> closed_form() const noexcept { return closed_form_; }
  bool is_builtin() const noexcept { return closed_form_.has_value(); }
  /// Expression text for custom profiles, empty for built-ins.
  const std::string& expr_source() const noexcept { return expr_source_; }
  /// Momentum limit a (P in [-a, a]); metadata only, never used numerically.
  std::optional<double> momentum_limit() const noexcept { return momentum_limit_; }

  /// Raw k(y). May be non-finite (or throw EvalError for custom input) at |y| = 1.
  double k(double y) const { return k_(y); }

  /// k(y) with the removable endpoint handled: where k(+-1) is non-finite or
  /// not evaluable it is taken at +-(1 - 1e-15) instead.
  double k_regular(double y) const;

  DeformationProfile with_bound(double b) const;
  DeformationProfile with_momentum_limit(double a) const;

 private:
  friend DeformationProfile make_builtin(ClosedFormId id);
  friend DeformationProfile make_custom(const Expr& expr, double b, std::string name);

  DeformationProfile() = default;

  std::string name_;
  std::function<double(double)> k_;
  double b_ = 1.0;
  double slope_ = 1.0;
  std::optional<ClosedFormId> closed_form_;
  std::string expr_source_;
  std::optional<double> momentum_limit_;
};

DeformationProfile make_builtin(ClosedFormId id);

/// Wraps a user expression for k(y). Validates on a 1001-point grid: oddness
/// (ProfileError::NotOdd), strict growth on [0,1) (NotMonotone) and
/// k'(0) > 1e-12 by central difference at h = 1e-6 (ZeroSlopeAtOrigin).
DeformationProfile make_custom(const Expr& expr, double b, std::string name = "custom");

/// How the deformation scale is given in physical mode.
struct DeformationScale {
  enum class Kind { Beta, Bound } kind = Kind::Bound;
  double value = 1.0;
};

struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double kappa = 0.0;   ///< delta-prime coupling
  double lambda = 0.0;  ///< delta coupling, V = -lambda*delta + kappa*delta'
  /// Unset means "use the profile's b".
  std::optional<DeformationScale> scale;
};

struct DimensionlessCouplings {
  double alpha = 0.0;  ///< >= 0
  double gamma = 0.0;
};

/// b implied by `p.scale`: b directly, or b = 1/sqrt(beta) (power32),
/// pi/(2 sqrt(beta)) (kempf). Throws DomainError for beta on other profiles.
double resolve_bound(const PhysicalParams& p, const DeformationProfile& profile);

/// alpha = kappa^2 m^2 / (pi^2 hbar^4), gamma = lambda m / (b pi hbar).
DimensionlessCouplings to_dimensionless(const PhysicalParams& p, const DeformationProfile& profile);

/// E = -(eps b)^2 / (2m).
double energy_from_eps(double eps, double b, const PhysicalParams& p);

/// Key-value text block: name=, kind=builtin|custom, expr=, b= (one per line).
std::string to_key_value(const DeformationProfile& profile);
DeformationProfile profile_from_key_value(std::string_view text);

}  // namespace minlen
