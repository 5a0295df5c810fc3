#include "minlen/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minlen/closed_forms.hpp"
#include "minlen/errors.hpp"
#include "minlen/format.hpp"
#include "minlen/quadrature.hpp"
#include "minlen/wavefunction.hpp"

namespace minlen::cli {

namespace {

constexpr double kVerifyThreshold = 1e-8;

double parse_double(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(value)) {
    throw ConfigError(flag + ": '" + text + "' is not a finite number");
  }
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--profile: cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> geometric_grid(double lo, double hi, int n, const std::string& flag) {
  if (n < 1) throw ConfigError(flag + ": grid needs at least one point");
  if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError(flag + ": need 0 < min <= max");
  std::vector<double> grid(n);
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  grid.back() = hi;
  return grid;
}

std::vector<double> linear_grid(double lo, double hi, int n, const std::string& flag) {
  if (n < 1) throw ConfigError(flag + ": grid needs at least one point");
  if (!(hi >= lo)) throw ConfigError(flag + ": need min <= max");
  if (n == 1) return {lo};
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
  return grid;
}

std::string gamma_label(const GammaSpec& g) {
  std::string s = g.relative_to_threshold ? "g0x" + format_number(g.value) : format_number(g.value);
  for (char& c : s) {
    if (c == '-') c = 'm';
  }
  return s;
}

SpectralProblem base_problem(const RunConfig& config, const DeformationProfile& profile) {
  SpectralProblem problem{profile, {}, 1e-12, config.tol, config.force_quadrature, std::nullopt};
  return problem;
}

// Dimensionless couplings from --alpha/--gamma or --physical, never both.
SpectralProblem coupled_problem(const RunConfig& config, DeformationProfile profile) {
  if (config.physical && (config.alpha || config.gamma)) {
    throw ConfigError("--physical cannot be combined with --alpha/--gamma");
  }
  if (config.physical) {
    PhysicalParams p = *config.physical;
    if (config.b && config.beta) throw ConfigError("--b and --beta are mutually exclusive");
    if (config.b) p.scale = DeformationScale{DeformationScale::Kind::Bound, *config.b};
    if (config.beta) p.scale = DeformationScale{DeformationScale::Kind::Beta, *config.beta};
    const double b = resolve_bound(p, profile);
    profile = profile.with_bound(b);
    p.scale = DeformationScale{DeformationScale::Kind::Bound, b};
    SpectralProblem problem = base_problem(config, profile);
    problem.couplings = to_dimensionless(p, profile);
    problem.physical = p;
    return problem;
  }
  if (!config.alpha) throw ConfigError("--alpha is required (or --physical hbar,m,kappa,lambda)");
  if (*config.alpha < 0.0) throw ConfigError("--alpha must be non-negative");
  if (config.gamma && config.gamma->relative_to_threshold) {
    throw ConfigError("--gamma: g0: form is only accepted by sweep and figure");
  }
  SpectralProblem problem = base_problem(config, profile);
  problem.couplings = {*config.alpha, config.gamma ? config.gamma->value : 0.0};
  return problem;
}

void require_profile(const RunConfig& config) {
  if (config.profile_spec.empty()) throw ConfigError("--profile is required");
}

int cmd_threshold(const RunConfig& config, std::ostream& out) {
  const SpectralProblem problem = coupled_problem(config, parse_profile_spec(config.profile_spec));
  const ExistenceReport report = exists_bound_state(problem);
  out << "{\"gamma0\": " << format_number(report.gamma0) << ", \"i2_zero\": " << format_number(report.i2_zero)
      << "}\n";
  return 0;
}

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SpectralProblem problem = coupled_problem(config, parse_profile_spec(config.profile_spec));
  if (!exists_bound_state(problem).exists) {
    err << "no bound state\n";
    return static_cast<int>(ExitCode::NoBoundState);
  }
  const BoundState s = solve_bound_state(problem);
  out << "{\"eps_star\": " << format_number(s.eps_star);
  if (s.energy) out << ", \"energy\": " << format_number(*s.energy);
  out << ", \"i1\": " << format_number(s.i1_at_root) << ", \"i2\": " << format_number(s.i2_at_root)
      << ", \"residual\": " << format_number(s.residual) << ", \"bracket\": [" << format_number(s.bracket_lo)
      << ", " << format_number(s.bracket_hi) << "]";
  if (s.multiple_roots()) {
    out << ", \"warning\": \"MultipleRoots\", \"other_roots\": [";
    for (std::size_t i = 0; i < s.extra_roots.size(); ++i) {
      out << (i ? ", " : "") << format_number(s.extra_roots[i]);
    }
    out << "]";
    err << "warning: MultipleRoots\n";
  }
  out << "}\n";
  return 0;
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  const DeformationProfile profile = parse_profile_spec(config.profile_spec);
  const auto alphas = config.log_grid
                          ? geometric_grid(config.alpha_min, config.alpha_max, config.alpha_steps, "--alpha-*")
                          : linear_grid(config.alpha_min, config.alpha_max, config.alpha_steps, "--alpha-*");
  for (double a : alphas) {
    if (a < 0.0) throw ConfigError("--alpha-min: alpha must be non-negative");
  }
  const auto points = sweep_alpha(base_problem(config, profile), config.gamma.value_or(GammaSpec{}), alphas);
  out << sweep_csv(points);
  return 0;
}

int cmd_integrals(const RunConfig& config, std::ostream& out) {
  if (config.eps.empty()) throw ConfigError("--eps: at least one value is required");
  const DeformationProfile profile = parse_profile_spec(config.profile_spec);
  std::ostringstream body;
  body << "eps,i1,i2,err1,err2\n";
  for (double eps : config.eps) {
    if (!(eps > 0.0)) throw ConfigError("--eps: values must be positive (I1 diverges at 0)");
    const IntegralPair p = compute_integrals(profile, eps, config.tol);
    body << format_number(eps) << ',' << format_number(p.i1) << ',' << format_number(p.i2) << ','
         << format_number(p.err1) << ',' << format_number(p.err2) << '\n';
  }
  out << body.str();
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.eps.empty()) throw ConfigError("--eps: at least one value is required");
  const DeformationProfile profile = parse_profile_spec(config.profile_spec);
  if (!profile.closed_form()) throw ConfigError("--profile: verify needs a built-in profile");
  const ClosedFormId id = *profile.closed_form();
  std::ostringstream body;
  body << "eps,i1_closed,i1_quad,i1_residual,i2_closed,i2_quad,i2_residual\n";
  bool ok = true;
  for (double eps : config.eps) {
    if (!(eps > 0.0)) throw ConfigError("--eps: values must be positive");
    const IntegralPair q = compute_integrals(profile, eps, config.tol);
    const double c1 = closed_i1(id, eps);
    const double c2 = closed_i2(id, eps);
    const double r1 = std::abs(c1 - q.i1);
    const double r2 = std::abs(c2 - q.i2);
    ok = ok && r1 < kVerifyThreshold && r2 < kVerifyThreshold;
    body << format_number(eps) << ',' << format_number(c1) << ',' << format_number(q.i1) << ','
         << format_number(r1) << ',' << format_number(c2) << ',' << format_number(q.i2) << ','
         << format_number(r2) << '\n';
  }
  out << body.str();
  if (!ok) {
    err << "closed form and quadrature disagree by more than 1e-8\n";
    return static_cast<int>(ExitCode::NumericFailure);
  }
  return 0;
}

int cmd_wavefunction(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.samples < 2) throw ConfigError("--samples must be at least 2");
  const SpectralProblem problem = coupled_problem(config, parse_profile_spec(config.profile_spec));
  if (!exists_bound_state(problem).exists) {
    err << "no bound state\n";
    return static_cast<int>(ExitCode::NoBoundState);
  }
  const BoundState state = solve_bound_state(problem);
  const Eigenfunction ef = build_eigenfunction(state, problem);
  std::ostringstream body;
  body << "y,density,re,im\n";
  for (const auto& s : sample_density(ef, problem.profile, config.samples)) {
    body << format_number(s.y) << ',' << format_number(s.density) << ',' << format_number(s.re) << ','
         << format_number(s.im) << '\n';
  }
  out << body.str();
  return 0;
}

int cmd_limit_sweep(const RunConfig& config, std::ostream& out) {
  if (!config.physical) throw ConfigError("--physical hbar,m,kappa,lambda is required");
  const DeformationProfile profile = parse_profile_spec(config.profile_spec);
  const auto bs = geometric_grid(config.b_min, config.b_max, config.steps, "--b-*");
  const auto points = sweep_b_physical(*config.physical, profile, bs, config.tol);
  std::ostringstream body;
  body << "b,gamma,eps_star,energy\n";
  for (const auto& p : points) {
    body << format_number(p.b) << ',' << format_number(p.gamma) << ',' << format_optional(p.eps_star) << ','
         << format_optional(p.energy) << '\n';
  }
  out << body.str();
  return 0;
}

int cmd_figure(const RunConfig& config, std::ostream& out) {
  const auto alphas = geometric_grid(config.alpha_min, config.alpha_max, config.alpha_steps, "--alpha-*");
  std::vector<GammaSpec> gammas = config.gammas;
  if (config.figure == FigureKind::Fig2 && gammas.empty()) {
    gammas = {GammaSpec{-0.5, true}, GammaSpec{0.0, false}, GammaSpec{1.0, false}};
  }
  const auto curves = emit_figure_data(config.figure, config.profiles, gammas, alphas, config.tol);
  std::filesystem::create_directories(config.out_dir);
  const std::string prefix = config.figure == FigureKind::Fig1 ? "fig1_" : "fig2_";
  for (const auto& curve : curves) {
    const auto path = config.out_dir / (prefix + curve.profile + "_gamma_" + curve.gamma_label + ".csv");
    std::ofstream file(path);
    if (!file) throw ConfigError("--out-dir: cannot write '" + path.string() + "'");
    file << sweep_csv(curve.points);
    out << path.string() << '\n';
  }
  return 0;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  require_profile(config);
  switch (config.subcommand) {
    case Subcommand::Solve: return cmd_solve(config, out, err);
    case Subcommand::Sweep: return cmd_sweep(config, out);
    case Subcommand::Threshold: return cmd_threshold(config, out);
    case Subcommand::Integrals: return cmd_integrals(config, out);
    case Subcommand::Wavefunction: return cmd_wavefunction(config, out, err);
    case Subcommand::Verify: return cmd_verify(config, out, err);
    case Subcommand::LimitSweep: return cmd_limit_sweep(config, out);
    case Subcommand::Figure: return cmd_figure(config, out);
  }
  throw ConfigError("unknown subcommand");
}

}  // namespace

DeformationProfile parse_profile_spec(const std::string& spec) {
  if (spec.empty()) throw ConfigError("--profile: empty profile");
  if (spec.front() == '@') return profile_from_key_value(read_file(spec.substr(1)));
  if (const auto id = parse_closed_form_id(spec)) return make_builtin(*id);

  const std::string prefix = "custom:";
  if (spec.rfind(prefix, 0) != 0) {
    throw ConfigError("--profile: expected cutoff|power32|kempf|custom:b=<val>,expr=<k(y)>, got '" + spec + "'");
  }
  // Split on commas that start a new key; anything else belongs to the previous value.
  std::string b_text;
  std::string expr_text;
  std::string* current = nullptr;
  std::string rest = spec.substr(prefix.size());
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const std::size_t comma = rest.find(',', pos);
    const std::string piece = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (piece.rfind("b=", 0) == 0) {
      b_text = piece.substr(2);
      current = &b_text;
    } else if (piece.rfind("expr=", 0) == 0) {
      expr_text = piece.substr(5);
      current = &expr_text;
    } else if (current == &expr_text) {
      expr_text += "," + piece;
    } else {
      throw ConfigError("--profile: unknown custom profile field '" + piece + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (expr_text.empty()) throw ConfigError("--profile: custom profile needs expr=");
  const double b = b_text.empty() ? 1.0 : parse_double(b_text, "--profile b");
  if (!(b > 0.0)) throw ConfigError("--profile: b must be positive");
  return make_custom(Expr::parse(expr_text), b);
}

GammaSpec parse_gamma_spec(const std::string& text) {
  const std::string rel = "g0:";
  if (text.rfind(rel, 0) == 0) return {parse_double(text.substr(rel.size()), "--gamma"), true};
  return {parse_double(text, "--gamma"), false};
}

double default_tolerance() {
  if (const char* env = std::getenv("MINLEN_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
  }
  return kDefaultQuadTolerance;
}

std::vector<FigureCurve> emit_figure_data(FigureKind figure, std::span<const std::string> profiles,
                                          std::span<const GammaSpec> gammas, std::span<const double> alphas,
                                          double tol) {
  if (alphas.empty()) throw ConfigError("--alpha-steps: the alpha grid is empty");
  if (profiles.empty()) throw ConfigError("--profiles: no profiles given");
  std::vector<GammaSpec> used(gammas.begin(), gammas.end());
  if (figure == FigureKind::Fig1) used = {GammaSpec{0.0, false}};
  if (used.empty()) throw ConfigError("--gammas: fig2 needs at least one gamma");

  std::vector<FigureCurve> curves;
  for (const auto& name : profiles) {
    const DeformationProfile profile = parse_profile_spec(name);
    const SpectralProblem base{profile, {}, 1e-12, tol, false, std::nullopt};
    for (const auto& g : used) {
      curves.push_back({profile.name(), gamma_label(g), sweep_alpha(base, g, alphas)});
    }
  }
  return curves;
}

std::string sweep_csv(std::span<const SweepPoint> points) {
  std::ostringstream out;
  out << "alpha,eps_star\n";
  for (const auto& p : points) out << format_number(p.alpha) << ',' << format_optional(p.eps_star) << '\n';
  return out.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.output) {
      std::ostringstream buffer;
      const int code = dispatch(config, buffer, err);
      std::ofstream file(*config.output);
      if (!file) throw ConfigError("--output: cannot write '" + config.output->string() + "'");
      file << buffer.str();
      return code;
    }
    return dispatch(config, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::ConfigError);
  } catch (const SyntaxError& e) {
    err << "error: --k-expr/--profile: " << e.what() << '\n';
    return static_cast<int>(ExitCode::ConfigError);
  } catch (const ProfileError& e) {
    err << "error: --profile: " << e.what() << '\n';
    return static_cast<int>(ExitCode::ConfigError);
  } catch (const NoBracketFound& e) {
    err << "no bound state: " << e.what() << '\n';
    return static_cast<int>(ExitCode::NumericFailure);
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return static_cast<int>(ExitCode::NumericFailure);
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states of delta-prime and delta/delta-prime point interactions with a minimal length", "minlen"};
  app.require_subcommand(1);

  RunConfig config;
  config.tol = default_tolerance();

  std::string profile = "cutoff";
  std::string k_expr;
  double k_b = 1.0;
  double alpha = 0.0;
  std::string gamma;
  std::vector<double> physical;
  double b = 0.0;
  double beta = 0.0;
  std::string output;
  std::string figure = "fig1";
  std::vector<std::string> gammas;
  std::string out_dir = ".";

  auto add_profile = [&](CLI::App* sub) {
    sub->add_option("--profile", profile, "cutoff|power32|kempf|custom:b=<val>,expr=<k(y)>|@file");
    sub->add_option("--k-expr", k_expr, "custom k(y) expression (shorthand for custom:expr=...)");
    sub->add_option("--k-b", k_b, "momentum bound for --k-expr");
    sub->add_option("--tol", config.tol, "absolute quadrature tolerance");
    sub->add_option("--output,-o", output, "write output to this file");
  };
  auto add_couplings = [&](CLI::App* sub) {
    sub->add_option("--alpha", alpha, "delta-prime coupling alpha >= 0");
    sub->add_option("--gamma", gamma, "delta coupling gamma");
    sub->add_option("--physical", physical, "hbar,m,kappa,lambda")->delimiter(',')->expected(4);
    sub->add_option("--b", b, "momentum bound in physical mode");
    sub->add_option("--beta", beta, "deformation parameter beta in physical mode");
    sub->add_flag("--force-quadrature", config.force_quadrature, "ignore closed forms");
  };

  auto* solve = app.add_subcommand("solve", "solve for the bound state, JSON output");
  add_profile(solve);
  add_couplings(solve);
  auto* sweep = app.add_subcommand("sweep", "eps*(alpha) at fixed gamma, CSV output");
  add_profile(sweep);
  sweep->add_option("--gamma", gamma, "gamma, or g0:<factor> for factor*gamma0(alpha)");
  sweep->add_option("--alpha-min", config.alpha_min);
  sweep->add_option("--alpha-max", config.alpha_max);
  sweep->add_option("--alpha-steps", config.alpha_steps);
  sweep->add_flag("--log", config.log_grid, "log-spaced alpha grid");
  sweep->add_flag("--force-quadrature", config.force_quadrature, "ignore closed forms");
  auto* threshold = app.add_subcommand("threshold", "gamma0 = alpha I2(0), JSON output");
  add_profile(threshold);
  add_couplings(threshold);
  auto* integrals = app.add_subcommand("integrals", "I1, I2 by quadrature, CSV output");
  add_profile(integrals);
  integrals->add_option("--eps", config.eps, "comma-separated eps values")->delimiter(',')->required();
  auto* wave = app.add_subcommand("wavefunction", "sampled eigenfunction, CSV output");
  add_profile(wave);
  add_couplings(wave);
  wave->add_option("--samples", config.samples);
  auto* verify = app.add_subcommand("verify", "closed form vs quadrature residuals");
  add_profile(verify);
  verify->add_option("--eps", config.eps, "comma-separated eps values")->delimiter(',')->required();
  auto* limit = app.add_subcommand("limit-sweep", "physical energy as the momentum bound grows");
  add_profile(limit);
  limit->add_option("--physical", physical, "hbar,m,kappa,lambda")->delimiter(',')->expected(4)->required();
  limit->add_option("--b-min", config.b_min);
  limit->add_option("--b-max", config.b_max);
  limit->add_option("--steps", config.steps);
  auto* fig = app.add_subcommand("figure", "eps*(alpha) curves, one CSV per profile and gamma");
  fig->add_option("--figure", figure, "fig1|fig2")->check(CLI::IsMember({"fig1", "fig2"}));
  fig->add_option("--profiles", config.profiles)->delimiter(',');
  fig->add_option("--gammas", gammas, "gamma list; g0:<factor> is relative to gamma0")->delimiter(',');
  fig->add_option("--alpha-min", config.alpha_min);
  fig->add_option("--alpha-max", config.alpha_max);
  fig->add_option("--alpha-steps", config.alpha_steps);
  fig->add_option("--out-dir", out_dir);
  fig->add_option("--tol", config.tol);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::ConfigError);
  }

  auto* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "solve") config.subcommand = Subcommand::Solve;
  else if (name == "sweep") config.subcommand = Subcommand::Sweep;
  else if (name == "threshold") config.subcommand = Subcommand::Threshold;
  else if (name == "integrals") config.subcommand = Subcommand::Integrals;
  else if (name == "wavefunction") config.subcommand = Subcommand::Wavefunction;
  else if (name == "verify") config.subcommand = Subcommand::Verify;
  else if (name == "limit-sweep") config.subcommand = Subcommand::LimitSweep;
  else config.subcommand = Subcommand::Figure;

  auto given = [&](const std::string& flag) {
    const auto* opt = chosen->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };

  try {
    if (given("--k-expr")) {
      if (given("--profile")) throw ConfigError("--k-expr and --profile are mutually exclusive");
      config.profile_spec = "custom:b=" + format_number(k_b) + ",expr=" + k_expr;
    } else {
      config.profile_spec = profile;
    }
    if (given("--alpha")) config.alpha = alpha;
    if (given("--gamma")) config.gamma = parse_gamma_spec(gamma);
    if (given("--physical")) {
      PhysicalParams p;
      p.hbar = physical[0];
      p.mass = physical[1];
      p.kappa = physical[2];
      p.lambda = physical[3];
      if (!(p.hbar > 0.0) || !(p.mass > 0.0)) throw ConfigError("--physical: hbar and m must be positive");
      config.physical = p;
    }
    if (given("--b")) config.b = b;
    if (given("--beta")) config.beta = beta;
    if (given("--output")) config.output = output;
    if (!(config.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (config.subcommand == Subcommand::Figure) {
      config.figure = figure == "fig2" ? FigureKind::Fig2 : FigureKind::Fig1;
      for (const auto& g : gammas) config.gammas.push_back(parse_gamma_spec(g));
      config.out_dir = out_dir;
      config.profile_spec = "cutoff";
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::ConfigError);
  }
  return run(config, out, err);
}

}  // namespace minlen::cli
