#include "ptrig/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "ptrig/format.hpp"

namespace ptrig::bounds {

namespace {

constexpr double kSeriesThreshold = 1e-20;
constexpr double kGridNearest = 1e-6;

constexpr std::array<TheoremInfo, 7> kInfo = {{
    {TheoremId::T3_1, "3.1", 2.0, false, EndpointKind::none, false, true},
    {TheoremId::T3_2, "3.2", 1.0, true, EndpointKind::circular, false, true},
    {TheoremId::T3_3, "3.3", 2.0, true, EndpointKind::circular, false, true},
    {TheoremId::T3_4, "3.4", 2.0, true, EndpointKind::hyperbolic, true, true},
    {TheoremId::T3_5, "3.5", 1.0, true, EndpointKind::hyperbolic, false, true},
    {TheoremId::T3_6, "3.6", 2.0, true, EndpointKind::hyperbolic, true, true},
    {TheoremId::C3_7, "3.7", 2.0, false, EndpointKind::optional_circular, false, false},
}};

std::string theorem_name(TheoremId id) {
  return std::string(id == TheoremId::C3_7 ? "corollary " : "theorem ") +
         std::string(info(id).label);
}

void require_interior(TheoremId id, const TrigFamily& family, double x) {
  const bool circular = id == TheoremId::T3_1 || id == TheoremId::T3_2 || id == TheoremId::T3_3;
  const double limit = circular ? 0.5 * family.pi() : family.x_max();
  if (!(x > 0.0 && x <= limit)) {
    throw DomainError(theorem_name(id) + ": x must lie in (0, " + format_number(limit, 17) + "]");
  }
}

// ln(sinh_p(x) / x) and ln(cosh_p x) at the same point.
struct HyperbolicLogs {
  double log_sinh_over_x;
  double log_cosh;
};

HyperbolicLogs hyperbolic_logs(const TrigFamily& family, double x) {
  const double y = family.sinh_positive(x);
  // x = y - D(y), so y / x = 1 / (1 - D / y).
  const double deficit = family.arcsinh_deficit(y).value;
  return HyperbolicLogs{-std::log1p(-deficit / y), family.log_cosh(y)};
}

// Right-end constant: the closed-form one-sided limit of ratio_fn at the end.
double endpoint_constant(TheoremId id, const TrigFamily& family, double end) {
  if (id == TheoremId::T3_1) {
    const double p = family.p();
    const double ratio = 2.0 / family.pi();
    return std::pow(ratio, p) * std::log(ratio);
  }
  return ratio_fn(id, family, end);
}

}  // namespace

const TheoremInfo& info(TheoremId id) {
  return kInfo[static_cast<std::size_t>(id)];
}

std::optional<TheoremId> parse_theorem(std::string_view label) {
  for (const auto& entry : kInfo) {
    if (entry.label == label) return entry.id;
  }
  return std::nullopt;
}

double interval_end(TheoremId id, const TrigFamily& family,
                    std::optional<double> endpoint, Hypotheses hyp) {
  const TheoremInfo& th = info(id);
  if (family.p() < th.p_min && !hyp.force) {
    throw ParamError(theorem_name(id) + " requires p >= " + format_number(th.p_min) +
                     " (got p = " + format_number(family.p()) + "; use --force to explore)");
  }
  const double half_pi = 0.5 * family.pi();
  if (endpoint && !std::isfinite(*endpoint)) {
    throw EndpointError(theorem_name(id) + ": endpoint must be finite");
  }

  switch (th.endpoint_kind) {
    case EndpointKind::none:
      if (endpoint) {
        throw EndpointError(theorem_name(id) + " is stated on (0, pi_p/2) and takes no endpoint");
      }
      return half_pi;
    case EndpointKind::circular:
      if (!endpoint) throw EndpointError(theorem_name(id) + " needs an endpoint in (0, pi_p/2)");
      if (!(*endpoint > 0.0 && *endpoint < half_pi)) {
        throw EndpointError(theorem_name(id) + ": endpoint must lie in (0, pi_p/2) = (0, " +
                            format_number(half_pi, 17) + ")");
      }
      return *endpoint;
    case EndpointKind::hyperbolic:
      if (!endpoint) throw EndpointError(theorem_name(id) + " needs an endpoint > 0");
      if (!(*endpoint > 0.0 && *endpoint <= family.x_max())) {
        throw EndpointError(theorem_name(id) + ": endpoint must lie in (0, " +
                            format_number(family.x_max(), 17) + "]");
      }
      return *endpoint;
    case EndpointKind::optional_circular:
      if (!endpoint) return half_pi;
      if (!(*endpoint > 0.0 && *endpoint <= half_pi)) {
        throw EndpointError(theorem_name(id) + ": endpoint must lie in (0, pi_p/2] = (0, " +
                            format_number(half_pi, 17) + "]");
      }
      return *endpoint;
  }
  return half_pi;
}

double limit_at_zero(TheoremId id, double p) {
  switch (id) {
    case TheoremId::T3_1:
    case TheoremId::T3_4: return -1.0 / (p * (p + 1.0));
    case TheoremId::T3_2: return -1.0 / p;
    case TheoremId::T3_3:
    case TheoremId::T3_6:
    case TheoremId::C3_7: return -1.0 / (p + 1.0);
    case TheoremId::T3_5: return 1.0 / p;
  }
  return 0.0;
}

double log_target(TheoremId id, const TrigFamily& family, double x) {
  require_interior(id, family, x);
  switch (id) {
    case TheoremId::T3_1: {
      // sin_p x / x = s / (s + R(s)) = 1 - R(s) / x
      const QuadrantSine q = family.sin_quadrant(x);
      return std::log1p(-family.arcsin_excess(q.s).value / x);
    }
    case TheoremId::T3_2:
      return family.log_cos(family.sin_quadrant(x));
    case TheoremId::T3_3: {
      // x / tan_p x = (x / s) cos_p x with x / s = 1 + R(s) / s
      const QuadrantSine q = family.sin_quadrant(x);
      if (q.s == 0.0) return 0.0;
      return std::log1p(family.arcsin_excess(q.s).value / q.s) + family.log_cos(q);
    }
    case TheoremId::T3_4:
      return -hyperbolic_logs(family, x).log_sinh_over_x;
    case TheoremId::T3_5:
      return family.log_cosh(family.sinh_positive(x));
    case TheoremId::T3_6:
    case TheoremId::C3_7: {
      const HyperbolicLogs logs = hyperbolic_logs(family, x);
      return logs.log_sinh_over_x - logs.log_cosh;
    }
  }
  return 0.0;
}

double target_ratio(TheoremId id, const TrigFamily& family, double x) {
  return std::exp(log_target(id, family, x));
}

double target_ratio(TheoremId id, double x, PParam p) {
  return target_ratio(id, TrigFamily(p), x);
}

double ratio_fn(TheoremId id, const TrigFamily& family, double x) {
  require_interior(id, family, x);
  const double xp = abs_pow(x, family.p());
  // ln(target) = c0 x^p + O(x^2p): below the threshold the correction is
  // beyond double precision.
  if (xp < kSeriesThreshold) return limit_at_zero(id, family.p());
  return log_target(id, family, x) / xp;
}

double ratio_fn(TheoremId id, double x, PParam p) {
  return ratio_fn(id, TrigFamily(p), x);
}

double aux_ratio_xi(const TrigFamily& family, double x) {
  if (!(x > 0.0 && x < 0.5 * family.pi())) {
    throw DomainError("xi(x) = x / tan_p x is defined on (0, pi_p/2)");
  }
  return std::exp(log_target(TheoremId::T3_3, family, x));
}

double aux_ratio_xi(double x, PParam p) { return aux_ratio_xi(TrigFamily(p), x); }

double aux_ratio_varsigma(const TrigFamily& family, double x) {
  if (!(x > 0.0)) throw DomainError("varsigma(x) = x / tanh_p x is defined for x > 0");
  return std::exp(-log_target(TheoremId::T3_6, family, x));
}

double aux_ratio_varsigma(double x, PParam p) {
  return aux_ratio_varsigma(TrigFamily(p), x);
}

BoundConstants constants(TheoremId id, const TrigFamily& family,
                         std::optional<double> endpoint, Hypotheses hyp) {
  if (!info(id).has_constants) {
    throw ParamError(theorem_name(id) + " is a comparison without exponent constants");
  }
  const double end = interval_end(id, family, endpoint, hyp);
  const double at_zero = limit_at_zero(id, family.p());
  const double at_end = endpoint_constant(id, family, end);

  BoundConstants result;
  result.lower_coeff = std::min(at_zero, at_end);
  result.upper_coeff = std::max(at_zero, at_end);
  result.endpoint = endpoint;
  return result;
}

BoundConstants constants(TheoremId id, PParam p, std::optional<double> endpoint,
                         Hypotheses hyp) {
  return constants(id, TrigFamily(p), endpoint, hyp);
}

std::vector<double> clustered_grid(double end, std::size_t n) {
  if (n < 2) throw DomainError("grid needs at least two points");
  const std::size_t n_left = (n + 1) / 2;
  const std::size_t n_right = n - n_left;
  const double log_near = std::log(kGridNearest);
  const double log_half = std::log(0.5);

  std::vector<double> grid;
  grid.reserve(n);
  for (std::size_t i = 0; i < n_left; ++i) {
    const double t = n_left == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(n_left - 1);
    grid.push_back(end * std::exp(log_near + t * (log_half - log_near)));
  }
  for (std::size_t j = n_right; j-- > 0;) {
    const double t = static_cast<double>(j) / static_cast<double>(n_right);
    grid.push_back(end * (1.0 - std::exp(log_near + t * (log_half - log_near))));
  }
  return grid;
}

BoundReport verify(TheoremId id, const TrigFamily& family,
                   std::optional<double> endpoint, std::size_t n,
                   VerifyOptions options) {
  if (n < 10) throw ParamError("verify needs n >= 10 grid points");
  const TheoremInfo& th = info(id);
  const double end = interval_end(id, family, endpoint, Hypotheses{options.force});
  const double p = family.p();
  const bool corollary = id == TheoremId::C3_7;

  BoundReport report;
  report.theorem = id;
  report.p = p;
  report.endpoint = endpoint;
  report.interval_end = end;
  report.certifying = p >= th.p_min;
  report.n_points = n;
  if (!corollary) {
    report.coefficients = constants(id, family, endpoint, Hypotheses{options.force});
    report.closed_limit_0 = limit_at_zero(id, p);
    report.closed_limit_end = endpoint_constant(id, family, end);
  } else {
    report.closed_limit_0 = std::numeric_limits<double>::quiet_NaN();
    report.closed_limit_end = std::numeric_limits<double>::quiet_NaN();
  }

  const std::vector<double> grid = clustered_grid(end, n);
  std::vector<Sample> samples(n);
  std::vector<std::string> errors(n);
  const BoundConstants coeff = report.coefficients;

  auto evaluate = [&](std::size_t i) {
    Sample& s = samples[i];
    s.x = grid[i];
    try {
      if (corollary) {
        s.lower = std::exp(log_target(TheoremId::T3_3, family, s.x));
        s.target = std::exp(log_target(TheoremId::C3_7, family, s.x));
        s.upper = std::numeric_limits<double>::infinity();
      } else {
        const double xp = abs_pow(s.x, p);
        s.target = std::exp(log_target(id, family, s.x));
        s.lower = std::exp(coeff.lower_coeff * xp);
        s.upper = std::exp(coeff.upper_coeff * xp);
      }
      s.lower_margin = s.target - s.lower;
      s.upper_margin = s.upper - s.target;
    } catch (const std::exception& e) {
      s.ok = false;
      errors[i] = e.what();
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) evaluate(i);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t i = t; i < n; i += threads) evaluate(i);
      });
    }
  }

  report.min_lower_margin = std::numeric_limits<double>::infinity();
  report.min_upper_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = samples[i];
    if (!s.ok) {
      report.failures.push_back(PointFailure{s.x, errors[i]});
      continue;
    }
    report.min_lower_margin = std::min(report.min_lower_margin, s.lower_margin);
    report.min_upper_margin = std::min(report.min_upper_margin, s.upper_margin);
    const double tol = kViolationTol * (1.0 + std::abs(s.target));
    if (s.lower_margin < -tol) report.violations.push_back(Violation{s.x, Side::lower, s.lower_margin});
    if (s.upper_margin < -tol) report.violations.push_back(Violation{s.x, Side::upper, s.upper_margin});
  }

  if (!corollary) {
    auto limit_at = [&](double x) {
      try {
        return ratio_fn(id, family, x);
      } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    report.empirical_limit_0 = limit_at(grid.front());
    report.empirical_limit_end = limit_at(grid.back());
  } else {
    report.empirical_limit_0 = std::numeric_limits<double>::quiet_NaN();
    report.empirical_limit_end = std::numeric_limits<double>::quiet_NaN();
  }
  report.samples = std::move(samples);
  return report;
}

BoundReport verify(TheoremId id, PParam p, std::optional<double> endpoint,
                   std::size_t n, VerifyOptions options) {
  return verify(id, TrigFamily(p), endpoint, n, options);
}

SharpnessReport sharpness(TheoremId id, const TrigFamily& family,
                          std::optional<double> endpoint, Hypotheses hyp) {
  if (!info(id).has_constants) {
    throw ParamError(theorem_name(id) + " has no best constants to certify");
  }
  const double end = interval_end(id, family, endpoint, hyp);
  const double p = family.p();

  SharpnessReport report;
  report.closed_0 = limit_at_zero(id, p);
  report.closed_end = endpoint_constant(id, family, end);
  // Probe at eps itself, scaled down only for intervals shorter than 1.
  const double scale = std::min(1.0, end);
  for (double eps : kSharpnessLadder) {
    report.ladder.push_back(LadderStep{eps, ratio_fn(id, family, eps * scale),
                                       ratio_fn(id, family, end * (1.0 - eps))});
  }
  const LadderStep& coarse = report.ladder[report.ladder.size() - 2];
  const LadderStep& fine = report.ladder.back();
  const double ratio = coarse.eps / fine.eps;
  const double gain_0 = std::pow(ratio, p);
  report.limit_0 = fine.limit_0;
  report.limit_end = fine.limit_end;
  report.richardson_0 = (gain_0 * fine.limit_0 - coarse.limit_0) / (gain_0 - 1.0);
  report.richardson_end = (ratio * fine.limit_end - coarse.limit_end) / (ratio - 1.0);
  return report;
}

SharpnessReport sharpness(TheoremId id, PParam p, std::optional<double> endpoint,
                          Hypotheses hyp) {
  return sharpness(id, TrigFamily(p), endpoint, hyp);
}

}  // namespace ptrig::bounds
