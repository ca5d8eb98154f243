#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptrig/core.hpp"

namespace ptrig::bounds {

enum class TheoremId { T3_1, T3_2, T3_3, T3_4, T3_5, T3_6, C3_7 };

inline constexpr std::array<TheoremId, 7> kAllTheorems = {
    TheoremId::T3_1, TheoremId::T3_2, TheoremId::T3_3, TheoremId::T3_4,
    TheoremId::T3_5, TheoremId::T3_6, TheoremId::C3_7};

enum class EndpointKind {
  none,        // right end fixed at pi_p / 2
  circular,    // user endpoint in (0, pi_p / 2)
  hyperbolic,  // user endpoint in (0, x_max]
  optional_circular,  // optional endpoint in (0, pi_p / 2], default pi_p / 2
};

/// Hypotheses of each inequality.
struct TheoremInfo {
  TheoremId id;
  std::string_view label;  // "3.1" ... "3.7"
  double p_min;
  bool needs_endpoint;
  EndpointKind endpoint_kind;
  /// Direction of ln(target) / x^p on the interval; true when increasing.
  bool ratio_increasing;
  bool has_constants;
};

const TheoremInfo& info(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view label);

/// Exponent coefficients c of the bounds e^(c x^p), ordered by value.
struct BoundConstants {
  double lower_coeff = 0.0;
  double upper_coeff = 0.0;
  std::optional<double> endpoint;
};

/// constants() and verify() accept p below the theorem's threshold only when
/// forced; such runs are exploratory.
struct Hypotheses {
  bool force = false;
};

/// Checks p and endpoint against the hypotheses and returns the right end of
/// the interval the inequality is stated on.
double interval_end(TheoremId id, const TrigFamily& family,
                    std::optional<double> endpoint, Hypotheses hyp = {});

BoundConstants constants(TheoremId id, const TrigFamily& family,
                         std::optional<double> endpoint, Hypotheses hyp = {});
BoundConstants constants(TheoremId id, PParam p, std::optional<double> endpoint,
                         Hypotheses hyp = {});

/// ln of the middle quantity of the double inequality (sin_p x / x, cos_p x,
/// x / tan_p x, x / sinh_p x, cosh_p x, tanh_p x / x), evaluated through
/// cancellation-free routes. For C3_7 this is the right-hand side tanh_p x / x.
double log_target(TheoremId id, const TrigFamily& family, double x);

double target_ratio(TheoremId id, const TrigFamily& family, double x);
double target_ratio(TheoremId id, double x, PParam p);

/// ln(target) / x^p, the ratio whose monotonicity drives each proof. Below
/// x^p = 1e-20 its leading-order limit is returned.
double ratio_fn(TheoremId id, const TrigFamily& family, double x);
double ratio_fn(TheoremId id, double x, PParam p);

/// Limit of ratio_fn at 0+.
double limit_at_zero(TheoremId id, double p);

/// x / tan_p x on (0, pi_p / 2).
double aux_ratio_xi(const TrigFamily& family, double x);
double aux_ratio_xi(double x, PParam p);
/// x / tanh_p x for x > 0.
double aux_ratio_varsigma(const TrigFamily& family, double x);
double aux_ratio_varsigma(double x, PParam p);

enum class Side { lower, upper };

struct Violation {
  double x = 0.0;
  Side side = Side::lower;
  double margin = 0.0;
};

struct PointFailure {
  double x = 0.0;
  std::string message;
};

struct Sample {
  double x = 0.0;
  double lower = 0.0;
  double target = 0.0;
  double upper = 0.0;
  double lower_margin = 0.0;  // target - lower
  double upper_margin = 0.0;  // upper - target
  bool ok = true;
};

struct BoundReport {
  TheoremId theorem = TheoremId::T3_1;
  double p = 0.0;
  std::optional<double> endpoint;
  double interval_end = 0.0;
  /// False when the run used p below the theorem's threshold.
  bool certifying = true;
  BoundConstants coefficients;
  std::size_t n_points = 0;
  double min_lower_margin = 0.0;
  double min_upper_margin = 0.0;
  std::vector<Violation> violations;
  std::vector<PointFailure> failures;
  double empirical_limit_0 = 0.0;
  double empirical_limit_end = 0.0;
  double closed_limit_0 = 0.0;
  double closed_limit_end = 0.0;
  std::vector<Sample> samples;

  bool passed() const { return violations.empty() && failures.empty(); }
};

inline constexpr double kViolationTol = 1e-12;

struct VerifyOptions {
  bool force = false;
  /// Worker threads for the grid; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// n interior points of (0, end), log-spaced in the distance to each end.
std::vector<double> clustered_grid(double end, std::size_t n);

BoundReport verify(TheoremId id, const TrigFamily& family,
                   std::optional<double> endpoint, std::size_t n,
                   VerifyOptions options = {});
BoundReport verify(TheoremId id, PParam p, std::optional<double> endpoint,
                   std::size_t n, VerifyOptions options = {});

struct LadderStep {
  double eps = 0.0;
  double limit_0 = 0.0;
  double limit_end = 0.0;
};

struct SharpnessReport {
  double limit_0 = 0.0;
  double limit_end = 0.0;
  double closed_0 = 0.0;
  double closed_end = 0.0;
  std::vector<LadderStep> ladder;
  /// Extrapolations from the last two ladder steps: error ~ eps^p at 0 and
  /// ~ eps at the right end.
  double richardson_0 = 0.0;
  double richardson_end = 0.0;
};

inline constexpr std::array<double, 3> kSharpnessLadder = {1e-2, 1e-3, 1e-4};

SharpnessReport sharpness(TheoremId id, const TrigFamily& family,
                          std::optional<double> endpoint, Hypotheses hyp = {});
SharpnessReport sharpness(TheoremId id, PParam p, std::optional<double> endpoint,
                          Hypotheses hyp = {});

}  // namespace ptrig::bounds
