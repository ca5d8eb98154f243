#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "ptrig/errors.hpp"
#include "ptrig/numeric_result.hpp"

namespace ptrig::numkit {

using RealFn = std::function<double(double)>;

inline constexpr double kDefaultAbsTol = 1e-13;
inline constexpr double kDefaultRelTol = 1e-12;
inline constexpr int kMaxSubdivisionDepth = 60;
inline constexpr int kMaxInversionIterations = 200;

struct QuadratureOptions {
  double abs_tol = kDefaultAbsTol;
  /// Additional relative tolerance; the panel sum converges once the error
  /// estimate is below max(abs_tol, rel_tol * |value|).
  double rel_tol = 0.0;
  int max_depth = kMaxSubdivisionDepth;
  std::size_t max_panels = 4000;
  /// k >= 1. For k > 1 the rule integrates in s with t = b - (b - a) s^k,
  /// which makes a (b - t)^(-alpha) singularity bounded for alpha <= 1 - 1/k.
  double endpoint_power = 1.0;
};

/*!
  Adaptive Gauss-Kronrod (7, 15) quadrature of f over [a, b].

  Panels are split globally, worst error first, until the summed error
  estimate meets the tolerance. Nodes are strictly interior, so an integrable
  singularity at either end point is never evaluated; it only costs extra
  panels near that end.

  Throws DomainError when f is non-finite at a node and NonConvergence when
  the depth or panel budget runs out.
*/
NumericResult integrate(const RealFn& f, double a, double b,
                        const QuadratureOptions& options);

inline NumericResult integrate(const RealFn& f, double a, double b,
                               double abs_tol = kDefaultAbsTol) {
  QuadratureOptions options;
  options.abs_tol = abs_tol;
  return integrate(f, a, b, options);
}

struct InversionOptions {
  double rel_tol = kDefaultRelTol;
  int max_iter = kMaxInversionIterations;
  /// Initial iterate; the bracket midpoint when absent or outside the bracket.
  std::optional<double> start;
  /// One extra Newton step after the residual test passes (needs df).
  bool polish = true;
};

/*!
  Solves f(x) = y for strictly monotone f on [lo, hi].

  Newton steps are taken when df is supplied and the step lands inside the
  current bracket and shrinks fast enough; otherwise the bracket is bisected.
  Stops when |f(x) - y| <= rel_tol * (1 + |y|) or when the iterate can no
  longer move at double resolution.

  err_estimate is an x-space bound: the remaining bracket width, or
  |f(x) - y| / |df(x)| when a derivative is available and smaller.
*/
NumericResult invert_monotone(const RealFn& f, const RealFn& df, double y,
                              double lo, double hi,
                              const InversionOptions& options);

inline NumericResult invert_monotone(const RealFn& f, const RealFn& df,
                                     double y, double lo, double hi,
                                     double rel_tol = kDefaultRelTol) {
  InversionOptions options;
  options.rel_tol = rel_tol;
  return invert_monotone(f, df, y, lo, hi, options);
}

/// Central difference (f(x+h) - f(x-h)) / (2h).
double finite_diff(const RealFn& f, double x, double h);

enum class Direction { increasing, decreasing };

struct AdjacentPair {
  double x_left = 0.0;
  double x_right = 0.0;
  /// f(x_right) - f(x_left)
  double delta = 0.0;
};

struct MonotoneReport {
  Direction direction = Direction::increasing;
  /// Every sampled step moved strictly in the claimed direction.
  bool strict = false;
  std::size_t n_samples = 0;
  /// The pair that moves least (or most against) the claimed direction.
  AdjacentPair worst_pair;
  bool violated = false;
};

/*!
  Samples f on n points of the open interval (a, b), kept (b - a) / (4n) away
  from both ends, and checks each adjacent pair against the claimed
  direction. Reverse drift up to 10 * eps * max(|f_i|, |f_{i+1}|) is
  attributed to rounding and tolerated.
*/
MonotoneReport check_monotone(const RealFn& f, double a, double b,
                              std::size_t n, Direction claimed);

}  // namespace ptrig::numkit
