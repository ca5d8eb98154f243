#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "ptrig/errors.hpp"
#include "ptrig/numeric_result.hpp"

namespace ptrig {

/// The generalization parameter p, validated to lie in (1, inf).
class PParam {
 public:
  explicit PParam(double p);

  double value() const noexcept { return p_; }
  /// Conjugate exponent p / (p - 1).
  double conjugate() const noexcept { return p_ / (p_ - 1.0); }

 private:
  double p_;
};

enum class FnId {
  arcsin_p,
  sin_p,
  cos_p,
  tan_p,
  sec_p,
  arcsinh_p,
  sinh_p,
  cosh_p,
  tanh_p,
  sech_p,
};

inline constexpr std::array<FnId, 10> kAllFns = {
    FnId::arcsin_p, FnId::sin_p,  FnId::cos_p,  FnId::tan_p,  FnId::sec_p,
    FnId::arcsinh_p, FnId::sinh_p, FnId::cosh_p, FnId::tanh_p, FnId::sech_p};

/// Command-line spelling: "sinp", "arcsinhp", ...
std::string_view fn_name(FnId fn);
std::optional<FnId> parse_fn(std::string_view name);
/// Human-readable description of the natural domain, used in error messages.
std::string fn_domain(FnId fn);
bool is_quadrature_based(FnId fn);

/// 2 pi / (p sin(pi / p)).
double pi_p(PParam p);

/// s = sin_p(r) on the first quadrant, together with 1 - s carried
/// separately so that cos_p stays accurate near the top of the quadrant.
struct QuadrantSine {
  double s = 0.0;
  double one_minus_s = 1.0;
};

/*!
  The generalized circular and hyperbolic functions for one fixed p.

  Construction performs the per-p quadratures (arcsin_p(1), arcsinh_p(1) and
  the hyperbolic range cap); afterwards the object is immutable and safe to
  share between threads.

  arcsin_p is evaluated as s + R(s) with R(s) = int_0^s ((1 - t^p)^(-1/p) - 1)
  on [0, 1/2]; above 1/2 the substitution t = 1 - u^(p/(p-1)) turns the
  singular integrand into a bounded one. sin_p inverts whichever form holds
  the reduced argument, and sinh_p inverts arcsinh_p in log1p(y).
*/
class TrigFamily {
 public:
  explicit TrigFamily(PParam p);

  double p() const noexcept { return p_; }
  PParam param() const noexcept { return PParam(p_); }
  /// Closed-form pi_p.
  double pi() const noexcept { return pi_; }
  /// arcsin_p(1) by quadrature; agrees with pi() / 2.
  double half_pi_quadrature() const noexcept { return q_one_; }
  /// Largest |x| accepted by the hyperbolic functions: arcsinh_p(1e12).
  double x_max() const noexcept { return x_max_; }

  NumericResult arcsin(double x) const;
  double sin(double x) const;
  double cos(double x) const;
  double tan(double x) const;
  double sec(double x) const;

  NumericResult arcsinh(double x) const;
  double sinh(double x) const;
  double cosh(double x) const;
  double tanh(double x) const;
  double sech(double x) const;

  double evaluate(FnId fn, double x) const;
  /// Closed-form derivative on the first quadrant (circular) or x >= 0.
  double derivative(FnId fn, double x) const;

  // Accurate building blocks used by the inequality engine.

  /// arcsin_p(s) - s for 0 <= s <= 1, relative accuracy kept for small s.
  NumericResult arcsin_excess(double s) const;
  /// y - arcsinh_p(y) for y >= 0, relative accuracy kept for small y.
  NumericResult arcsinh_deficit(double y) const;
  /// sin_p on 0 <= r <= pi_p / 2.
  QuadrantSine sin_quadrant(double r) const;
  /// sinh_p on 0 <= x <= x_max.
  double sinh_positive(double x) const;
  /// ln(cos_p r) = ln(1 - s^p) / p for a quadrant point.
  double log_cos(const QuadrantSine& q) const;
  /// ln(cosh_p x) = ln(1 + y^p) / p.
  double log_cosh(double y) const;

 private:
  // int_{1-w}^1 (1 - t^p)^(-1/p) dt, integrated in u = w^(1/q).
  NumericResult complement(double w) const;
  NumericResult complement_upto(double u) const;
  double complement_integrand(double u) const;
  NumericResult lower_excess(double s) const;
  // int_0^v (1 + e^(-p s))^(-1/p) ds = arcsinh_p(e^v) - arcsinh_p(1).
  NumericResult hyperbolic_tail(double v) const;
  NumericResult lower_deficit(double y) const;
  double pole_guard() const noexcept;

  double p_;
  double q_;          // p / (p - 1)
  double pi_;
  double half_pi_hi_;  // pi_p / 2 = hi + lo, from extended precision
  double half_pi_lo_;
  double a_half_;     // arcsin_p(1/2)
  double c_half_;     // int_{1/2}^1 (1 - t^p)^(-1/p) dt
  double q_one_;      // a_half_ + c_half_
  double q_one_err_;
  double u_half_;     // (1/2)^(1/q)
  double h_one_;      // arcsinh_p(1)
  double h_one_err_;
  double x_max_;
};

NumericResult arcsin_p(double x, PParam p);
double sin_p(double x, PParam p);
double cos_p(double x, PParam p);
double tan_p(double x, PParam p);
double sec_p(double x, PParam p);
NumericResult arcsinh_p(double x, PParam p);
double sinh_p(double x, PParam p);
double cosh_p(double x, PParam p);
double tanh_p(double x, PParam p);
double sech_p(double x, PParam p);
double derivative(FnId fn, double x, PParam p);

/// |t|^e on the magnitude, with the limits 0, 1 and inf at t = 0.
double abs_pow(double t, double e);

}  // namespace ptrig
