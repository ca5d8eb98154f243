#include "ptrig/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ptrig/format.hpp"
#include "ptrig/numkit.hpp"

namespace ptrig {

namespace {

constexpr double kSplit = 0.5;
constexpr double kYMax = 1e12;
// Relative accuracy requested from the inner kernels.
constexpr double kKernelRelTol = 1e-14;
constexpr double kKernelAbsTol = 1e-15;
constexpr double kInversionRelTol = 1e-13;
constexpr double kPoleGuard = 1e-8;

numkit::QuadratureOptions kernel_options(double abs_tol = kKernelAbsTol) {
  numkit::QuadratureOptions options;
  options.abs_tol = abs_tol;
  options.rel_tol = kKernelRelTol;
  return options;
}

// Residual tolerance proportional to the target so small arguments keep
// their relative accuracy.
numkit::InversionOptions inversion_options(double target) {
  numkit::InversionOptions options;
  options.rel_tol = kInversionRelTol * std::abs(target) / (1.0 + std::abs(target));
  return options;
}

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(fn) + " requires a finite argument");
  }
}

}  // namespace

double abs_pow(double t, double e) {
  t = std::abs(t);
  if (t == 0.0) {
    if (e > 0.0) return 0.0;
    if (e == 0.0) return 1.0;
    return std::numeric_limits<double>::infinity();
  }
  return std::pow(t, e);
}

PParam::PParam(double p) : p_(p) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    throw ParamError("p must be a finite number greater than 1, got " + format_number(p, 17));
  }
}

std::string_view fn_name(FnId fn) {
  switch (fn) {
    case FnId::arcsin_p: return "arcsinp";
    case FnId::sin_p: return "sinp";
    case FnId::cos_p: return "cosp";
    case FnId::tan_p: return "tanp";
    case FnId::sec_p: return "secp";
    case FnId::arcsinh_p: return "arcsinhp";
    case FnId::sinh_p: return "sinhp";
    case FnId::cosh_p: return "coshp";
    case FnId::tanh_p: return "tanhp";
    case FnId::sech_p: return "sechp";
  }
  return "?";
}

std::optional<FnId> parse_fn(std::string_view name) {
  for (FnId fn : kAllFns) {
    if (fn_name(fn) == name) return fn;
  }
  return std::nullopt;
}

std::string fn_domain(FnId fn) {
  switch (fn) {
    case FnId::arcsin_p: return "-1 <= x <= 1";
    case FnId::sin_p:
    case FnId::cos_p: return "any finite x";
    case FnId::tan_p: return "x != k*pi_p + pi_p/2 (outside the pole guard band)";
    case FnId::sec_p: return "|x| < pi_p/2 (outside the pole guard band)";
    case FnId::arcsinh_p: return "any finite x";
    case FnId::sinh_p:
    case FnId::cosh_p:
    case FnId::tanh_p:
    case FnId::sech_p: return "|x| <= x_max(p) = arcsinh_p(1e12)";
  }
  return "";
}

bool is_quadrature_based(FnId fn) {
  return fn == FnId::arcsin_p || fn == FnId::arcsinh_p;
}

double pi_p(PParam p) {
  const double v = p.value();
  return 2.0 * std::numbers::pi / (v * std::sin(std::numbers::pi / v));
}

TrigFamily::TrigFamily(PParam p)
    : p_(p.value()), q_(p.conjugate()), pi_(pi_p(p)) {
  constexpr long double kPiL = std::numbers::pi_v<long double>;
  const long double pl = p_;
  const long double half_pi = kPiL / (pl * std::sin(kPiL / pl));
  half_pi_hi_ = static_cast<double>(half_pi);
  half_pi_lo_ = static_cast<double>(half_pi - half_pi_hi_);
  u_half_ = std::pow(1.0 - kSplit, 1.0 / q_);
  const NumericResult excess = lower_excess(kSplit);
  a_half_ = kSplit + excess.value;
  const NumericResult upper = complement_upto(u_half_);
  c_half_ = upper.value;
  q_one_ = a_half_ + c_half_;
  q_one_err_ = excess.err_estimate + upper.err_estimate;

  const NumericResult deficit = lower_deficit(1.0);
  h_one_ = 1.0 - deficit.value;
  h_one_err_ = deficit.err_estimate;
  x_max_ = h_one_ + hyperbolic_tail(std::log(kYMax)).value;
}

double TrigFamily::pole_guard() const noexcept { return kPoleGuard * pi_; }

// --- circular ---------------------------------------------------------------

NumericResult TrigFamily::lower_excess(double s) const {
  const double p = p_;
  auto excess = [p](double t) {
    return std::expm1(-std::log1p(-abs_pow(t, p)) / p);
  };
  return numkit::integrate(excess, 0.0, s, kernel_options(0.0));
}

double TrigFamily::complement_integrand(double u) const {
  const double w = abs_pow(u, q_);
  // m(w) = (1 - (1 - w)^p) / w, which tends to p as w -> 0.
  double m = p_;
  if (w > 0.0) m = -std::expm1(p_ * std::log1p(-w)) / w;
  return q_ * std::exp(-std::log(m) / p_);
}

NumericResult TrigFamily::complement_upto(double u) const {
  return numkit::integrate([this](double v) { return complement_integrand(v); },
                           0.0, u, kernel_options());
}

NumericResult TrigFamily::complement(double w) const {
  return complement_upto(abs_pow(w, 1.0 / q_));
}

NumericResult TrigFamily::arcsin_excess(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("arcsin_p excess requires 0 <= s <= 1");
  }
  if (s <= kSplit) return lower_excess(s);
  const NumericResult c = complement(1.0 - s);
  return NumericResult{(q_one_ - c.value) - s, q_one_err_ + c.err_estimate,
                       c.iterations, true};
}

NumericResult TrigFamily::arcsin(double x) const {
  require_finite(x, "arcsin_p");
  if (std::abs(x) > 1.0) {
    throw DomainError("arcsin_p is defined for " + fn_domain(FnId::arcsin_p));
  }
  const double sign = std::signbit(x) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  NumericResult result;
  if (ax <= kSplit) {
    result = lower_excess(ax);
    result.value += ax;
  } else {
    result = complement(1.0 - ax);
    result.value = q_one_ - result.value;
    result.err_estimate += q_one_err_;
  }
  result.value *= sign;
  return result;
}

QuadrantSine TrigFamily::sin_quadrant(double r) const {
  if (!(r >= 0.0)) throw DomainError("quadrant argument must be non-negative");
  if (r == 0.0) return QuadrantSine{0.0, 1.0};

  if (r < a_half_) {
    const double p = p_;
    auto f = [this](double s) { return s + lower_excess(s).value; };
    auto df = [p](double s) { return std::exp(-std::log1p(-abs_pow(s, p)) / p); };
    auto options = inversion_options(r);
    options.start = std::min(r, 0.999 * kSplit);
    const double s = numkit::invert_monotone(f, df, r, 0.0, kSplit, options).value;
    return QuadrantSine{s, 1.0 - s};
  }

  // Upper half: solve int_0^u q k(v) dv = pi_p / 2 - r for u, then
  // 1 - s = u^q without cancellation. The two-part pi_p / 2 keeps z
  // accurate close to the top of the quadrant.
  const double z = (half_pi_hi_ - r) + half_pi_lo_;
  // Doubles within a few ulps of pi_p / 2 stand for the top itself; the
  // infinite slope of cos_p there would otherwise turn that rounding into
  // a visible value.
  if (z <= 4.0 * std::numeric_limits<double>::epsilon() * half_pi_hi_) {
    return QuadrantSine{1.0, 0.0};
  }
  if (z >= c_half_) return QuadrantSine{kSplit, 1.0 - kSplit};
  auto f = [this](double u) { return complement_upto(u).value; };
  auto df = [this](double u) { return complement_integrand(u); };
  auto options = inversion_options(z);
  options.start = std::clamp(z / complement_integrand(0.0), 1e-3 * u_half_, 0.999 * u_half_);
  const double u = numkit::invert_monotone(f, df, z, 0.0, u_half_, options).value;
  const double w = abs_pow(u, q_);
  return QuadrantSine{1.0 - w, w};
}

double TrigFamily::log_cos(const QuadrantSine& q) const {
  if (q.s <= kSplit) return std::log1p(-abs_pow(q.s, p_)) / p_;
  if (q.one_minus_s <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(-std::expm1(p_ * std::log1p(-q.one_minus_s))) / p_;
}

double TrigFamily::sin(double x) const {
  require_finite(x, "sin_p");
  double r = std::remainder(x, 2.0 * pi_);
  const double sign = std::signbit(r) ? -1.0 : 1.0;
  r = std::abs(r);
  if (r > 0.5 * pi_) r = pi_ - r;
  return sign * sin_quadrant(r).s;
}

double TrigFamily::cos(double x) const {
  require_finite(x, "cos_p");
  double r = std::abs(std::remainder(x, 2.0 * pi_));
  double sign = 1.0;
  if (r > 0.5 * pi_) {
    r = pi_ - r;
    sign = -1.0;
  }
  return sign * std::exp(log_cos(sin_quadrant(r)));
}

double TrigFamily::tan(double x) const {
  require_finite(x, "tan_p");
  const double r = std::remainder(x, pi_);
  if (0.5 * pi_ - std::abs(r) < pole_guard()) {
    throw PoleError("tan_p has a pole at " + format_number(x, 17) + "; domain: " +
                    fn_domain(FnId::tan_p));
  }
  const QuadrantSine q = sin_quadrant(std::abs(r));
  const double sign = std::signbit(r) ? -1.0 : 1.0;
  return sign * q.s * std::exp(-log_cos(q));
}

double TrigFamily::sec(double x) const {
  require_finite(x, "sec_p");
  const double ax = std::abs(x);
  if (std::abs(0.5 * pi_ - ax) < pole_guard()) {
    throw PoleError("sec_p has a pole at " + format_number(x, 17) + "; domain: " +
                    fn_domain(FnId::sec_p));
  }
  if (ax > 0.5 * pi_) {
    throw DomainError("sec_p is defined for " + fn_domain(FnId::sec_p) +
                      " with pi_p/2 = " + format_number(0.5 * pi_, 17));
  }
  return std::exp(-log_cos(sin_quadrant(ax)));
}

// --- hyperbolic -------------------------------------------------------------

NumericResult TrigFamily::lower_deficit(double y) const {
  const double p = p_;
  auto deficit = [p](double t) {
    return -std::expm1(-std::log1p(abs_pow(t, p)) / p);
  };
  return numkit::integrate(deficit, 0.0, y, kernel_options(0.0));
}

NumericResult TrigFamily::hyperbolic_tail(double v) const {
  const double p = p_;
  auto integrand = [p](double s) {
    return std::exp(-std::log1p(std::exp(-p * s)) / p);
  };
  return numkit::integrate(integrand, 0.0, v, kernel_options());
}

NumericResult TrigFamily::arcsinh(double x) const {
  require_finite(x, "arcsinh_p");
  const double sign = std::signbit(x) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  NumericResult result;
  if (ax <= 1.0) {
    result = lower_deficit(ax);
    result.value = ax - result.value;
  } else {
    result = hyperbolic_tail(std::log(ax));
    result.value += h_one_;
    result.err_estimate += h_one_err_;
  }
  result.value *= sign;
  return result;
}

NumericResult TrigFamily::arcsinh_deficit(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw DomainError("arcsinh_p deficit requires finite y >= 0");
  }
  if (y <= 1.0) return lower_deficit(y);
  NumericResult a = arcsinh(y);
  a.value = y - a.value;
  return a;
}

double TrigFamily::sinh_positive(double x) const {
  if (!(x >= 0.0)) throw DomainError("sinh_p kernel requires x >= 0");
  if (x > x_max_) {
    throw RangeError("sinh_p is evaluated for " + fn_domain(FnId::sinh_p) +
                     " with x_max = " + format_number(x_max_, 17));
  }
  if (x == 0.0) return 0.0;

  // Solve arcsinh_p(expm1(v)) = x; ln(1 + y) <= arcsinh_p(y) <= y brackets v.
  auto f = [this](double v) { return arcsinh(std::expm1(v)).value; };
  auto df = [this](double v) {
    return std::exp(v - log_cosh(std::expm1(v)));
  };
  const double lo = std::log1p(x) * (1.0 - 1e-12);
  const double hi = x * (1.0 + 1e-12);
  auto options = inversion_options(x);
  const double guess = std::log1p(std::sinh(x));
  if (guess > lo && guess < hi) options.start = guess;
  return std::expm1(numkit::invert_monotone(f, df, x, lo, hi, options).value);
}

double TrigFamily::log_cosh(double y) const {
  y = std::abs(y);
  if (y <= 1.0) return std::log1p(abs_pow(y, p_)) / p_;
  return std::log(y) + std::log1p(abs_pow(y, -p_)) / p_;
}

double TrigFamily::sinh(double x) const {
  require_finite(x, "sinh_p");
  const double sign = std::signbit(x) ? -1.0 : 1.0;
  return sign * sinh_positive(std::abs(x));
}

double TrigFamily::cosh(double x) const {
  require_finite(x, "cosh_p");
  return std::exp(log_cosh(sinh_positive(std::abs(x))));
}

double TrigFamily::tanh(double x) const {
  require_finite(x, "tanh_p");
  const double sign = std::signbit(x) ? -1.0 : 1.0;
  const double y = sinh_positive(std::abs(x));
  return sign * y * std::exp(-log_cosh(y));
}

double TrigFamily::sech(double x) const {
  require_finite(x, "sech_p");
  return std::exp(-log_cosh(sinh_positive(std::abs(x))));
}

// --- dispatch ---------------------------------------------------------------

double TrigFamily::evaluate(FnId fn, double x) const {
  switch (fn) {
    case FnId::arcsin_p: return arcsin(x).value;
    case FnId::sin_p: return sin(x);
    case FnId::cos_p: return cos(x);
    case FnId::tan_p: return tan(x);
    case FnId::sec_p: return sec(x);
    case FnId::arcsinh_p: return arcsinh(x).value;
    case FnId::sinh_p: return sinh(x);
    case FnId::cosh_p: return cosh(x);
    case FnId::tanh_p: return tanh(x);
    case FnId::sech_p: return sech(x);
  }
  throw DomainError("unknown function");
}

double TrigFamily::derivative(FnId fn, double x) const {
  require_finite(x, "derivative");
  const double p = p_;
  auto outside = [&](const std::string& domain) {
    return DomainError(std::string("derivative of ") + std::string(fn_name(fn)) +
                       " is available for " + domain);
  };
  const double half_pi = 0.5 * pi_;

  switch (fn) {
    case FnId::arcsin_p:
      if (!(x >= 0.0 && x < 1.0)) throw outside("0 <= x < 1");
      return std::exp(-std::log1p(-abs_pow(x, p)) / p);
    case FnId::arcsinh_p:
      if (!(x >= 0.0)) throw outside("x >= 0");
      return std::exp(-std::log1p(abs_pow(x, p)) / p);
    case FnId::sin_p:
    case FnId::cos_p: {
      if (!(x >= 0.0 && x <= half_pi)) throw outside("0 <= x <= pi_p/2");
      const QuadrantSine q = sin_quadrant(x);
      const double c = std::exp(log_cos(q));
      if (fn == FnId::sin_p) return c;
      return -abs_pow(c, 2.0 - p) * abs_pow(q.s, p - 1.0);
    }
    case FnId::tan_p:
    case FnId::sec_p: {
      if (!(x >= 0.0 && x < half_pi - pole_guard())) throw outside("0 <= x < pi_p/2");
      const double t = tan(x);
      if (fn == FnId::tan_p) return 1.0 + abs_pow(t, p);
      return sec(x) * abs_pow(t, p - 1.0);
    }
    case FnId::sinh_p:
    case FnId::cosh_p:
    case FnId::tanh_p:
    case FnId::sech_p: {
      if (!(x >= 0.0 && x <= x_max_)) throw outside("0 <= x <= x_max(p)");
      const double y = sinh_positive(x);
      const double log_c = log_cosh(y);
      switch (fn) {
        case FnId::sinh_p: return std::exp(log_c);
        case FnId::cosh_p: return std::exp((2.0 - p) * log_c) * abs_pow(y, p - 1.0);
        case FnId::tanh_p: return std::exp(-p * log_c);
        default: {
          const double t = y * std::exp(-log_c);
          return -std::exp(-log_c) * abs_pow(t, p - 1.0);
        }
      }
    }
  }
  throw DomainError("unknown function");
}

// --- free functions -----------------------------------------------------------

NumericResult arcsin_p(double x, PParam p) { return TrigFamily(p).arcsin(x); }
double sin_p(double x, PParam p) { return TrigFamily(p).sin(x); }
double cos_p(double x, PParam p) { return TrigFamily(p).cos(x); }
double tan_p(double x, PParam p) { return TrigFamily(p).tan(x); }
double sec_p(double x, PParam p) { return TrigFamily(p).sec(x); }
NumericResult arcsinh_p(double x, PParam p) { return TrigFamily(p).arcsinh(x); }
double sinh_p(double x, PParam p) { return TrigFamily(p).sinh(x); }
double cosh_p(double x, PParam p) { return TrigFamily(p).cosh(x); }
double tanh_p(double x, PParam p) { return TrigFamily(p).tanh(x); }
double sech_p(double x, PParam p) { return TrigFamily(p).sech(x); }
double derivative(FnId fn, double x, PParam p) { return TrigFamily(p).derivative(fn, x); }

}  // namespace ptrig
