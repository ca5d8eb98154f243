#include "ptrig/numkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace ptrig::numkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point abscissae (positive half) and weights; the 7-point Gauss
// rule lives on the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double err = 0.0;
  int depth = 0;
};

double eval_node(const RealFn& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw DomainError("integrand is not finite at t = " + std::to_string(x));
  }
  return v;
}

Panel gauss_kronrod(const RealFn& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = eval_node(f, center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double resabs = std::abs(kronrod);

  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = eval_node(f, center - dx);
    f2[j] = eval_node(f, center + dx);
    const double sum = f1[j] + f2[j];
    kronrod += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }

  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double scale = std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  resasc *= scale;
  resabs *= scale;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  // Rounding in the 15-term sum bounds what the panel can certify.
  err = std::max(err, 4.0 * kEps * resabs);

  return Panel{a, b, kronrod * half, err, depth};
}

}  // namespace

NumericResult integrate(const RealFn& f, double a, double b,
                        const QuadratureOptions& options) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integration limits must be finite");
  }
  if (a > b) {
    throw DomainError("integration limits out of order");
  }
  if (a == b) return NumericResult{0.0, 0.0, 0, true};
  if (!(options.endpoint_power >= 1.0)) {
    throw DomainError("endpoint_power must be >= 1");
  }
  if (options.endpoint_power != 1.0) {
    const double k = options.endpoint_power;
    const double width = b - a;
    auto substituted = [&f, a, b, k, width](double s) {
      const double t = std::max(a, b - width * std::pow(s, k));
      return f(t) * width * k * std::pow(s, k - 1.0);
    };
    QuadratureOptions inner = options;
    inner.endpoint_power = 1.0;
    return integrate(substituted, 0.0, 1.0, inner);
  }

  std::vector<Panel> panels{gauss_kronrod(f, a, b, 0)};
  int evaluations = 1;

  for (;;) {
    double value = 0.0;
    double err = 0.0;
    for (const auto& panel : panels) {
      value += panel.value;
      err += panel.err;
    }
    const double tol = std::max(options.abs_tol, options.rel_tol * std::abs(value));
    if (err <= tol) {
      return NumericResult{value, err, evaluations, true};
    }

    const auto worst = std::max_element(
        panels.begin(), panels.end(),
        [](const Panel& x, const Panel& y) { return x.err < y.err; });
    const double mid = 0.5 * (worst->a + worst->b);
    const bool too_narrow = mid <= worst->a || mid >= worst->b;
    if (worst->depth >= options.max_depth || too_narrow ||
        panels.size() >= options.max_panels) {
      throw NonConvergence(
          "quadrature did not reach tolerance on [" + std::to_string(a) + ", " +
              std::to_string(b) + "]",
          NumericResult{value, err, evaluations, false});
    }

    const Panel parent = *worst;
    *worst = gauss_kronrod(f, parent.a, mid, parent.depth + 1);
    panels.push_back(gauss_kronrod(f, mid, parent.b, parent.depth + 1));
    evaluations += 2;
  }
}

NumericResult invert_monotone(const RealFn& f, const RealFn& df, double y,
                              double lo, double hi,
                              const InversionOptions& options) {
  if (!(lo <= hi)) throw BracketError("inversion bracket is empty");

  auto residual = [&](double x) {
    const double r = f(x) - y;
    if (!std::isnan(r)) return r;
    throw DomainError("function is not finite at x = " + std::to_string(x));
  };

  const double g_lo = residual(lo);
  if (g_lo == 0.0) return NumericResult{lo, 0.0, 0, true};
  const double g_hi = residual(hi);
  if (g_hi == 0.0) return NumericResult{hi, 0.0, 0, true};
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw BracketError("target " + std::to_string(y) +
                       " is not enclosed by f over [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }

  // x_neg / x_pos carry the sign of the residual at each end of the bracket.
  double x_neg = g_lo < 0.0 ? lo : hi;
  double x_pos = g_lo < 0.0 ? hi : lo;
  const double tol = options.rel_tol * (1.0 + std::abs(y));

  double x = std::midpoint(lo, hi);
  if (options.start && *options.start > lo && *options.start < hi) {
    x = *options.start;
  }
  double step_old = hi - lo;
  double step = step_old;

  auto error_bound = [&](double at, double g) {
    double bound = std::abs(x_pos - x_neg);
    if (df) {
      const double d = std::abs(df(at));
      if (std::isfinite(d) && d > 0.0) bound = std::min(bound, std::abs(g) / d);
    }
    return bound;
  };

  for (int it = 1; it <= options.max_iter; ++it) {
    double g = residual(x);

    if (std::abs(g) <= tol) {
      if (options.polish && df) {
        const double d = df(x);
        const double xn = x - g / d;
        const double a = std::min(x_neg, x_pos);
        const double b = std::max(x_neg, x_pos);
        if (std::isfinite(xn) && xn >= a && xn <= b && xn != x) {
          const double gn = residual(xn);
          if (std::abs(gn) <= std::abs(g)) {
            x = xn;
            g = gn;
          }
        }
      }
      return NumericResult{x, error_bound(x, g), it, true};
    }

    if (g < 0.0) {
      x_neg = x;
    } else {
      x_pos = x;
    }
    const double a = std::min(x_neg, x_pos);
    const double b = std::max(x_neg, x_pos);

    double next = 0.0;
    bool newton = false;
    if (df) {
      const double d = df(x);
      if (std::isfinite(d) && d != 0.0) {
        next = x - g / d;
        newton = next > a && next < b && std::abs(2.0 * g) <= std::abs(step_old * d);
      }
    }
    if (!newton) next = std::midpoint(a, b);

    step_old = step;
    step = next - x;

    const double resolution =
        2.0 * kEps * std::max(std::abs(x), std::numeric_limits<double>::min());
    if (std::abs(step) <= resolution || b - a <= 2.0 * kEps * std::max(std::abs(a), std::abs(b))) {
      return NumericResult{next, std::max(b - a, std::abs(step)), it, true};
    }
    x = next;
  }

  throw NonConvergence("inversion did not converge for y = " + std::to_string(y),
                       NumericResult{x, std::abs(x_pos - x_neg), options.max_iter, false});
}

double finite_diff(const RealFn& f, double x, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError("finite difference step must be positive");
  }
  double up = 0.0;
  double down = 0.0;
  try {
    up = f(x + h);
    down = f(x - h);
  } catch (const DomainError& e) {
    throw DomainError(std::string("finite difference stencil leaves the domain: ") + e.what());
  }
  if (!std::isfinite(up) || !std::isfinite(down)) {
    throw DomainError("finite difference stencil hit a non-finite value");
  }
  return (up - down) / (2.0 * h);
}

MonotoneReport check_monotone(const RealFn& f, double a, double b,
                              std::size_t n, Direction claimed) {
  if (n < 2) throw DomainError("check_monotone needs at least two samples");
  if (!(a < b)) throw DomainError("check_monotone needs a < b");

  const double offset = (b - a) / (4.0 * static_cast<double>(n));
  const double first = a + offset;
  const double span = (b - offset) - first;

  std::vector<double> xs(n);
  std::vector<double> fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = first + span * static_cast<double>(i) / static_cast<double>(n - 1);
    fs[i] = f(xs[i]);
    if (!std::isfinite(fs[i])) {
      throw DomainError("non-finite sample at x = " + std::to_string(xs[i]));
    }
  }

  MonotoneReport report;
  report.direction = claimed;
  report.n_samples = n;
  report.strict = true;

  const double sign = claimed == Direction::increasing ? 1.0 : -1.0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double delta = fs[i + 1] - fs[i];
    const double along = sign * delta;
    if (along <= 0.0) report.strict = false;
    const double slack = 10.0 * kEps * std::max(std::abs(fs[i]), std::abs(fs[i + 1]));
    if (along < -slack) report.violated = true;
    if (along < worst) {
      worst = along;
      report.worst_pair = AdjacentPair{xs[i], xs[i + 1], delta};
    }
  }
  return report;
}

}  // namespace ptrig::numkit
