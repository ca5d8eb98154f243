#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ptrig/bounds.hpp"
#include "ptrig/numkit.hpp"

using namespace ptrig;
using namespace ptrig::bounds;

namespace {

constexpr double kPi = std::numbers::pi;

// Smallest p accepted for each theorem; the functions need p > 1, so the
// p >= 1 theorems start just above it.
double lowest_p(TheoremId id) { return info(id).p_min > 1.0 ? info(id).p_min : 1.2; }

std::vector<std::optional<double>> endpoints_for(TheoremId id, const TrigFamily& fam) {
  switch (info(id).endpoint_kind) {
    case EndpointKind::none: return {std::nullopt};
    case EndpointKind::circular: {
      const double cap = fam.pi() / 2.0;
      return {0.25 * cap, 0.5 * cap, 0.9 * cap};
    }
    case EndpointKind::hyperbolic: return {0.5, 1.0, 5.0};
    case EndpointKind::optional_circular: {
      const double cap = fam.pi() / 2.0;
      return {std::nullopt, 0.5 * cap, 0.9 * cap};
    }
  }
  return {};
}

// p = 2 oracle built on the standard library only.
double classical_target(TheoremId id, double x) {
  switch (id) {
    case TheoremId::T3_1: return std::sin(x) / x;
    case TheoremId::T3_2: return std::cos(x);
    case TheoremId::T3_3: return x / std::tan(x);
    case TheoremId::T3_4: return x / std::sinh(x);
    case TheoremId::T3_5: return std::cosh(x);
    case TheoremId::T3_6:
    case TheoremId::C3_7: return std::tanh(x) / x;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("theorem table and labels") {
  for (TheoremId id : kAllTheorems) CHECK(parse_theorem(info(id).label) == id);
  CHECK_FALSE(parse_theorem("3.8").has_value());
  CHECK(info(TheoremId::T3_1).p_min == 2.0);
  CHECK(info(TheoremId::T3_2).p_min == 1.0);
  CHECK(info(TheoremId::T3_5).p_min == 1.0);
  CHECK(info(TheoremId::C3_7).p_min == 2.0);
  CHECK_FALSE(info(TheoremId::T3_1).needs_endpoint);
  CHECK(info(TheoremId::T3_6).needs_endpoint);
  CHECK_FALSE(info(TheoremId::C3_7).has_constants);
}

TEST_CASE("constants examples at p = 2") {
  const auto c1 = constants(TheoremId::T3_1, PParam(2.0), std::nullopt);
  CHECK(c1.lower_coeff == doctest::Approx(4.0 * std::log(2.0 / kPi) / (kPi * kPi)).epsilon(1e-14));
  CHECK(c1.upper_coeff == -1.0 / 6.0);

  const auto c5 = constants(TheoremId::T3_5, PParam(2.0), 1.0);
  CHECK(c5.lower_coeff == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-13));
  CHECK(c5.lower_coeff == doctest::Approx(0.433780830).epsilon(1e-8));
  CHECK(c5.upper_coeff == 0.5);
  CHECK(c5.endpoint == 1.0);

  const auto c3 = constants(TheoremId::T3_3, PParam(2.0), 1.0);
  CHECK(c3.lower_coeff == doctest::Approx(std::log(1.0 / std::tan(1.0))).epsilon(1e-13));
  CHECK(c3.upper_coeff == -1.0 / 3.0);
}

TEST_CASE("printed p = 2 coefficients are reproduced exactly") {
  const PParam p2(2.0);
  CHECK(constants(TheoremId::T3_1, p2, std::nullopt).upper_coeff == -1.0 / 6.0);
  CHECK(constants(TheoremId::T3_2, p2, 1.0).upper_coeff == -1.0 / 2.0);
  CHECK(constants(TheoremId::T3_3, p2, 1.0).upper_coeff == -1.0 / 3.0);
  CHECK(constants(TheoremId::T3_4, p2, 1.0).lower_coeff == -1.0 / 6.0);
  CHECK(constants(TheoremId::T3_5, p2, 1.0).upper_coeff == 1.0 / 2.0);
  CHECK(constants(TheoremId::T3_6, p2, 1.0).lower_coeff == -1.0 / 3.0);

  // Endpoint constants in their ln form.
  for (double e : {0.3, 1.0, 1.4}) {
    CAPTURE(e);
    CHECK(constants(TheoremId::T3_2, p2, e).lower_coeff ==
          doctest::Approx(std::log(std::cos(e)) / (e * e)).epsilon(1e-12));
    CHECK(constants(TheoremId::T3_3, p2, e).lower_coeff ==
          doctest::Approx(std::log(e / std::tan(e)) / (e * e)).epsilon(1e-12));
  }
  for (double e : {0.5, 1.0, 5.0}) {
    CAPTURE(e);
    CHECK(constants(TheoremId::T3_4, p2, e).upper_coeff ==
          doctest::Approx(std::log(e / std::sinh(e)) / (e * e)).epsilon(1e-12));
    CHECK(constants(TheoremId::T3_5, p2, e).lower_coeff ==
          doctest::Approx(std::log(std::cosh(e)) / (e * e)).epsilon(1e-12));
    CHECK(constants(TheoremId::T3_6, p2, e).upper_coeff ==
          doctest::Approx(std::log(std::tanh(e) / e) / (e * e)).epsilon(1e-12));
  }
}

TEST_CASE("hypotheses are enforced") {
  CHECK_THROWS_AS(constants(TheoremId::T3_1, PParam(1.5), std::nullopt), ParamError);
  CHECK_NOTHROW(constants(TheoremId::T3_1, PParam(1.5), std::nullopt, Hypotheses{true}));
  CHECK_NOTHROW(constants(TheoremId::T3_2, PParam(1.2), 0.5));
  CHECK_THROWS_AS(constants(TheoremId::T3_1, PParam(2.0), 1.0), EndpointError);
  CHECK_THROWS_AS(constants(TheoremId::T3_2, PParam(2.0), std::nullopt), EndpointError);
  CHECK_THROWS_AS(constants(TheoremId::T3_2, PParam(2.0), 2.0), EndpointError);
  CHECK_THROWS_AS(constants(TheoremId::T3_3, PParam(2.0), kPi / 2.0), EndpointError);
  CHECK_THROWS_AS(constants(TheoremId::T3_4, PParam(2.0), 0.0), EndpointError);
  CHECK_THROWS_AS(constants(TheoremId::T3_4, PParam(2.0), 1e6), EndpointError);
  CHECK_THROWS_AS(constants(TheoremId::T3_5, PParam(2.0), std::numeric_limits<double>::infinity()),
                  EndpointError);
  CHECK_THROWS_AS(constants(TheoremId::C3_7, PParam(2.0), std::nullopt), ParamError);
  CHECK_THROWS_AS(verify(TheoremId::T3_1, PParam(1.5), std::nullopt, 100), ParamError);
  CHECK_THROWS_AS(verify(TheoremId::T3_1, PParam(2.0), std::nullopt, 5), ParamError);
  CHECK_THROWS_AS(verify(TheoremId::C3_7, PParam(2.0), 2.0, 100), EndpointError);

  const auto forced = verify(TheoremId::T3_1, PParam(1.5), std::nullopt, 100, VerifyOptions{true, 0});
  CHECK_FALSE(forced.certifying);
  CHECK(verify(TheoremId::T3_1, PParam(2.0), std::nullopt, 100).certifying);
}

TEST_CASE("target_ratio, ratio_fn and lemma ratio examples") {
  const PParam p2(2.0);
  const PParam p3(3.0);
  CHECK(target_ratio(TheoremId::T3_1, 1e-9, p3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(target_ratio(TheoremId::T3_2, 0.5, p2) == doctest::Approx(std::cos(0.5)).epsilon(1e-14));
  CHECK(target_ratio(TheoremId::T3_2, 0.5, p2) == doctest::Approx(0.877582562).epsilon(1e-9));
  CHECK(target_ratio(TheoremId::T3_6, 1.0, p2) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
  CHECK(target_ratio(TheoremId::T3_6, 1.0, p2) == doctest::Approx(0.761594156).epsilon(1e-9));

  CHECK(std::abs(ratio_fn(TheoremId::T3_1, 1e-4, p3) + 1.0 / 12.0) < 1e-6);
  CHECK(ratio_fn(TheoremId::T3_1, 1e-8, p3) == -1.0 / 12.0);
  CHECK(std::abs(ratio_fn(TheoremId::T3_5, 1e-4, p2) - 0.5) < 1e-7);
  CHECK(ratio_fn(TheoremId::T3_1, kPi / 2.0, p2) ==
        doctest::Approx(4.0 * std::log(2.0 / kPi) / (kPi * kPi)).epsilon(1e-13));
  CHECK_THROWS_AS(ratio_fn(TheoremId::T3_1, 0.0, p2), DomainError);
  CHECK_THROWS_AS(ratio_fn(TheoremId::T3_2, 2.0, p2), DomainError);

  CHECK(aux_ratio_xi(1e-9, p3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(aux_ratio_varsigma(1e-9, p3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(aux_ratio_xi(1.0, p2) == doctest::Approx(1.0 / std::tan(1.0)).epsilon(1e-14));
  CHECK(aux_ratio_xi(1.0, p2) == doctest::Approx(0.642092616).epsilon(1e-9));
  CHECK_THROWS_AS(aux_ratio_xi(kPi / 2.0, p2), DomainError);
  CHECK_THROWS_AS(aux_ratio_varsigma(-1.0, p2), DomainError);
}

TEST_CASE("ratio_fn near zero keeps its accuracy") {
  // ln(target) has a second series term c1 x^(2p); the guarded ratio should
  // follow c0 + c1 x^p rather than lose digits to cancellation.
  for (double p : {2.0, 3.0, 10.0}) {
    const TrigFamily fam{PParam(p)};
    for (TheoremId id : {TheoremId::T3_1, TheoremId::T3_2, TheoremId::T3_3, TheoremId::T3_4,
                         TheoremId::T3_5, TheoremId::T3_6}) {
      CAPTURE(p);
      CAPTURE(info(id).label);
      const double c0 = limit_at_zero(id, p);
      double previous = std::numeric_limits<double>::infinity();
      for (double x : {1e-1, 1e-2, 1e-3}) {
        const double gap = std::abs(ratio_fn(id, fam, x) - c0);
        if (std::pow(x, p) > 1e-12) {
          CHECK(gap < previous);
        }
        CHECK(gap <= 2.0 * std::pow(x, p) + 1e-9);
        previous = gap;
      }
    }
  }
}

TEST_CASE("p = 2 matches the standard library oracle") {
  const TrigFamily fam{PParam(2.0)};
  for (TheoremId id : kAllTheorems) {
    const bool circular = id == TheoremId::T3_1 || id == TheoremId::T3_2 ||
                          id == TheoremId::T3_3 || id == TheoremId::C3_7;
    const double end = circular ? kPi / 2.0 : 8.0;
    for (int i = 1; i < 200; ++i) {
      const double x = end * i / 200.0;
      CAPTURE(info(id).label);
      CAPTURE(x);
      const double ref = classical_target(id, x);
      CHECK(std::abs(target_ratio(id, fam, x) - ref) <= 1e-12 * std::max(1.0, ref));
    }
  }
}

TEST_CASE("verify examples") {
  const auto r1 = verify(TheoremId::T3_1, PParam(3.0), std::nullopt, 1000);
  CHECK(r1.passed());
  CHECK(r1.violations.empty());
  CHECK(std::abs(r1.empirical_limit_0 + 1.0 / 12.0) < 1e-4);
  CHECK(r1.samples.size() == 1000);

  const auto r2 = verify(TheoremId::T3_2, PParam(2.0), 1.0, 1000);
  CHECK(r2.violations.empty());
  CHECK(r2.failures.empty());

  const auto r7 = verify(TheoremId::C3_7, PParam(2.0), std::nullopt, 1000);
  CHECK(r7.violations.empty());
  CHECK(r7.interval_end == doctest::Approx(kPi / 2.0));
  CHECK(std::isnan(r7.closed_limit_0));
}

TEST_CASE("sharpness examples") {
  const auto s4 = sharpness(TheoremId::T3_4, PParam(2.0), 1.0);
  CHECK(s4.closed_0 == -1.0 / 6.0);
  CHECK(std::abs(s4.limit_0 + 1.0 / 6.0) < 1e-6);

  const auto s6 = sharpness(TheoremId::T3_6, PParam(2.0), 1.0);
  CHECK(s6.closed_end == doctest::Approx(std::log(std::tanh(1.0))).epsilon(1e-12));
  CHECK(std::abs(s6.limit_end - s6.closed_end) < 1e-3);

  const TrigFamily fam3{PParam(3.0)};
  const double a = 0.9 * fam3.pi() / 2.0;
  const auto s2 = sharpness(TheoremId::T3_2, fam3, a);
  CHECK(s2.closed_end == doctest::Approx(std::log(fam3.cos(a)) / (a * a * a)).epsilon(1e-12));
  CHECK(std::abs(s2.limit_end - s2.closed_end) < 1e-3);

  CHECK_THROWS_AS(sharpness(TheoremId::C3_7, PParam(2.0), std::nullopt), ParamError);
}

TEST_CASE("property: lower coefficient below upper across p and endpoints") {
  for (TheoremId id : kAllTheorems) {
    if (!info(id).has_constants) continue;
    for (double p : {lowest_p(id), lowest_p(id) + 0.5, 3.0, 4.5, 7.0, 10.0}) {
      const TrigFamily fam{PParam(p)};
      for (const auto& e : endpoints_for(id, fam)) {
        const auto c = constants(id, fam, e);
        CAPTURE(info(id).label);
        CAPTURE(p);
        CHECK(c.lower_coeff < c.upper_coeff);
      }
    }
  }
}

TEST_CASE("property: band validity and strictness on clustered grids") {
  for (TheoremId id : kAllTheorems) {
    for (double p : {lowest_p(id), lowest_p(id) + 0.5, 3.0, 5.0, 10.0}) {
      const TrigFamily fam{PParam(p)};
      for (const auto& e : endpoints_for(id, fam)) {
        CAPTURE(info(id).label);
        CAPTURE(p);
        CAPTURE(e.value_or(-1.0));
        const auto report = verify(id, fam, e, 2000);
        CHECK(report.violations.empty());
        CHECK(report.failures.empty());

        // Strictness in log space, away from both ends. Gaps to the bound
        // that is sharp at 0 shrink like x^(2p), so only points with
        // x^p >= 1e-3 can resolve them in double precision.
        const double end = report.interval_end;
        for (const Sample& s : report.samples) {
          if (s.x < 0.1 * end || s.x > 0.9 * end || std::pow(s.x, p) < 1e-3) continue;
          if (id == TheoremId::C3_7) {
            const double gap = log_target(id, fam, s.x) - std::log(aux_ratio_xi(fam, s.x));
            CHECK(gap > 1e-13 * std::abs(log_target(id, fam, s.x)));
          } else {
            const double r = ratio_fn(id, fam, s.x);
            CHECK(r - report.coefficients.lower_coeff > 1e-13 * std::abs(r));
            CHECK(report.coefficients.upper_coeff - r > 1e-13 * std::abs(r));
          }
        }
      }
    }
  }
}

TEST_CASE("property: ratio_fn is monotone in the proved direction") {
  for (TheoremId id : kAllTheorems) {
    if (!info(id).has_constants) continue;
    for (double p : {lowest_p(id), 3.0, 10.0}) {
      const TrigFamily fam{PParam(p)};
      for (const auto& e : endpoints_for(id, fam)) {
        const double end = interval_end(id, fam, e);
        auto f = [&](double x) { return ratio_fn(id, fam, x); };
        const auto dir = info(id).ratio_increasing ? numkit::Direction::increasing
                                                   : numkit::Direction::decreasing;
        const auto report = numkit::check_monotone(f, 0.0, end, 500, dir);
        CAPTURE(info(id).label);
        CAPTURE(p);
        CHECK_FALSE(report.violated);
      }
    }
  }
}

TEST_CASE("property: lemma ratios are strictly monotone") {
  for (double p : {1.5, 2.0, 3.0, 10.0}) {
    const TrigFamily fam{PParam(p)};
    CAPTURE(p);
    auto xi = [&](double x) { return aux_ratio_xi(fam, x); };
    auto vs = [&](double x) { return aux_ratio_varsigma(fam, x); };
    const auto rx = numkit::check_monotone(xi, 0.0, fam.pi() / 2.0, 1000, numkit::Direction::decreasing);
    const auto rv = numkit::check_monotone(vs, 0.0, 20.0, 1000, numkit::Direction::increasing);
    CHECK_FALSE(rx.violated);
    CHECK_FALSE(rv.violated);
    // Near 0 both ratios sit within an ulp of 1 for large p; their logarithms
    // resolve the strict decrease and increase there.
    auto log_xi = [&](double x) { return log_target(TheoremId::T3_3, fam, x); };
    auto log_vs = [&](double x) { return -log_target(TheoremId::T3_6, fam, x); };
    CHECK(numkit::check_monotone(log_xi, 0.0, fam.pi() / 2.0, 1000, numkit::Direction::decreasing).strict);
    CHECK(numkit::check_monotone(log_vs, 0.0, 20.0, 1000, numkit::Direction::increasing).strict);
  }
}

TEST_CASE("property: clustered grid is increasing, interior and dense at both ends") {
  for (std::size_t n : {10u, 11u, 100u, 2000u}) {
    for (double end : {0.3, 1.0, 25.0}) {
      const auto g = clustered_grid(end, n);
      REQUIRE(g.size() == n);
      CHECK(g.front() > 0.0);
      CHECK(g.back() < end);
      CHECK(g.front() <= 1e-6 * end * (1.0 + 1e-12));
      CHECK(end - g.back() <= 1e-6 * end * (1.0 + 1e-9));
      for (std::size_t i = 0; i + 1 < n; ++i) CHECK(g[i] < g[i + 1]);
    }
  }
  CHECK_THROWS_AS(clustered_grid(1.0, 1), DomainError);
}

TEST_CASE("verify is independent of the thread count") {
  const TrigFamily fam{PParam(3.0)};
  const auto one = verify(TheoremId::T3_6, fam, 2.0, 300, VerifyOptions{false, 1});
  const auto many = verify(TheoremId::T3_6, fam, 2.0, 300, VerifyOptions{false, 7});
  REQUIRE(one.samples.size() == many.samples.size());
  for (std::size_t i = 0; i < one.samples.size(); ++i) {
    CHECK(one.samples[i].x == many.samples[i].x);
    CHECK(one.samples[i].target == many.samples[i].target);
    CHECK(one.samples[i].lower_margin == many.samples[i].lower_margin);
  }
  CHECK(one.min_lower_margin == many.min_lower_margin);
  CHECK(one.empirical_limit_end == many.empirical_limit_end);
}
