#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "halfbound/analytic.hpp"
#include "halfbound/critical.hpp"
#include "halfbound/scatter.hpp"

using namespace halfbound;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;

const Family kSquare{Kind::SquareWell, {{"a", 1.0}}};
const Family kExp{Kind::ExponentialWell, {{"a", 1.0}}};
const Family kSoliton{Kind::SolitonWell, {}};
const Family kParabolic{Kind::ParabolicWell, {{"a", 1.0}, {"b", 1.0}}};
const Family kParabolicAsym{Kind::ParabolicWell, {{"a", 1.0}, {"b", 1.1}}};

std::vector<double> strengths(const std::vector<HbsResult>& hs) {
  std::vector<double> out;
  for (const auto& h : hs) out.push_back(h.q_c);
  return out;
}

}  // namespace

TEST_CASE("first critical square well", "[critical][square]") {
  const HbsResult h = find_critical_q(kSquare, {1.0, 2.0});
  CHECK_THAT(h.q_c, WithinAbs(kPi / 2.0, 1e-8));
  CHECK(h.node_count == 1);
  CHECK(h.parity == HbsParity::Odd);
  CHECK(h.right_residual < 1e-8);
  CHECK(h.left_residual < 1e-8);
  // profile plateaus at -1 and +1 (left-edge normalization psi = 1 flips sign)
  CHECK_THAT(std::abs(h.profile.front().psi), WithinAbs(1.0, 1e-8));
  CHECK_THAT(h.profile.front().psi, WithinAbs(-h.profile.back().psi, 1e-8));
  CHECK(h.profile.front().x < -1.0);
  CHECK(h.profile.back().x > 1.0);
}

TEST_CASE("square well profile matches the closed form", "[critical][square]") {
  const HbsResult h = find_critical_q(kSquare, {1.0, 2.0});
  std::vector<double> xs;
  for (const auto& pt : h.profile) xs.push_back(pt.x);
  const auto want = analytic::square_well_hbs(1, 1.0, xs);
  const double sign = h.profile.back().psi > 0.0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK_THAT(h.profile[i].psi, WithinAbs(sign * want[i], 1e-8));
}

TEST_CASE("critical exponential wells", "[critical][exponential]") {
  const HbsResult even = find_critical_q(kExp, {3.5, 4.0});
  CHECK_THAT(even.q_c, WithinAbs(specfun::bessel_zero(1, 1), 1e-8));
  CHECK(even.parity == HbsParity::Even);
  CHECK(even.node_count == 2);

  const HbsResult third = find_critical_q(kExp, {5.3, 5.7});
  CHECK_THAT(third.q_c, WithinAbs(specfun::bessel_zero(0, 2), 1e-8));
  CHECK(third.node_count == 3);
  CHECK(third.parity == HbsParity::Odd);

  // profile follows sgn(x) J0(q_c exp(-|x|)) up to normalization
  const HbsResult odd = find_critical_q(kExp, {2.0, 3.0});
  const double scale = odd.profile.back().psi;
  for (const auto& pt : odd.profile) {
    const double arg = odd.q_c * std::exp(-std::abs(pt.x));
    const double want = (pt.x < 0.0 ? -1.0 : 1.0) * std::real(specfun::bessel_j(0.0, arg));
    CHECK_THAT(pt.psi / scale, WithinAbs(want, 1e-7));
  }
}

TEST_CASE("critical spectra", "[critical][spectrum]") {
  const auto sq = strengths(critical_spectrum(kSquare, 5.0));
  REQUIRE(sq.size() == 3);
  for (int n = 1; n <= 3; ++n) CHECK_THAT(sq[n - 1], WithinAbs(n * kPi / 2.0, 1e-8));

  const auto ex = strengths(critical_spectrum(kExp, 6.0));
  REQUIRE(ex.size() == 3);
  CHECK_THAT(ex[0], WithinAbs(specfun::bessel_zero(0, 1), 1e-8));
  CHECK_THAT(ex[1], WithinAbs(specfun::bessel_zero(1, 1), 1e-8));
  CHECK_THAT(ex[2], WithinAbs(specfun::bessel_zero(0, 2), 1e-8));

  const auto sol = critical_spectrum(kSoliton, 4.5);
  REQUIRE(sol.size() == 3);
  for (int n = 0; n < 3; ++n) {
    CHECK_THAT(sol[n].q_c, WithinAbs(n + 2.0, 1e-8));
    CHECK(sol[n].node_count == n + 1);
  }
}

TEST_CASE("node count equals the bound-state count at criticality", "[critical][property]") {
  for (const auto& h : critical_spectrum(kExp, 6.0)) {
    INFO(h.q_c);
    CHECK(h.node_count == analytic::exp_well_bound_states(h.q_c, 1.0).count);
    CHECK(h.node_count == bound_state_count_at(kExp, h.q_c));
  }
  for (const auto& family : {kSquare, kParabolic, kParabolicAsym}) {
    for (const auto& h : critical_spectrum(family, 6.0)) {
      INFO(kind_name(family.kind) << " " << h.q_c);
      CHECK(h.node_count == bound_state_count_at(family, h.q_c));
    }
  }
}

TEST_CASE("bound-state count grows across each critical strength", "[critical][property]") {
  CHECK(bound_state_count_at(kSquare, 1.0) == 1);
  CHECK(bound_state_count_at(kSquare, 2.0) == 2);
  CHECK(bound_state_count_at(kExp, 3.0) == 2);
  CHECK(bound_state_count_at(kExp, 0.5) == 1);
  for (const auto& h : critical_spectrum(kExp, 6.0)) {
    CHECK(bound_state_count_at(kExp, h.q_c + 1e-3) == h.node_count + 1);
    CHECK(bound_state_count_at(kExp, h.q_c - 1e-3) == h.node_count);
  }
}

TEST_CASE("asymmetric critical wells have no parity and a partial threshold reflection", "[critical][asymmetric]") {
  const auto spec = critical_spectrum(kParabolicAsym, 3.0);
  REQUIRE(spec.size() == 1);
  const HbsResult& h = spec.front();
  CHECK(h.parity == HbsParity::None);
  CHECK(h.right_residual < 1e-8);
  const BoundaryData bd = integrate_uv(kParabolicAsym.at(h.q_c), 0.0);
  const double r0 = std::abs(threshold_limit_r(bd, false));
  CHECK(r0 > 0.0);
  CHECK(r0 < 1.0);
}

TEST_CASE("symmetric parabolic critical strength", "[critical][parabolic]") {
  const HbsResult h = find_critical_q(kParabolic, {2.0, 2.5});
  CHECK_THAT(h.q_c, WithinAbs(2.2631105, 1e-6));
  CHECK(h.parity == HbsParity::Odd);
  CHECK(h.node_count == 1);
}

TEST_CASE("reflection vanishes at threshold at each critical strength", "[critical][threshold]") {
  for (const auto& family : {kSquare, kExp, kParabolic}) {
    for (const auto& h : critical_spectrum(family, 6.0)) {
      const Potential p = family.at(h.q_c);
      const double r6 = scatter(p, 1e-6, Method::Wronskian).R;
      const double r4 = scatter(p, 1e-4, Method::Wronskian).R;
      INFO(kind_name(family.kind) << " " << h.q_c);
      CHECK(r6 <= 1e-3);
      CHECK(r6 <= r4);
    }
  }
}

TEST_CASE("critical search failures", "[critical]") {
  CHECK_THROWS_AS(find_critical_q(kSquare, {0.2, 1.0}), NoRootError);
  CHECK_THROWS_AS(find_critical_q(kSquare, {2.0, 1.0}), InputError);
  CHECK_THROWS_AS(find_critical_q(kSoliton, {0.5, 1.5}), InputError);
  CHECK_THROWS_AS(critical_spectrum(kExp, 40.0), InputError);
}
