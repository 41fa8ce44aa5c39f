#pragma once
/**
 * @file critical.hpp
 * @brief Zero-energy half-bound states and the critical strengths q_c at
 * which a well acquires one.
 *
 * A half-bound state is flat on both sides of the well: psi'(-L2) = 0 and
 * psi'(L1) = 0 at E = 0. We shoot from the left edge with the left condition
 * imposed (psi = 1, psi' = 0) and root the right-edge slope in q. No parity
 * is assumed, so asymmetric wells are handled the same way.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "halfbound/error.hpp"
#include "halfbound/parallel.hpp"
#include "halfbound/potentials.hpp"
#include "halfbound/scatter.hpp"

namespace halfbound {

enum class HbsParity { Even, Odd, None };

inline std::string_view parity_name(HbsParity p) {
  switch (p) {
    case HbsParity::Even: return "even";
    case HbsParity::Odd: return "odd";
    default: return "none";
  }
}

struct ProfilePoint {
  double x = 0;
  double psi = 0;
  double dpsi = 0;
  double V = 0;
};

struct HbsResult {
  double q_c = 0;  ///< critical strength (nu for the soliton family)
  int node_count = 0;
  std::vector<ProfilePoint> profile;
  double left_residual = 0;   ///< |psi'(-L2)|
  double right_residual = 0;  ///< |psi'(L1)|
  HbsParity parity = HbsParity::None;
  double psi_origin = 0;
  double dpsi_origin = 0;
};

inline constexpr double kCriticalScanStep = 0.02;
inline constexpr double kParityTol = 1e-8;

namespace detail {

struct Shot {
  double psi_left = 1, dpsi_left = 0;
  double psi_origin = 0, dpsi_origin = 0;
  double psi_right = 0, dpsi_right = 0;
  std::vector<ProfilePoint> samples;  // filled only when requested
};

// Zero-energy solution started flat at the left edge, marched through x = 0
// to the right edge. When `keep` > 0 every keep-th grid point is recorded.
inline Shot shoot_flat(const Potential& p, const GridConfig& cfg, long keep = 0) {
  const Support s = p.support();
  const double h = cfg.step_for(p);
  Shot shot;
  long counter = 0;
  auto record = [&](double x, const std::array<double, 2>& y) {
    if (keep > 0 && (counter++ % keep == 0)) shot.samples.push_back({x, y[0], y[1], p(x)});
  };
  const auto mid = rk4_march(p, 0.0, s.left, 0.0, steps_for(s.left, h), std::array<double, 2>{1.0, 0.0}, record);
  shot.psi_origin = mid[0];
  shot.dpsi_origin = mid[1];
  counter = 1;  // x = 0 already recorded
  auto record_right = [&](double x, const std::array<double, 2>& y) {
    if (x == 0.0) return;
    record(x, y);
  };
  const auto end = rk4_march(p, 0.0, 0.0, s.right, steps_for(s.right, h), mid, record_right);
  shot.psi_right = end[0];
  shot.dpsi_right = end[1];
  if (keep > 0 && (shot.samples.empty() || shot.samples.back().x != s.right))
    shot.samples.push_back({s.right, end[0], end[1], p(s.right)});
  return shot;
}

}  // namespace detail

/// psi'(L1) of the zero-energy solution that is flat at -L2. Its roots in q
/// are the critical strengths.
inline double hbs_mismatch(const Family& family, double q, const GridConfig& cfg = {}) {
  if (!(q > family.strength_floor())) throw InputError("hbs_mismatch: strength below the physical range");
  return detail::shoot_flat(family.at(q), cfg).dpsi_right;
}

namespace detail {

inline HbsResult describe_hbs(const Family& family, double q_c, const GridConfig& cfg) {
  const Potential p = family.at(q_c);
  const Support s = p.support();
  const long total = steps_for(s.left, cfg.step_for(p)) + steps_for(s.right, cfg.step_for(p));
  const long keep = std::max(1L, total / 2000);
  Shot shot = shoot_flat(p, cfg, keep);

  HbsResult res;
  res.q_c = q_c;
  res.left_residual = std::abs(shot.dpsi_left);
  res.right_residual = std::abs(shot.dpsi_right);
  res.psi_origin = shot.psi_origin;
  res.dpsi_origin = shot.dpsi_origin;
  if (p.symmetric()) {
    if (std::abs(shot.psi_origin) < kParityTol) res.parity = HbsParity::Odd;
    else if (std::abs(shot.dpsi_origin) < kParityTol) res.parity = HbsParity::Even;
  }

  // Finite-support wells: show the flat continuation outside the well.
  std::vector<ProfilePoint> profile;
  if (p.finite_support()) {
    const double ext = 0.5 * s.width();
    constexpr int n_ext = 100;
    for (int i = 0; i < n_ext; ++i) {
      const double x = s.left - ext + ext * i / n_ext;
      profile.push_back({x, shot.psi_left + shot.dpsi_left * (x - s.left), shot.dpsi_left, 0.0});
    }
    profile.insert(profile.end(), shot.samples.begin(), shot.samples.end());
    for (int i = 1; i <= n_ext; ++i) {
      const double x = s.right + ext * i / n_ext;
      profile.push_back({x, shot.psi_right + shot.dpsi_right * (x - s.right), shot.dpsi_right, 0.0});
    }
  } else {
    profile = std::move(shot.samples);
  }

  std::vector<Sample> nodes;
  nodes.reserve(profile.size());
  for (const auto& pt : profile) nodes.push_back({pt.x, pt.psi});
  res.node_count = count_nodes(nodes);
  res.profile = std::move(profile);
  return res;
}

}  // namespace detail

/// Critical strength inside [lo, hi] polished to |dq| <= 1e-10, with the
/// half-bound-state profile, node count, residuals and parity.
inline HbsResult find_critical_q(const Family& family, std::pair<double, double> bracket,
                                 const GridConfig& cfg = {}) {
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw InputError("find_critical_q: bracket must satisfy lo < hi");
  if (!(lo > family.strength_floor())) throw InputError("find_critical_q: bracket below the physical range");
  auto f = [&](double q) { return hbs_mismatch(family, q, cfg); };
  const double flo = f(lo), fhi = f(hi);
  double root;
  if (flo == 0.0) {
    root = lo;
  } else if (fhi == 0.0) {
    root = hi;
  } else {
    if (flo * fhi > 0.0) throw NoRootError("no critical point in range");
    std::uintmax_t iters = 100;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-12 * std::max(1.0, std::abs(a)); };
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    root = 0.5 * (a + b);
    if (std::abs(b - a) > 1e-10) throw NumericalError("find_critical_q: root polish did not converge");
  }
  return detail::describe_hbs(family, root, cfg);
}

/// All critical strengths up to q_max, bracketed on a 0.02 grid.
inline std::vector<HbsResult> critical_spectrum(const Family& family, double q_max, const GridConfig& cfg = {}) {
  if (!(q_max > family.strength_floor())) throw InputError("critical_spectrum: q_max below the physical range");
  if (q_max > 30.0) throw InputError("critical_spectrum: q_max must be <= 30");
  const double floor = family.strength_floor();
  const auto n = static_cast<std::size_t>(std::ceil((q_max - floor) / kCriticalScanStep)) + 1;
  auto grid = [&](std::size_t i) { return floor + kCriticalScanStep * static_cast<double>(i + 1); };
  const std::vector<double> f = parallel_map(n, [&](std::size_t i) { return hbs_mismatch(family, grid(i), cfg); });

  std::vector<HbsResult> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (f[i] == 0.0 || f[i] * f[i + 1] < 0.0) {
      HbsResult r = find_critical_q(family, {grid(i), grid(i + 1)}, cfg);
      if (r.q_c <= q_max + 1e-9) out.push_back(std::move(r));
    }
  }
  return out;
}

/// Number of bound states below E = 0: zeros of the zero-energy solution that
/// is flat on the left, counting the one past L1 when psi(L1)psi'(L1) < 0.
/// A right-edge slope below kParityTol is a half-bound state, not a level.
inline int bound_state_count_at(const Family& family, double q, const GridConfig& cfg = {}) {
  if (!(q > family.strength_floor())) throw InputError("bound_state_count_at: strength below the physical range");
  const Potential p = family.at(q);
  const detail::Shot shot = detail::shoot_flat(p, cfg, 1);
  std::vector<Sample> samples;
  samples.reserve(shot.samples.size());
  for (const auto& pt : shot.samples) samples.push_back({pt.x, pt.psi});
  int n = count_nodes(samples);
  const bool at_threshold = std::abs(shot.dpsi_right) <= kParityTol * std::max(1.0, std::abs(shot.psi_right));
  if (!at_threshold && shot.psi_right * shot.dpsi_right < 0.0) ++n;
  return n;
}

}  // namespace halfbound
