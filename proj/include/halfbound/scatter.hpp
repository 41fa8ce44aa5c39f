#pragma once
/**
 * @file scatter.hpp
 * @brief Numerical scattering off a 1D well.
 *
 * Two independent routes to the reflection amplitude:
 *  - Wronskian route: integrate the fundamental solutions u, v of
 *    psi'' = (V - E) psi outward from x = 0 with u(0)=1, u'(0)=0, v(0)=0,
 *    v'(0)=1 and combine their edge values in closed form.
 *  - Transfer-matrix route: slice the support into constant-V segments and
 *    multiply 2x2 plane-wave amplitude matrices. Midpoint slicing is second
 *    order in the slice width d; by default the n- and 2n-slice amplitudes
 *    are Richardson-combined, which leaves an O(d^4) error.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "halfbound/error.hpp"
#include "halfbound/potentials.hpp"

namespace halfbound {

using cdouble = std::complex<double>;

enum class Method { Wronskian, TransferMatrix };

inline std::string_view method_name(Method m) {
  return m == Method::Wronskian ? "wronskian" : "transfer";
}

inline Method parse_method(std::string_view s) {
  if (s == "wronskian") return Method::Wronskian;
  if (s == "transfer" || s == "transfer_matrix") return Method::TransferMatrix;
  throw InputError("unknown method '" + std::string(s) + "'");
}

/// Numerical resolution shared by both routes.
struct GridConfig {
  double step = 0.0;  ///< RK4 step; 0 selects min(a, 1) / 2000
  int slices = 8000;  ///< transfer-matrix slices over the support
  /// Combine the n- and 2n-slice products to cancel the O(d^2) slicing error.
  bool extrapolate = true;
  double tail_tol = kDefaultTailTol;
  int max_refinements = 6;

  double step_for(const Potential& p) const {
    return step > 0.0 ? step : std::min(p.length_scale(), 1.0) / 2000.0;
  }
};

/// Accepted integrations keep max |W - 1| below this.
inline constexpr double kWronskianDriftTol = 1e-8;

struct BoundaryData {
  // at x = L1
  double u1 = 0, v1 = 0, u1p = 0, v1p = 0;
  // at x = -L2
  double u2 = 0, v2 = 0, u2p = 0, v2p = 0;
  double E = 0;
  double k = 0;
  double L1 = 0, L2 = 0;
  double wronskian_drift = 0;
  double step = 0;

  /// u2'v1' - u1'v2'; vanishes at a zero-energy half-bound state.
  double neumann_determinant() const { return u2p * v1p - u1p * v2p; }
};

struct ScatterResult {
  cdouble r;
  std::optional<cdouble> t;  ///< empty for the Wronskian route
  double R = 0;
  double T = 0;
  double unitarity_residual = 0;
  Method method = Method::TransferMatrix;
  /// True when T was set to 1 - R rather than computed.
  bool transmission_derived = false;
};

namespace detail {

/// Classical RK4 for psi'' = (V - E) psi on n equal steps from x0 to x1.
/// `state` holds (psi, psi') pairs for several solutions side by side;
/// `observe(x, state)` is called at x0 and after every step.
template <std::size_t N, class Observer>
std::array<double, N> rk4_march(const Potential& V, double E, double x0, double x1, long n,
                                std::array<double, N> state, Observer&& observe) {
  static_assert(N % 2 == 0);
  const double h = (x1 - x0) / static_cast<double>(n);
  auto deriv = [](double w, const std::array<double, N>& y) {
    std::array<double, N> d{};
    for (std::size_t i = 0; i < N; i += 2) {
      d[i] = y[i + 1];
      d[i + 1] = w * y[i];
    }
    return d;
  };
  auto axpy = [](const std::array<double, N>& y, double s, const std::array<double, N>& d) {
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + s * d[i];
    return out;
  };
  observe(x0, state);
  for (long i = 0; i < n; ++i) {
    const double x = x0 + static_cast<double>(i) * h;
    const double xe = (i + 1 == n) ? x1 : x0 + static_cast<double>(i + 1) * h;
    const double w0 = V(x) - E;
    const double wm = V(x + 0.5 * h) - E;
    const double w1 = V(xe) - E;
    const auto k1 = deriv(w0, state);
    const auto k2 = deriv(wm, axpy(state, 0.5 * h, k1));
    const auto k3 = deriv(wm, axpy(state, 0.5 * h, k2));
    const auto k4 = deriv(w1, axpy(state, h, k3));
    for (std::size_t j = 0; j < N; ++j) state[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    observe(xe, state);
  }
  return state;
}

inline long steps_for(double length, double h) {
  return std::max(1L, static_cast<long>(std::ceil(std::abs(length) / h - 1e-9)));
}

}  // namespace detail

/// Edge values of u and v at energy E. The step is halved (up to
/// cfg.max_refinements times) until the Wronskian drift is acceptable.
inline BoundaryData integrate_uv(const Potential& p, double E, const GridConfig& cfg = {}) {
  if (!std::isfinite(E)) throw InputError("integrate_uv: E must be finite");
  if (p.kind() == Kind::DeltaWell) throw InputError("integrate_uv: delta well is analytic-only");
  const Support s = p.support();
  double h = cfg.step_for(p);

  for (int attempt = 0; attempt <= cfg.max_refinements; ++attempt, h *= 0.5) {
    double drift = 0.0;
    auto watch = [&drift](double, const std::array<double, 4>& y) {
      drift = std::max(drift, std::abs(y[0] * y[3] - y[1] * y[2] - 1.0));
    };
    const std::array<double, 4> start{1.0, 0.0, 0.0, 1.0};
    const auto right = detail::rk4_march(p, E, 0.0, s.right, detail::steps_for(s.right, h), start, watch);
    const auto left = detail::rk4_march(p, E, 0.0, s.left, detail::steps_for(s.left, h), start, watch);
    if (drift > kWronskianDriftTol) continue;

    BoundaryData bd;
    bd.u1 = right[0]; bd.u1p = right[1]; bd.v1 = right[2]; bd.v1p = right[3];
    bd.u2 = left[0]; bd.u2p = left[1]; bd.v2 = left[2]; bd.v2p = left[3];
    bd.E = E;
    bd.k = E > 0.0 ? std::sqrt(E) : 0.0;
    bd.L1 = s.right;
    bd.L2 = -s.left;
    bd.wronskian_drift = drift;
    bd.step = h;
    return bd;
  }
  throw NumericalError("integrate_uv: Wronskian drift persists after step refinement");
}

/// Reflection amplitude from the edge values of u and v.
inline ScatterResult reflection_wronskian(const BoundaryData& bd) {
  if (!(bd.E > 0.0)) throw InputError("reflection_wronskian: E must be > 0");
  const double k = std::sqrt(bd.E);
  const cdouble ik(0.0, k);
  const double d0 = bd.neumann_determinant();
  const double c = bd.u1 * bd.v2 - bd.u2 * bd.v1;
  const cdouble num = d0 + ik * (bd.v2 * bd.u1p + bd.u1 * bd.v2p) - ik * (bd.u2 * bd.v1p + bd.v1 * bd.u2p) + k * k * c;
  const cdouble den = d0 - ik * (bd.v2 * bd.u1p - bd.u1 * bd.v2p) + ik * (bd.u2 * bd.v1p - bd.v1 * bd.u2p) - k * k * c;
  if (std::abs(den) < 1e-300) throw NumericalError("reflection_wronskian: vanishing denominator");

  ScatterResult res;
  res.r = -num / den * std::exp(-2.0 * ik * bd.L1);
  res.R = std::norm(res.r);
  res.T = 1.0 - res.R;
  res.transmission_derived = true;
  res.method = Method::Wronskian;
  return res;
}

/**
 * Reflection and transmission from a product of 2x2 amplitude matrices over
 * n_slices constant-V segments (V sampled at slice midpoints). Amplitudes in
 * each segment are referenced to the segment edges, and the running product
 * is rescaled so evanescent segments cannot overflow.
 */
inline ScatterResult transfer_matrix_rt(const Potential& p, double E, int n_slices) {
  if (!(E > 0.0)) throw InputError("transfer_matrix_rt: E must be > 0");
  if (n_slices < 2) throw InputError("transfer_matrix_rt: need at least 2 slices");
  if (p.kind() == Kind::DeltaWell) throw InputError("transfer_matrix_rt: delta well is analytic-only");

  using Mat = std::array<cdouble, 4>;  // row-major 2x2
  auto mul = [](const Mat& a, const Mat& b) {
    return Mat{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
               a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
  };
  auto interface = [](cdouble kl, cdouble kr) {
    const cdouble ratio = kr / kl;
    const cdouble plus = 0.5 * (1.0 + ratio), minus = 0.5 * (1.0 - ratio);
    return Mat{plus, minus, minus, plus};
  };

  const Support s = p.support();
  const double d = s.width() / n_slices;
  const cdouble k0(std::sqrt(E), 0.0);
  const cdouble i(0.0, 1.0);

  Mat m{1.0, 0.0, 0.0, 1.0};
  double log_scale = 0.0;
  cdouble k_prev = k0;
  for (int j = 0; j < n_slices; ++j) {
    const double x = s.left + (j + 0.5) * d;
    const cdouble kj = std::sqrt(cdouble(E - p(x), 0.0));
    if (kj == 0.0) throw NumericalError("transfer_matrix_rt: zero local wavenumber");
    if (std::abs(kj.imag()) * d > 600.0) throw NumericalError("transfer_matrix_rt: slice too thick, increase slices");
    const Mat prop{std::exp(-i * kj * d), 0.0, 0.0, std::exp(i * kj * d)};
    m = mul(mul(m, interface(k_prev, kj)), prop);
    k_prev = kj;

    const double norm = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2]), std::abs(m[3])});
    if (norm > 1e100) {
      for (auto& e : m) e /= norm;
      log_scale += std::log(norm);
    }
  }
  m = mul(m, interface(k_prev, k0));

  ScatterResult res;
  res.method = Method::TransferMatrix;
  res.r = m[2] / m[0];
  res.t = std::exp(-log_scale) / m[0];
  res.R = std::norm(res.r);
  res.T = std::norm(*res.t);
  res.unitarity_residual = std::abs(res.R + res.T - 1.0);
  return res;
}

/// Extrapolated pairs are refined until |R + T - 1| falls below this.
inline constexpr double kExtrapolationUnitarityTol = 1e-9;
inline constexpr int kMaxSliceDoublings = 5;

/// (4 X(2n) - X(n)) / 3 for r and t. The combination is only unitary to
/// O(|X(2n) - X(n)|^2), so n is doubled (up to kMaxSliceDoublings times)
/// until R + T = 1 holds to kExtrapolationUnitarityTol; near a critical
/// strength the slicing error is largest. Piecewise-constant square wells
/// are already exact and are returned unextrapolated.
inline ScatterResult transfer_matrix_extrapolated(const Potential& p, double E, int n_slices) {
  ScatterResult fine = transfer_matrix_rt(p, E, 2 * n_slices);
  if (p.kind() == Kind::SquareWell) return fine;
  ScatterResult coarse = transfer_matrix_rt(p, E, n_slices);
  long n = n_slices;
  for (int doubling = 0;; ++doubling) {
    ScatterResult res;
    res.method = Method::TransferMatrix;
    res.r = (4.0 * fine.r - coarse.r) / 3.0;
    res.t = (4.0 * *fine.t - *coarse.t) / 3.0;
    res.R = std::norm(res.r);
    res.T = std::norm(*res.t);
    res.unitarity_residual = std::abs(res.R + res.T - 1.0);
    if (res.unitarity_residual <= kExtrapolationUnitarityTol || doubling == kMaxSliceDoublings) return res;
    n *= 2;
    coarse = std::move(fine);
    fine = transfer_matrix_rt(p, E, static_cast<int>(2 * n));
  }
}

inline ScatterResult scatter(const Potential& p, double E, Method method, const GridConfig& cfg = {}) {
  if (method == Method::Wronskian) return reflection_wronskian(integrate_uv(p, E, cfg));
  if (cfg.extrapolate) return transfer_matrix_extrapolated(p, E, cfg.slices);
  return transfer_matrix_rt(p, E, cfg.slices);
}

/**
 * Limit of r as E -> 0+ for edge data taken at E = 0 on a half-bound state
 * (u2'v1' - u1'v2' = 0). Expanding the amplitude to first order in k gives a
 * single expression that reduces to the u-type form when u1' = u2' = 0 and
 * to the v-type form when v1' = v2' = 0. Symmetric wells give 0 by parity.
 */
inline cdouble threshold_limit_r(const BoundaryData& bd, bool parity_known) {
  if (bd.E != 0.0) throw InputError("threshold_limit_r: edge data must be taken at E = 0");
  if (std::abs(bd.neumann_determinant()) >= 1e-8)
    throw InputError("threshold_limit_r: no half-bound state (r(0) = -1 for this well)");
  if (parity_known) return 0.0;
  const double num = (bd.v2 * bd.u1p + bd.u1 * bd.v2p) - (bd.u2 * bd.v1p + bd.v1 * bd.u2p);
  const double den = -(bd.v2 * bd.u1p - bd.u1 * bd.v2p) + (bd.u2 * bd.v1p - bd.v1 * bd.u2p);
  if (den == 0.0) throw NumericalError("threshold_limit_r: degenerate edge data");
  return -num / den;
}

struct Sample {
  double x = 0;
  double psi = 0;
};

/// Strict sign changes of psi, skipping |psi| < 1e-12.
inline int count_nodes(std::span<const Sample> samples) {
  int nodes = 0;
  int last = 0;
  for (const auto& s : samples) {
    if (std::abs(s.psi) < 1e-12) continue;
    const int sign = s.psi > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++nodes;
    last = sign;
  }
  return nodes;
}

}  // namespace halfbound
