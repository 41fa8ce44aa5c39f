#pragma once
/**
 * @file analytic.hpp
 * @brief Closed forms for the exactly solvable wells: square, exponential,
 * sech^2 (soliton) and Dirac delta.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "halfbound/error.hpp"
#include "halfbound/specfun.hpp"

namespace halfbound::analytic {

using cdouble = std::complex<double>;

/// Wavenumber data for one energy. Exactly one of k, kappa is nonzero.
struct WaveNumbers {
  double E = 0.0;
  double k = 0.0;      ///< sqrt(E) for E > 0
  double kappa = 0.0;  ///< sqrt(-E) for E < 0
  double epsilon = 0.0;  ///< E / V0

  static WaveNumbers from_energy(double E, double V0) {
    WaveNumbers w;
    w.E = E;
    if (E > 0.0) w.k = std::sqrt(E);
    if (E < 0.0) w.kappa = std::sqrt(-E);
    w.epsilon = V0 > 0.0 ? E / V0 : 0.0;
    return w;
  }
};

enum class Parity { Even, Odd };

struct BoundSpectrum {
  std::vector<double> energies;  ///< increasing, all < 0
  std::vector<Parity> parities;
  int count = 0;
  /// True when the odd or even condition has a root at kappa -> 0, i.e. the
  /// well sits at a half-bound state. Threshold roots are not counted.
  bool threshold_root = false;
};

// ---------------------------------------------------------------- square well

inline double square_well_R(double E, double V0, double a) {
  if (!(E > 0.0)) throw InputError("square_well_R: E must be > 0 (use square_well_R0_limit)");
  if (!(V0 > 0.0) || !(a > 0.0)) throw InputError("square_well_R: V0 and a must be > 0");
  const double eps = E / V0;
  const double q = a * std::sqrt(V0);
  const double s = std::sin(2.0 * q * std::sqrt(1.0 + eps));
  const double s2 = s * s;
  return s2 / (4.0 * eps * (eps + 1.0) + s2);
}

/// Threshold limit of the square-well R: 0 at q = n*pi/2 (n >= 1), else 1.
inline double square_well_R0_limit(double q) {
  if (!(q > 0.0)) throw InputError("square_well_R0_limit: q must be > 0");
  const double n = std::round(q / (0.5 * std::numbers::pi));
  if (n >= 1.0 && std::abs(q - n * 0.5 * std::numbers::pi) <= 1e-12) return 0.0;
  return 1.0;
}

/// Zero-energy half-bound state of the critical square well q = n*pi/2,
/// amplitude 1. Odd n: sin inside; even n: cos inside. Flat outside.
inline std::vector<double> square_well_hbs(int n, double a, std::span<const double> xs) {
  if (n < 1) throw InputError("square_well_hbs: n must be >= 1");
  if (!(a > 0.0)) throw InputError("square_well_hbs: a must be > 0");
  const double kx = n * std::numbers::pi / (2.0 * a);
  const bool odd = n % 2 == 1;
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (std::abs(x) < a) {
      out.push_back(odd ? std::sin(kx * x) : std::cos(kx * x));
    } else {
      const double edge = odd ? std::sin(n * std::numbers::pi / 2.0) : std::cos(n * std::numbers::pi / 2.0);
      out.push_back(odd ? (x > 0.0 ? edge : -edge) : edge);
    }
  }
  return out;
}

// ----------------------------------------------------------- exponential well

/// Unimodular factor (q/2)^{-2ika} Gamma(1+ika)/Gamma(1-ika) multiplying the
/// Bessel bracket of the exact exponential-well amplitude.
inline cdouble exp_well_r_prefactor(double E, double V0, double a) {
  const double ka = std::sqrt(E) * a;
  const double q = a * std::sqrt(V0);
  const cdouble ika(0.0, ka);
  return std::exp(-2.0 * ika * std::log(0.5 * q)) * specfun::gamma_complex(1.0 + ika) /
         specfun::gamma_complex(1.0 - ika);
}

/// Bessel bracket -(1/2)[J_{ika}/J_{-ika} + J'_{ika}/J'_{-ika}] at argument q.
inline cdouble exp_well_r_bracket(double E, double V0, double a) {
  const double ka = std::sqrt(E) * a;
  const double q = a * std::sqrt(V0);
  const cdouble ika(0.0, ka);
  const cdouble jp = specfun::bessel_j(ika, q);
  const cdouble jm = specfun::bessel_j(-ika, q);
  const cdouble dp = specfun::bessel_j_prime(ika, q);
  const cdouble dm = specfun::bessel_j_prime(-ika, q);
  if (std::abs(jm) < 1e-14 || std::abs(dm) < 1e-14)
    throw NumericalError("exp_well_r_exact: vanishing Bessel denominator, perturb E");
  return -0.5 * (jp / jm + dp / dm);
}

/// Exact reflection amplitude of V = -V0 exp(-2|x|/a).
inline cdouble exp_well_r_exact(double E, double V0, double a) {
  if (!(E > 0.0)) throw InputError("exp_well_r_exact: E must be > 0");
  if (!(V0 > 0.0) || !(a > 0.0)) throw InputError("exp_well_r_exact: V0 and a must be > 0");
  if (a * std::sqrt(V0) > 30.0) throw InputError("exp_well_r_exact: q must be <= 30");
  return exp_well_r_prefactor(E, V0, a) * exp_well_r_bracket(E, V0, a);
}

inline constexpr double kThresholdWindow = 0.05;

/**
 * Small-energy form of the exponential-well amplitude, built from
 * J_nu(q) ~ J0(q) + (nu*pi/2) Y0(q) with nu = ika. The unimodular prefactor
 * is dropped (it tends to 1 as ka -> 0), so compare against
 * exp_well_r_bracket, not exp_well_r_exact.
 */
inline cdouble exp_well_r_threshold(double E, double V0, double a) {
  if (!(E > 0.0) || !(V0 > 0.0) || !(a > 0.0))
    throw InputError("exp_well_r_threshold: E, V0 and a must be > 0");
  const double ka = std::sqrt(E) * a;
  if (ka > kThresholdWindow) throw InputError("exp_well_r_threshold: ka outside the threshold window");
  const double q = a * std::sqrt(V0);
  const double j0 = std::real(specfun::bessel_j(0.0, q));
  const double j1 = std::real(specfun::bessel_j(1.0, q));
  const double y0 = specfun::bessel_y0(q);
  const double y1 = specfun::bessel_y1(q);
  const cdouble c(0.0, ka * std::numbers::pi / 2.0);
  return -0.5 * ((j0 + c * y0) / (j0 - c * y0) + (j1 + c * y1) / (j1 - c * y1));
}

namespace detail {

// Roots in (0, q] of f by a 0.01 scan and bisection to 1e-12.
inline std::vector<double> order_roots(const std::function<double(double)>& f, double q) {
  std::vector<double> roots;
  constexpr double step = 0.01;
  double lo = 0.0;
  double flo = f(lo);
  if (flo == 0.0) roots.push_back(0.0);
  while (lo < q) {
    const double hi = std::min(lo + step, q);
    const double fhi = f(hi);
    if (fhi == 0.0) {
      roots.push_back(hi);
    } else if (flo * fhi < 0.0) {
      double a = lo, b = hi, fa = flo;
      while (b - a > 1e-12) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) { a = b = m; break; }
        if ((fa < 0.0) == (fm < 0.0)) { a = m; fa = fm; } else { b = m; }
      }
      roots.push_back(0.5 * (a + b));
    }
    lo = hi;
    flo = fhi;
  }
  return roots;
}

inline constexpr double kThresholdOrder = 1e-6;

}  // namespace detail

/// Bound states of the exponential well: even levels solve J'_{kappa a}(q) = 0,
/// odd levels J_{kappa a}(q) = 0. Roots with kappa*a below 1e-6 are threshold
/// (half-bound) roots and are flagged instead of counted.
inline BoundSpectrum exp_well_bound_states(double q, double a) {
  if (!(q > 0.0) || q > 30.0) throw InputError("exp_well_bound_states: q must lie in (0, 30]");
  if (!(a > 0.0)) throw InputError("exp_well_bound_states: a must be > 0");

  auto even = [q](double nu) { return std::real(specfun::bessel_j_prime(nu, q)); };
  auto odd = [q](double nu) { return std::real(specfun::bessel_j(nu, q)); };

  struct Level {
    double E;
    Parity parity;
  };
  std::vector<Level> levels;
  BoundSpectrum out;
  auto collect = [&](const std::vector<double>& roots, Parity parity) {
    for (double ka : roots) {
      if (ka < detail::kThresholdOrder) {
        out.threshold_root = true;
        continue;
      }
      const double kappa = ka / a;
      levels.push_back({-kappa * kappa, parity});
    }
  };
  collect(detail::order_roots(even, q), Parity::Even);
  collect(detail::order_roots(odd, q), Parity::Odd);
  std::sort(levels.begin(), levels.end(), [](const Level& l, const Level& r) { return l.E < r.E; });
  for (const auto& l : levels) {
    out.energies.push_back(l.E);
    out.parities.push_back(l.parity);
  }
  out.count = static_cast<int>(levels.size());
  return out;
}

/// Zero-energy half-bound state of the critical exponential well. Odd when
/// J0(q_c) = 0: sgn(x) J0(q_c e^{-|x|/a}); even when J1(q_c) = 0:
/// J0(q_c e^{-|x|/a}).
inline std::vector<double> exp_well_hbs(double q_c, double a, std::span<const double> xs) {
  if (!(q_c > 0.0) || !(a > 0.0)) throw InputError("exp_well_hbs: q_c and a must be > 0");
  const double j0 = std::real(specfun::bessel_j(0.0, q_c));
  const double j1 = std::real(specfun::bessel_j(1.0, q_c));
  bool odd;
  if (std::abs(j0) < 1e-6) {
    odd = true;
  } else if (std::abs(j1) < 1e-6) {
    odd = false;
  } else {
    throw InputError("exp_well_hbs: q_c is not a zero of J0 or J1");
  }
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const double arg = q_c * std::exp(-std::abs(x) / a);
    const double j = arg > 0.0 ? std::real(specfun::bessel_j(0.0, arg)) : 1.0;
    out.push_back(odd ? (x < 0.0 ? -j : (x > 0.0 ? j : 0.0)) : j);
  }
  return out;
}

// ----------------------------------------------------------- soliton and delta

/// R(E) of V = -nu(nu-1) sech^2 x.
inline double soliton_R(double E, double nu) {
  if (!(E > 0.0)) throw InputError("soliton_R: E must be > 0");
  if (!(nu > 1.0)) throw InputError("soliton_R: nu must be > 1");
  const double s = std::sin(nu * std::numbers::pi);
  const double sh = std::sinh(std::numbers::pi * std::sqrt(E));
  // sin(n*pi) is ~1e-16 rather than 0 in floating point
  if (std::abs(nu - std::round(nu)) < 1e-14) return 0.0;
  return s * s / (s * s + sh * sh);
}

/// R(E) of V = -lambda delta(x), with R(0) = 1.
inline double delta_well_R(double E, double lambda) {
  if (E < 0.0) throw InputError("delta_well_R: E must be >= 0");
  if (!(lambda > 0.0)) throw InputError("delta_well_R: lambda must be > 0");
  return lambda * lambda / (lambda * lambda + 4.0 * E);
}

/// Reflection amplitude -lambda / (lambda + 2ik) of V = -lambda delta(x).
inline cdouble delta_well_r(double E, double lambda) {
  if (!(E > 0.0)) throw InputError("delta_well_r: E must be > 0");
  if (!(lambda > 0.0)) throw InputError("delta_well_r: lambda must be > 0");
  return -lambda / cdouble(lambda, 2.0 * std::sqrt(E));
}

// ---------------------------------------------------------- sech^2 check

/// max |psi'' + (E - V) psi| over xs for an analytic psi and psi''.
inline double schrodinger_residual(const std::function<double(double)>& psi,
                                   const std::function<double(double)>& psi2, double E,
                                   const std::function<double(double)>& V,
                                   std::span<const double> xs) {
  double worst = 0.0;
  for (double x : xs) worst = std::max(worst, std::abs(psi2(x) + (E - V(x)) * psi(x)));
  return worst;
}

struct Sech2Residuals {
  double ground = 0.0;      ///< psi_0 = sech x at E = -1
  double half_bound = 0.0;  ///< psi_* = tanh x at E = 0
};

/// Residuals of the sech x ground state and the tanh x half-bound state of
/// V = -2 sech^2 x.
inline Sech2Residuals sech2_groundstate_check(std::span<const double> xs) {
  for (double x : xs)
    if (x < -10.0 || x > 10.0) throw InputError("sech2_groundstate_check: samples must lie in [-10, 10]");
  auto sech = [](double x) { return 1.0 / std::cosh(x); };
  auto V = [&](double x) { return -2.0 * sech(x) * sech(x); };
  auto sech2nd = [&](double x) {
    const double s = sech(x), t = std::tanh(x);
    return s * t * t - s * s * s;
  };
  auto tanh = [](double x) { return std::tanh(x); };
  auto tanh2nd = [&](double x) { return -2.0 * sech(x) * sech(x) * std::tanh(x); };
  return {schrodinger_residual(sech, sech2nd, -1.0, V, xs),
          schrodinger_residual(tanh, tanh2nd, 0.0, V, xs)};
}

}  // namespace halfbound::analytic
