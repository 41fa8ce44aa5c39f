#pragma once
/**
 * @file specfun.hpp
 * @brief Gamma of complex argument, Bessel J of complex order, Neumann Y0/Y1
 * and zeros of J0/J1.
 *
 * Bessel functions are evaluated from their ascending power series, with the
 * sums carried in extended precision to absorb cancellation at z of order 10
 * and beyond.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "halfbound/error.hpp"

namespace halfbound::specfun {

using cdouble = std::complex<double>;

inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
inline constexpr double kMaxOrder = 50.0;
inline constexpr int kMaxSeriesTerms = 200;

namespace detail {

#if defined(__SIZEOF_FLOAT128__)
using wide = __float128;
#else
using wide = long double;
#endif

// Lanczos g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos{
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7,
};

inline bool is_pole(cdouble z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// log Gamma for Re z >= 0.5 (principal branch up to 2*pi*i, which exp removes).
inline cdouble lgamma_right(cdouble z) {
  z -= 1.0;
  cdouble x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cdouble t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace detail

/// Gamma(z) for complex z; reflection formula below Re z = 1/2.
inline cdouble gamma_complex(cdouble z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("gamma: non-finite argument");
  if (detail::is_pole(z)) throw DomainError("gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * z) * std::exp(detail::lgamma_right(1.0 - z)));
  }
  return std::exp(detail::lgamma_right(z));
}

/// 1/Gamma(z); entire, so poles of Gamma map to exact zeros.
inline cdouble rgamma_complex(cdouble z) {
  if (detail::is_pole(z)) return 0.0;
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return std::sin(pi * z) * std::exp(detail::lgamma_right(1.0 - z)) / pi;
  }
  return std::exp(-detail::lgamma_right(z));
}

/// Order of a Bessel function; real orders have im == 0.
class ComplexOrder {
 public:
  ComplexOrder(double re) : ComplexOrder(cdouble(re, 0.0)) {}  // NOLINT(implicit)
  ComplexOrder(cdouble nu) : nu_(nu) {                         // NOLINT(implicit)
    if (!std::isfinite(nu.real()) || !std::isfinite(nu.imag()))
      throw DomainError("Bessel order must be finite");
    if (std::abs(nu) > kMaxOrder) throw DomainError("Bessel order exceeds the series limit");
  }

  cdouble value() const { return nu_; }
  double re() const { return nu_.real(); }
  double im() const { return nu_.imag(); }

 private:
  cdouble nu_;
};

/// J_nu(z) for z > 0 from the ascending series. The leading term is formed
/// in double (its error is relative to the whole sum); the terms are summed
/// in extended precision because they cancel for z beyond a few units.
inline cdouble bessel_j(ComplexOrder order, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("bessel_j: z must be positive");
  const cdouble nu = order.value();

  // J_{-n} = (-1)^n J_n avoids 0 * infinity in the leading term.
  if (nu.imag() == 0.0 && nu.real() < 0.0 && nu.real() == std::round(nu.real())) {
    const auto n = static_cast<std::int64_t>(-nu.real());
    const cdouble j = bessel_j(ComplexOrder(-nu.real()), z);
    return (n % 2 == 0) ? j : -j;
  }

  using detail::wide;
  const double half = 0.5 * z;
  const wide x = -static_cast<wide>(half) * static_cast<wide>(half);
  const cdouble lead = std::exp(nu * std::log(half)) * rgamma_complex(nu + 1.0);
  wide t_re = lead.real(), t_im = lead.imag();
  wide s_re = t_re, s_im = t_im;
  const wide nu_re = nu.real(), nu_im = nu.imag();
  for (int m = 1; m < kMaxSeriesTerms; ++m) {
    // term *= x / (m (nu + m))
    const wide d_re = m * (nu_re + m), d_im = m * nu_im;
    const wide scale = x / (d_re * d_re + d_im * d_im);
    const wide f_re = scale * d_re, f_im = -scale * d_im;
    const wide n_re = t_re * f_re - t_im * f_im;
    t_im = t_re * f_im + t_im * f_re;
    t_re = n_re;
    s_re += t_re;
    s_im += t_im;
    const double term = std::hypot(static_cast<double>(t_re), static_cast<double>(t_im));
    const double sum = std::hypot(static_cast<double>(s_re), static_cast<double>(s_im));
    if ((m > half && term <= 1e-17 * sum) || term == 0.0)
      return {static_cast<double>(s_re), static_cast<double>(s_im)};
  }
  throw NumericalError("bessel_j: series did not converge (argument too large)");
}

inline cdouble bessel_j_prime(ComplexOrder order, double z) {
  const cdouble nu = order.value();
  return 0.5 * (bessel_j(ComplexOrder(nu - 1.0), z) - bessel_j(ComplexOrder(nu + 1.0), z));
}

namespace detail {

struct WideJ01 {
  wide j0 = 0;
  wide j1 = 0;
};

// J0 and J1 summed in extended precision, plus the correction series of
// Y0 and Y1 which share the same powers of z.
struct WideSeries {
  wide j0 = 0, j1 = 0;
  wide s0 = 0;  // sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k / (k!)^2
  wide s1 = 0;  // sum_{k>=0} (-1)^k [psi(k+1)+psi(k+2)] (z/2)^{2k+1} / (k!(k+1)!)
};

inline WideSeries wide_series(double z) {
  const wide half = static_cast<wide>(z) / 2;
  const wide x = half * half;
  const wide gamma_e = static_cast<wide>(kEulerGamma);

  WideSeries out;
  wide t0 = 1;     // (z^2/4)^k / (k!)^2 with sign (-1)^k
  wide t1 = half;  // (z/2)^{2k+1} / (k!(k+1)!) with sign (-1)^k
  wide harmonic = 0;
  out.j0 = t0;
  out.j1 = t1;
  out.s1 = t1 * (-2 * gamma_e + 1);  // psi(1) + psi(2) = -2 gamma + 1
  wide peak = 1;
  for (int k = 1; k < 400; ++k) {
    t0 *= -x / (static_cast<wide>(k) * k);
    t1 *= -x / (static_cast<wide>(k) * (k + 1));
    harmonic += static_cast<wide>(1) / k;
    const wide h_next = harmonic + static_cast<wide>(1) / (k + 1);
    out.j0 += t0;
    out.j1 += t1;
    out.s0 -= harmonic * t0;  // (-1)^{k+1} H_k |t0|
    out.s1 += t1 * (-2 * gamma_e + harmonic + h_next);
    const wide mag = t0 < 0 ? -t0 : t0;
    if (mag > peak) peak = mag;
    if (k > z && mag * harmonic < peak * static_cast<wide>(1e-32)) break;
  }
  return out;
}

// Miller backward recurrence, normalized by J0 + 2 sum J_{2k} = 1. Used for
// large arguments where the ascending series cancels catastrophically.
inline std::array<double, 2> miller_j01(double z) {
  const int start = 2 * (static_cast<int>(z) / 2 + 30);
  double above = 0.0, current = 1e-300, norm = 0.0;
  double j0 = 0.0, j1 = 0.0;
  for (int k = start; k >= 1; --k) {
    const double below = 2.0 * k / z * current - above;
    above = current;
    current = below;  // J_{k-1}
    if (k - 1 == 1) j1 = current;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * current;
    if (std::abs(current) > 1e250) {
      current *= 1e-250;
      above *= 1e-250;
      norm *= 1e-250;
      j1 *= 1e-250;
    }
  }
  j0 = current;
  norm += j0;
  return {j0 / norm, j1 / norm};
}

inline double j_integer(int order, double z) {
  if (z <= 40.0) {
    const WideSeries s = wide_series(z);
    return static_cast<double>(order == 0 ? s.j0 : s.j1);
  }
  const auto j = miller_j01(z);
  return j[order == 0 ? 0 : 1];
}

}  // namespace detail

/// Neumann function Y0 or Y1 for z > 0.
inline double bessel_y01(int order, double z) {
  if (order != 0 && order != 1) throw DomainError("bessel_y01: order must be 0 or 1");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("bessel_y01: z must be positive");
  using detail::wide;
  const detail::WideSeries s = detail::wide_series(z);
  const wide log_half = static_cast<wide>(std::log(0.5 * z));
  const wide two_over_pi = static_cast<wide>(2.0 / std::numbers::pi);
  if (order == 0) {
    const wide g = static_cast<wide>(kEulerGamma);
    return static_cast<double>(two_over_pi * ((log_half + g) * s.j0 + s.s0));
  }
  const wide inv_pi = static_cast<wide>(1.0 / std::numbers::pi);
  return static_cast<double>(two_over_pi * log_half * s.j1 - two_over_pi / static_cast<wide>(z) -
                             inv_pi * s.s1);
}

inline double bessel_y0(double z) { return bessel_y01(0, z); }
inline double bessel_y1(double z) { return bessel_y01(1, z); }

/// n-th positive zero of J0 (order 0) or J1 (order 1).
inline double bessel_zero(int order, int n) {
  if (order != 0 && order != 1) throw DomainError("bessel_zero: order must be 0 or 1");
  if (n < 1) throw DomainError("bessel_zero: n must be >= 1");

  // McMahon's asymptotic expansion
  const double mu = 4.0 * order * order;
  const double beta = (n + 0.5 * order - 0.25) * std::numbers::pi;
  const double eb = 8.0 * beta;
  const double guess = beta - (mu - 1.0) / eb - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * eb * eb * eb);

  auto f = [order](double z) { return detail::j_integer(order, z); };
  double lo = guess - 0.4, hi = guess + 0.4;
  double flo = f(lo), fhi = f(hi);
  if (flo * fhi > 0.0) throw NumericalError("bessel_zero: McMahon bracket has no sign change");

  std::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 4e-16 * std::abs(a); };
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  const double root = std::abs(f(a)) < std::abs(f(b)) ? a : b;
  if (std::abs(f(root)) > 1e-12) throw NumericalError("bessel_zero: polish failed");
  return root;
}

}  // namespace halfbound::specfun
