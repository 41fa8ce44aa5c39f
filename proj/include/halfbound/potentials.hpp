#pragma once
/**
 * @file potentials.hpp
 * @brief Catalogue of one-dimensional attractive wells.
 *
 * Units are fixed to 2*mu = hbar^2 = 1 throughout, so an energy is the square
 * of a wavenumber and the effective strength of a well of depth V0 and
 * half-width a is q = a * sqrt(V0).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "halfbound/error.hpp"

namespace halfbound {

enum class Kind {
  SquareWell,
  ExponentialWell,
  SolitonWell,
  ParabolicWell,
  SquareTriangular,
  Sin2Multiwell,
  DeltaWell,
};

/// Truncation level, relative to the depth, for wells with infinite tails.
inline constexpr double kDefaultTailTol = 1e-12;

using Params = std::map<std::string, double, std::less<>>;

/// Integration window [left, right]; the potential is negligible outside.
struct Support {
  double left = 0.0;
  double right = 0.0;

  double width() const { return right - left; }
};

namespace detail {

struct KindInfo {
  Kind kind;
  std::string_view name;
  std::string_view camel;
};

inline constexpr std::array<KindInfo, 7> kKinds{{
    {Kind::SquareWell, "square_well", "SquareWell"},
    {Kind::ExponentialWell, "exponential_well", "ExponentialWell"},
    {Kind::SolitonWell, "soliton_well", "SolitonWell"},
    {Kind::ParabolicWell, "parabolic_well", "ParabolicWell"},
    {Kind::SquareTriangular, "square_triangular", "SquareTriangular"},
    {Kind::Sin2Multiwell, "sin2_multiwell", "Sin2Multiwell"},
    {Kind::DeltaWell, "delta_well", "DeltaWell"},
}};

}  // namespace detail

inline std::string_view kind_name(Kind k) {
  for (const auto& info : detail::kKinds)
    if (info.kind == k) return info.name;
  return "unknown";
}

/// Accepts both the snake_case and the CamelCase spelling.
inline Kind parse_kind(std::string_view s) {
  for (const auto& info : detail::kKinds)
    if (s == info.name || s == info.camel) return info.kind;
  throw InputError("unknown potential kind '" + std::string(s) + "'");
}

/// Name of the parameter that sets the strength of a family: "nu" for the
/// sech^2 well, "q" for every other kind.
inline std::string_view strength_name(Kind k) {
  switch (k) {
    case Kind::SolitonWell: return "nu";
    case Kind::DeltaWell: return "lambda";
    default: return "q";
  }
}

/**
 * An immutable, validated potential well.
 *
 * Every kind except DeltaWell can be evaluated pointwise. Finite-support
 * kinds include their edges in the support, so V(+-a) is the inner value;
 * integrators landing exactly on an edge then see a closed interval.
 */
class Potential {
 public:
  Kind kind() const { return kind_; }
  const Params& params() const { return params_; }
  Support support() const { return support_; }
  bool symmetric() const { return symmetric_; }
  bool finite_support() const {
    return kind_ != Kind::ExponentialWell && kind_ != Kind::SolitonWell;
  }
  double tail_tol() const { return tail_tol_; }

  /// Depth V0 (nu*(nu-1) for the soliton well, lambda for the delta well).
  double depth() const { return depth_; }
  /// Effective strength q = a*sqrt(V0); lambda for the delta well.
  double q() const { return q_; }
  /// Length used for default step sizes.
  double length_scale() const { return length_scale_; }

  double param(std::string_view key) const {
    auto it = params_.find(key);
    if (it == params_.end())
      throw InputError("potential has no parameter '" + std::string(key) + "'");
    return it->second;
  }

  double operator()(double x) const;

 private:
  friend Potential make_potential(Kind, Params, double);

  Kind kind_ = Kind::SquareWell;
  Params params_;
  Support support_;
  bool symmetric_ = true;
  double tail_tol_ = kDefaultTailTol;
  double depth_ = 0.0;
  double q_ = 0.0;
  double length_scale_ = 1.0;

  // cached parameters for evaluation
  double a_ = 1.0;
  double b_ = 1.0;
  double alpha_ = 0.0;
  double nu_ = 0.0;
  int lobes_ = 1;
};

namespace detail {

inline double require(const Params& p, std::string_view key) {
  auto it = p.find(key);
  if (it == p.end())
    throw InputError("missing parameter '" + std::string(key) + "'");
  if (!std::isfinite(it->second))
    throw InputError("parameter '" + std::string(key) + "' is not finite");
  return it->second;
}

inline void require_only(const Params& p, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : p) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InputError("unexpected parameter '" + key + "'");
  }
}

inline double positive(const Params& p, std::string_view key) {
  double v = require(p, key);
  if (!(v > 0.0)) throw InputError("parameter '" + std::string(key) + "' must be > 0");
  return v;
}

// Depth from either V0 or q (V0 = (q/a)^2). V0 = 0 is accepted as the
// free-particle sentinel.
inline double depth_from(Params& p, double a) {
  const bool has_v0 = p.contains("V0");
  const bool has_q = p.contains("q");
  if (has_v0 == has_q) throw InputError("give exactly one of 'V0' or 'q'");
  if (has_q) {
    double q = require(p, "q");
    if (q < 0.0) throw InputError("parameter 'q' must be >= 0");
    p.erase("q");
    p["V0"] = (q / a) * (q / a);
  }
  double v0 = require(p, "V0");
  if (v0 < 0.0) throw InputError("parameter 'V0' must be >= 0 (wells only)");
  return v0;
}

// sech^2(L) = tol
inline double soliton_extent(double tol) { return std::acosh(1.0 / std::sqrt(tol)); }

}  // namespace detail

/**
 * Builds a validated potential.
 *
 * Parameters per kind (V0 may be replaced by q):
 *   SquareWell        V0, a
 *   ExponentialWell   V0, a
 *   SolitonWell       nu (> 1)
 *   ParabolicWell     V0, a (left half-width), b (right half-width)
 *   SquareTriangular  V0, a, alpha in [0, 1]
 *   Sin2Multiwell     V0, a, m in {1, 2}
 *   DeltaWell         lambda
 */
inline Potential make_potential(Kind kind, Params params, double tail_tol = kDefaultTailTol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw InputError("tail_tol must lie in (0, 1)");
  Potential p;
  p.kind_ = kind;
  p.tail_tol_ = tail_tol;

  switch (kind) {
    case Kind::SquareWell:
    case Kind::ExponentialWell: {
      detail::require_only(params, {"V0", "q", "a"});
      p.a_ = detail::positive(params, "a");
      p.depth_ = detail::depth_from(params, p.a_);
      double half = p.a_;
      if (kind == Kind::ExponentialWell) half = 0.5 * p.a_ * std::log(1.0 / tail_tol);
      p.support_ = {-half, half};
      p.length_scale_ = p.a_;
      break;
    }
    case Kind::SolitonWell: {
      detail::require_only(params, {"nu"});
      p.nu_ = detail::require(params, "nu");
      if (!(p.nu_ > 1.0)) throw InputError("parameter 'nu' must be > 1");
      p.a_ = 1.0;
      p.depth_ = p.nu_ * (p.nu_ - 1.0);
      double half = detail::soliton_extent(tail_tol);
      p.support_ = {-half, half};
      p.length_scale_ = 1.0;
      break;
    }
    case Kind::ParabolicWell: {
      detail::require_only(params, {"V0", "q", "a", "b"});
      p.a_ = detail::positive(params, "a");
      p.b_ = detail::positive(params, "b");
      p.depth_ = detail::depth_from(params, p.a_);
      p.support_ = {-p.a_, p.b_};
      p.symmetric_ = p.a_ == p.b_;
      p.length_scale_ = std::min(p.a_, p.b_);
      break;
    }
    case Kind::SquareTriangular: {
      detail::require_only(params, {"V0", "q", "a", "alpha"});
      p.a_ = detail::positive(params, "a");
      p.alpha_ = detail::require(params, "alpha");
      if (p.alpha_ < 0.0 || p.alpha_ > 1.0) throw InputError("parameter 'alpha' must lie in [0, 1]");
      p.depth_ = detail::depth_from(params, p.a_);
      p.support_ = {-p.a_, p.a_};
      p.symmetric_ = p.alpha_ == 0.0;
      p.length_scale_ = p.a_;
      break;
    }
    case Kind::Sin2Multiwell: {
      detail::require_only(params, {"V0", "q", "a", "m"});
      p.a_ = detail::positive(params, "a");
      double m = detail::require(params, "m");
      if (m != 1.0 && m != 2.0) throw InputError("parameter 'm' must be 1 or 2");
      p.lobes_ = static_cast<int>(m);
      p.depth_ = detail::depth_from(params, p.a_);
      p.support_ = {-p.a_, p.a_};
      p.length_scale_ = p.a_;
      break;
    }
    case Kind::DeltaWell: {
      detail::require_only(params, {"lambda"});
      p.depth_ = detail::positive(params, "lambda");
      p.q_ = p.depth_;
      p.support_ = {0.0, 0.0};
      p.params_ = std::move(params);
      return p;
    }
  }
  p.q_ = p.a_ * std::sqrt(p.depth_);
  p.params_ = std::move(params);
  return p;
}

inline double Potential::operator()(double x) const {
  const double ax = std::abs(x);
  switch (kind_) {
    case Kind::SquareWell:
      return ax <= a_ ? -depth_ : 0.0;
    case Kind::ExponentialWell:
      return -depth_ * std::exp(-2.0 * ax / a_);
    case Kind::SolitonWell: {
      if (ax > 350.0) return 0.0;
      const double c = std::cosh(x);
      return -depth_ / (c * c);
    }
    case Kind::ParabolicWell:
      if (x < -a_ || x > b_) return 0.0;
      if (x < 0.0) return -depth_ * (1.0 - x * x / (a_ * a_));
      return -depth_ * (1.0 - x * x / (b_ * b_));
    case Kind::SquareTriangular:
      return ax <= a_ ? -depth_ * (1.0 + alpha_ * (x - a_) / (2.0 * a_)) : 0.0;
    case Kind::Sin2Multiwell: {
      if (ax > a_) return 0.0;
      const double s = std::sin(lobes_ * std::numbers::pi * x / a_);
      return -depth_ * s * s;
    }
    case Kind::DeltaWell:
      throw InputError("delta well is analytic-only and has no pointwise value");
  }
  return 0.0;
}

inline double evaluate(const Potential& p, double x) { return p(x); }

/// Support edges at a given truncation level. Finite-support kinds return
/// their exact edges; decaying kinds return the point where |V| = tol*V0.
inline Support support_bounds(const Potential& p, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw InputError("tail_tol must lie in (0, 1)");
  switch (p.kind()) {
    case Kind::ExponentialWell: {
      double half = 0.5 * p.param("a") * std::log(1.0 / tail_tol);
      return {-half, half};
    }
    case Kind::SolitonWell: {
      double half = detail::soliton_extent(tail_tol);
      return {-half, half};
    }
    default:
      return p.support();
  }
}

/**
 * A one-parameter family of wells: all parameters fixed except the strength
 * (q, or nu for the soliton well). Critical-strength searches and q-scans
 * walk along a family.
 */
struct Family {
  Kind kind = Kind::SquareWell;
  Params fixed;
  double tail_tol = kDefaultTailTol;

  std::string_view strength() const { return strength_name(kind); }

  Potential at(double strength_value) const {
    Params p = fixed;
    p[std::string(strength())] = strength_value;
    return make_potential(kind, std::move(p), tail_tol);
  }

  /// Lower edge of the physically meaningful strength range.
  double strength_floor() const { return kind == Kind::SolitonWell ? 1.0 : 0.0; }
};

}  // namespace halfbound
