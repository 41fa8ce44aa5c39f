#pragma once
/**
 * @file scan.hpp
 * @brief R-vs-q and R-vs-E scans, local-minimum annotation, the
 * exponential-well threshold table, and special-function self checks.
 */

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "halfbound/analytic.hpp"
#include "halfbound/io.hpp"
#include "halfbound/parallel.hpp"
#include "halfbound/scatter.hpp"
#include "halfbound/specfun.hpp"

namespace halfbound {

enum class Axis { Q, E };

struct ScanPoint {
  double abscissa = 0;
  double R = 0;
};

struct Minimum {
  double abscissa = 0;  ///< refined location
  double R = 0;
  std::size_t grid_index = 0;
};

struct ScanTable {
  Axis axis = Axis::Q;
  double fixed_value = 0;  ///< E for q-scans; q (or nu) for E-scans
  std::vector<ScanPoint> points;
  json descriptor;
  Method method = Method::TransferMatrix;
  GridConfig grid;
  std::vector<Minimum> minima;
};

/// Grid points lower than both neighbours, each refined by a bracketed
/// Brent (golden-section + parabolic) search over its two adjacent cells.
inline std::vector<Minimum> find_minima(const std::vector<ScanPoint>& pts,
                                        const std::function<double(double)>& refine) {
  std::vector<Minimum> out;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (!(pts[i].R < pts[i - 1].R && pts[i].R < pts[i + 1].R)) continue;
    Minimum m{pts[i].abscissa, pts[i].R, i};
    if (refine) {
      std::uintmax_t iters = 100;
      auto [x, fx] = boost::math::tools::brent_find_minima(refine, pts[i - 1].abscissa, pts[i + 1].abscissa, 40, iters);
      if (fx < m.R) {
        m.abscissa = x;
        m.R = fx;
      }
    }
    out.push_back(m);
  }
  return out;
}

inline ScanTable scan_q(const Family& family, double E, double q_lo, double q_hi, int n_points, Method method,
                        const GridConfig& cfg = {}) {
  if (!(E > 0.0)) throw InputError("scan-q: energy must be > 0");
  if (!(q_lo < q_hi)) throw InputError("scan-q: need q_lo < q_hi");
  if (n_points < 2) throw InputError("scan-q: need at least 2 points");
  if (!(q_lo > family.strength_floor())) throw InputError("scan-q: q_lo below the physical range");

  auto R_at = [&](double q) { return scatter(family.at(q), E, method, cfg).R; };
  const double dq = (q_hi - q_lo) / (n_points - 1);
  ScanTable t;
  t.axis = Axis::Q;
  t.fixed_value = E;
  t.descriptor = to_json(family);
  t.method = method;
  t.grid = cfg;
  t.points = parallel_map(static_cast<std::size_t>(n_points), [&](std::size_t i) {
    const double q = i + 1 == static_cast<std::size_t>(n_points) ? q_hi : q_lo + dq * static_cast<double>(i);
    return ScanPoint{q, R_at(q)};
  });
  t.minima = find_minima(t.points, R_at);
  return t;
}

inline ScanTable scan_e(const Potential& p, double e_lo, double e_hi, int n_points, bool log_spacing, Method method,
                        const GridConfig& cfg = {}) {
  if (!(e_lo > 0.0) || !(e_lo < e_hi)) throw InputError("scan-e: need 0 < E_lo < E_hi");
  if (n_points < 2) throw InputError("scan-e: need at least 2 points");
  auto energy = [&](std::size_t i) {
    if (i + 1 == static_cast<std::size_t>(n_points)) return e_hi;
    const double f = static_cast<double>(i) / (n_points - 1);
    return log_spacing ? e_lo * std::pow(e_hi / e_lo, f) : e_lo + (e_hi - e_lo) * f;
  };
  ScanTable t;
  t.axis = Axis::E;
  t.fixed_value = p.kind() == Kind::SolitonWell ? p.param("nu") : p.q();
  t.descriptor = to_json(p);
  t.method = method;
  t.grid = cfg;
  t.points = parallel_map(static_cast<std::size_t>(n_points), [&](std::size_t i) {
    const double E = energy(i);
    return ScanPoint{E, scatter(p, E, method, cfg).R};
  });
  t.minima = find_minima(t.points, {});
  return t;
}

inline std::string axis_name(Axis a) { return a == Axis::Q ? "q" : "E"; }

/// CSV: '#' metadata lines, a header row, then one row per point.
inline void write_csv(const ScanTable& t, std::ostream& os) {
  os << "# potential: " << t.descriptor.dump() << '\n';
  os << "# method: " << method_name(t.method) << '\n';
  os << "# grid: " << to_json(t.grid).dump() << '\n';
  os << "# fixed_" << (t.axis == Axis::Q ? "E" : "strength") << ": " << sci(t.fixed_value) << '\n';
  os << axis_name(t.axis) << ",R\n";
  for (const auto& p : t.points) os << sci(p.abscissa) << ',' << sci(p.R) << '\n';
}

inline json minima_json(const ScanTable& t) {
  json m = json::array();
  for (const auto& mn : t.minima) m.push_back({{axis_name(t.axis), mn.abscissa}, {"R", mn.R}, {"grid_index", mn.grid_index}});
  return m;
}

inline json to_json(const ScanTable& t) {
  json pts = json::array();
  for (const auto& p : t.points) pts.push_back({p.abscissa, p.R});
  return {{"axis", axis_name(t.axis)},
          {"fixed_value", t.fixed_value},
          {"potential", t.descriptor},
          {"method", method_name(t.method)},
          {"grid", to_json(t.grid)},
          {"columns", {axis_name(t.axis), "R"}},
          {"points", std::move(pts)},
          {"minima", minima_json(t)}};
}

// ------------------------------------------------------------ threshold table

/// R(E) of the exponential well (a = 1) as q approaches the first zero of J0.
struct ThresholdTable {
  static constexpr std::array<double, 6> kStrengths{2.40, 2.404, 2.4048, 2.40482, 2.404825, 2.4048255};
  static constexpr std::array<double, 5> kEnergies{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

  std::array<std::array<double, 5>, 6> analytic{};  ///< closed-form Bessel amplitude
  std::array<std::array<double, 5>, 6> transfer{};  ///< transfer-matrix route
  GridConfig grid;
};

inline ThresholdTable threshold_table(const GridConfig& cfg = {}) {
  ThresholdTable t;
  t.grid = cfg;
  const auto cells = parallel_map(30, [&](std::size_t idx) {
    const std::size_t i = idx / 5, j = idx % 5;
    const double q = ThresholdTable::kStrengths[i], E = ThresholdTable::kEnergies[j];
    const double exact = std::norm(analytic::exp_well_r_exact(E, q * q, 1.0));
    const Potential p = make_potential(Kind::ExponentialWell, {{"a", 1.0}, {"q", q}}, cfg.tail_tol);
    return std::array<double, 2>{exact, scatter(p, E, Method::TransferMatrix, cfg).R};
  });
  for (std::size_t idx = 0; idx < 30; ++idx) {
    t.analytic[idx / 5][idx % 5] = cells[idx][0];
    t.transfer[idx / 5][idx % 5] = cells[idx][1];
  }
  return t;
}

inline void write_table_text(const ThresholdTable& t, std::ostream& os) {
  char buf[64];
  os << "Exponential well V = -q^2 exp(-2|x|), R(E) from the exact Bessel amplitude\n";
  os << "       q  ";
  for (double E : ThresholdTable::kEnergies) {
    std::snprintf(buf, sizeof buf, "  R(%7.0e)", E);
    os << buf;
  }
  os << '\n';
  for (std::size_t i = 0; i < 6; ++i) {
    std::snprintf(buf, sizeof buf, "%9.7f ", ThresholdTable::kStrengths[i]);
    os << buf;
    for (double R : t.analytic[i]) {
      std::snprintf(buf, sizeof buf, "  %11.4e", R);
      os << buf;
    }
    os << '\n';
  }
}

inline void write_table_csv(const ThresholdTable& t, std::ostream& os) {
  os << "# potential: " << json{{"kind", "exponential_well"}, {"params", {{"a", 1.0}}}, {"strength", "q"}}.dump() << '\n';
  os << "# grid: " << to_json(t.grid).dump() << '\n';
  os << "q,E,R_analytic,R_transfer\n";
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      os << sci(ThresholdTable::kStrengths[i]) << ',' << sci(ThresholdTable::kEnergies[j]) << ','
         << sci(t.analytic[i][j]) << ',' << sci(t.transfer[i][j]) << '\n';
}

inline json to_json(const ThresholdTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      rows.push_back({{"q", ThresholdTable::kStrengths[i]},
                      {"E", ThresholdTable::kEnergies[j]},
                      {"R_analytic", t.analytic[i][j]},
                      {"R_transfer", t.transfer[i][j]}});
  return {{"potential", {{"kind", "exponential_well"}, {"params", {{"a", 1.0}}}}}, {"grid", to_json(t.grid)}, {"rows", rows}};
}

// --------------------------------------------------------- special functions

/// Residuals of classical identities; all should be near machine precision.
inline json specfun_check() {
  using namespace specfun;
  json out = json::object();

  json wr = json::array();
  for (double z : {0.5, 2.4, 10.0}) {
    const double j0 = std::real(bessel_j(0.0, z)), j1 = std::real(bessel_j(1.0, z));
    const double lhs = j1 * bessel_y0(z) - j0 * bessel_y1(z);
    wr.push_back({{"z", z}, {"residual", std::abs(lhs - 2.0 / (std::numbers::pi * z))}});
  }
  out["bessel_cross_wronskian"] = wr;

  json rec = json::array();
  for (auto [nu, z] : {std::pair{0.5, 1.0}, {2.3, 4.0}, {4.1, 12.0}}) {
    const cdouble lhs = bessel_j(nu - 1.0, z) + bessel_j(nu + 1.0, z);
    rec.push_back({{"nu", nu}, {"z", z}, {"residual", std::abs(lhs - 2.0 * nu / z * bessel_j(nu, z))}});
  }
  out["bessel_recurrence"] = rec;

  json gam = json::array();
  for (cdouble z : {cdouble(0.3, 0.4), cdouble(-2.5, 1.0), cdouble(7.0, -3.0)})
    gam.push_back({{"z", {z.real(), z.imag()}},
                   {"residual", std::abs(gamma_complex(z + 1.0) - z * gamma_complex(z)) / std::abs(gamma_complex(z + 1.0))}});
  out["gamma_recurrence"] = gam;

  json zeros = json::array();
  for (int order : {0, 1})
    for (int n : {1, 2, 3}) {
      const double z = bessel_zero(order, n);
      zeros.push_back({{"order", order}, {"n", n}, {"zero", z}, {"J", std::real(bessel_j(static_cast<double>(order), z))}});
    }
  out["bessel_zeros"] = zeros;
  return out;
}

}  // namespace halfbound
