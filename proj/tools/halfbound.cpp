// halfbound: reflection of 1D potential wells near zero energy.
//
//   halfbound reflect      --potential JSON --energy E
//   halfbound scan-q       --potential FAMILY --q-lo A --q-hi B [--energy E] [--points N]
//   halfbound scan-e       --potential JSON --e-lo A --e-hi B [--points N] [--log]
//   halfbound find-qc      --potential FAMILY (--bracket A B | --q-max Q)
//   halfbound hbs-profile  --potential FAMILY --bracket A B
//   halfbound table1
//   halfbound specfun-check
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 no root.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "halfbound/halfbound.hpp"

namespace hb = halfbound;
using hb::json;

namespace {

struct CommonOptions {
  std::string potential;
  std::string method = "transfer";
  double step = 0.0;
  int slices = hb::GridConfig{}.slices;
  bool no_extrapolate = false;
  double tail_tol = hb::kDefaultTailTol;
  std::string out;
  std::string format = "csv";

  hb::GridConfig grid() const {
    if (step < 0.0) throw hb::InputError("--step must be >= 0");
    if (slices < 2) throw hb::InputError("--slices must be >= 2");
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw hb::InputError("--tail-tol must lie in (0, 1)");
    hb::GridConfig g;
    g.step = step;
    g.slices = slices;
    g.extrapolate = !no_extrapolate;
    g.tail_tol = tail_tol;
    return g;
  }
};

void add_common(CLI::App* sub, CommonOptions& o, bool needs_potential) {
  auto* pot = sub->add_option("--potential", o.potential, "Potential descriptor: inline JSON or a file path");
  if (needs_potential) pot->required();
  sub->add_option("--method", o.method, "Numerical route")
      ->check(CLI::IsMember({"wronskian", "transfer"}))
      ->capture_default_str();
  sub->add_option("--step", o.step, "RK4 step (0 = automatic)")->capture_default_str();
  sub->add_option("--slices", o.slices, "Transfer-matrix slices")->capture_default_str();
  sub->add_flag("--no-extrapolate", o.no_extrapolate, "Use the raw midpoint product without Richardson combination");
  sub->add_option("--tail-tol", o.tail_tol, "Tail truncation |V|/V0 for decaying wells")->capture_default_str();
  sub->add_option("--out", o.out, "Output file (default: stdout)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw hb::InputError("cannot write '" + path + "'");
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json analytic_reference(const hb::Potential& p, double E) {
  namespace an = hb::analytic;
  switch (p.kind()) {
    case hb::Kind::SquareWell:
      if (p.depth() > 0.0) return an::square_well_R(E, p.depth(), p.param("a"));
      return 0.0;
    case hb::Kind::ExponentialWell:
      if (p.q() > 30.0) return nullptr;
      return std::norm(an::exp_well_r_exact(E, p.depth(), p.param("a")));
    case hb::Kind::SolitonWell:
      return an::soliton_R(E, p.param("nu"));
    default:
      return nullptr;
  }
}

// ----------------------------------------------------------------- commands

void cmd_reflect(const CommonOptions& o, double E) {
  const hb::GridConfig g = o.grid();
  const hb::Potential p = hb::potential_from_json(hb::load_descriptor(o.potential), g.tail_tol);
  if (!(E > 0.0)) throw hb::InputError("--energy must be > 0");

  json result;
  if (p.kind() == hb::Kind::DeltaWell) {
    const double lambda = p.param("lambda");
    const hb::cdouble r = hb::analytic::delta_well_r(E, lambda);
    result = {{"r", {{"re", r.real()}, {"im", r.imag()}}},
              {"R", std::norm(r)},
              {"T", 1.0 - std::norm(r)},
              {"unitarity_residual", 0.0},
              {"method", "analytic"},
              {"transmission_derived", true}};
  } else {
    result = hb::to_json(hb::scatter(p, E, hb::parse_method(o.method), g));
    result["R_analytic"] = analytic_reference(p, E);
  }
  json doc{{"potential", hb::to_json(p)}, {"E", E}, {"grid", hb::to_json(g)}};
  doc.update(result);
  emit(dump(doc), o.out);
}

void write_scan(const hb::ScanTable& t, const CommonOptions& o) {
  if (o.format == "json") {
    emit(dump(hb::to_json(t)), o.out);
    return;
  }
  std::ostringstream csv;
  hb::write_csv(t, csv);
  emit(csv.str(), o.out);
  if (!o.out.empty()) emit(dump(hb::minima_json(t)), o.out + ".minima.json");
}

void cmd_scan_q(const CommonOptions& o, double E, double q_lo, double q_hi, int points) {
  const hb::GridConfig g = o.grid();
  const hb::Family f = hb::family_from_json(hb::load_descriptor(o.potential), g.tail_tol);
  write_scan(hb::scan_q(f, E, q_lo, q_hi, points, hb::parse_method(o.method), g), o);
}

void cmd_scan_e(const CommonOptions& o, double e_lo, double e_hi, int points, bool log_spacing) {
  const hb::GridConfig g = o.grid();
  const hb::Potential p = hb::potential_from_json(hb::load_descriptor(o.potential), g.tail_tol);
  write_scan(hb::scan_e(p, e_lo, e_hi, points, log_spacing, hb::parse_method(o.method), g), o);
}

void cmd_find_qc(const CommonOptions& o, const std::vector<double>& bracket, double q_max) {
  const hb::GridConfig g = o.grid();
  const hb::Family f = hb::family_from_json(hb::load_descriptor(o.potential), g.tail_tol);
  std::vector<hb::HbsResult> found;
  if (!bracket.empty()) {
    found.push_back(hb::find_critical_q(f, {bracket[0], bracket[1]}, g));
  } else {
    found = hb::critical_spectrum(f, q_max, g);
    if (found.empty()) throw hb::NoRootError("no critical point in range");
  }
  json list = json::array();
  for (const auto& h : found) list.push_back(hb::to_json(h, false));
  json doc{{"potential", hb::to_json(f)}, {"grid", hb::to_json(g)}, {"critical", list}};
  if (o.format == "csv") {
    std::ostringstream csv;
    csv << "# potential: " << hb::to_json(f).dump() << '\n';
    csv << "# grid: " << hb::to_json(g).dump() << '\n';
    csv << f.strength() << "_c,node_count,parity,right_residual\n";
    for (const auto& h : found)
      csv << hb::sci(h.q_c) << ',' << h.node_count << ',' << hb::parity_name(h.parity) << ','
          << hb::sci(h.right_residual) << '\n';
    emit(csv.str(), o.out);
  } else {
    emit(dump(doc), o.out);
  }
}

void cmd_hbs_profile(const CommonOptions& o, const std::vector<double>& bracket) {
  const hb::GridConfig g = o.grid();
  const hb::Family f = hb::family_from_json(hb::load_descriptor(o.potential), g.tail_tol);
  const hb::HbsResult h = hb::find_critical_q(f, {bracket[0], bracket[1]}, g);
  json summary{{"potential", hb::to_json(f)}, {"grid", hb::to_json(g)}};
  if (o.format == "json") {
    summary.update(hb::to_json(h, true));
    emit(dump(summary), o.out);
    return;
  }
  summary.update(hb::to_json(h, false));
  std::ostringstream csv;
  csv << "# potential: " << hb::to_json(f).dump() << '\n';
  csv << "# grid: " << hb::to_json(g).dump() << '\n';
  csv << "# " << f.strength() << "_c: " << hb::sci(h.q_c) << '\n';
  csv << "# node_count: " << h.node_count << '\n';
  csv << "# parity: " << hb::parity_name(h.parity) << '\n';
  csv << "x,psi,V\n";
  for (const auto& pt : h.profile) csv << hb::sci(pt.x) << ',' << hb::sci(pt.psi) << ',' << hb::sci(pt.V) << '\n';
  emit(csv.str(), o.out);
  if (!o.out.empty()) emit(dump(summary), o.out + ".json");
}

void cmd_table1(const CommonOptions& o) {
  const hb::ThresholdTable t = hb::threshold_table(o.grid());
  hb::write_table_text(t, std::cout);
  if (o.out.empty()) return;
  if (o.format == "json") {
    emit(dump(hb::to_json(t)), o.out);
  } else {
    std::ostringstream csv;
    hb::write_table_csv(t, csv);
    emit(csv.str(), o.out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reflection of 1D potential wells near zero energy and their half-bound states"};
  app.require_subcommand(1);

  CommonOptions o;
  double energy = 0.0;
  double q_lo = 0.0, q_hi = 0.0, e_lo = 0.0, e_hi = 0.0, q_max = 0.0;
  int points = 201;
  bool log_spacing = false;
  std::vector<double> bracket;

  auto* reflect = app.add_subcommand("reflect", "R, T and r at one energy");
  add_common(reflect, o, true);
  reflect->add_option("--energy", energy, "Energy E > 0")->required();

  auto* scan_q = app.add_subcommand("scan-q", "R versus strength at fixed energy");
  add_common(scan_q, o, true);
  double scan_energy = 0.01;
  scan_q->add_option("--energy", scan_energy, "Fixed energy")->capture_default_str();
  scan_q->add_option("--q-lo", q_lo, "Lowest strength")->required();
  scan_q->add_option("--q-hi", q_hi, "Highest strength")->required();
  scan_q->add_option("--points", points, "Grid points")->capture_default_str();

  auto* scan_e = app.add_subcommand("scan-e", "R versus energy for one well");
  add_common(scan_e, o, true);
  scan_e->add_option("--e-lo", e_lo, "Lowest energy")->required();
  scan_e->add_option("--e-hi", e_hi, "Highest energy")->required();
  scan_e->add_option("--points", points, "Grid points")->capture_default_str();
  scan_e->add_flag("--log", log_spacing, "Logarithmic energy grid");

  auto* find_qc = app.add_subcommand("find-qc", "Critical strengths of a family");
  add_common(find_qc, o, true);
  auto* fq_bracket = find_qc->add_option("--bracket", bracket, "Strength bracket LO HI")->expected(2);
  auto* fq_max = find_qc->add_option("--q-max", q_max, "Find every critical strength up to this value");
  fq_bracket->excludes(fq_max);

  auto* hbs = app.add_subcommand("hbs-profile", "Half-bound-state profile at the critical strength in a bracket");
  add_common(hbs, o, true);
  hbs->add_option("--bracket", bracket, "Strength bracket LO HI")->expected(2)->required();

  auto* table1 = app.add_subcommand("table1", "Threshold table of the exponential well near q = 2.4048");
  add_common(table1, o, false);

  auto* specfun = app.add_subcommand("specfun-check", "Residuals of special-function identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*reflect) cmd_reflect(o, energy);
    else if (*scan_q) cmd_scan_q(o, scan_energy, q_lo, q_hi, points);
    else if (*scan_e) cmd_scan_e(o, e_lo, e_hi, points, log_spacing);
    else if (*find_qc) {
      if (fq_bracket->count() == 0 && fq_max->count() == 0) throw hb::InputError("find-qc needs --bracket or --q-max");
      cmd_find_qc(o, bracket, q_max);
    }
    else if (*hbs) cmd_hbs_profile(o, bracket);
    else if (*table1) cmd_table1(o);
    else if (*specfun) std::cout << dump(hb::specfun_check());
  } catch (const hb::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const hb::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const hb::NoRootError& e) {
    std::cerr << "no root: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
