#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HALFBOUND_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "halfbound_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string quoted(const std::string& descriptor) { return "'" + descriptor + "'"; }

}  // namespace

TEST_CASE("reflect reproduces reference reflectivities", "[cli][reflect]") {
  auto r = run("reflect --potential " + quoted(R"({"kind":"exponential_well","params":{"a":1,"q":2.40}})") +
               " --energy 0.1");
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK_THAT(j["R"].get<double>(), WithinRel(0.1695e-1, 0.05));
  CHECK(j["unitarity_residual"].get<double>() <= 1e-8);
  CHECK(j.contains("grid"));
  CHECK(j["potential"]["kind"] == "exponential_well");

  r = run("reflect --potential " + quoted(R"({"kind":"soliton_well","params":{"nu":2}})") + " --energy 0.5");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["R"].get<double>() < 1e-8);

  r = run("reflect --method wronskian --potential " + quoted(R"({"kind":"square_well","params":{"a":1,"q":1}})") +
          " --energy 1");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK_THAT(j["R"].get<double>(), WithinAbs(0.011725, 1e-6));
  CHECK(j["method"] == "wronskian");

  r = run("reflect --potential " + quoted(R"({"kind":"delta_well","params":{"lambda":2}})") + " --energy 1");
  REQUIRE(r.code == 0);
  CHECK_THAT(json::parse(r.out)["R"].get<double>(), WithinAbs(0.5, 1e-15));
}

TEST_CASE("descriptor files are accepted", "[cli][reflect]") {
  const fs::path p = scratch("well.json");
  std::ofstream(p) << R"({"kind": "SquareWell", "params": {"V0": 1, "a": 1}})";
  const auto r = run("reflect --potential " + p.string() + " --energy 1");
  REQUIRE(r.code == 0);
  CHECK_THAT(json::parse(r.out)["R"].get<double>(), WithinAbs(0.011725, 1e-6));
}

TEST_CASE("exit codes", "[cli][errors]") {
  CHECK(run("reflect --potential " + quoted(R"({"kind":"barrier"})") + " --energy 1").code == 2);
  CHECK(run("reflect --potential " + quoted(R"({"kind":"square_well","params":{"a":1,"q":1}})") + " --energy -1").code == 2);
  CHECK(run("reflect --energy 1").code == 2);
  CHECK(run("reflect --potential /no/such/file.json --energy 1").code == 2);
  CHECK(run("reflect --potential " + quoted("{not json") + " --energy 1").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("reflect --method wronskian --step 2 --potential " +
            quoted(R"({"kind":"exponential_well","params":{"a":1,"q":30}})") + " --energy 1e-3")
            .code == 3);
  CHECK(run("find-qc --potential " + quoted(R"({"kind":"square_well","params":{"a":1}})") + " --bracket 0.2 1").code == 4);
  CHECK(run("hbs-profile --potential " + quoted(R"({"kind":"square_well","params":{"a":1}})") + " --bracket 0.2 1").code == 4);
  CHECK(run("find-qc --potential " + quoted(R"({"kind":"square_well","params":{"a":1,"q":2}})") + " --q-max 3").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("scan-q writes deterministic CSV and a minima sidecar", "[cli][scan]") {
  const fs::path a = scratch("scan_a.csv"), b = scratch("scan_b.csv");
  const std::string args = "scan-q --potential " + quoted(R"({"kind":"square_well","params":{"a":1}})") +
                           " --energy 0.01 --q-lo 1 --q-hi 5 --points 201 --out ";
  REQUIRE(run(args + a.string()).code == 0);
  REQUIRE(run(args + b.string()).code == 0);
  const std::string csv = slurp(a);
  CHECK(csv == slurp(b));
  CHECK(csv.starts_with("# potential: "));
  CHECK(csv.find("\nq,R\n") != std::string::npos);
  CHECK(csv.find("# grid: ") != std::string::npos);

  const json minima = json::parse(slurp(a.string() + ".minima.json"));
  REQUIRE(minima.size() == 3);
  CHECK_THAT(minima[0]["q"].get<double>(), WithinAbs(1.5707963, 0.02));
  CHECK_THAT(minima[1]["q"].get<double>(), WithinAbs(3.1415927, 0.02));
  CHECK_THAT(minima[2]["q"].get<double>(), WithinAbs(4.7123890, 0.02));
}

TEST_CASE("scan-q JSON output", "[cli][scan]") {
  const auto r = run("scan-q --format json --potential " + quoted(R"({"kind":"exponential_well","params":{"a":1}})") +
                     " --q-lo 2 --q-hi 6 --points 101");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["points"].size() == 101);
  CHECK(j["minima"].size() == 3);
  CHECK(j["fixed_value"].get<double>() == 0.01);
}

TEST_CASE("scan-e on a log grid", "[cli][scan]") {
  const auto r = run("scan-e --log --potential " +
                     quoted(R"({"kind":"exponential_well","params":{"a":1,"q":2.4048255}})") +
                     " --e-lo 1e-5 --e-hi 1e-1 --points 5");
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::vector<double> R;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.starts_with("#")) continue;
    if (!header) {
      CHECK(line == "E,R");
      header = true;
      continue;
    }
    R.push_back(std::stod(line.substr(line.find(',') + 1)));
  }
  REQUIRE(R.size() == 5);
  for (std::size_t i = 1; i < R.size(); ++i) CHECK(R[i] > R[i - 1]);
}

TEST_CASE("find-qc over a range", "[cli][critical]") {
  const auto r = run("find-qc --format json --q-max 6 --potential " +
                     quoted(R"({"kind":"exponential_well","params":{"a":1}})"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["critical"].size() == 3);
  CHECK_THAT(j["critical"][0]["q_c"].get<double>(), WithinAbs(2.404826, 1e-5));
  CHECK(j["critical"][1]["parity"] == "even");
  CHECK(j["critical"][2]["node_count"] == 3);
}

TEST_CASE("hbs-profile writes a profile and a summary", "[cli][critical]") {
  const fs::path out = scratch("hbs.csv");
  REQUIRE(run("hbs-profile --potential " + quoted(R"({"kind":"square_well","params":{"a":1}})") +
              " --bracket 1 2 --out " + out.string())
              .code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("\nx,psi,V\n") != std::string::npos);
  const json summary = json::parse(slurp(out.string() + ".json"));
  CHECK_THAT(summary["q_c"].get<double>(), WithinAbs(1.5707963268, 1e-8));
  CHECK(summary["node_count"] == 1);
  CHECK(summary["parity"] == "odd");

  const auto r = run("hbs-profile --format json --potential " +
                     quoted(R"({"kind":"parabolic_well","params":{"a":1,"b":1}})") + " --bracket 2 2.5");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK_THAT(j["q_c"].get<double>(), WithinAbs(2.263, 1e-3));
  CHECK(j["profile"].size() > 100);
  CHECK(j["profile_columns"][1] == "psi");
}

TEST_CASE("table1 prints the grid and writes CSV", "[cli][table]") {
  const fs::path out = scratch("table1.csv");
  const auto r = run("table1 --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("2.4048255") != std::string::npos);
  const std::string csv = slurp(out);
  int rows = 0;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.starts_with("#") && !line.starts_with("q,")) ++rows;
  CHECK(rows == 30);
}

TEST_CASE("specfun-check emits JSON", "[cli][specfun]") {
  const auto r = run("specfun-check");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.contains("bessel_zeros"));
  CHECK(j.contains("gamma_recurrence"));
}
