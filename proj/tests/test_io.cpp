#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ruelle/cli.hpp"
#include "ruelle/serialize.hpp"
#include "support.hpp"

using namespace ruelle;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("ruelle_io_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) { return io::read_text_file(p.string()); }

}  // namespace

TEST_CASE("json round trips") {
  std::mt19937_64 rng(1);
  const ShiftSpace s(3);
  const auto f = oracle::random_complex(s, 2, rng);
  const auto f2 = io::function_from_json(io::parse_json(io::dump(io::to_json(f)), "f"));
  CHECK(f2.depth() == 2);
  CHECK(sup_distance(f, f2) == 0.0);

  const auto r = oracle::random_positive(s, 1, rng);
  CHECK(sup_distance(io::real_function_from_json(io::to_json(r)), r) == 0.0);
  CHECK(io::real_function_from_json(io::Json::array({1.0, 2.0}), 2).depth() == 1);
  CHECK(io::real_function_from_json(io::Json::array({1.0, 2.0, 3.0, 4.0}), 2).depth() == 2);
  CHECK_THROWS_AS(io::real_function_from_json(io::Json::array({1.0, 2.0, 3.0}), 2), ConfigError);
  CHECK_THROWS_AS(io::potential_from_json(io::Json::array({1.0, -2.0}), 2), ConfigError);

  const auto w = oracle::random_positive(s, 2, rng);
  const auto m = CylinderMeasure::from_weights(s, 2, {w.values().begin(), w.values().end()});
  const auto m2 = io::measure_from_json(io::parse_json(io::dump(io::to_json(m)), "m"));
  CHECK(total_variation(m, m2) == 0.0);
  CHECK_THROWS_AS(io::measure_from_json(io::Json{{"k", 2}, {"depth", 1}, {"masses", {0.5, 0.6}}}), ConfigError);

  const GeneratorTerm t{f, 2, conj(f)};
  const auto t2 = io::term_from_json(io::to_json(t));
  CHECK(t2.level == 2);
  CHECK(sup_distance(t2.g, conj(f)) == 0.0);
  CHECK_THROWS_AS(io::term_from_json(io::Json{{"f", 1}}), ConfigError);
  CHECK_THROWS_AS(io::parse_json("{", "broken"), ConfigError);

  // plain numbers stand in for [re, 0]
  const auto plain = io::function_from_json(io::parse_json(R"({"k": 2, "depth": 1, "values": [1.5, [0, 2]]})", "x"));
  CHECK(plain[0] == Complex(1.5, 0.0));
  CHECK(plain[1] == Complex(0.0, 2.0));
}

TEST_CASE("number formatting") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, std::log(2.0)}) {
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.0) == "0");
}

TEST_CASE("csv") {
  const io::CsvTable t{{"a", "b"}, {{"1", "2"}, {"x", "0.5"}}};
  const auto text = io::write_csv(t);
  CHECK(text == "a,b\n1,2\nx,0.5\n");
  const auto back = io::parse_csv(text);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(io::parse_csv("a,b\r\n1,2\r\n").rows.at(0).at(1) == "2");
  CHECK_THROWS_AS(io::parse_csv("a,b\n1\n"), ConfigError);
}

TEST_CASE("beta grids") {
  CHECK(cli::parse_beta_grid("0:2:3") == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(cli::parse_beta_grid("1,2,5") == std::vector<double>{1.0, 2.0, 5.0});
  CHECK(cli::parse_beta_grid("0.5:9:1") == std::vector<double>{0.5});
  CHECK_THROWS_AS(cli::parse_beta_grid("0:1:0"), ConfigError);
  CHECK_THROWS_AS(cli::parse_beta_grid("0:1"), ConfigError);
  CHECK_THROWS_AS(cli::parse_beta_grid("a,b"), ConfigError);
  CHECK_THROWS_AS(cli::parse_beta_grid("0:1:2.5"), ConfigError);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == cli::kConfigError);
  CHECK(run({"nonsense"}).code == cli::kConfigError);
  CHECK(run({"spectrum"}).code == cli::kConfigError);  // no H
  CHECK(run({"spectrum", "--H", "1,-2"}).code == cli::kConfigError);
  CHECK(run({"spectrum", "--H", "1,2", "--k", "3"}).code == cli::kConfigError);
  CHECK(run({"spectrum", "--H", "1,2", "--config", "/nonexistent.json"}).code == cli::kConfigError);
  CHECK(run({"ff", "--gamma", "2"}).code == cli::kConfigError);
  CHECK(run({"kms-verify", "--H", "1,2", "--beta-grid", "1,2"}).code == cli::kConfigError);
  CHECK(run({"spectrum", "--H", "1,2", "--tol", "-1"}).code == cli::kConfigError);

  // weight H^{-beta} = (1, 2) at beta = -1
  const auto ok = run({"spectrum", "--H", "1,2", "--depth", "2", "--beta", "-1"});
  CHECK(ok.code == cli::kSuccess);
  const auto j = io::parse_json(ok.out, "spectrum");
  CHECK(j.at("lambda").get<double>() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(run({"spectrum", "--H", "1,2", "--depth", "2", "--beta=-1"}).code == cli::kSuccess);
  CHECK(j.at("violations").empty());

  // an impossible tolerance is a tolerance failure, reported by name
  const auto strict = run({"ff", "--beta-grid", "0", "--tol", "1e-30"});
  CHECK(strict.code == cli::kToleranceFailure);
  CHECK(strict.err.find("tolerance failure") != std::string::npos);
  CHECK_FALSE(io::parse_json(strict.out.substr(strict.out.find('{')), "ff").at("violations").empty());
}

TEST_CASE("cli kms-verify example") {
  const auto r = run({"kms-verify", "--k", "2", "--H", "1,2", "--beta", "1", "--seed", "7"});
  REQUIRE(r.code == cli::kSuccess);
  const auto j = io::parse_json(r.out, "kms");
  CHECK(j.at("max_residual").get<double>() <= 1e-8);
  CHECK(j.at("failures").empty());
  CHECK(j.at("battery_size").get<std::size_t>() > 0);
  CHECK(j.at("generator") == "mt19937_64");
  CHECK(j.at("seed") == 7);
  CHECK(j.at("passed") == true);
  CHECK(j.at("uniqueness").back().at("distance").get<double>() < 1e-6);

  // config file route; an unreachable tolerance must fail
  const auto dir = scratch("kms");
  write_file(dir / "cfg.json", R"({"k": 2, "depth": 3, "H": [1, 2], "beta": 1, "tol": 1e-30})");
  const auto bad = run({"kms-verify", "--config", (dir / "cfg.json").string()});
  CHECK(bad.code == cli::kToleranceFailure);
}

TEST_CASE("cli pressure-curve with H = 1") {
  const auto r = run({"pressure-curve", "--H", "1,1", "--beta-grid", "-1:1:5", "--depth", "2"});
  REQUIRE(r.code == cli::kSuccess);
  const auto t = io::parse_csv(r.out);
  CHECK(t.header.at(1) == "pressure");
  REQUIRE(t.rows.size() == 5);
  for (const auto& row : t.rows) CHECK(std::abs(std::stod(row[1]) - std::log(2.0)) <= 1e-12);
}

TEST_CASE("cli ff plateau and outputs") {
  const auto r = run({"ff", "--gamma", "3", "--beta-grid", "1,2,5"});
  REQUIRE(r.code == cli::kSuccess);
  CHECK(r.out.rfind("beta,pressure\n1,0\n2,0\n5,0\n", 0) == 0);

  const auto dir = scratch("ff");
  REQUIRE(run({"ff", "--out", dir.string(), "--beta-grid", "0:1:5"}).code == cli::kSuccess);
  const auto summary = io::read_json_file((dir / "ff_summary.json").string());
  for (const char* key : {"zeta_gamma", "zeta_gamma_minus_1", "u", "nu_masses", "mass_deficit"}) CHECK(summary.contains(key));
  CHECK(summary.at("nu_masses").size() == 20);
  const auto csv = io::parse_csv(slurp(dir / "ff_pressure.csv"));
  CHECK(std::abs(std::stod(csv.rows.at(0).at(1)) - std::log(2.0)) <= 1e-10);
}

TEST_CASE("cli determinism") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(run({"kms-verify", "--H", "1,2,0.5,3", "--depth", "4", "--beta", "0.5", "--seed", "42", "--out", dir.string()})
                .code == cli::kSuccess);
    REQUIRE(run({"ff", "--out", dir.string()}).code == cli::kSuccess);
  }
  for (const char* name : {"kms_verify.json", "ff_pressure.csv", "ff_summary.json"}) {
    CHECK(slurp(a / name) == slurp(b / name));
  }
  // a different seed changes the random relation functions but not the verdict
  const auto c = run({"kms-verify", "--H", "1,2,0.5,3", "--depth", "4", "--beta", "0.5", "--seed", "43"});
  CHECK(c.code == cli::kSuccess);
  CHECK(c.out != slurp(a / "kms_verify.json"));
}

TEST_CASE("cli export") {
  const auto dir = scratch("export");
  REQUIRE(run({"pressure-curve", "--H", "1,2", "--beta-grid", "0:1:3", "--out", dir.string()}).code == cli::kSuccess);
  const auto out = dir / "converted";
  REQUIRE(run({"export", (dir / "pressure_curve.csv").string(), "--to", "json", "--out", out.string()}).code ==
          cli::kSuccess);
  const auto j = io::read_json_file((out / "pressure_curve.json").string());
  REQUIRE(j.size() == 3);
  CHECK(j.at(0).at("pressure").get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  // and back: JSON to CSV reproduces the original bytes
  const auto back = dir / "back";
  REQUIRE(run({"export", (out / "pressure_curve.json").string(), "--to", "csv", "--out", back.string()}).code ==
          cli::kSuccess);
  CHECK(slurp(back / "pressure_curve.csv") == slurp(dir / "pressure_curve.csv"));

  write_file(dir / "bad.json", R"({"k": 2, "depth": 1, "masses": [0.9, 0.9]})");
  CHECK(run({"export", (dir / "bad.json").string()}).code == cli::kConfigError);
  CHECK(run({"export", (dir / "pressure_curve.csv").string(), "--to", "xml"}).code == cli::kConfigError);
}
