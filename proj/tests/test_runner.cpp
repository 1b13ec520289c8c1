#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kinkchain/errors.hpp"
#include "kinkchain/runner.hpp"

using namespace kinkchain;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("kinkchain_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ExperimentConfig base_config() {
  ExperimentConfig c;
  c.model = Model::XzAf;
  c.n_values = {5, 7};
  c.epsilons = {0.03};
  c.pipelines = {Pipeline::Crossval};
  return c;
}

}  // namespace

TEST_CASE("configuration errors name the field") {
  auto expect_field = [](ExperimentConfig c, const std::string& field) {
    try {
      c.validate();
      FAIL("expected a ConfigError for " << field);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).rfind(field + ":", 0) == 0);
    }
  };
  auto c = base_config();
  CHECK_NOTHROW(c.validate());
  c.n_values = {6};
  expect_field(c, "n");
  c = base_config();
  c.n_values = {};
  expect_field(c, "n");
  c = base_config();
  c.epsilons = {0.5};
  expect_field(c, "epsilon");
  c = base_config();
  c.epsilons = {0.01, 0.01};
  expect_field(c, "epsilon");
  c = base_config();
  c.format = "xml";
  expect_field(c, "format");
  c = base_config();
  c.workers = 0;
  expect_field(c, "workers");
  c = base_config();
  c.model = Model::XxzFerro;
  c.pipelines = {Pipeline::Ground};
  expect_field(c, "pipeline");
  c = base_config();
  c.pipelines = {Pipeline::Extrapolate};
  expect_field(c, "n");
  c = base_config();
  c.policy.w_max = 0;
  expect_field(c, "policy");
  CHECK_THROWS_AS((void)pipeline_from_string("everything"), ConfigError);
  CHECK(pipeline_from_string("crossval") == Pipeline::Crossval);
}

TEST_CASE("pipeline dependencies") {
  auto c = base_config();
  CHECK(c.resolved_pipelines() ==
        std::set<Pipeline>{Pipeline::Ground, Pipeline::Interface, Pipeline::Ed, Pipeline::Crossval});
  c.model = Model::XxzFerro;
  c.pipelines = {Pipeline::Interface};
  CHECK(c.resolved_pipelines() == std::set<Pipeline>{Pipeline::Interface});
  c.pipelines = {Pipeline::Extrapolate};
  CHECK(c.resolved_pipelines() == std::set<Pipeline>{Pipeline::Ed, Pipeline::Extrapolate});
}

TEST_CASE("cell documents") {
  CHECK(cell_name(Model::XxzAf, 7, 0.05) == "xxz-af_N7_eps0.05");
  for (auto m : {Model::XzAf, Model::XxzAf, Model::XxzFerro}) {
    auto c = base_config();
    c.model = m;
    const auto doc = run_cell(c, 7, 0.04);
    INFO(to_string(m));
    CHECK(doc["meta"]["status"] == "ok");
    CHECK(validate_result_document(doc).empty());
    CHECK(doc["crossval"]["max_coeff_abs_diff"].get<double>() < 1e-8);
    CHECK(doc.contains("ed_dispersion"));
    CHECK(doc.contains("dispersion"));
  }
  auto broken = run_cell(base_config(), 7, 0.04);
  broken["interface"]["e_s"].erase(0);
  broken["meta"].erase("status");
  CHECK(validate_result_document(broken).size() >= 2);
}

TEST_CASE("zero coupling gives a flat band at 2") {
  const auto doc = run_cell(base_config(), 5, 0.0);
  CHECK(doc["meta"]["status"] == "ok");
  for (const auto& v : doc["dispersion"]["D"]) CHECK(v.get<double>() == doctest::Approx(2.0));
  for (const auto& v : doc["ed_dispersion"]["D"]) CHECK(v.get<double>() == doctest::Approx(2.0));
}

TEST_CASE("JSON round trip") {
  TruncationPolicy pol;
  const auto g = solve_ground(ModelSpec::uniform(Model::XxzAf, 7, 0.05), pol);
  const auto g2 = ground_from_json(to_json(g));
  CHECK(g2.g == g.g);
  CHECK(g2.e_plus == g.e_plus);
  CHECK(to_json(g2) == to_json(g));

  const auto seam = compute_h(g, pol);
  const auto sol = solve_interface(Model::XxzAf, g, seam, ModelSpec::seamed(Model::XxzAf, 7, 0.05), pol);
  const auto sol2 = interface_from_json(to_json(sol));
  CHECK(sol2.e_map == sol.e_map);
  CHECK(sol2.e_s == sol.e_s);
  CHECK(to_json(seam_from_json(to_json(seam))) == to_json(seam));

  const auto d = from_interface(sol, g.e_plus, g.e_minus);
  const auto d2 = dispersion_from_json(to_json(d));
  for (int s = -6; s <= 7; ++s) CHECK(d2.coeff(s) == d.coeff(s));

  CHECK(policy_from_json(to_json(pol)).w_max == pol.w_max);
  CHECK(site_set_from_json(to_json(SiteSet::of(7, {2, 5})), 7) == SiteSet::of(7, {2, 5}));
  CHECK(to_json(SiteSet::of(7, {5, 2})) == Json::array({2, 5}));
}

TEST_CASE("runs are deterministic and write every file") {
  auto c = base_config();
  c.n_values = {5, 7, 9};
  c.epsilons = {0.02, 0.04};
  c.pipelines = {Pipeline::Crossval, Pipeline::Extrapolate};
  c.format = "csv";
  c.workers = 3;
  c.out = scratch_dir("a");
  const auto a = run(c);
  CHECK(a.exit_code == kExitOk);
  c.out = scratch_dir("b");
  c.workers = 1;
  const auto b = run(c);
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    CHECK(a.files[i].filename() == b.files[i].filename());
    CHECK(slurp(a.files[i]) == slurp(b.files[i]));
  }
  CHECK(fs::exists(c.out / "summary.json"));
  CHECK(fs::exists(c.out / "xz-af_N7_eps0.02_dispersion.csv"));
  const auto summary = Json::parse(slurp(c.out / "summary.json"));
  CHECK(summary["cells"].size() == 6);
  CHECK(summary.contains("extrapolation"));
  const auto csv = slurp(c.out / "xz-af_N5_eps0.02_dispersion.csv");
  CHECK(csv.rfind("j,k,D_kt,D_ed\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
  fs::remove_all(scratch_dir("a"));
  fs::remove_all(scratch_dir("b"));
}

TEST_CASE("failed cells give a partial exit code") {
  auto c = base_config();
  c.n_values = {7};
  c.policy.max_iter = 2;
  c.out = scratch_dir("partial");
  const auto r = run(c);
  CHECK(r.exit_code == kExitPartial);
  const auto doc = Json::parse(slurp(c.out / "xz-af_N7_eps0.03.json"));
  CHECK(doc["meta"]["status"] == "diverged");
  CHECK(doc["meta"].contains("error"));
  fs::remove_all(c.out);
}
