#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "scx/io.hpp"
#include "test_util.hpp"

using scx::testing::data_path;
using json = nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = scx::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "scx_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(cli_divergence, scalar_value) {
  const RunResult r = run({"divergence", "--rho", data_path("bern075.json"), "--sigma", data_path("bern050.json"),
                           "--alpha", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("kind"), "petz");
  EXPECT_NEAR(j.at("value").get<double>(), 0.10003137304700830, 1e-14);
}

TEST(cli_divergence, report_for_equal_and_disjoint_states) {
  const RunResult same = run({"divergence", "--rho", data_path("bern075.json"), "--sigma", data_path("bern075.json")});
  ASSERT_EQ(same.code, 0) << same.err;
  const json j = json::parse(same.out);
  EXPECT_EQ(j.at("relative_entropy").get<double>(), 0.0);
  EXPECT_EQ(j.at("trace_distance").get<double>(), 0.0);

  const RunResult disjoint = run({"divergence", "--rho", data_path("point0.json"), "--sigma", data_path("point1.json")});
  ASSERT_EQ(disjoint.code, 0) << disjoint.err;
  const json d = json::parse(disjoint.out);
  EXPECT_EQ(d.at("relative_entropy"), "inf");
  EXPECT_EQ(d.at("max_relative_entropy"), "inf");
  EXPECT_EQ(d.at("trace_distance").get<double>(), 1.0);
}

TEST(cli_divergence, mixed_inputs_and_errors) {
  const RunResult mixed = run({"divergence", "--rho", data_path("qubit_mixed.json"), "--sigma",
                               data_path("bern050.json"), "--alpha", "2", "--kind", "sandwiched"});
  ASSERT_EQ(mixed.code, 0) << mixed.err;
  EXPECT_GT(json::parse(mixed.out).at("value").get<double>(), 0.0);

  EXPECT_EQ(run({"divergence", "--rho", data_path("bern075.json"), "--sigma", data_path("bern050.json"), "--alpha",
                 "1"}).code,
            2);
  EXPECT_EQ(run({"divergence", "--rho", data_path("bern075.json"), "--sigma", data_path("bern050.json"), "--kind",
                 "umegaki", "--alpha", "0.5"}).code,
            2);
  EXPECT_EQ(run({"divergence", "--rho", data_path("missing.json"), "--sigma", data_path("bern050.json")}).code, 2);
  EXPECT_EQ(run({"divergence", "--rho", data_path("bern075.json")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(cli_hoeffding, reports_bound_and_critical_rate) {
  const RunResult r = run({"hoeffding", "--rho", data_path("bern075.json"), "--sigma", data_path("bern050.json"),
                           "--s", "0.1", "--r", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("hoeffding_bound").get<double>(), 0.015916312604877717, 1e-6);
  EXPECT_NEAR(j.at("critical_rate").get<double>(), 0.077570621947136369, 1e-6);
  EXPECT_NEAR(j.at("hoeffding_at_critical_rate").get<double>(), 0.077570621947136369 - 0.05, 1e-6);
}

TEST(cli_sc_exponent, fit_passes_and_rejects_single_point) {
  const RunResult r = run({"sc-exponent", "--p", data_path("bern075.json"), "--q", data_path("bern050.json"), "--r",
                           "0.4", "--n-min", "100", "--n-max", "2000", "--n-step", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,eps,log2_one_minus_eps\n", 0), 0u);
  EXPECT_NE(r.out.find("verdict=pass"), std::string::npos);

  const RunResult one = run({"sc-exponent", "--p", data_path("bern075.json"), "--q", data_path("bern050.json"), "--r",
                             "0.4", "--n-min", "100", "--n-max", "100"});
  EXPECT_EQ(one.code, 2);
}

TEST(cli_pa_sweep, csv_and_missing_file) {
  const RunResult r = run({"pa-sweep", "--state", data_path("bsc011.json"), "--rate", "0.8", "--n-min", "1",
                           "--n-max", "3", "--hashes", "5", "--exact-floor"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("n,R,floor_eps,log2_one_minus,bound_trace,bound_purified", 0), 0u);
  EXPECT_NE(r.out.find("regime=strong converse regime"), std::string::npos);
  EXPECT_EQ(r.out.find("violated"), std::string::npos);

  EXPECT_EQ(run({"pa-sweep", "--state", data_path("nope.json"), "--rate", "0.8", "--n-min", "1", "--n-max", "2"}).code,
            2);
}

TEST(cli_adversary, prop2_fixture) {
  const RunResult r = run({"adversary", "--config", data_path("prop2_bsc.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "pass");
  const json& last = j.at("records").back();
  EXPECT_EQ(last.at("n"), 10);
  EXPECT_DOUBLE_EQ(last.at("empirical_fraction").get<double>(), 0.9975);
  EXPECT_DOUBLE_EQ(last.at("mean_success").get<double>(), 0.9255159558966618);
}

TEST(cli_adversary, prop1_and_bad_configs) {
  const RunResult r = run({"adversary", "--config", data_path("prop1_decoupled.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out).at("verdict"), "pass");

  json cfg = scx::load_json_file(data_path("prop2_bsc.json"));
  cfg["trials"] = 0;
  cfg["state"] = data_path("bsc011.json");
  const auto zero = scratch("zero_trials.json");
  write_file(zero, cfg.dump());
  EXPECT_EQ(run({"adversary", "--config", zero.string()}).code, 2);

  const auto broken = scratch("broken.json");
  write_file(broken, "{\"experiment\": ");
  const RunResult b = run({"adversary", "--config", broken.string()});
  EXPECT_EQ(b.code, 2);
  EXPECT_NE(b.err.find("broken.json:1:"), std::string::npos);

  json big = {{"experiment", "prop1"}, {"deltas", {0.5}}, {"n", {20}}};
  const auto huge = scratch("huge.json");
  write_file(huge, big.dump());
  EXPECT_EQ(run({"adversary", "--config", huge.string()}).code, 3);
}

TEST(cli_output, file_output_and_determinism) {
  const std::vector<std::string> args{"pa-sweep", "--state", data_path("bsc011.json"), "--rate", "0.8", "--n-min",
                                      "1", "--n-max", "4", "--hashes", "8", "--seed", "99"};
  const RunResult a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);

  const auto path = scratch("sweep.csv");
  std::vector<std::string> to_file = args;
  to_file.insert(to_file.end(), {"--out", path.string()});
  const RunResult f = run(to_file);
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_TRUE(f.out.empty());
  std::ifstream in(path);
  std::stringstream contents;
  contents << in.rdbuf();
  EXPECT_EQ(contents.str(), a.out);
}

TEST(cli_verify, list_and_single_criterion) {
  const RunResult list = run({"verify", "--list"});
  ASSERT_EQ(list.code, 0);
  for (int id = 1; id <= 8; ++id) EXPECT_NE(list.out.find(std::to_string(id) + "  "), std::string::npos);

  const RunResult one = run({"verify", "--only", "2"});
  EXPECT_EQ(one.code, 0) << one.out << one.err;
  EXPECT_NE(one.err.find("1/1 criteria passed"), std::string::npos);
}
