#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "stalab/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = stalab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string value_of(const std::string& kv, const std::string& key) {
  const auto pos = kv.find(key + "=");
  if (pos == std::string::npos) return {};
  const auto end = kv.find('\n', pos);
  return kv.substr(pos + key.size() + 1, end - pos - key.size() - 1);
}

}  // namespace

TEST_CASE("phase of a preset") {
  const auto r = run({"phase", "--preset", "mz", "--n", "1", "--T", "0.1", "--g", "9.8"});
  CHECK(r.code == stalab::cli::kOk);
  CHECK(std::stod(value_of(r.out, "total")) == doctest::Approx(1578780.0).epsilon(1e-14));
  CHECK(value_of(r.out, "closed") == "1");
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == stalab::cli::kUsageError);
  CHECK(run({"phase", "--preset", "nope"}).code == stalab::cli::kUsageError);
  CHECK(run({"phase", "--preset", "cab", "--T", "0.1", "--nb", "4", "--tau-b", "0.003"}).code ==
        stalab::cli::kUsageError);
  const auto r = run({"phase", "--file", "/nonexistent.json"});
  CHECK(r.code == stalab::cli::kUsageError);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("open sequence exit code") {
  const auto path = std::filesystem::temp_directory_path() / "stalab_cli_open.json";
  {
    std::ofstream f(path);
    f << R"({"params": {"m": 1.443e-25, "hbar": 1.054571817e-34, "k": [0, 0, 8.055e6], "n": 1}, "T": 0.01,
             "arms": {"a": {"kicks": [{"t": -0.005, "dv": [0, 0, 0.0117]}]}, "b": {}}})";
  }
  CHECK(run({"phase", "--file", path.string()}).code == stalab::cli::kNotInterfering);
  std::filesystem::remove(path);
}

TEST_CASE("catalog export re-parses to the same breakdown") {
  const auto path = std::filesystem::temp_directory_path() / "stalab_cli_cab.json";
  const std::vector<std::string> source{"--preset", "cab", "--n", "2", "--T", "0.08", "--nb", "4", "--g", "9.8"};
  auto args = std::vector<std::string>{"catalog"};
  args.insert(args.end(), source.begin(), source.end());
  args.insert(args.end(), {"--out", path.string()});
  REQUIRE(run(args).code == stalab::cli::kOk);
  auto direct = std::vector<std::string>{"phase"};
  direct.insert(direct.end(), source.begin(), source.end());
  const auto a = run(direct);
  const auto b = run({"phase", "--file", path.string()});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  std::filesystem::remove(path);
}

TEST_CASE("response and area output") {
  const auto r = run({"response", "--preset", "butterfly", "--T", "0.05", "--wmin", "1", "--wmax", "100",
                      "--points", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("omega,", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
  CHECK(run({"area", "--preset", "mz", "--T", "0.1"}).code == 0);
  CHECK(run({"trajectory", "--preset", "triangle", "--T", "0.01", "--samples", "11"}).code == 0);
}

TEST_CASE("validate") {
  auto r = run({"validate", "--filter", "golden/mz"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict=PASS") != std::string::npos);
  r = run({"validate", "--filter", "golden/laser", "--inject", "laser-sign-flip"});
  CHECK(r.code != 0);
  CHECK(r.out.find("verdict=FAIL") != std::string::npos);
  r = run({"validate", "--list"});
  CHECK(r.out.find("sagnac/mz-oracle") != std::string::npos);
}
