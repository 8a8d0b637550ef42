#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <vector>

using namespace volterra::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "volterra");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("alpha specifications") {
  CHECK(parse_alpha_spec("0.5") == std::vector<double>{0.5});
  CHECK(parse_alpha_spec("1,2,3") == std::vector<double>{1, 2, 3});
  const auto lin = parse_alpha_spec("0:1:5");
  REQUIRE(lin.size() == 5);
  CHECK(lin[2] == doctest::Approx(0.5));
  CHECK(lin.back() == 1.0);
  const auto lg = parse_alpha_spec("0.01:100:5:log");
  REQUIRE(lg.size() == 5);
  CHECK(lg.front() == 0.01);
  CHECK(lg[2] == doctest::Approx(1.0));
  CHECK(lg.back() == 100.0);
  CHECK(std::isinf(parse_alpha_spec("inf").front()));
  CHECK_THROWS_AS(parse_alpha_spec(""), UsageError);
  CHECK_THROWS_AS(parse_alpha_spec("abc"), UsageError);
  CHECK_THROWS_AS(parse_alpha_spec("1:2"), UsageError);
  CHECK_THROWS_AS(parse_alpha_spec("1:2:0"), UsageError);
  CHECK_THROWS_AS(parse_alpha_spec("1:2:3:lin"), UsageError);
  CHECK_THROWS_AS(parse_alpha_spec("0:2:3:log"), UsageError);
}

TEST_CASE("hzeros at alpha = 1") {
  const auto r = invoke({"hzeros", "--alpha", "1", "--count", "2"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  CHECK(header == "command,alpha,index,zero_h");
  CHECK(first.rfind("hzeros,1,0,0.6168502", 0) == 0);
  CHECK(second.rfind("hzeros,1,1,5.551652", 0) == 0);
}

TEST_CASE("norm as JSON") {
  const auto r = invoke({"norm", "--alpha", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["alpha"].get<double>() == 1.0);
  CHECK(j[0]["norm22"].get<double>() == doctest::Approx(0.6366197723675814).epsilon(1e-14));
  CHECK(j[0]["lower"].get<double>() <= j[0]["norm22"].get<double>());
  CHECK(j[0]["norm22"].get<double>() <= j[0]["upper"].get<double>());
  CHECK(j[0]["within"].get<bool>());
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK(invoke({"norm"}).code == 2);
  CHECK(invoke({"norm", "--alpha", "-1"}).code == 2);
  CHECK(invoke({"norm", "--alpha", "1", "--p", "0.5"}).code == 2);
  CHECK(invoke({"norm", "--alpha", "1", "--format", "xml"}).code == 2);
  CHECK(invoke({"hzeros", "--alpha", "1", "--count", "0"}).code == 2);
  CHECK(invoke({"spectrum", "--alpha", "0.5", "--count", "9"}).code == 2);
  CHECK(invoke({"norm", "--alpha", "inf"}).code == 2);
  CHECK(invoke({"sandwich", "--alpha", "0"}).code == 2);
  CHECK(invoke({"verify", "--grid-n", "4"}).code == 2);
  CHECK(invoke({"norm", "--alpha", "1", "--jobs", "0"}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("failures to produce output exit with status 1") {
  const auto r = invoke({"hzeros", "--alpha", "1", "--out", "/nonexistent-dir/out.csv"});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("output is identical across runs and worker counts") {
  const std::vector<std::string> base = {"norm", "--alpha", "0.1:4:7", "--grid-n", "256"};
  auto one = base, many = base;
  one.insert(one.end(), {"--jobs", "1"});
  many.insert(many.end(), {"--jobs", "4"});
  const auto a = invoke(one), b = invoke(one), c = invoke(many);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
}

TEST_CASE("every command emits a header and rows") {
  const std::vector<std::vector<std::string>> commands = {
      {"norm", "--alpha", "0.5", "--grid-n", "128"},
      {"sandwich", "--alpha", "0.5,1,2", "--p", "3", "--q", "4"},
      {"spectrum", "--alpha", "0.5,2", "--grid-n", "256", "--count", "3"},
      {"gram", "--alpha", "1", "--grid-n", "256", "--count", "2"},
      {"kernel", "--alpha", "0.5", "--n", "3", "--count", "3"},
      {"hzeros", "--alpha", "inf", "--count", "2"},
      {"iterates", "--alpha", "2", "--n", "3", "--grid-n", "128"},
  };
  for (const auto& args : commands) {
    const auto r = invoke(args);
    INFO(args.front());
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("command,", 0) == 0);
    int rows = 0;
    for (std::string line; std::getline(in, line);) {
      CHECK(line.rfind(args.front() + ",", 0) == 0);
      ++rows;
    }
    CHECK(rows >= 1);
  }
}

TEST_CASE("JSON records round-trip to their configuration") {
  // Every record carries the inputs that produced it; re-running a record's
  // configuration reproduces the record exactly.
  const auto sweep = invoke({"gram", "--alpha", "0.5,1,3", "--grid-n", "128", "--count", "2",
                             "--format", "json"});
  REQUIRE(sweep.code == 0);
  const auto records = nlohmann::json::parse(sweep.out);
  REQUIRE(records.size() == 6);
  for (const auto& rec : records) {
    std::ostringstream alpha;
    alpha.precision(17);
    alpha << rec["alpha"].get<double>();
    const auto again = invoke({rec["command"].get<std::string>(), "--alpha", alpha.str(),
                               "--grid-n", std::to_string(rec["grid_n"].get<int>()), "--count",
                               "2", "--format", "json"});
    REQUIRE(again.code == 0);
    const auto rerun = nlohmann::json::parse(again.out);
    CHECK(rerun[rec["index"].get<int>()] == rec);
  }
}

TEST_CASE("non-finite values become null in JSON") {
  const auto r = invoke({"spectrum", "--alpha", "2", "--grid-n", "64", "--count", "1",
                         "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j[0]["eigen_residual"].is_null());
  CHECK(j[0]["quasi_nilpotent"].get<bool>());
}
