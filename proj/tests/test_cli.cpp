// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "dirzeta");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dirzeta::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("value and witten") {
  auto r = call({"value", "--preset", "so5"});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"value\":\"3/8\"}\n");
  r = call({"value", "--preset", "g2", "--format", "text"});
  CHECK(r.out == "5/12\n");
  r = call({"witten", "--algebra", "g2", "--what", "value0"});
  CHECK(r.out == "{\"value\":\"5/12\"}\n");
  r = call({"witten", "--algebra", "so5", "--what", "derivative0", "--digits", "20"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["numeric"].get<std::string>().rfind("3.2554386054345", 0) == 0);
  CHECK(doc["derivative"].size() == 3);
}

TEST_CASE("derivative output") {
  const auto r = call({"derivative", "--preset", "so5", "--blocks", "--numeric"});
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.contains("blocks"));
  CHECK(doc["blocks"].contains("z4"));
  CHECK(doc.contains("numeric"));
}

TEST_CASE("qcoeff and barnes") {
  auto r = call({"qcoeff", "--preset", "so5", "--j", "1", "--k", "0,0"});
  CHECK(r.code == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["q0"] == "1");
  CHECK(doc["q1"].dump() == R"([{"atom":"gamma","coeff":"1"}])");

  r = call({"barnes", "--R", "1,0", "--m", "1", "--d", "1,1", "--w", "1,2"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).contains("value"));
  r = call({"barnes", "--R", "0", "--m", "0", "--d", "1", "--derivative"});
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["derivative"].dump() == R"([{"atom":"zp:0","coeff":"1"}])");
  CHECK(call({"barnes", "--R", "0", "--m", "0", "--d", "0"}).code == 1);
  CHECK(call({"barnes", "--R", "x", "--m", "0", "--d", "1"}).code == 2);
  CHECK(call({"qcoeff", "--preset", "so5", "--j", "3", "--k", "0,0"}).code == 1);
}

TEST_CASE("continuation and residue") {
  const auto spec = temp_file("dirzeta_cli_zeta.json", R"({"P":1,"Q":1,"c":[["1"]],"d":["1"],"mu":["0"]})");
  auto r = call({"continue", "--spec", spec.string(), "--s", "3/2", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(2.612375348685488).epsilon(1e-10));
  r = call({"continue", "--spec", spec.string(), "--s", "1.0001"});
  CHECK(r.code == 1);
  CHECK(r.err.find("singular set") != std::string::npos);
  r = call({"continue", "--spec", spec.string(), "--s", "abc"});
  CHECK(r.code == 2);
  r = call({"residue", "--spec", spec.string(), "--at", "1"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["residue"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(call({"residue", "--spec", spec.string(), "--at", "1/0"}).code == 2);
  std::filesystem::remove(spec);
}

TEST_CASE("rg2") {
  auto r = call({"rg2", "--n", "200", "--mode", "exact"});
  CHECK(r.out == "{\"n\":200,\"r\":\"1545\"}\n");
  CHECK(call({"rg2", "--n", "0"}).code == 2);
}

TEST_CASE("output file and determinism") {
  const auto path = std::filesystem::temp_directory_path() / "dirzeta_cli_out.json";
  auto r = call({"derivative", "--preset", "g2", "--numeric", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == call({"derivative", "--preset", "g2", "--numeric"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  CHECK(call({"--help"}).code == 0);
  CHECK(call({}).code == 2);
  CHECK(call({"value"}).code == 2);
  CHECK(call({"value", "--preset", "so5", "--bogus"}).code == 2);
  CHECK(call({"value", "--preset", "so5", "--digits", "10"}).code == 2);
  CHECK(call({"value", "--preset", "so5", "--format", "xml"}).code == 2);
  CHECK(call({"value", "--preset", "so5", "--spec", "x.json"}).code == 2);

  auto r = call({"value", "--preset", "sl3"});
  CHECK(r.code == 1);
  CHECK(r.err == "error: unknown preset \"sl3\" (expected so5 or g2)\n");

  const auto zero = temp_file("dirzeta_cli_zero.json", R"({"P":1,"Q":1,"c":[["0"]],"d":["1"]})");
  r = call({"value", "--spec", zero.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("c[1][1] not > 0") != std::string::npos);
  std::filesystem::remove(zero);

  const auto broken = temp_file("dirzeta_cli_broken.json", "{\"P\": 1,");
  CHECK(call({"value", "--spec", broken.string()}).code == 2);
  std::filesystem::remove(broken);
  CHECK(call({"value", "--spec", "/nonexistent/dirzeta.json"}).code == 2);

  ::setenv("DIRZETA_THREADS", "abc", 1);
  CHECK(call({"value", "--preset", "so5"}).code == 2);
  ::setenv("DIRZETA_THREADS", "1", 1);
  CHECK(call({"value", "--preset", "so5"}).code == 0);
  ::unsetenv("DIRZETA_THREADS");
}

TEST_CASE("oracle") {
  auto r = call({"oracle", "--check", "q0", "--preset", "so5", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS  q0", 0) == 0);
  CHECK(call({"oracle", "--check", "nope"}).code == 2);
}
