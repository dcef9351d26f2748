#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pirc/cli.hpp"
#include "support.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = pirc::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::ordered_json parse(const Result& r) { return nlohmann::ordered_json::parse(r.out); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("pirc_cli_" + name)).string();
}

// Explicit table of the [7,4] Hamming code, written by the oracle encoder.
std::string hamming_encoder_file() {
  const std::vector<std::string> rows{"1000011", "0100101", "0010110", "0001111"};
  const auto path = temp_path("hamming.enc");
  std::ofstream f(path);
  for (std::uint64_t a = 0; a < 16; ++a) {
    std::string data;
    for (int j = 3; j >= 0; --j) data += ((a >> j) & 1U) ? '1' : '0';
    f << data << " " << oracle::encode(rows, a) << "\n";
  }
  return path;
}

}  // namespace

TEST_CASE("construct pir3 --k 4 gives length 8 with witnesses") {
  auto r = run({"construct", "pir3", "--k", "4"});
  REQUIRE(r.code == pirc::cli::kOk);
  auto j = parse(r);
  CHECK(j["n"] == 8);
  CHECK(j["witnesses"].size() == 4);
  CHECK(j["verification"]["verdict"] == "holds");
}

TEST_CASE("packing number --r 12 is 9") {
  auto r = run({"packing", "number", "--r", "12"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["packing_number"] == 9);
}

TEST_CASE("verify pir on the explicit Hamming table fails") {
  auto r = run({"verify", "pir", "--t", "3", "--encoder", hamming_encoder_file()});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["verdict"] == "fails");
  std::filesystem::remove(temp_path("hamming.enc"));
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == pirc::cli::kUsage);
  CHECK(run({"frobnicate"}).code == pirc::cli::kUsage);
  CHECK(run({"construct", "pir3"}).code == pirc::cli::kUsage);
  CHECK(run({"--format", "xml", "packing", "number", "--r", "12"}).code == pirc::cli::kUsage);
  CHECK(run({"packing", "number", "--r", "3"}).code == pirc::cli::kUsage);
  CHECK(run({"verify", "pir", "--t", "3", "--encoder", "/nonexistent/file"}).code == pirc::cli::kBadInput);
  {
    const auto path = temp_path("bad.enc");
    std::ofstream(path) << "01 101\n11 010\n";
    CHECK(run({"verify", "pir", "--t", "3", "--encoder", path}).code == pirc::cli::kBadInput);
    std::filesystem::remove(path);
  }
  CHECK(run({"packing", "find", "--v", "16", "--target", "20", "--budget", "10"}).code == pirc::cli::kIncomplete);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Exit codes") != std::string::npos);
}

TEST_CASE("checkpoint errors map to the budget exit code") {
  const auto path = temp_path("cli.ckpt");
  std::filesystem::remove(path);
  auto first = run({"search", "codes", "--n", "6", "--size", "8", "--checkpoint", path, "--budget", "5"});
  CHECK(first.code == pirc::cli::kIncomplete);
  auto other = run({"search", "codes", "--n", "7", "--size", "8", "--checkpoint", path});
  CHECK(other.code == pirc::cli::kIncomplete);
  CHECK(other.err.find("another problem") != std::string::npos);
  int code = first.code;
  for (int i = 0; i < 1000 && code == pirc::cli::kIncomplete; ++i) {
    code = run({"search", "codes", "--n", "6", "--size", "8", "--checkpoint", path, "--budget", "5"}).code;
  }
  CHECK(code == pirc::cli::kOk);
  std::filesystem::remove(path);
}

TEST_CASE("threads flag and environment") {
  auto a = run({"--threads", "1", "hamming", "check", "--r", "2"});
  CHECK(a.code == 0);
  CHECK(parse(a)["verdict"] == "encoder exists");
  CHECK(run({"--threads", "-2", "hamming", "check", "--r", "2"}).code == pirc::cli::kUsage);
}

TEST_CASE("text format renders without JSON") {
  auto r = run({"--format", "text", "packing", "number", "--r", "13"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("packing_number: 13") != std::string::npos);
}

// Properties.

TEST_CASE("JSON reports round trip") {
  const std::vector<std::vector<std::string>> commands{
      {"construct", "pir3", "--k", "5"},
      {"construct", "packing-pir", "--k", "9", "--t", "5", "--r", "12"},
      {"extend", "--k", "3"},
      {"packing", "find", "--v", "9", "--target", "3"},
      {"hamming", "check", "--r", "3"},
      {"hamming", "claims", "--r", "3"},
      {"maxsize", "--n", "6"},
      {"maxsize", "--n", "10"},
      {"optimal-table", "--kmax", "8"},
      {"search", "codes", "--n", "7", "--size", "16"},
      {"search", "open11", "--n", "5", "--size", "4", "--budget", "2"},
  };
  for (const auto& c : commands) {
    CAPTURE(c.front());
    auto r = run(c);
    REQUIRE(r.code == 0);
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j.dump(2) + "\n" == r.out);
    CHECK(nlohmann::ordered_json::parse(j.dump()) == j);
  }
}

TEST_CASE("fixed seed gives byte-identical heuristic output") {
  const std::vector<std::string> cmd{"--seed", "11", "search", "codes", "--n", "8", "--size", "20",
                                     "--mode", "heuristic", "--attempts", "6"};
  auto a = run(cmd);
  auto b = run(cmd);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto other = cmd;
  other[1] = "12";
  CHECK(run(other).code == 0);
  const std::vector<std::string> hunt{"--seed", "4", "search", "open11", "--n", "6", "--size", "8", "--budget", "2"};
  CHECK(run(hunt).out == run(hunt).out);
}
