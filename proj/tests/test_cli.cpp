#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct Result {
  int code = -1;
  std::string out, err;
  json parsed() const { return json::parse(out); }
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "klq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = klq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool one_error_line(const Result& r) {
  return r.err.rfind("klq: error: ", 0) == 0 && r.err.find('\n') == r.err.size() - 1;
}

std::string fixture() { return std::string(KLQ_SOURCE_DIR) + "/data/f4_scenario.json"; }

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / ("klq_cli_test_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("kl: C'_{s2 s1} in A2 has the four terms v^2, v, v, 1") {
  auto r = cli({"kl", "--type", "A", "--rank", "2", "--w", "2 1", "--basis", "Cprime"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out.find("4 terms") != std::string::npos);

  r = cli({"kl", "--type", "A", "--rank", "2", "--w", "2 1", "--basis", "Cprime", "--json"});
  REQUIRE(r.code == 0);
  const json j = r.parsed();
  REQUIRE(j["terms"].size() == 4);
  CHECK(j["terms"][0] == json::parse(R"({"x":[],"coeff":[[2,1]]})"));
  CHECK(j["terms"][1] == json::parse(R"({"x":[1],"coeff":[[1,1]]})"));
  CHECK(j["terms"][2] == json::parse(R"({"x":[2],"coeff":[[1,1]]})"));
  CHECK(j["terms"][3] == json::parse(R"({"x":[2,1],"coeff":[[0,1]]})"));
}

TEST_CASE("kl: single coefficient and mu") {
  auto r = cli({"kl", "--n", "4", "--w", "2 1 3 2", "--x", "e", "--json"});
  REQUIRE(r.code == 0);
  const json j = r.parsed();
  CHECK(j["coeff"] == json::parse("[[2,1],[4,1]]"));
  CHECK(j["mu"] == 0);
  r = cli({"kl", "--n", "3", "--w", "1 2", "--x", "1", "--json"});
  CHECK(r.parsed()["mu"] == 1);
}

TEST_CASE("kl: C basis carries the signs of the twisted basis") {
  const json j = cli({"kl", "--n", "2", "--w", "1", "--basis", "C", "--json"}).parsed();
  CHECK(j["terms"] == json::parse(R"([{"x":[],"coeff":[[-1,-1]]},{"x":[1],"coeff":[[0,1]]}])"));
}

TEST_CASE("check subreg --n 4 --json passes") {
  auto r = cli({"check", "subreg", "--n", "4", "--json"});
  CHECK(r.code == 0);
  const json j = r.parsed();
  CHECK(j["pass"] == true);
  CHECK(j["scale"] == 6);
  CHECK(j["quotient"] == json::parse(R"({"2,1,1":[[0,-1]],"1,1,1,1":[[0,-3]]})"));
  CHECK(j["sign"] == -1);
}

TEST_CASE("qw rejects non-type-A data with exit 2") {
  auto r = cli({"qw", "--type", "B", "--rank", "2", "--form", "GL", "--w", "1"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(one_error_line(r));
  r = cli({"qw", "--type", "B", "--rank", "2", "--form", "SU", "--w", "1"});
  CHECK(r.code == 2);
  r = cli({"qw", "--n", "4", "--form", "SU", "--graded", "--w", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("at-v1") != std::string::npos);
  r = cli({"qw", "--n", "4", "--form", "XX", "--w", "1"});
  CHECK(r.code == 2);
  r = cli({"qw", "--n", "4", "--w", "1", "--shift", "two"});
  CHECK(r.code == 2);
  r = cli({"qw", "--n", "4", "--w", "1", "--graded", "--at-v1"});
  CHECK(r.code == 2);
}

TEST_CASE("qw: SU_6 row for s1 s3 s4 s3") {
  auto r = cli({"qw", "--form", "SU", "--n", "6", "--w", "1 3 4 3", "--json"});
  REQUIRE(r.code == 0);
  const json j = r.parsed();
  CHECK(j["coords"] == json::parse(R"({"3,2,1":[[0,2]],"3,1,1,1":[[0,4]],"2,2,2":[[0,4]],
      "2,2,1,1":[[0,4]],"2,1,1,1,1":[[0,4]],"1,1,1,1,1,1":[[0,12]]})"));
  CHECK(j["sign"] == 1);
  CHECK(j["pass"] == true);
  CHECK(j["w"] == json::parse("[1,3,4,3]"));
  CHECK(j["almost"].size() == 11);
}

TEST_CASE("qw: SL_2 shift metadata") {
  // v C'_s has 1_v = 1 + v^2 and sgn_v = 0.
  auto j = cli({"qw", "--n", "2", "--w", "1", "--basis", "Cprime", "--graded", "--shift", "auto", "--json"}).parsed();
  CHECK(j["shift"] == 1);
  CHECK(j["almost"] == json::parse(R"({"2":[[0,1],[2,1]],"1,1":[]})"));
  j = cli({"qw", "--n", "2", "--w", "1", "--basis", "t", "--graded", "--json"}).parsed();
  CHECK(j["almost"] == json::parse(R"({"2":[[-1,1]],"1,1":[[1,-1]]})"));
  CHECK(j["shift"] == 0);
}

TEST_CASE("check positivity: pass, sign rules and failure exit code") {
  auto r = cli({"check", "positivity", "--form", "GL", "--n", "4", "--all", "--json"});
  CHECK(r.code == 0);
  json j = r.parsed();
  CHECK(j["count"] == 24);
  CHECK(j["positivity_pass"] == true);
  CHECK(j["reports"].size() == 24);
  CHECK(j["sign_rules"][1] == json::parse(R"j({"name":"l(w)","matches":24,"total":24})j"));

  // The RSK-shape sign rule is not the one the data follow (s1 s2 is a counterexample).
  r = cli({"check", "positivity", "--n", "3", "--all", "--require-sign", "rsk"});
  CHECK(r.code == 1);
  r = cli({"check", "positivity", "--n", "3", "--all", "--require-sign", "length"});
  CHECK(r.code == 0);

  r = cli({"check", "positivity", "--n", "3", "--w", "1 2", "--json"});
  CHECK(r.code == 0);
  j = r.parsed();
  CHECK(j["reports"][0]["coords"] == json::parse(R"({"2,1":[[0,1]],"1,1,1":[[0,4]]})"));
  CHECK(j["reports"][0]["sign"] == 1);

  CHECK(cli({"check", "positivity", "--n", "3"}).code == 2);
  CHECK(cli({"check", "positivity", "--n", "3", "--all", "--w", "1"}).code == 2);
  CHECK(cli({"check", "positivity", "--form", "SU", "--n", "4", "--all", "--graded"}).code == 2);
}

TEST_CASE("check positivity: threads give identical reports") {
  const auto one = cli({"check", "positivity", "--form", "SU", "--n", "5", "--all", "--json"});
  const auto four = cli({"check", "positivity", "--form", "SU", "--n", "5", "--all", "--threads", "4", "--json"});
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
}

TEST_CASE("check triangular and lemma") {
  auto r = cli({"check", "triangular", "--n", "3", "--json"});
  CHECK(r.code == 0);
  json j = r.parsed();
  CHECK(j["chosen"] == "shape");
  CHECK(j["block_sizes"] == json::parse("[1,1,1]"));
  CHECK(j["rank"] == 3);

  r = cli({"check", "lemma", "--n", "4", "--json"});
  CHECK(r.code == 0);
  j = r.parsed();
  CHECK(j["v1_identity"] == true);
  CHECK(j["generic_v_inv"] == true);
  CHECK(j["v_power_n_minus_2"] == false);

  CHECK(cli({"check", "triangular", "--n", "9"}).code == 2);
  CHECK(cli({"check", "subreg", "--n", "2"}).code == 2);
  CHECK(cli({"check"}).code == 2);
}

TEST_CASE("cells: A3 two-sided cells as JSON") {
  auto r = cli({"cells", "--type", "A", "--rank", "3", "--kind", "two-sided", "--json"});
  REQUIRE(r.code == 0);
  const json j = r.parsed();
  REQUIRE(j["cells"].size() == 5);
  std::vector<std::string> shapes;
  std::vector<int> sizes, avals;
  for (const auto& c : j["cells"]) {
    shapes.push_back(c["shape"]);
    sizes.push_back(c["size"]);
    avals.push_back(c["a"]);
  }
  CHECK(shapes == std::vector<std::string>{"4", "3,1", "2,2", "2,1,1", "1,1,1,1"});
  CHECK(sizes == std::vector<int>{1, 9, 4, 9, 1});
  CHECK(avals == std::vector<int>{0, 1, 2, 3, 6});
  CHECK(j["order"] == json::parse("[[1,0],[2,1],[3,2],[4,3]]"));
  CHECK(j["a_source"] == "brute");

  r = cli({"cells", "--n", "4", "--kind", "left", "--max-a-order", "10", "--json"});
  CHECK(r.parsed()["a_source"] == "rsk");
  CHECK(r.parsed()["cells"].size() == 10);
  r = cli({"cells", "--type", "G", "--rank", "2", "--max-a-order", "1", "--json"});
  CHECK(r.parsed()["cells"][0]["a"].is_null());
  CHECK(cli({"cells", "--n", "3", "--kind", "diagonal"}).code == 2);
}

TEST_CASE("deduce: F4 fixture and dropped constraints") {
  auto r = cli({"deduce", "--scenario", fixture(), "--json"});
  REQUIRE(r.code == 0);
  json j = r.parsed();
  CHECK(j["count"] == 1);
  CHECK(j["solutions"][0]["assignment"] == json::parse(R"({"f":2,"g":3,"h":2,"i":2,"j":4})"));
  CHECK(j["solutions"][0]["multiplicities"] == json::parse("[32,40,40,8,0]"));
  CHECK(j["multiplicities"][3]["value"] == "72 - 32*f");

  r = cli({"deduce", "--scenario", fixture(), "--drop", "0", "--json"});
  j = r.parsed();
  CHECK(j["dropped"] == "f>=2");
  CHECK(j["count"] == 17);

  r = cli({"deduce", "--scenario", fixture(), "--order", "j,i,h,g,f", "--json"});
  CHECK(r.parsed()["count"] == 1);

  CHECK(cli({"deduce", "--scenario", fixture(), "--drop", "f>=3"}).code == 2);
  CHECK(cli({"deduce", "--scenario", fixture(), "--order", "f,g"}).code == 2);
  CHECK(cli({"deduce", "--scenario", fixture(), "--max-variables", "3"}).code == 3);
  const auto missing = cli({"deduce", "--scenario", "/nonexistent/f4.json"});
  CHECK(missing.code == 2);
  CHECK(one_error_line(missing));
}

TEST_CASE("cache: save, verify, tamper, path") {
  TempDir dir;
  ::setenv("KLQ_CACHE_DIR", dir.path.c_str(), 1);
  auto r = cli({"cache", "path", "--n", "4"});
  CHECK(r.out == (dir.path / "A3.klq").string() + "\n");
  r = cli({"cache", "save", "--n", "4", "--json"});
  REQUIRE(r.code == 0);
  CHECK(r.parsed()["entries"] == 24);
  r = cli({"cache", "verify", "--n", "4", "--json"});
  CHECK(r.code == 0);
  CHECK(r.parsed()["valid"] == true);

  const auto fresh = cli({"kl", "--n", "4", "--w", "w0", "--json"});
  const auto cached = cli({"kl", "--n", "4", "--w", "w0", "--use-cache", "--json"});
  CHECK(cached.code == 0);
  CHECK(cached.out == fresh.out);

  // Rank mismatch between the file and the requested group.
  r = cli({"cache", "verify", "--n", "3", "--path", (dir.path / "A3.klq").string()});
  CHECK(r.code == 1);
  CHECK(r.out.find("rank") != std::string::npos);

  // Tamper with h_{e,w} for w = s2 s1 s3 s2.
  const std::string path = (dir.path / "A3.klq").string();
  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
  }
  bool tampered = false;
  for (auto& l : lines) {
    if (l.find(R"("w":[2,1,3,2])") == std::string::npos) continue;
    const auto pos = l.find("[[2,1],[4,1]]");
    REQUIRE(pos != std::string::npos);
    l.replace(pos, 13, "[[2,1],[4,5]]");
    tampered = true;
  }
  REQUIRE(tampered);
  {
    std::ofstream out(path);
    for (const auto& l : lines) out << l << "\n";
  }
  r = cli({"cache", "verify", "--n", "4"});
  CHECK(r.code == 1);
  CHECK(r.out.find("bar-invariance") != std::string::npos);
  r = cli({"kl", "--n", "4", "--w", "w0", "--use-cache"});
  CHECK(r.code == 2);
  CHECK(one_error_line(r));
  CHECK(r.err.find("cache") != std::string::npos);
  ::unsetenv("KLQ_CACHE_DIR");
}

TEST_CASE("group summary and guards") {
  auto r = cli({"group", "--type", "F", "--rank", "4", "--json"});
  REQUIRE(r.code == 0);
  CHECK(r.parsed()["order"] == 1152);
  CHECK(r.parsed()["positive_roots"] == 24);
  r = cli({"group", "--n", "3", "--elements", "--json"});
  CHECK(r.parsed()["elements"].size() == 6);
  CHECK(r.parsed()["w0"] == json::parse("[1,2,1]"));

  r = cli({"group", "--type", "E", "--rank", "6"});
  CHECK(r.code == 2);
  r = cli({"group", "--type", "B", "--rank", "6", "--max-order", "1000"});
  CHECK(r.code == 3);
  CHECK(one_error_line(r));
  r = cli({"kl", "--n", "6", "--w", "w0", "--max-interval", "10"});
  CHECK(r.code == 3);
  CHECK(cli({"group", "--n", "4", "--rank", "2"}).code == 2);
  CHECK(cli({"group", "--n", "4", "--twist", "sideways"}).code == 2);
  CHECK(cli({"group", "--type", "B", "--rank", "3", "--twist", "flip"}).code == 2);
}

TEST_CASE("usage errors and help") {
  auto r = cli({});
  CHECK(r.code == 2);
  CHECK(one_error_line(r));
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"kl", "--n", "3", "--w", "1", "--bogus"}).code == 2);
  CHECK(cli({"kl", "--n", "3", "--w", "1 5"}).code == 2);
  CHECK(cli({"kl", "--n", "3", "--w", "x"}).code == 2);
  // Words need not be reduced: s1 s1 is the identity.
  CHECK(cli({"kl", "--n", "3", "--w", "1 1", "--json"}).parsed()["w"] == json::array());
  CHECK(cli({"kl", "--n", "3", "--w", "1", "--basis", "D"}).code == 2);
  r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("qw") != std::string::npos);
  CHECK(cli({"qw", "--help"}).code == 0);
}

TEST_CASE("JSON output is deterministic and a parse-emit-parse fixpoint") {
  const std::vector<std::vector<std::string>> commands = {
      {"group", "--n", "4", "--elements", "--json"},
      {"kl", "--type", "B", "--rank", "3", "--w", "w0", "--json"},
      {"cells", "--type", "G", "--rank", "2", "--json"},
      {"qw", "--n", "4", "--w", "2 1 3", "--graded", "--json"},
      {"check", "positivity", "--n", "4", "--all", "--json"},
      {"check", "subreg", "--n", "3", "--json"},
      {"check", "triangular", "--n", "3", "--json"},
      {"check", "lemma", "--n", "3", "--json"},
      {"deduce", "--scenario", fixture(), "--json"},
  };
  for (const auto& c : commands) {
    CAPTURE(c[0]);
    const auto first = cli(c);
    const auto second = cli(c);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    const json once = json::parse(first.out);
    const json twice = json::parse(once.dump());
    CHECK(once == twice);
    const auto ordered = nlohmann::ordered_json::parse(first.out);
    CHECK(ordered.dump() + "\n" == first.out);
  }
}
