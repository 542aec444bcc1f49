#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "klq/errors.hpp"
#include "klq/kl_cache.hpp"
#include "support.hpp"

using namespace klq;
using namespace klq::testing;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string saved(const KLTable& kl) {
  std::ostringstream out;
  save_kl_cache(kl, out);
  return out.str();
}

std::string load_error(KLTable& kl, const std::string& text) {
  std::istringstream in(text);
  try {
    load_kl_cache(kl, in);
  } catch (const CacheError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("cache header matches the documented line") {
  KLTable kl(sym(4));
  kl.cprime(kl.group().longest_element());
  const auto lines = lines_of(saved(kl));
  CHECK(lines.front() == R"({"format":"klq-cache","version":1,"type":"A","rank":3,"convention":"(t_s+v)(t_s-1/v)=0"})");
  CHECK(lines.size() == 1 + kl.computed().size());
}

TEST_CASE("entry lines use 1-based words and [exp, coeff] pairs") {
  KLTable kl(sym(2));
  kl.compute_all();
  const auto lines = lines_of(saved(kl));
  REQUIRE(lines.size() == 3);
  CHECK(lines[1] == R"({"h":[[[],[[0,1]]]],"w":[]})");
  CHECK(lines[2] == R"({"h":[[[],[[1,1]]],[[1],[[0,1]]]],"w":[1]})");
}

TEST_CASE("A3 roundtrip reproduces every expansion, including w0") {
  auto g = sym(4);
  KLTable original(g);
  original.compute_all();
  const std::string text = saved(original);

  KLTable loaded(g);
  std::istringstream in(text);
  CHECK(load_kl_cache(loaded, in) == g->size());
  for (ElemId w = 0; w < g->size(); ++w) {
    REQUIRE(loaded.has(w));
    CHECK(loaded.cprime(w) == original.cprime(w));
  }
  KLTable fresh(g);
  CHECK(loaded.cprime(g->longest_element()) == fresh.cprime(g->longest_element()));
  CHECK(saved(loaded) == text);
}

TEST_CASE("B2 and G2 roundtrips") {
  for (auto t : {CartanType::B, CartanType::G}) {
    auto g = group(t, 2);
    KLTable original(g);
    original.compute_all();
    KLTable loaded(g);
    std::istringstream in(saved(original));
    load_kl_cache(loaded, in);
    for (ElemId w = 0; w < g->size(); ++w) CHECK(loaded.cprime(w) == original.cprime(w));
  }
}

TEST_CASE("partial tables roundtrip only what was computed") {
  auto g = sym(4);
  KLTable original(g);
  const ElemId w = g->parse("2 1 3 2");
  original.cprime(w);
  KLTable loaded(g);
  std::istringstream in(saved(original));
  CHECK(load_kl_cache(loaded, in) == original.computed().size());
  CHECK(loaded.computed() == original.computed());
  CHECK(loaded.h(g->identity(), w) == LaurentPoly{{2, 1}, {4, 1}});
}

TEST_CASE("tampered coefficient is rejected as not bar-invariant") {
  auto g = sym(4);
  KLTable original(g);
  original.compute_all();
  auto lines = lines_of(saved(original));

  // Entry for w = s2 s1 s3 s2, whose h_{e,w} = v^2 + v^4; double the v^4 term.
  const ElemId w = g->parse("2 1 3 2");
  const std::size_t index = 1 + w;
  auto entry = nlohmann::json::parse(lines[index]);
  REQUIRE(entry["h"][0][0] == nlohmann::json::array());
  REQUIRE(entry["h"][0][1] == nlohmann::json::parse("[[2,1],[4,1]]"));
  entry["h"][0][1][1][1] = 2;
  lines[index] = entry.dump();

  KLTable target(g);
  const std::string err = load_error(target, join(lines));
  CHECK(err.find("bar-invariance") != std::string::npos);
  CHECK(err.find("line " + std::to_string(index + 1)) != std::string::npos);
  CHECK(target.computed().empty());
}

TEST_CASE("header mismatches are rejected") {
  KLTable a3(sym(4));
  a3.cprime(3);
  const std::string text = saved(a3);

  KLTable a2(sym(3));
  CHECK(load_error(a2, text).find("rank") != std::string::npos);
  KLTable b3(group(CartanType::B, 3));
  CHECK(load_error(b3, text).find("type") != std::string::npos);

  auto lines = lines_of(text);
  auto header = nlohmann::json::parse(lines[0]);
  header["convention"] = "(T_s-q)(T_s+1)=0";
  lines[0] = header.dump();
  KLTable other(sym(4));
  CHECK(load_error(other, join(lines)).find("convention") != std::string::npos);

  header = nlohmann::json::parse(lines_of(text)[0]);
  header["version"] = 2;
  lines[0] = header.dump();
  CHECK(load_error(other, join(lines)).find("version") != std::string::npos);

  CHECK(load_error(other, "").find("line 1") != std::string::npos);
  CHECK(load_error(other, "{not json\n").find("line 1") != std::string::npos);
  CHECK(load_error(other, "[1,2]\n").find("line 1") != std::string::npos);
}

TEST_CASE("the twisted group shares the split header") {
  KLTable split(sym(4));
  split.compute_all();
  KLTable twisted(sym(4, Twist::flip));
  std::istringstream in(saved(split));
  CHECK(load_kl_cache(twisted, in) == 24);
  CHECK(default_cache_path(GroupDatum{CartanType::A, 3, Twist::flip}) ==
        default_cache_path(GroupDatum{CartanType::A, 3, Twist::none}));
}

TEST_CASE("corrupt and malformed lines report their line number") {
  auto g = sym(3);
  KLTable kl(g);
  kl.compute_all();
  const auto good = lines_of(saved(kl));

  auto with_line = [&](std::size_t i, const std::string& replacement) {
    auto lines = good;
    lines[i] = replacement;
    KLTable target(g);
    return load_error(target, join(lines));
  };
  CHECK(with_line(3, "{\"w\":[1,").find("line 4") != std::string::npos);
  CHECK(with_line(2, R"({"w":[1]})").find("line 3") != std::string::npos);
  CHECK(with_line(2, R"({"w":[1,1],"h":[[[],[[0,1]]]]})").find("not reduced") != std::string::npos);
  CHECK(with_line(2, R"({"w":[3],"h":[[[],[[0,1]]]]})").find("bad generator") != std::string::npos);
  // h_{w,w} missing.
  CHECK(with_line(2, R"({"w":[1],"h":[[[],[[1,1]]]]})").find("h_{w,w}") != std::string::npos);
  // Degree bound: h_{e,s} = v^3 exceeds l(s) - l(e) = 1.
  CHECK(with_line(2, R"({"w":[1],"h":[[[],[[3,1]]],[[1],[[0,1]]]]})").find("degree") != std::string::npos);
  // Support outside the Bruhat interval.
  CHECK(with_line(2, R"({"w":[1],"h":[[[2],[[0,1]]],[[1],[[0,1]]]]})").find("Bruhat") != std::string::npos);
  // Repeated exponents and zero coefficients are not canonical.
  CHECK(with_line(2, R"({"w":[1],"h":[[[],[[1,1],[1,0]]],[[1],[[0,1]]]]})").find("line 3") != std::string::npos);
  // Duplicate entry.
  auto lines = good;
  lines.push_back(good[2]);
  KLTable target(g);
  CHECK(load_error(target, join(lines)).find("duplicate") != std::string::npos);
  CHECK(target.computed().empty());
}

TEST_CASE("coefficients may be decimal strings") {
  KLTable kl(sym(2));
  const std::string text = std::string(R"({"format":"klq-cache","version":1,"type":"A","rank":1,"convention":"(t_s+v)(t_s-1/v)=0"})") +
                           "\n" + R"({"w":[1],"h":[[[],[[1,"1"]]],[[1],[[0,1]]]]})" + "\n\n";
  std::istringstream in(text);
  CHECK(load_kl_cache(kl, in) == 1);
  CHECK(kl.h(0, 1) == v);
}

TEST_CASE("file save and load, default path from the environment") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("klq_cache_test_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ::setenv("KLQ_CACHE_DIR", dir.c_str(), 1);
  const GroupDatum d{CartanType::B, 3, Twist::none};
  const std::string path = default_cache_path(d);
  CHECK(path == (dir / "B3.klq").string());

  auto g = GroupTable::build(d);
  KLTable kl(g);
  kl.compute_all();
  save_kl_cache(kl, path);
  CHECK(fs::exists(path));
  CHECK_FALSE(fs::exists(path + ".tmp"));
  KLTable loaded(g);
  CHECK(load_kl_cache(loaded, path) == 48);
  CHECK(loaded.cprime(g->longest_element()) == kl.cprime(g->longest_element()));

  KLTable missing(g);
  CHECK_THROWS_AS(load_kl_cache(missing, (dir / "nope.klq").string()), CacheError);
  ::unsetenv("KLQ_CACHE_DIR");
  fs::remove_all(dir);
}
