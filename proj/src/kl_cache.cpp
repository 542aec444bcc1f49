#include "klq/kl_cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "klq/errors.hpp"
#include "klq/json_io.hpp"

namespace klq {

namespace {

using nlohmann::json;

std::string at_line(std::size_t line) { return "line " + std::to_string(line); }

nlohmann::ordered_json header_for(const GroupDatum& d) {
  nlohmann::ordered_json h;
  h["format"] = kl_cache_format;
  h["version"] = kl_cache_version;
  h["type"] = std::string(1, cartan_letter(d.type));
  h["rank"] = d.rank;
  h["convention"] = kl_cache_convention;
  return h;
}

void check_header(const json& h, const GroupDatum& d) {
  if (!h.is_object()) throw CacheError("line 1: header is not a JSON object");
  auto field = [&](const char* key) -> const json& {
    auto it = h.find(key);
    if (it == h.end()) throw CacheError(std::string("line 1: header lacks \"") + key + "\"");
    return *it;
  };
  if (field("format") != kl_cache_format) throw CacheError("line 1: not a klq-cache file");
  if (field("version") != kl_cache_version) {
    throw CacheError("line 1: unsupported cache version " + field("version").dump());
  }
  const std::string type(1, cartan_letter(d.type));
  if (field("type") != type) {
    throw CacheError("line 1: header mismatch: type " + field("type").dump() + ", expected \"" + type + "\"");
  }
  if (field("rank") != d.rank) {
    throw CacheError("line 1: header mismatch: rank " + field("rank").dump() + ", expected " +
                     std::to_string(d.rank));
  }
  if (field("convention") != kl_cache_convention) {
    throw CacheError("line 1: header mismatch: convention " + field("convention").dump());
  }
}

std::pair<ElemId, HeckeElt> parse_entry(const KLTable& kl, const std::string& text, std::size_t line) {
  const GroupTable& g = kl.group();
  const std::string where = at_line(line);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CacheError(where + ": corrupt entry: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("w") || !doc.contains("h") || !doc["h"].is_array()) {
    throw CacheError(where + ": entry must be {\"w\":[...],\"h\":[...]}");
  }

  ElemId w;
  HeckeElt h;
  try {
    w = element_from_json(g, doc["w"], where + ": w");
    for (const auto& pair : doc["h"]) {
      if (!pair.is_array() || pair.size() != 2) throw InputError(where + ": h item must be [x word, polynomial]");
      const ElemId x = element_from_json(g, pair[0], where + ": x");
      if (h.coeffs().count(x)) throw InputError(where + ": repeated x " + pair[0].dump());
      LaurentPoly p = laurent_from_json(pair[1], where);
      if (p.is_zero()) throw InputError(where + ": zero polynomial listed for x " + pair[0].dump());
      h.add(x, p);
    }
  } catch (const InputError& e) {
    throw CacheError(e.what());
  }

  if (h.coefficient(w) != LaurentPoly(1)) throw CacheError(where + ": h_{w,w} is not 1");
  for (const auto& [x, p] : h.coeffs()) {
    if (x == w) continue;
    const int gap = g.length(w) - g.length(x);
    if (!g.bruhat_leq(x, w)) {
      throw CacheError(where + ": x = " + g.word_string(x) + " is not below w in the Bruhat order");
    }
    for (const auto& [e, c] : p.terms()) {
      if (e < 1 || e > gap || (gap - e) % 2 != 0) {
        throw CacheError(where + ": degree bound violated in h_{x,w} for x = " + g.word_string(x));
      }
    }
  }
  if (kl.algebra().bar(h) != h) throw CacheError(where + ": bar-invariance failure for w = " + g.word_string(w));
  return {w, std::move(h)};
}

}  // namespace

void save_kl_cache(const KLTable& kl, std::ostream& out) {
  const GroupTable& g = kl.group();
  out << header_for(g.datum()).dump() << '\n';
  for (ElemId w : kl.computed()) {
    json entry;
    entry["w"] = word_to_json(g.word(w));
    auto items = json::array();
    for (const auto& [x, p] : kl.cprime(w).coeffs()) items.push_back({word_to_json(g.word(x)), laurent_to_json(p)});
    entry["h"] = std::move(items);
    out << entry.dump() << '\n';
  }
}

void save_kl_cache(const KLTable& kl, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw CacheError("cannot write " + tmp.string());
    save_kl_cache(kl, out);
    out.flush();
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) throw CacheError("cannot move cache into place at " + path + ": " + ec.message());
}

std::size_t load_kl_cache(KLTable& kl, std::istream& in) {
  std::string text;
  if (!std::getline(in, text)) throw CacheError("line 1: empty cache file");
  json header;
  try {
    header = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CacheError(std::string("line 1: corrupt header: ") + e.what());
  }
  check_header(header, kl.group().datum());

  std::vector<std::pair<ElemId, HeckeElt>> entries;
  std::set<ElemId> seen;
  for (std::size_t line = 2; std::getline(in, text); ++line) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto entry = parse_entry(kl, text, line);
    if (!seen.insert(entry.first).second) {
      throw CacheError(at_line(line) + ": duplicate entry for w = " + kl.group().word_string(entry.first));
    }
    entries.push_back(std::move(entry));
  }
  for (auto& [w, h] : entries) kl.insert(w, std::move(h));
  return entries.size();
}

std::size_t load_kl_cache(KLTable& kl, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CacheError("cannot open cache " + path);
  return load_kl_cache(kl, in);
}

std::string default_cache_path(const GroupDatum& datum) {
  namespace fs = std::filesystem;
  fs::path dir;
  if (const char* env = std::getenv("KLQ_CACHE_DIR"); env && *env) {
    dir = env;
  } else if (const char* home = std::getenv("HOME"); home && *home) {
    dir = fs::path(home) / ".cache" / "klq";
  } else {
    dir = ".klq-cache";
  }
  // KL polynomials do not see the Frobenius twist, so 2A_n shares the A_n file.
  return (dir / (std::string(1, cartan_letter(datum.type)) + std::to_string(datum.rank) + ".klq")).string();
}

}  // namespace klq
