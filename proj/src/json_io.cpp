#include "klq/json_io.hpp"

#include "klq/errors.hpp"

namespace klq {

nlohmann::json integer_to_json(const Integer& n) {
  if (n.fits_int64()) return n.to_int64();
  return n.to_string();
}

Integer integer_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer::from_string(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw InputError(where + ": expected an integer, got " + j.dump());
}

nlohmann::json laurent_to_json(const LaurentPoly& p) {
  auto out = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({e, integer_to_json(c)});
  return out;
}

LaurentPoly laurent_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of [exponent, coefficient] pairs");
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) {
      throw InputError(where + ": malformed term " + t.dump());
    }
    const auto e = t[0].get<std::int64_t>();
    if (e < -(1 << 20) || e > (1 << 20)) throw InputError(where + ": exponent out of range in " + t.dump());
    Integer c = integer_from_json(t[1], where);
    if (c == Integer(0)) throw InputError(where + ": zero coefficient in " + t.dump());
    if (!terms.empty() && terms.back().first >= e) {
      throw InputError(where + ": exponents must be strictly increasing");
    }
    terms.emplace_back(static_cast<int>(e), std::move(c));
  }
  return LaurentPoly::from_terms(std::move(terms));
}

nlohmann::json word_to_json(const Word& w) {
  auto out = nlohmann::json::array();
  for (Gen s : w) out.push_back(s + 1);
  return out;
}

ElemId element_from_json(const GroupTable& g, const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a word (list of generator indices)");
  Word word;
  for (const auto& s : j) {
    if (!s.is_number_integer() || s.get<std::int64_t>() < 1 || s.get<std::int64_t>() > g.rank()) {
      throw InputError(where + ": bad generator " + s.dump() + " for rank " + std::to_string(g.rank()));
    }
    word.push_back(static_cast<Gen>(s.get<std::int64_t>() - 1));
  }
  const ElemId w = g.element_of(word);
  if (static_cast<std::size_t>(g.length(w)) != word.size()) {
    throw InputError(where + ": word " + j.dump() + " is not reduced");
  }
  return w;
}

}  // namespace klq
