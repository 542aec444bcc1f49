#include "klq/deduce.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"
#include "klq/json_io.hpp"
#include "klq/errors.hpp"

namespace klq {

// ---------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(std::size_t nvars, const Integer& c) {
  MultiPoly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t index) {
  MultiPoly p(nvars);
  Monomial m(nvars, 0);
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

void MultiPoly::add_term(const Monomial& m, const Integer& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                            [](int e) { return e == 0; }));
}

Integer MultiPoly::constant_term() const {
  auto it = terms_.find(Monomial(nvars_, 0));
  return it == terms_.end() ? Integer(0) : it->second;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly p = a;
  p.nvars_ = std::max(a.nvars_, b.nvars_);
  for (const auto& [m, c] : b.terms_) p.add_term(m, c);
  return p;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly p(std::max(a.nvars_, b.nvars_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      MultiPoly::Monomial m = ma;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
      p.add_term(m, ca * cb);
    }
  }
  return p;
}

Integer MultiPoly::evaluate(const std::vector<Integer>& values) const {
  Integer total = 0;
  for (const auto& [m, c] : terms_) {
    Integer t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < m[i]; ++e) t *= values[i];
    }
    total += t;
  }
  return total;
}

std::pair<MultiPoly, MultiPoly> MultiPoly::split_linear(std::size_t var) const {
  MultiPoly a(nvars_), b(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) {
      b.add_term(m, c);
    } else {
      Monomial r = m;
      r[var] -= 1;
      a.add_term(r, c);
    }
  }
  return {a, b};
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Constant first, then higher-degree terms.
  std::vector<std::pair<Monomial, Integer>> ordered(terms_.rbegin(), terms_.rend());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    int dx = 0, dy = 0;
    for (int e : x.first) dx += e;
    for (int e : y.first) dy += e;
    return dx < dy;
  });
  for (const auto& [m, c] : ordered) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < m[i]; ++e) mono += (mono.empty() ? "" : "*") + names[i];
    }
    const bool neg = c.sign() < 0;
    const Integer mag = c.abs();
    std::string body;
    if (mono.empty()) {
      body = mag.to_string();
    } else {
      body = mag == Integer(1) ? mono : mag.to_string() + "*" + mono;
    }
    if (out.empty()) {
      out = neg ? "-" + body : body;
    } else {
      out += neg ? " - " + body : " + " + body;
    }
  }
  return out;
}

// ------------------------------------------------------------------ parsing

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class ExprParser {
public:
  ExprParser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  MultiPoly parse_expr() {
    MultiPoly out(vars_.size());
    skip();
    bool negate = false;
    if (peek() == '-') {
      ++pos_;
      negate = true;
    } else if (peek() == '+') {
      ++pos_;
    }
    out = parse_term();
    if (negate) out = -out;
    for (;;) {
      skip();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      MultiPoly t = parse_term();
      out = c == '+' ? out + t : out - t;
    }
    return out;
  }

  std::size_t pos() const { return pos_; }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("syntax error in '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }

private:
  MultiPoly parse_term() {
    skip();
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const Integer k = parse_int();
      if (ident_start(peek())) fail("expected '*' between coefficient and variable");
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (!ident_start(peek())) fail("expected a variable after '*'");
        return MultiPoly::constant(vars_.size(), k) * parse_var();
      }
      return MultiPoly::constant(vars_.size(), k);
    }
    if (ident_start(c)) {
      MultiPoly v = parse_var();
      skip();
      if (peek() == '*') {
        throw InputError("non-linear expression '" + s_ + "' at column " + std::to_string(pos_ + 1) +
                         ": only integer * variable products are allowed");
      }
      return v;
    }
    if (c == '\0') fail("unexpected end of expression");
    fail(std::string("unexpected character '") + c + "'");
  }

  Integer parse_int() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer::from_string(s_.substr(start, pos_ - start));
  }

  MultiPoly parse_var() {
    const std::size_t start = pos_;
    while (ident_char(peek())) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) {
      throw InputError("unknown variable '" + name + "' in '" + s_ + "' at column " + std::to_string(start + 1));
    }
    return MultiPoly::variable(vars_.size(), static_cast<std::size_t>(it - vars_.begin()));
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

void collect_identifiers(const std::string& text, std::set<std::string>& out) {
  for (std::size_t i = 0; i < text.size();) {
    if (ident_start(text[i]) && (i == 0 || !std::isdigit(static_cast<unsigned char>(text[i - 1])))) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.insert(text.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

MultiPoly parse_affine(const std::string& text, const std::vector<std::string>& variables) {
  ExprParser p(text, variables);
  MultiPoly out = p.parse_expr();
  p.skip();
  if (p.peek() != '\0') p.fail(std::string("unexpected character '") + p.peek() + "'");
  return out;
}

ScenarioConstraint parse_constraint(const std::string& text, const std::vector<std::string>& variables) {
  std::size_t at = std::string::npos, len = 0;
  int kind = 0;  // 1: >=, -1: <=, 0: =
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, ">=") == 0) {
      at = i, len = 2, kind = 1;
    } else if (text.compare(i, 2, "<=") == 0) {
      at = i, len = 2, kind = -1;
    } else if (text.compare(i, 2, "==") == 0) {
      at = i, len = 2, kind = 0;
    } else if (text[i] == '=') {
      at = i, len = 1, kind = 0;
    } else if (text[i] == '<' || text[i] == '>') {
      throw InputError("syntax error in '" + text + "' at column " + std::to_string(i + 1) +
                       ": strict comparisons are not supported, use <= or >=");
    }
    if (at != std::string::npos) break;
  }
  if (at == std::string::npos) throw InputError("syntax error in '" + text + "': expected <=, >= or =");
  const std::string lhs = text.substr(0, at), rhs = text.substr(at + len);
  if (rhs.find_first_of("<>=") != std::string::npos) {
    throw InputError("syntax error in '" + text + "': more than one comparison");
  }
  MultiPoly l, r;
  try {
    l = parse_affine(lhs, variables);
    r = parse_affine(rhs, variables);
  } catch (const InputError& e) {
    throw InputError(std::string(e.what()) + " (in constraint '" + text + "')");
  }
  ScenarioConstraint c;
  c.text = text;
  c.equality = kind == 0;
  c.poly = kind >= 0 ? l - r : r - l;
  return c;
}

std::size_t DecompositionScenario::variable_index(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) throw InputError("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - variables.begin());
}

DecompositionScenario parse_scenario(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("scenario is not valid JSON at " + line_col(json_text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw InputError("scenario must be a JSON object");
  for (const char* key : {"labels", "qvector", "columns"}) {
    if (!doc.contains(key)) throw InputError(std::string("scenario is missing \"") + key + "\"");
  }
  DecompositionScenario s;
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) throw InputError("labels: expected strings");
    s.labels.push_back(l.get<std::string>());
  }
  const std::size_t n = s.labels.size();
  if (n == 0) throw InputError("labels: empty");
  if (!doc["qvector"].is_array() || doc["qvector"].size() != n) {
    throw InputError("qvector: expected " + std::to_string(n) + " integers");
  }
  for (std::size_t i = 0; i < n; ++i) s.qvector.push_back(integer_from_json(doc["qvector"][i], "qvector[" + std::to_string(i) + "]"));

  const auto& rows = doc["columns"];
  if (!rows.is_array() || rows.size() != n) throw InputError("columns: expected " + std::to_string(n) + " rows");
  std::vector<std::vector<std::string>> cells(n);
  std::set<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw InputError("columns[" + std::to_string(i) + "]: expected " + std::to_string(n) + " entries");
    }
    for (const auto& e : rows[i]) {
      std::string text = e.is_string() ? e.get<std::string>() : e.is_number_integer() ? e.dump() : "";
      if (text.empty()) throw InputError("columns[" + std::to_string(i) + "]: entries must be strings or integers");
      collect_identifiers(text, names);
      cells[i].push_back(std::move(text));
    }
  }

  std::map<std::string, VariableBounds> explicit_bounds;
  std::optional<Integer> global_lo, global_hi;
  if (doc.contains("bounds")) {
    const auto& b = doc["bounds"];
    if (!b.is_object()) throw InputError("bounds: expected an object");
    for (const auto& [key, value] : b.items()) {
      if (key == "max") {
        global_hi = integer_from_json(value, "bounds.max");
      } else if (key == "min") {
        global_lo = integer_from_json(value, "bounds.min");
      } else {
        if (!value.is_array() || value.size() != 2) throw InputError("bounds." + key + ": expected [lo, hi]");
        explicit_bounds[key] = {integer_from_json(value[0], "bounds." + key), integer_from_json(value[1], "bounds." + key)};
        names.insert(key);
      }
    }
    // A lone "max" bounds magnitudes: the box is [-max, max].
    if (global_hi && !global_lo) global_lo = -*global_hi;
  }
  s.variables.assign(names.begin(), names.end());
  const std::size_t nv = s.variables.size();

  s.matrix.assign(n, std::vector<MultiPoly>(n, MultiPoly(nv)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      try {
        s.matrix[i][j] = parse_affine(cells[i][j], s.variables);
      } catch (const InputError& e) {
        throw InputError("columns[" + std::to_string(i) + "][" + std::to_string(j) + "]: " + e.what());
      }
      const MultiPoly& m = s.matrix[i][j];
      if (i == j && !(m.is_constant() && m.constant_term() == Integer(1))) {
        throw InputError("columns: diagonal entry " + std::to_string(i) + " must be 1");
      }
      if (j > i && !m.is_zero()) throw InputError("columns: entries above the diagonal must be 0 (lower unitriangular)");
    }
  }

  if (doc.contains("constraints")) {
    if (!doc["constraints"].is_array()) throw InputError("constraints: expected an array of strings");
    std::size_t k = 0;
    for (const auto& c : doc["constraints"]) {
      if (!c.is_string()) throw InputError("constraints[" + std::to_string(k) + "]: expected a string");
      try {
        s.constraints.push_back(parse_constraint(c.get<std::string>(), s.variables));
      } catch (const InputError& e) {
        throw InputError("constraints[" + std::to_string(k) + "]: " + e.what());
      }
      ++k;
    }
  }

  s.bounds.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    auto it = explicit_bounds.find(s.variables[v]);
    if (it != explicit_bounds.end()) {
      s.bounds[v] = it->second;
    } else {
      s.bounds[v] = {global_lo, global_hi};
    }
  }
  return s;
}

DecompositionScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::vector<MultiPoly> symbolic_multiplicities(const DecompositionScenario& s) {
  const std::size_t n = s.size(), nv = s.variables.size();
  std::vector<MultiPoly> m;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly r = MultiPoly::constant(nv, s.qvector[i]);
    for (std::size_t j = 0; j < i; ++j) r = r - s.matrix[i][j] * m[j];
    m.push_back(std::move(r));
  }
  return m;
}

DecompositionScenario without_constraint(const DecompositionScenario& s, std::size_t index) {
  if (index >= s.constraints.size()) throw InputError("no constraint with index " + std::to_string(index));
  DecompositionScenario out = s;
  out.constraints.erase(out.constraints.begin() + static_cast<std::ptrdiff_t>(index));
  return out;
}

// ------------------------------------------------------------------ solving

namespace {

// Integer extended by -inf and +inf.
struct Ext {
  int inf = 0;  // -1, 0, +1
  Integer v;

  static Ext finite(Integer x) { return {0, std::move(x)}; }
  int sign() const { return inf != 0 ? inf : v.sign(); }
};

bool operator<(const Ext& a, const Ext& b) {
  if (a.inf != b.inf) return a.inf < b.inf;
  return a.inf == 0 && a.v < b.v;
}

Ext add(const Ext& a, const Ext& b) {
  if (a.inf != 0) return a;  // never called with opposite infinities
  if (b.inf != 0) return b;
  return Ext::finite(a.v + b.v);
}

Ext mul(const Ext& a, const Ext& b) {
  if (a.sign() == 0 || b.sign() == 0) return Ext::finite(0);
  if (a.inf != 0 || b.inf != 0) return {a.sign() * b.sign(), 0};
  return Ext::finite(a.v * b.v);
}

struct Interval {
  Ext lo, hi;
};

Interval add(const Interval& a, const Interval& b) { return {add(a.lo, b.lo), add(a.hi, b.hi)}; }

Interval mul(const Interval& a, const Interval& b) {
  const Ext p[4] = {mul(a.lo, b.lo), mul(a.lo, b.hi), mul(a.hi, b.lo), mul(a.hi, b.hi)};
  Interval r{p[0], p[0]};
  for (const auto& x : p) {
    if (x < r.lo) r.lo = x;
    if (r.hi < x) r.hi = x;
  }
  return r;
}

bool is_point(const Interval& i) { return i.lo.inf == 0 && i.hi.inf == 0 && i.lo.v == i.hi.v; }

// Point-valued variables are substituted before interval evaluation, so that
// e.g. -72j + 32fj with f fixed is bounded as one linear term in j.
Interval range_of(const MultiPoly& p, const std::vector<Interval>& box) {
  std::map<MultiPoly::Monomial, Integer> reduced;
  for (const auto& [m, c] : p.terms()) {
    MultiPoly::Monomial r = m;
    Integer k = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0 || !is_point(box[i])) continue;
      for (int e = 0; e < m[i]; ++e) k *= box[i].lo.v;
      r[i] = 0;
    }
    reduced[r] += k;
  }
  Interval total{Ext::finite(0), Ext::finite(0)};
  for (const auto& [m, c] : reduced) {
    Interval t{Ext::finite(c), Ext::finite(c)};
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (int e = 0; e < m[i]; ++e) t = mul(t, box[i]);
    }
    total = add(total, t);
  }
  return total;
}

Integer floor_div(const Integer& a, const Integer& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer ceil_div(const Integer& a, const Integer& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

// Tightens the box from p >= 0 for every p; false if the box becomes empty.
bool propagate(const std::vector<MultiPoly>& nonneg, std::vector<Interval>& box) {
  for (int round = 0; round < 1000; ++round) {
    bool changed = false;
    for (const auto& p : nonneg) {
      for (std::size_t x = 0; x < box.size(); ++x) {
        if (p.degree_in(x) != 1) continue;
        const auto [a, b] = p.split_linear(x);
        const Interval ai = range_of(a, box);
        if (ai.lo.inf != 0 || ai.hi.inf != 0 || ai.lo.v != ai.hi.v || ai.lo.v.is_zero()) continue;
        const Integer coef = ai.lo.v;
        const Ext bhi = range_of(b, box).hi;
        if (bhi.inf != 0) continue;
        // coef * x + b >= 0 with b <= bhi
        if (coef.sign() > 0) {
          const Ext lo = Ext::finite(ceil_div(-bhi.v, coef));
          if (box[x].lo < lo) box[x].lo = lo, changed = true;
        } else {
          const Ext hi = Ext::finite(floor_div(bhi.v, -coef));
          if (hi < box[x].hi) box[x].hi = hi, changed = true;
        }
        if (box[x].hi < box[x].lo) return false;
      }
    }
    if (!changed) return true;
  }
  return true;
}

}  // namespace

FeasibleSet solve(const DecompositionScenario& s, const SolveOptions& options) {
  const std::size_t nv = s.variables.size();
  if (nv > options.max_variables) {
    throw GuardError("scenario has " + std::to_string(nv) + " unknowns, limit is " + std::to_string(options.max_variables));
  }
  FeasibleSet out;
  out.variables = s.variables;
  out.multiplicities = symbolic_multiplicities(s);

  std::vector<MultiPoly> nonneg, equal;
  for (const auto& m : out.multiplicities) nonneg.push_back(m);
  for (const auto& c : s.constraints) {
    nonneg.push_back(c.poly);
    if (c.equality) {
      nonneg.push_back(-c.poly);
      equal.push_back(c.poly);
    }
  }

  std::vector<Interval> box(nv, Interval{{-1, 0}, {1, 0}});
  for (std::size_t v = 0; v < nv; ++v) {
    if (s.bounds[v].lo) box[v].lo = Ext::finite(*s.bounds[v].lo);
    if (s.bounds[v].hi) box[v].hi = Ext::finite(*s.bounds[v].hi);
    if (box[v].hi < box[v].lo) out.empty_box = true;
  }
  if (!out.empty_box && !propagate(nonneg, box)) out.empty_box = true;
  if (out.empty_box) return out;
  for (std::size_t v = 0; v < nv; ++v) {
    if (box[v].lo.inf != 0 || box[v].hi.inf != 0) {
      throw InputError("unbounded search: no bound derivable for '" + s.variables[v] +
                       "'; add it to \"bounds\"");
    }
    out.box.emplace_back(box[v].lo.v, box[v].hi.v);
  }

  std::vector<std::size_t> order = options.order;
  if (order.empty()) {
    order.resize(nv);
    for (std::size_t v = 0; v < nv; ++v) order[v] = v;
  }
  {
    std::vector<std::size_t> check = order;
    std::sort(check.begin(), check.end());
    for (std::size_t v = 0; v < check.size(); ++v) {
      if (check.size() != nv || check[v] != v) throw InputError("enumeration order must be a permutation of the variables");
    }
  }

  auto feasible_range = [&](const std::vector<Interval>& b) {
    for (const auto& p : nonneg) {
      if (range_of(p, b).hi.sign() < 0) return false;
    }
    return true;
  };

  std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>> found;
  std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
    if (out.truncated) return;
    if (depth == nv) {
      std::vector<Integer> values(nv);
      for (std::size_t v = 0; v < nv; ++v) values[v] = box[v].lo.v;
      for (const auto& p : nonneg) {
        if (p.evaluate(values).sign() < 0) return;
      }
      for (const auto& p : equal) {
        if (!p.evaluate(values).is_zero()) return;
      }
      std::vector<Integer> mult;
      for (const auto& m : out.multiplicities) mult.push_back(m.evaluate(values));
      if (found.size() >= options.max_solutions) {
        out.truncated = true;
        return;
      }
      found.emplace_back(std::move(values), std::move(mult));
      return;
    }
    const std::size_t x = order[depth];
    const Interval saved = box[x];
    for (Integer k = saved.lo.v; k <= saved.hi.v && !out.truncated; k += 1) {
      box[x] = {Ext::finite(k), Ext::finite(k)};
      if (feasible_range(box)) dfs(depth + 1);
    }
    box[x] = saved;
  };
  if (feasible_range(box)) dfs(0);

  std::sort(found.begin(), found.end());
  for (auto& [a, m] : found) {
    out.assignments.push_back(std::move(a));
    out.values.push_back(std::move(m));
  }
  return out;
}

}  // namespace klq
