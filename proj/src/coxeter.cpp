#include "klq/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "klq/errors.hpp"

namespace klq {

CartanType parse_cartan_type(std::string_view s) {
  if (s.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
      case 'A': return CartanType::A;
      case 'B': return CartanType::B;
      case 'D': return CartanType::D;
      case 'F': return CartanType::F;
      case 'G': return CartanType::G;
      default: break;
    }
  }
  throw InputError("unsupported Cartan type '" + std::string(s) + "'");
}

char cartan_letter(CartanType t) {
  switch (t) {
    case CartanType::A: return 'A';
    case CartanType::B: return 'B';
    case CartanType::D: return 'D';
    case CartanType::F: return 'F';
    case CartanType::G: return 'G';
  }
  return '?';
}

std::string GroupDatum::label() const {
  std::string s = twist == Twist::flip ? "2" : "";
  return s + cartan_letter(type) + std::to_string(rank);
}

void GroupDatum::validate() const {
  const std::string l = label();
  if (rank < 1 || rank > 31) throw InputError("rank out of range for " + l);
  switch (type) {
    case CartanType::A: break;
    case CartanType::B:
      if (rank < 2) throw InputError("type B needs rank >= 2");
      break;
    case CartanType::D:
      if (rank < 4) throw InputError("type D needs rank >= 4");
      break;
    case CartanType::F:
      if (rank != 4) throw InputError("type F exists only in rank 4");
      break;
    case CartanType::G:
      if (rank != 2) throw InputError("type G exists only in rank 2");
      break;
  }
  if (twist == Twist::flip && !(type == CartanType::A && rank >= 2)) {
    throw InputError("twist 'flip' is only supported for type A_n with n >= 2, got " + l);
  }
}

std::uint64_t GroupDatum::expected_order() const {
  // Saturating arithmetic: callers compare against a guard.
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    return __builtin_mul_overflow(a, b, &r) ? UINT64_MAX : r;
  };
  std::uint64_t n = 1;
  switch (type) {
    case CartanType::A:
      for (int k = 2; k <= rank + 1; ++k) n = mul(n, static_cast<std::uint64_t>(k));
      return n;
    case CartanType::B:
      for (int k = 1; k <= rank; ++k) n = mul(n, static_cast<std::uint64_t>(2 * k));
      return n;
    case CartanType::D:
      for (int k = 1; k < rank; ++k) n = mul(n, static_cast<std::uint64_t>(2 * k));
      return mul(n, static_cast<std::uint64_t>(rank));
    case CartanType::F: return 2 * 6 * 8 * 12;
    case CartanType::G: return 2 * 6;
  }
  return 0;
}

std::vector<std::vector<int>> GroupDatum::cartan_matrix() const {
  const auto n = static_cast<std::size_t>(rank);
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](std::size_t i, std::size_t j, int aij, int aji) {
    a[i][j] = aij;
    a[j][i] = aji;
  };
  switch (type) {
    case CartanType::A:
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1, -1);
      break;
    case CartanType::B:
      // alpha_n short.
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -2, -1);
      break;
    case CartanType::D:
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 3, n - 1, -1, -1);
      break;
    case CartanType::F:
      link(0, 1, -1, -1);
      link(1, 2, -1, -2);  // alpha_1, alpha_2 long
      link(2, 3, -1, -1);
      break;
    case CartanType::G:
      link(0, 1, -1, -3);  // alpha_1 short
      break;
  }
  return a;
}

int GroupElement::length() const { return table_->length(id_); }
const Word& GroupElement::word() const { return table_->word(id_); }
std::uint32_t GroupElement::left_descents() const { return table_->left_descents(id_); }
std::uint32_t GroupElement::right_descents() const { return table_->right_descents(id_); }

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (table_ != o.table_) throw std::invalid_argument("elements of different groups");
  return GroupElement(*table_, table_->multiply(id_, o.id_));
}

GroupElement GroupElement::inverse() const { return GroupElement(*table_, table_->inverse(id_)); }

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1000)) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace

std::shared_ptr<const GroupTable> GroupTable::build(const GroupDatum& datum, std::uint64_t max_order) {
  datum.validate();
  const std::uint64_t order = datum.expected_order();
  if (order > max_order) {
    throw GuardError("|W| = " + std::to_string(order) + " for " + datum.label() + " exceeds guard " +
                     std::to_string(max_order));
  }
  std::shared_ptr<GroupTable> t(new GroupTable());
  t->datum_ = datum;
  const auto n = static_cast<std::size_t>(datum.rank);
  const auto cartan = datum.cartan_matrix();

  // Root system: closure of the simple roots under simple reflections.
  auto reflect = [&](std::size_t s, const std::vector<int>& beta) {
    int pairing = 0;
    for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * cartan[s][j];
    std::vector<int> r = beta;
    r[s] -= pairing;
    return r;
  };
  std::unordered_map<std::vector<int>, int, VecHash> root_index;
  auto& roots = t->roots_;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    root_index.emplace(e, static_cast<int>(roots.size()));
    roots.push_back(e);
  }
  for (std::size_t k = 0; k < roots.size(); ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      auto r = reflect(s, roots[k]);
      if (!root_index.count(r)) {
        root_index.emplace(r, static_cast<int>(roots.size()));
        roots.push_back(std::move(r));
      }
    }
  }
  std::vector<bool> positive(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    positive[k] = std::all_of(roots[k].begin(), roots[k].end(), [](int c) { return c >= 0; });
    t->num_positive_roots_ += positive[k] ? 1 : 0;
  }
  std::vector<std::vector<int>> reflection(n, std::vector<int>(roots.size()));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < roots.size(); ++k) reflection[s][k] = root_index.at(reflect(s, roots[k]));
  }

  // An element is determined by the images of the simple roots.
  using State = std::vector<int>;
  std::vector<State> states;
  std::unordered_map<State, ElemId, VecHash> index;
  State id_state(n);
  for (std::size_t i = 0; i < n; ++i) id_state[i] = static_cast<int>(i);
  states.push_back(id_state);
  index.emplace(id_state, 0);
  t->words_.emplace_back();

  auto times_generator = [&](const State& w, std::size_t s) {
    // (ws)(alpha_j) = w(alpha_j) - <alpha_s^vee, alpha_j> w(alpha_s)
    State out(n);
    const auto& ws = roots[static_cast<std::size_t>(w[s])];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == s) {
        std::vector<int> neg = ws;
        for (int& c : neg) c = -c;
        out[j] = root_index.at(neg);
        continue;
      }
      std::vector<int> v = roots[static_cast<std::size_t>(w[j])];
      for (std::size_t k = 0; k < n; ++k) v[k] -= cartan[s][j] * ws[k];
      out[j] = root_index.at(v);
    }
    return out;
  };

  // Breadth-first in id order with generators ascending yields ShortLex
  // normal forms: the first time an element is reached it is reached via
  // its lexicographically least reduced word.
  for (std::size_t u = 0; u < states.size(); ++u) {
    for (std::size_t s = 0; s < n; ++s) {
      if (!positive[static_cast<std::size_t>(states[u][s])]) continue;  // length would drop
      State next = times_generator(states[u], s);
      if (index.count(next)) continue;
      if (states.size() >= max_order) throw GuardError("|W| exceeds guard during enumeration");
      const auto id = static_cast<ElemId>(states.size());
      index.emplace(next, id);
      states.push_back(std::move(next));
      Word w = t->words_[u];
      w.push_back(static_cast<Gen>(s));
      t->words_.push_back(std::move(w));
    }
  }
  if (states.size() != order) {
    throw std::logic_error("enumerated " + std::to_string(states.size()) + " elements, expected " +
                           std::to_string(order));
  }

  const std::size_t size = states.size();
  t->right_.resize(size * n);
  t->left_.resize(size * n);
  for (std::size_t u = 0; u < size; ++u) {
    for (std::size_t s = 0; s < n; ++s) {
      t->right_[u * n + s] = index.at(times_generator(states[u], s));
      State l(n);
      for (std::size_t j = 0; j < n; ++j) l[j] = reflection[s][static_cast<std::size_t>(states[u][j])];
      t->left_[u * n + s] = index.at(l);
    }
  }
  t->inverse_.resize(size);
  for (std::size_t u = 0; u < size; ++u) {
    Word rev(t->words_[u].rbegin(), t->words_[u].rend());
    t->inverse_[u] = t->element_of(rev);
  }
  return t;
}

std::uint32_t GroupTable::left_descents(ElemId w) const {
  std::uint32_t m = 0;
  for (Gen s = 0; s < rank(); ++s) {
    if (is_left_descent(w, s)) m |= std::uint32_t{1} << s;
  }
  return m;
}

std::uint32_t GroupTable::right_descents(ElemId w) const {
  std::uint32_t m = 0;
  for (Gen s = 0; s < rank(); ++s) {
    if (is_right_descent(w, s)) m |= std::uint32_t{1} << s;
  }
  return m;
}

Gen GroupTable::first_left_descent(ElemId w) const {
  for (Gen s = 0; s < rank(); ++s) {
    if (is_left_descent(w, s)) return s;
  }
  return -1;
}

ElemId GroupTable::multiply(ElemId x, ElemId y) const {
  for (Gen s : words_[y]) x = right_mul(x, s);
  return x;
}

ElemId GroupTable::element_of(const Word& word) const {
  ElemId x = identity();
  for (Gen s : word) {
    if (s < 0 || s >= rank()) {
      throw InputError("generator index " + std::to_string(s + 1) + " out of range 1.." + std::to_string(rank()));
    }
    x = right_mul(x, s);
  }
  return x;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int parse_index(const std::string& tok, int rank) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw InputError("bad generator '" + tok + "'");
  }
  int i = std::stoi(tok);
  if (i < 1 || i > rank) {
    throw InputError("generator index " + tok + " out of range 1.." + std::to_string(rank));
  }
  return i - 1;
}

}  // namespace

ElemId GroupTable::parse(std::string_view text) const {
  const std::string s = trim(text);
  if (s.empty() || s == "e") return identity();
  if (s == "w0") return longest_element();
  if (s.rfind("w0(", 0) == 0) {
    if (s.back() != ')') throw InputError("bad parabolic syntax '" + s + "'");
    std::string inner = s.substr(3, s.size() - 4);
    std::uint32_t subset = 0;
    std::stringstream ss(inner);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (trim(tok).empty()) continue;
      subset |= std::uint32_t{1} << parse_index(trim(tok), rank());
    }
    return longest_element(subset);
  }
  Word w;
  std::stringstream ss(s);
  std::string tok;
  while (ss >> tok) w.push_back(parse_index(tok, rank()));
  return element_of(w);
}

bool GroupTable::bruhat_leq(ElemId x, ElemId w) const {
  if (length(x) > length(w)) return false;
  // x <= s w' (reduced) iff min(x, s x) <= w'.
  for (Gen s : words_[w]) {
    if (is_left_descent(x, s)) x = left_mul(x, s);
  }
  return x == identity();
}

std::vector<ElemId> GroupTable::bruhat_interval(ElemId w) const {
  std::vector<char> in(size(), 0);
  std::vector<ElemId> members{identity()};
  in[identity()] = 1;
  const Word& word = words_[w];
  // [e, s w'] = [e, w'] u s[e, w'], building w' from the right.
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const std::size_t current = members.size();
    for (std::size_t k = 0; k < current; ++k) {
      ElemId y = left_mul(members[k], *it);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

ElemId GroupTable::longest_element(std::uint32_t subset) const {
  ElemId w = identity();
  bool grew = true;
  while (grew) {
    grew = false;
    for (Gen s = 0; s < rank(); ++s) {
      if ((subset >> s & 1U) && !is_right_descent(w, s)) {
        w = right_mul(w, s);
        grew = true;
      }
    }
  }
  return w;
}

ElemId GroupTable::apply_twist(ElemId w, bool* warned) const {
  if (datum_.twist == Twist::none) {
    if (warned) *warned = true;
    return w;
  }
  Word t;
  for (Gen s : words_[w]) t.push_back(twist_generator(s));
  return element_of(t);
}

void GroupTable::require_type_a(const char* what) const {
  if (datum_.type != CartanType::A) throw InputError(std::string(what) + " needs a type A group");
}

std::vector<int> GroupTable::permutation(ElemId w) const {
  require_type_a("permutation model");
  std::vector<int> p(static_cast<std::size_t>(rank() + 1));
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i) + 1;
  for (Gen s : words_[w]) std::swap(p[static_cast<std::size_t>(s)], p[static_cast<std::size_t>(s) + 1]);
  return p;
}

Partition GroupTable::cycle_type(ElemId w) const {
  require_type_a("cycle type");
  const auto p = permutation(w);
  std::vector<char> seen(p.size(), 0);
  std::vector<int> cycles;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j] - 1)) {
      seen[j] = 1;
      ++len;
    }
    cycles.push_back(len);
  }
  return Partition(std::move(cycles));
}

ElemId GroupTable::from_permutation(const std::vector<int>& one_line) const {
  require_type_a("permutation model");
  if (one_line.size() != static_cast<std::size_t>(rank() + 1)) throw InputError("permutation has wrong size");
  std::vector<int> p = one_line;
  std::vector<int> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i) + 1) throw InputError("not a permutation");
  }
  // Bubble sort records a reduced word of the inverse route.
  Word peeled;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (p[i] > p[i + 1]) {
        std::swap(p[i], p[i + 1]);
        peeled.push_back(static_cast<Gen>(i));
        swapped = true;
      }
    }
  }
  return element_of(Word(peeled.rbegin(), peeled.rend()));
}

std::string GroupTable::word_string(ElemId w) const {
  if (words_[w].empty()) return "e";
  std::string s;
  for (Gen g : words_[w]) {
    if (!s.empty()) s += ' ';
    s += std::to_string(g + 1);
  }
  return s;
}

}  // namespace klq
