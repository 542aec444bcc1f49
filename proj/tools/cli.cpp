#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "klq/cells.hpp"
#include "klq/deduce.hpp"
#include "klq/dl.hpp"
#include "klq/errors.hpp"
#include "klq/json_io.hpp"
#include "klq/kl_cache.hpp"

namespace klq::cli {

namespace {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- plumbing

struct DatumArgs {
  std::optional<std::string> type;
  std::optional<int> rank;
  std::optional<int> n;
  std::string twist = "none";
};

struct Guards {
  std::uint64_t max_order = GroupTable::default_max_order;
  std::size_t max_interval = KLTable::default_max_interval;
};

void add_datum_options(CLI::App* app, DatumArgs& a, bool with_twist) {
  app->add_option("--type", a.type, "Cartan type (A, B, D, F, G)");
  app->add_option("--rank", a.rank, "Rank");
  app->add_option("--n", a.n, "Type A_{n-1}");
  if (with_twist) {
    app->add_option("--twist", a.twist, "Frobenius twist")->check(CLI::IsMember({"none", "flip"}));
  }
}

void add_guard_options(CLI::App* app, Guards& g, bool interval) {
  app->add_option("--max-order", g.max_order, "Refuse groups larger than this")->capture_default_str();
  if (interval) {
    app->add_option("--max-interval", g.max_interval, "Refuse KL recursions over larger Bruhat intervals")
        ->capture_default_str();
  }
}

GroupDatum resolve_datum(const DatumArgs& a) {
  GroupDatum d;
  if (a.n) {
    if (a.type && *a.type != "A" && *a.type != "a") throw InputError("--n implies type A, got --type " + *a.type);
    if (a.rank && *a.rank != *a.n - 1) {
      throw InputError("--n " + std::to_string(*a.n) + " conflicts with --rank " + std::to_string(*a.rank));
    }
    if (*a.n < 2) throw InputError("--n must be at least 2");
    d.type = CartanType::A;
    d.rank = *a.n - 1;
  } else {
    if (!a.type || !a.rank) throw InputError("give --type and --rank, or --n");
    d.type = parse_cartan_type(*a.type);
    d.rank = *a.rank;
  }
  d.twist = a.twist == "flip" ? Twist::flip : Twist::none;
  d.validate();
  return d;
}

Json datum_json(const GroupDatum& d) {
  Json j;
  j["type"] = std::string(1, cartan_letter(d.type));
  j["rank"] = d.rank;
  j["twist"] = d.twist == Twist::flip ? "flip" : "none";
  j["label"] = d.label();
  return j;
}

Json word_j(const GroupTable& g, ElemId w) { return Json(word_to_json(g.word(w))); }
Json poly_j(const LaurentPoly& p) { return Json(laurent_to_json(p)); }
Json int_j(const Integer& n) { return Json(integer_to_json(n)); }

Json coeffs_json(const PartitionCoeffs& c, bool nonzero_only) {
  Json j = Json::object();
  for (const auto& [lambda, p] : c) {
    if (!nonzero_only || !p.is_zero()) j[lambda.to_string()] = poly_j(p);
  }
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

void print_table(std::ostream& out, const std::vector<std::string>& head,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(head.size());
  for (std::size_t c = 0; c < head.size(); ++c) width[c] = head[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(head);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& r : rows) line(r);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int exit_for(bool pass) { return pass ? 0 : 1; }

// ---------------------------------------------------------------- group

struct GroupArgs {
  DatumArgs datum;
  Guards guards;
  bool elements = false;
  bool json = false;
};

int cmd_group(const GroupArgs& a, std::ostream& out) {
  const GroupDatum d = resolve_datum(a.datum);
  auto g = GroupTable::build(d, a.guards.max_order);
  const ElemId w0 = g->longest_element();
  if (a.json) {
    Json j;
    j["group"] = datum_json(d);
    j["order"] = g->size();
    j["positive_roots"] = g->num_positive_roots();
    j["w0"] = word_j(*g, w0);
    if (a.elements) {
      Json list = Json::array();
      for (ElemId w = 0; w < g->size(); ++w) {
        list.push_back(Json{{"id", w}, {"word", word_j(*g, w)}, {"length", g->length(w)}});
      }
      j["elements"] = std::move(list);
    }
    emit(out, j);
    return 0;
  }
  out << d.label() << ": order " << g->size() << ", " << g->num_positive_roots() << " positive roots, w0 = "
      << g->word_string(w0) << " (length " << g->length(w0) << ")\n";
  if (a.elements) {
    std::vector<std::vector<std::string>> rows;
    for (ElemId w = 0; w < g->size(); ++w) {
      rows.push_back({std::to_string(w), std::to_string(g->length(w)), g->word_string(w)});
    }
    print_table(out, {"id", "length", "word"}, rows);
  }
  return 0;
}

// ---------------------------------------------------------------- kl

struct KlArgs {
  DatumArgs datum;
  Guards guards;
  std::string w;
  std::optional<std::string> x;
  std::string basis = "Cprime";
  std::optional<std::string> cache;
  bool use_cache = false;
  bool json = false;
};

void maybe_load_cache(KLTable& kl, const std::optional<std::string>& explicit_path, bool use_default) {
  if (explicit_path) {
    load_kl_cache(kl, *explicit_path);
  } else if (use_default) {
    const std::string path = default_cache_path(kl.group().datum());
    if (std::filesystem::exists(path)) load_kl_cache(kl, path);
  }
}

int cmd_kl(const KlArgs& a, std::ostream& out) {
  const GroupDatum d = resolve_datum(a.datum);
  const BasisKind basis = parse_basis(a.basis);
  auto g = GroupTable::build(d, a.guards.max_order);
  const ElemId w = g->parse(a.w);
  const ElemId x = a.x ? g->parse(*a.x) : g->identity();

  KLTable kl(g, a.guards.max_interval);
  maybe_load_cache(kl, a.cache, a.use_cache);
  HeckeElt element;
  switch (basis) {
    case BasisKind::t: element = HeckeElt::basis(w); break;
    case BasisKind::cprime: element = kl.cprime(w); break;
    case BasisKind::c: element = kl.c(w); break;
  }

  if (a.x) {
    const LaurentPoly coeff = element.coefficient(x);
    const Integer mu = kl.mu(x, w);
    if (a.json) {
      Json j;
      j["group"] = datum_json(d);
      j["w"] = word_j(*g, w);
      j["x"] = word_j(*g, x);
      j["basis"] = basis_name(basis);
      j["coeff"] = poly_j(coeff);
      j["mu"] = int_j(mu);
      emit(out, j);
    } else {
      out << "coefficient of t_x in " << basis_name(basis) << "_w: " << coeff.to_string() << "\n";
      out << "mu(x, w): " << mu.to_string() << "\n";
    }
    return 0;
  }

  if (a.json) {
    Json j;
    j["group"] = datum_json(d);
    j["w"] = word_j(*g, w);
    j["basis"] = basis_name(basis);
    Json terms = Json::array();
    for (const auto& [y, p] : element.coeffs()) terms.push_back(Json{{"x", word_j(*g, y)}, {"coeff", poly_j(p)}});
    j["terms"] = std::move(terms);
    emit(out, j);
    return 0;
  }
  out << basis_name(basis) << "_w for w = " << g->word_string(w) << " in " << d.label() << " ("
      << element.size() << " terms, t-basis coefficients)\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& [y, p] : element.coeffs()) {
    rows.push_back({g->word_string(y), std::to_string(g->length(y)), p.to_string()});
  }
  print_table(out, {"x", "l(x)", "coefficient"}, rows);
  return 0;
}

// ---------------------------------------------------------------- cells

struct CellsArgs {
  DatumArgs datum;
  Guards guards;
  std::string kind = "two-sided";
  std::size_t max_a_order = 200;
  bool json = false;
};

int cmd_cells(const CellsArgs& a, std::ostream& out) {
  const GroupDatum d = resolve_datum(a.datum);
  const CellKind kind = parse_cell_kind(a.kind);
  auto g = GroupTable::build(d, a.guards.max_order);
  KLTable kl(g, a.guards.max_interval);
  const CellPartition cells = cell_partition(kl, kind);

  // a-values: brute force where affordable, else the type A formula.
  std::string source = "none";
  std::vector<int> a_of;
  if (g->size() <= a.max_a_order) {
    a_of = a_values_brute(kl, a.max_a_order);
    source = "brute";
  } else if (d.type == CartanType::A) {
    for (ElemId w = 0; w < g->size(); ++w) a_of.push_back(a_value_type_a(*g, w));
    source = "rsk";
  }
  auto block_a = [&](const std::vector<ElemId>& block) -> std::optional<int> {
    if (a_of.empty()) return std::nullopt;
    const int first = a_of[block.front()];
    for (ElemId w : block) {
      if (a_of[w] != first) return std::nullopt;
    }
    return first;
  };
  const bool type_a = d.type == CartanType::A;
  const auto covers = cells.cover_relations();

  if (a.json) {
    Json j;
    j["group"] = datum_json(d);
    j["kind"] = cell_kind_name(kind);
    j["a_source"] = source;
    Json list = Json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& block = cells.blocks[i];
      Json c;
      c["index"] = i;
      c["size"] = block.size();
      if (auto av = block_a(block)) c["a"] = *av; else c["a"] = nullptr;
      if (type_a && kind == CellKind::two_sided) c["shape"] = rsk_shape(*g, block.front()).to_string();
      Json elems = Json::array();
      for (ElemId w : block) elems.push_back(word_j(*g, w));
      c["elements"] = std::move(elems);
      list.push_back(std::move(c));
    }
    j["cells"] = std::move(list);
    Json edges = Json::array();
    for (const auto& [lo, hi] : covers) edges.push_back(Json::array({lo, hi}));
    j["order"] = std::move(edges);
    emit(out, j);
    return 0;
  }

  out << cells.size() << " " << cell_kind_name(kind) << " cells in " << d.label() << " (a-values: " << source << ")\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& block = cells.blocks[i];
    std::string elems;
    for (ElemId w : block) elems += (elems.empty() ? "" : "; ") + g->word_string(w);
    const auto av = block_a(block);
    std::vector<std::string> row{std::to_string(i), std::to_string(block.size()), av ? std::to_string(*av) : "-"};
    if (type_a && kind == CellKind::two_sided) row.push_back(rsk_shape(*g, block.front()).to_string());
    row.push_back(elems);
    rows.push_back(std::move(row));
  }
  std::vector<std::string> head{"cell", "size", "a"};
  if (type_a && kind == CellKind::two_sided) head.emplace_back("shape");
  head.emplace_back("elements");
  print_table(out, head, rows);
  out << "covers (lower < upper):";
  for (const auto& [lo, hi] : covers) out << " " << lo << "<" << hi;
  out << "\n";
  return 0;
}

// ---------------------------------------------------------------- qw

struct QwArgs {
  DatumArgs datum;
  Guards guards;
  std::string form = "GL";
  std::string w;
  bool graded = false;
  bool at_v1 = false;
  std::string basis = "C";
  std::string shift = "0";
  bool json = false;
};

GroupDatum form_datum(const DatumArgs& args, Form form) {
  DatumArgs copy = args;
  copy.twist = "none";
  GroupDatum d = resolve_datum(copy);
  if (d.type != CartanType::A) {
    throw InputError(std::string("form ") + form_name(form) + " needs type A, got " + d.label());
  }
  if (form == Form::SU) {
    d.twist = Twist::flip;
    d.validate();
  }
  return d;
}

int parse_shift(const std::string& text, int length) {
  if (text == "auto") return length;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw InputError("--shift expects 'auto' or an integer, got '" + text + "'");
  return value;
}

int cmd_qw(const QwArgs& a, std::ostream& out) {
  const Form form = parse_form(a.form);
  const GroupDatum d = form_datum(a.datum, form);
  const BasisKind basis = parse_basis(a.basis);
  const Mode mode = a.graded ? Mode::graded : Mode::at_v1;
  if (form == Form::SU && mode == Mode::graded) throw InputError("form SU supports --at-v1 only");

  auto g = GroupTable::build(d, a.guards.max_order);
  const ElemId w = g->parse(a.w);
  const int shift = parse_shift(a.shift, g->length(w));
  DLContext ctx(g, a.guards.max_interval);
  const AlmostCharVector vec = ctx.q_coordinates(w, basis, mode, shift);
  const UnipotentCombo combo = unipotent_decomposition(vec, form);
  const int sign = positive_sign(combo);
  std::optional<PositivityReport> report;
  if (basis == BasisKind::c && shift == 0) report = positivity_report(ctx, w, form, mode);

  if (a.json) {
    Json j;
    j["group"] = datum_json(d);
    j["form"] = form_name(form);
    j["w"] = word_j(*g, w);
    j["basis"] = basis_name(basis);
    j["mode"] = mode_name(mode);
    j["shift"] = shift;
    j["almost"] = coeffs_json(vec.coords, false);
    j["coords"] = coeffs_json(combo.coeffs, true);
    j["sign"] = sign;
    j["pass"] = sign != 0;
    if (report) {
      Json cands = Json::array();
      for (const auto& c : report->candidates) cands.push_back(Json{{"name", c.name}, {"a", c.a}, {"matches", c.matches}});
      j["sign_candidates"] = std::move(cands);
    }
    emit(out, j);
    return 0;
  }
  out << "Q_w data for w = " << g->word_string(w) << " in " << form_name(form) << "_" << ctx.n() << " (basis "
      << basis_name(basis) << ", " << mode_name(mode) << ", shift " << shift << ")\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < vec.coords.size(); ++i) {
    rows.push_back({vec.coords[i].first.to_string(), vec.coords[i].second.to_string(),
                    combo.coeffs[i].second.to_string()});
  }
  print_table(out, {"lambda", "almost character", "unipotent"}, rows);
  out << "sign: " << sign << "  nonnegative up to sign: " << yes_no(sign != 0) << "\n";
  if (report) {
    for (const auto& c : report->candidates) {
      out << "  (-1)^" << c.name << " = " << (c.a % 2 ? -1 : 1) << (c.matches ? "  matches" : "  differs") << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------- check

struct PositivityArgs {
  DatumArgs datum;
  Guards guards;
  std::string form = "GL";
  bool all = false;
  std::optional<std::string> w;
  bool graded = false;
  bool at_v1 = false;
  std::string require_sign = "none";
  unsigned threads = 1;
  bool json = false;
};

int cmd_check_positivity(const PositivityArgs& a, std::ostream& out) {
  const Form form = parse_form(a.form);
  const GroupDatum d = form_datum(a.datum, form);
  const Mode mode = a.graded ? Mode::graded : Mode::at_v1;
  if (form == Form::SU && mode == Mode::graded) throw InputError("form SU supports --at-v1 only");
  if (a.all == a.w.has_value()) throw InputError("give exactly one of --all and --w");
  if (a.threads == 0) throw InputError("--threads must be positive");

  auto g = GroupTable::build(d, a.guards.max_order);
  std::vector<ElemId> targets;
  if (a.all) {
    for (ElemId w = 0; w < g->size(); ++w) targets.push_back(w);
  } else {
    targets.push_back(g->parse(*a.w));
  }
  DLContext ctx(g, a.guards.max_interval);
  if (a.all) ctx.kl().compute_all();

  std::vector<std::optional<PositivityReport>> reports(targets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < targets.size(); i = next++) reports[i] = positivity_report(ctx, targets[i], form, mode);
  };
  const unsigned nthreads = std::min<unsigned>(a.threads, static_cast<unsigned>(targets.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<std::string> rule_names;
  std::map<std::string, std::size_t> rule_matches;
  std::vector<ElemId> failures;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (!reports[i]->pass) failures.push_back(targets[i]);
    for (const auto& c : reports[i]->candidates) {
      if (!rule_matches.count(c.name)) rule_names.push_back(c.name);
      rule_matches[c.name] += c.matches ? 1 : 0;
    }
  }
  std::optional<std::string> required;
  if (a.require_sign == "rsk") required = "n(rsk shape)";
  if (a.require_sign == "length") required = "l(w)";
  const bool positivity_pass = failures.empty();
  const bool sign_pass = !required || rule_matches[*required] == targets.size();
  const bool pass = positivity_pass && sign_pass;

  if (a.json) {
    Json j;
    j["group"] = datum_json(d);
    j["form"] = form_name(form);
    j["mode"] = mode_name(mode);
    j["count"] = targets.size();
    j["positivity_pass"] = positivity_pass;
    Json rules = Json::array();
    for (const auto& name : rule_names) rules.push_back(Json{{"name", name}, {"matches", rule_matches[name]}, {"total", targets.size()}});
    j["sign_rules"] = std::move(rules);
    j["required_sign_rule"] = required ? Json(*required) : Json(nullptr);
    j["pass"] = pass;
    Json fails = Json::array();
    for (ElemId w : failures) fails.push_back(word_j(*g, w));
    j["failures"] = std::move(fails);
    Json list = Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      Json r;
      r["w"] = word_j(*g, targets[i]);
      r["coords"] = coeffs_json(reports[i]->combo.coeffs, true);
      r["sign"] = reports[i]->sign;
      r["pass"] = reports[i]->pass;
      list.push_back(std::move(r));
    }
    j["reports"] = std::move(list);
    emit(out, j);
    return exit_for(pass);
  }
  out << "positivity " << form_name(form) << "_" << ctx.n() << " " << mode_name(mode) << ": "
      << targets.size() - failures.size() << "/" << targets.size() << " elements pass\n";
  for (ElemId w : failures) out << "  fails: " << g->word_string(w) << "\n";
  for (const auto& name : rule_names) {
    out << "  sign = (-1)^" << name << ": " << rule_matches[name] << "/" << targets.size()
        << (required && *required == name ? "  (required)" : "") << "\n";
  }
  if (!a.all) {
    const auto& r = *reports.front();
    std::vector<std::vector<std::string>> rows;
    for (const auto& [lambda, p] : r.combo.coeffs) {
      if (!p.is_zero()) rows.push_back({lambda.to_string(), p.to_string()});
    }
    print_table(out, {"lambda", "coefficient"}, rows);
    out << "sign: " << r.sign << "\n";
  }
  out << (pass ? "PASS" : "FAIL") << "\n";
  return exit_for(pass);
}

struct NArgs {
  int n = 0;
  Guards guards;
  bool json = false;
};

int cmd_check_subreg(const NArgs& a, std::ostream& out) {
  const SubregReport r = subreg_check(a.n, a.guards.max_interval);
  if (a.json) {
    Json j;
    j["n"] = r.n;
    j["scale"] = int_j(r.scale);
    j["divisible"] = r.divisible;
    j["quotient"] = coeffs_json(r.quotient, true);
    j["sign"] = r.sign;
    j["expected_sign"] = r.expected_sign;
    j["shape_matches"] = r.shape_matches;
    j["sign_matches"] = r.sign_matches;
    j["pass"] = r.pass();
    emit(out, j);
    return exit_for(r.pass());
  }
  out << "SU_" << r.n << ", w = s1 w0: Q_w / " << r.scale.to_string() << "\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& [lambda, p] : r.quotient) {
    if (!p.is_zero()) rows.push_back({lambda.to_string(), p.to_string()});
  }
  print_table(out, {"lambda", "coefficient"}, rows);
  out << "shape matches rho_{2 1^" << r.n - 2 << "} + " << r.n - 1 << " rho_{1^" << r.n << "}: " << yes_no(r.shape_matches)
      << "\nsign " << r.sign << ", expected (-1)^{l(w0)-1} = " << r.expected_sign << "\n"
      << (r.pass() ? "PASS" : "FAIL") << "\n";
  return exit_for(r.pass());
}

int cmd_check_triangular(const NArgs& a, std::ostream& out) {
  const TriangularityReport r = triangularity_report(a.n);
  if (a.json) {
    Json j;
    j["n"] = r.n;
    Json bs = Json::array();
    for (const auto& b : r.bijections) bs.push_back(Json{{"name", b.name}, {"triangular", b.triangular}, {"spans", b.spans}});
    j["bijections"] = std::move(bs);
    j["chosen"] = r.chosen ? Json(r.bijections[*r.chosen].name) : Json(nullptr);
    j["block_sizes"] = r.block_sizes;
    j["rank"] = r.rank;
    j["partitions"] = r.num_partitions;
    j["pass"] = r.pass();
    emit(out, j);
    return exit_for(r.pass());
  }
  out << "GL_" << r.n << " block triangularity of [Q_w : R_lambda]\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& b : r.bijections) rows.push_back({b.name, yes_no(b.triangular), yes_no(b.spans)});
  print_table(out, {"bijection", "triangular", "spans"}, rows);
  out << "rank " << r.rank << " of " << r.num_partitions << " partitions\n" << (r.pass() ? "PASS" : "FAIL") << "\n";
  return exit_for(r.pass());
}

int cmd_check_lemma(const NArgs& a, std::ostream& out) {
  const LemmaReport r = lemma_report(a.n, a.guards.max_interval);
  if (a.json) {
    Json j;
    j["n"] = r.n;
    j["v1_identity"] = r.v1_identity;
    j["generic_v_inv"] = r.generic_v_inv;
    j["v_power_n_minus_2"] = r.v_power_n_minus_2;
    j["pass"] = r.pass();
    emit(out, j);
    return exit_for(r.pass());
  }
  out << "A_" << r.n - 1 << ": C'_{s1 w0} against C'_{w0} and c C'_{wI}, c = s1...s" << r.n - 1 << "\n"
      << "  at v = 1:                     " << yes_no(r.v1_identity) << "\n"
      << "  generic v, factor v^-1:       " << yes_no(r.generic_v_inv) << "\n"
      << "  generic v, factor v^" << r.n - 2 << " (report only): " << yes_no(r.v_power_n_minus_2) << "\n"
      << (r.pass() ? "PASS" : "FAIL") << "\n";
  return exit_for(r.pass());
}

// ---------------------------------------------------------------- deduce

struct DeduceArgs {
  std::string scenario;
  std::optional<std::string> drop;
  std::optional<std::string> order;
  std::size_t max_variables = SolveOptions{}.max_variables;
  std::size_t max_solutions = SolveOptions{}.max_solutions;
  bool json = false;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

int cmd_deduce(const DeduceArgs& a, std::ostream& out) {
  DecompositionScenario s = load_scenario(a.scenario);
  std::optional<std::string> dropped;
  if (a.drop) {
    std::size_t index = s.constraints.size();
    const bool numeric = !a.drop->empty() && std::all_of(a.drop->begin(), a.drop->end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    for (std::size_t i = 0; i < s.constraints.size(); ++i) {
      if ((numeric && std::to_string(i) == *a.drop) || s.constraints[i].text == *a.drop) index = i;
    }
    if (index == s.constraints.size()) throw InputError("--drop: no constraint '" + *a.drop + "'");
    dropped = s.constraints[index].text;
    s = without_constraint(s, index);
  }
  SolveOptions opt;
  opt.max_variables = a.max_variables;
  opt.max_solutions = a.max_solutions;
  if (a.order) {
    for (const auto& name : split_list(*a.order)) opt.order.push_back(s.variable_index(name));
    std::vector<std::size_t> sorted = opt.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i || sorted.size() != s.variables.size()) {
        throw InputError("--order must list every variable exactly once");
      }
    }
    if (sorted.size() != s.variables.size()) throw InputError("--order must list every variable exactly once");
  }
  const FeasibleSet fs = solve(s, opt);

  if (a.json) {
    Json j;
    j["scenario"] = a.scenario;
    j["labels"] = s.labels;
    j["variables"] = fs.variables;
    j["dropped"] = dropped ? Json(*dropped) : Json(nullptr);
    Json ms = Json::array();
    for (std::size_t k = 0; k < s.size(); ++k) {
      ms.push_back(Json{{"label", s.labels[k]}, {"value", fs.multiplicities[k].to_string(fs.variables)}});
    }
    j["multiplicities"] = std::move(ms);
    Json box = Json::object();
    for (std::size_t v = 0; v < fs.variables.size() && v < fs.box.size(); ++v) {
      box[fs.variables[v]] = Json::array({int_j(fs.box[v].first), int_j(fs.box[v].second)});
    }
    j["box"] = std::move(box);
    j["empty_box"] = fs.empty_box;
    j["count"] = fs.assignments.size();
    j["truncated"] = fs.truncated;
    Json sols = Json::array();
    for (std::size_t i = 0; i < fs.assignments.size(); ++i) {
      Json assign = Json::object();
      for (std::size_t v = 0; v < fs.variables.size(); ++v) assign[fs.variables[v]] = int_j(fs.assignments[i][v]);
      Json vals = Json::array();
      for (const auto& m : fs.values[i]) vals.push_back(int_j(m));
      sols.push_back(Json{{"assignment", std::move(assign)}, {"multiplicities", std::move(vals)}});
    }
    j["solutions"] = std::move(sols);
    emit(out, j);
    return 0;
  }
  if (dropped) out << "dropped constraint: " << *dropped << "\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < s.size(); ++k) rows.push_back({s.labels[k], fs.multiplicities[k].to_string(fs.variables)});
  print_table(out, {"label", "multiplicity"}, rows);
  out << "\n" << fs.assignments.size() << (fs.truncated ? "+ (truncated)" : "") << " feasible assignment"
      << (fs.assignments.size() == 1 ? "" : "s") << "\n";
  if (!fs.assignments.empty()) {
    std::vector<std::string> head = fs.variables;
    for (std::size_t k = 0; k < s.size(); ++k) head.push_back("m" + std::to_string(k + 1));
    rows.clear();
    for (std::size_t i = 0; i < fs.assignments.size(); ++i) {
      std::vector<std::string> row;
      for (const auto& x : fs.assignments[i]) row.push_back(x.to_string());
      for (const auto& m : fs.values[i]) row.push_back(m.to_string());
      rows.push_back(std::move(row));
    }
    print_table(out, head, rows);
  }
  return 0;
}

// ---------------------------------------------------------------- cache

struct CacheArgs {
  DatumArgs datum;
  Guards guards;
  std::optional<std::string> path;
  bool json = false;
};

std::string cache_path(const CacheArgs& a, const GroupDatum& d) { return a.path ? *a.path : default_cache_path(d); }

int cmd_cache_save(const CacheArgs& a, std::ostream& out) {
  const GroupDatum d = resolve_datum(a.datum);
  auto g = GroupTable::build(d, a.guards.max_order);
  KLTable kl(g, a.guards.max_interval);
  kl.compute_all();
  const std::string path = cache_path(a, d);
  save_kl_cache(kl, path);
  if (a.json) {
    emit(out, Json{{"path", path}, {"entries", kl.computed().size()}});
  } else {
    out << "saved " << kl.computed().size() << " entries to " << path << "\n";
  }
  return 0;
}

int cmd_cache_verify(const CacheArgs& a, std::ostream& out) {
  const GroupDatum d = resolve_datum(a.datum);
  auto g = GroupTable::build(d, a.guards.max_order);
  KLTable kl(g, a.guards.max_interval);
  const std::string path = cache_path(a, d);
  std::size_t entries = 0;
  std::optional<std::string> problem;
  try {
    entries = load_kl_cache(kl, path);
  } catch (const CacheError& e) {
    problem = e.what();
  }
  if (a.json) {
    Json j{{"path", path}, {"valid", !problem}, {"entries", entries}};
    j["error"] = problem ? Json(*problem) : Json(nullptr);
    emit(out, j);
  } else if (problem) {
    out << "invalid cache " << path << ": " << *problem << "\n";
  } else {
    out << "valid cache " << path << ": " << entries << " entries\n";
  }
  return exit_for(!problem);
}

int cmd_cache_path(const CacheArgs& a, std::ostream& out) {
  const GroupDatum d = resolve_datum(a.datum);
  const std::string path = cache_path(a, d);
  if (a.json) {
    emit(out, Json{{"path", path}, {"exists", std::filesystem::exists(path)}});
  } else {
    out << path << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- errors

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

int fail(std::ostream& err, const char* category, const std::string& message, int code) {
  err << "klq: error: " << category << ": " << one_line(message) << "\n";
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kazhdan-Lusztig bases, cells and unipotent decompositions of Q_w", "klq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "klq 1.0");
  std::vector<std::pair<CLI::App*, std::function<int()>>> actions;

  GroupArgs group_args;
  auto* group = app.add_subcommand("group", "Weyl group summary");
  add_datum_options(group, group_args.datum, true);
  add_guard_options(group, group_args.guards, false);
  group->add_flag("--elements", group_args.elements, "List every element");
  group->add_flag("--json", group_args.json, "JSON output");
  actions.emplace_back(group, [&] { return cmd_group(group_args, out); });

  KlArgs kl_args;
  auto* kl = app.add_subcommand("kl", "Expansion of C'_w, C_w or t_w in the t-basis");
  add_datum_options(kl, kl_args.datum, true);
  add_guard_options(kl, kl_args.guards, true);
  kl->add_option("--w", kl_args.w, "Element: 1-based word, 'e' or 'w0'")->required();
  kl->add_option("--x", kl_args.x, "Print only the coefficient of t_x and mu(x, w)");
  kl->add_option("--basis", kl_args.basis, "Cprime, C or t")->capture_default_str();
  auto* cache_opt = kl->add_option("--cache", kl_args.cache, "Load this KL cache first");
  kl->add_flag("--use-cache", kl_args.use_cache, "Load the default KL cache if present")->excludes(cache_opt);
  kl->add_flag("--json", kl_args.json, "JSON output");
  actions.emplace_back(kl, [&] { return cmd_kl(kl_args, out); });

  CellsArgs cells_args;
  auto* cells = app.add_subcommand("cells", "Kazhdan-Lusztig cells, a-values and the order between cells");
  add_datum_options(cells, cells_args.datum, true);
  add_guard_options(cells, cells_args.guards, true);
  cells->add_option("--kind", cells_args.kind, "left, right or two-sided")->capture_default_str();
  cells->add_option("--max-a-order", cells_args.max_a_order, "Largest |W| for brute-force a-values")->capture_default_str();
  cells->add_flag("--json", cells_args.json, "JSON output");
  actions.emplace_back(cells, [&] { return cmd_cells(cells_args, out); });

  QwArgs qw_args;
  auto* qw = app.add_subcommand("qw", "Almost-character coordinates and unipotent decomposition of Q_w");
  add_datum_options(qw, qw_args.datum, false);
  add_guard_options(qw, qw_args.guards, true);
  qw->add_option("--form", qw_args.form, "GL or SU")->capture_default_str();
  qw->add_option("--w", qw_args.w, "Element: 1-based word, 'e' or 'w0'")->required();
  auto* graded = qw->add_flag("--graded", qw_args.graded, "Keep the v-grading (GL only)");
  qw->add_flag("--at-v1", qw_args.at_v1, "Specialize at v = 1 (default)")->excludes(graded);
  qw->add_option("--basis", qw_args.basis, "C, Cprime or t")->capture_default_str();
  qw->add_option("--shift", qw_args.shift, "Power of v applied: an integer, or 'auto' for l(w)")->capture_default_str();
  qw->add_flag("--json", qw_args.json, "JSON output");
  actions.emplace_back(qw, [&] { return cmd_qw(qw_args, out); });

  auto* check = app.add_subcommand("check", "Run a verification report; exit 1 on failure");
  check->require_subcommand(1);

  PositivityArgs pos_args;
  auto* pos = check->add_subcommand("positivity", "A global sign makes every unipotent coefficient nonnegative");
  add_datum_options(pos, pos_args.datum, false);
  add_guard_options(pos, pos_args.guards, true);
  pos->add_option("--form", pos_args.form, "GL or SU")->capture_default_str();
  auto* all = pos->add_flag("--all", pos_args.all, "Every element of W");
  pos->add_option("--w", pos_args.w, "A single element")->excludes(all);
  auto* pos_graded = pos->add_flag("--graded", pos_args.graded, "Check every v-exponent slice (GL only)");
  pos->add_flag("--at-v1", pos_args.at_v1, "Specialize at v = 1 (default)")->excludes(pos_graded);
  pos->add_option("--require-sign", pos_args.require_sign, "Also require the sign rule: none, rsk or length")
      ->check(CLI::IsMember({"none", "rsk", "length"}))
      ->capture_default_str();
  pos->add_option("--threads", pos_args.threads, "Worker threads")->capture_default_str();
  pos->add_flag("--json", pos_args.json, "JSON output");
  actions.emplace_back(pos, [&] { return cmd_check_positivity(pos_args, out); });

  NArgs subreg_args, tri_args, lemma_args;
  auto* subreg = check->add_subcommand("subreg", "SU_n, w = s1 w0 against rho_{2 1^{n-2}} + (n-1) rho_{1^n}");
  subreg->add_option("--n", subreg_args.n, "n")->required();
  add_guard_options(subreg, subreg_args.guards, true);
  subreg->add_flag("--json", subreg_args.json, "JSON output");
  actions.emplace_back(subreg, [&] { return cmd_check_subreg(subreg_args, out); });

  auto* tri = check->add_subcommand("triangular", "Block triangularity of Q_w against almost characters, GL_n");
  tri->add_option("--n", tri_args.n, "n")->required();
  tri->add_flag("--json", tri_args.json, "JSON output");
  actions.emplace_back(tri, [&] { return cmd_check_triangular(tri_args, out); });

  auto* lemma = check->add_subcommand("lemma", "C'_{s1 w0} from C'_{w0} and C'_{wI}");
  lemma->add_option("--n", lemma_args.n, "n")->required();
  add_guard_options(lemma, lemma_args.guards, true);
  lemma->add_flag("--json", lemma_args.json, "JSON output");
  actions.emplace_back(lemma, [&] { return cmd_check_lemma(lemma_args, out); });

  DeduceArgs deduce_args;
  auto* deduce = app.add_subcommand("deduce", "Feasible unknowns of a unitriangular decomposition scenario");
  deduce->add_option("--scenario", deduce_args.scenario, "Scenario JSON file")->required();
  deduce->add_option("--drop", deduce_args.drop, "Remove one constraint (0-based index or exact text)");
  deduce->add_option("--order", deduce_args.order, "Enumeration order, e.g. \"g,f,h,i,j\"");
  deduce->add_option("--max-variables", deduce_args.max_variables, "Refuse scenarios with more unknowns")->capture_default_str();
  deduce->add_option("--max-solutions", deduce_args.max_solutions, "Stop enumerating after this many")->capture_default_str();
  deduce->add_flag("--json", deduce_args.json, "JSON output");
  actions.emplace_back(deduce, [&] { return cmd_deduce(deduce_args, out); });

  auto* cache = app.add_subcommand("cache", "KL cache files");
  cache->require_subcommand(1);
  CacheArgs save_args, verify_args, path_args;
  const std::pair<const char*, CacheArgs*> cache_subs[] = {{"save", &save_args}, {"verify", &verify_args}, {"path", &path_args}};
  const char* cache_help[] = {"Compute the whole table and write it", "Load and validate a cache; exit 1 if invalid",
                              "Print the cache location"};
  std::size_t k = 0;
  for (const auto& [name, args] : cache_subs) {
    auto* sub = cache->add_subcommand(name, cache_help[k++]);
    add_datum_options(sub, args->datum, true);
    add_guard_options(sub, args->guards, true);
    sub->add_option("--path", args->path, "Cache file (default: $KLQ_CACHE_DIR/<type><rank>.klq)");
    sub->add_flag("--json", args->json, "JSON output");
  }
  actions.emplace_back(cache->get_subcommand("save"), [&] { return cmd_cache_save(save_args, out); });
  actions.emplace_back(cache->get_subcommand("verify"), [&] { return cmd_cache_verify(verify_args, out); });
  actions.emplace_back(cache->get_subcommand("path"), [&] { return cmd_cache_path(path_args, out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return 0;
    }
    return fail(err, "usage", e.what(), 2);
  }

  for (auto& [sub, action] : actions) {
    if (!sub->parsed()) continue;
    try {
      return action();
    } catch (const InputError& e) {
      return fail(err, "input", e.what(), 2);
    } catch (const CacheError& e) {
      return fail(err, "cache", e.what(), 2);
    } catch (const GuardError& e) {
      return fail(err, "guard", e.what(), 3);
    } catch (const std::exception& e) {
      return fail(err, "internal", e.what(), 4);
    }
  }
  return fail(err, "usage", "no subcommand selected", 2);
}

}  // namespace klq::cli
