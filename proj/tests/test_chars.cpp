#include <random>

#include "doctest.h"
#include "klq/chars.hpp"
#include "klq/errors.hpp"
#include "support.hpp"

using namespace klq;
using klq::testing::sym;
using klq::testing::v;
using klq::testing::vi;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

// Fixed points minus one: the character of the (n-1,1) representation.
int standard_character(const GroupTable& g, ElemId w) {
  const auto perm = g.permutation(w);
  int fixed = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) fixed += perm[i] == static_cast<int>(i) + 1 ? 1 : 0;
  return fixed - 1;
}

}  // namespace

TEST_CASE("Murnaghan-Nakayama examples") {
  CHECK(mn_character(P({2, 1}), P({3})) == Integer(-1));
  CHECK(mn_character(P({2, 1}), P({1, 1, 1})) == Integer(2));
  CHECK(mn_character(P({2, 1}), P({2, 1})) == Integer(0));
  CHECK(mn_character(P({3, 3}), P({1, 1, 1, 1, 1, 1})) == Integer(5));
  CHECK(mn_character(P({1, 1, 1, 1}), P({2, 2})) == Integer(1));
  CHECK(mn_character(P({1, 1, 1, 1}), P({4})) == Integer(-1));
  CHECK_THROWS_AS(mn_character(P({2, 1}), P({2})), InputError);
}

TEST_CASE("standard character agrees with the permutation representation") {
  for (int n = 2; n <= 6; ++n) {
    auto g = sym(n);
    CharacterTableSn table(n);
    const Partition standard = P({n - 1, 1});
    for (ElemId w = 0; w < g->size(); ++w) {
      CHECK(table.value(standard, g->cycle_type(w)) == Integer(standard_character(*g, w)));
    }
  }
}

TEST_CASE("character tables satisfy orthogonality") {
  for (int n = 1; n <= 7; ++n) {
    CharacterTableSn table(n);
    Integer order = 1;
    for (int k = 2; k <= n; ++k) order *= Integer(k);
    Integer total_size = 0;
    for (const auto& mu : table.labels()) total_size += table.class_size(mu);
    CHECK(total_size == order);
    for (const auto& a : table.labels()) {
      CHECK(table.value(a, Partition::single_column(n)) ==
            Integer(static_cast<std::int64_t>(a.num_standard_tableaux())));
      for (const auto& b : table.labels()) {
        Integer s = 0;
        for (const auto& mu : table.labels()) s += table.class_size(mu) * table.value(a, mu) * table.value(b, mu);
        CHECK(s == (a == b ? order : Integer(0)));
      }
    }
  }
}

TEST_CASE("a and A invariants") {
  CHECK(invariants_aA(P({3})).a == 0);
  CHECK(invariants_aA(P({3})).A == 0);
  CHECK(invariants_aA(P({1, 1, 1})).a == 3);
  CHECK(invariants_aA(P({1, 1, 1})).A == 3);
  CHECK(invariants_aA(P({2, 1})).a == 1);
  CHECK(invariants_aA(P({2, 1})).A == 2);
}

TEST_CASE("polynomial gcd and rational normalization") {
  const LaurentPoly x = LaurentPoly::monomial(1);
  const LaurentPoly one(1);
  CHECK(polynomial_gcd((x - one) * (x + one), (x - one) * (x * x + one)) == x - one);
  CHECK(polynomial_gcd(x * x + one, x + one) == one);
  CHECK(polynomial_gcd(LaurentPoly(6) * x, LaurentPoly(4) * x * x) == x);
  RationalFunction r(x * x - one, x - one);
  CHECK(r.is_laurent());
  CHECK(r.numerator() == x + one);
  RationalFunction s(LaurentPoly(2), LaurentPoly(-4) * x + LaurentPoly(2));
  CHECK(s.denominator() == LaurentPoly(2) * x - one);
  CHECK(s.numerator() == LaurentPoly(-1));
  CHECK(RationalFunction(one, x - one) + RationalFunction(-one, x - one) == RationalFunction());
  CHECK(RationalFunction(x, x * x) == RationalFunction(LaurentPoly::monomial(-1)));
  CHECK_THROWS(RationalFunction(one, LaurentPoly()));
}

TEST_CASE("seminormal form dimensions and relations") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& lambda : partitions_of(n)) {
      SeminormalRep rep(lambda);  // constructor verifies the relations
      CHECK(static_cast<long long>(rep.dimension()) == lambda.num_standard_tableaux());
    }
  }
}

TEST_CASE("generic Hecke characters on generators") {
  auto g = sym(3);
  HeckeCharacters chars(g);
  const ElemId s1 = g->generator(0);
  CHECK(chars.basis_value(P({3}), s1) == vi);
  CHECK(chars.basis_value(P({1, 1, 1}), s1) == -v);
  CHECK(chars.basis_value(P({2, 1}), s1) == vi - v);
  CHECK(chars.basis_value(P({2, 1}), g->identity()) == LaurentPoly(2));
}

TEST_CASE("generic characters specialize to the group characters") {
  for (int n = 2; n <= 5; ++n) {
    auto g = sym(n);
    HeckeCharacters chars(g);
    CharacterTableSn table(n);
    for (const auto& lambda : table.labels()) {
      for (ElemId w = 0; w < g->size(); ++w) {
        CHECK(chars.basis_value(lambda, w).eval_one() == table.value(lambda, g->cycle_type(w)));
      }
    }
  }
}

TEST_CASE("generic characters are traces and kill the right KL elements") {
  auto g = sym(4);
  HeckeAlgebra H(g);
  HeckeCharacters chars(g);
  KLTable kl(g);
  std::mt19937 rng(7);
  std::uniform_int_distribution<ElemId> elem(0, static_cast<ElemId>(g->size() - 1));
  for (int i = 0; i < 15; ++i) {
    HeckeElt a = HeckeElt::basis(elem(rng), v) + HeckeElt::basis(elem(rng), LaurentPoly(2));
    HeckeElt b = HeckeElt::basis(elem(rng), vi) + HeckeElt::basis(elem(rng), LaurentPoly(-1));
    for (const auto& lambda : partitions_of(4)) {
      CHECK(chars.value(lambda, H.multiply(a, b)) == chars.value(lambda, H.multiply(b, a)));
    }
  }
  // The sign representation annihilates every C'_w with w != e.
  for (ElemId w = 1; w < g->size(); ++w) CHECK(chars.value(Partition::single_column(4), kl.cprime(w)).is_zero());
  // The trivial representation sends C'_w0 to the Poincare polynomial in v^-2 times v^l(w0).
  const LaurentPoly triv = chars.value(Partition::single_row(4), kl.cprime(g->longest_element()));
  CHECK(triv.eval_one() == Integer(24));
  CHECK(triv.is_bar_invariant());
}

TEST_CASE("Hecke character guards") {
  CHECK_THROWS_AS(HeckeCharacters(klq::testing::group(CartanType::B, 2)), InputError);
  CHECK_THROWS_AS(HeckeCharacters(sym(3, Twist::flip)), InputError);
  HeckeCharacters chars(sym(3));
  CHECK_THROWS_AS(chars.basis_value(P({2, 2}), 0), InputError);
}
