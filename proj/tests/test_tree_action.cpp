#include "doctest.h"

#include <set>

#include "selfsim/element_store.hpp"
#include "selfsim/gf2.hpp"
#include "selfsim/group_analysis.hpp"
#include "selfsim/tree_action.hpp"

using namespace selfsim;

namespace {

// Orbit of the all-zero vertex under powers of w, by direct action.
std::size_t orbit_length(const Automaton& a, const GenWord& w, std::size_t level) {
  const Vertex start(level, 0);
  Vertex v = act(a, w, start);
  std::size_t len = 1;
  while (v != start) {
    v = act(a, w, v);
    ++len;
  }
  return len;
}

}  // namespace

TEST_CASE("root permutation and sections") {
  const Automaton a = decode_number(731);
  CHECK(root_perm(a, parse_word("a")) == LetterPerm{1, 0});
  CHECK(root_perm(a, GenWord()) == LetterPerm{0, 1});
  CHECK(root_perm(a, parse_word("aa")) == LetterPerm{0, 1});
  CHECK(section(a, parse_word("a"), 1) == parse_word("a"));
  CHECK(section(a, parse_word("a"), 0) == parse_word("b"));
  // (ab)|0 = a|b(0) b|0
  const Automaton c = decode_number(2240);
  const GenWord ab = parse_word("ab");
  const Letter b0 = root_perm(c, parse_word("b"))[0];
  CHECK(equals(c, section(c, ab, 0), section(c, parse_word("a"), b0) * section(c, parse_word("b"), 0)));
}

TEST_CASE("action on vertices") {
  const Automaton add = parse_binary_recursion("a=σ(1,a)");
  CHECK(act(add, parse_word("a"), parse_vertex("11111")) == parse_vertex("00000"));
  CHECK(act(add, parse_word("a"), parse_vertex("0111")) == parse_vertex("1111"));
  CHECK(act(decode_number(875), parse_word("a"), parse_vertex("100000")) == parse_vertex("010000"));
  CHECK(act(decode_number(2240), GenWord(), parse_vertex("0110")) == parse_vertex("0110"));
  CHECK_THROWS_AS(parse_vertex("012"), std::invalid_argument);
  CHECK(format_vertex(parse_vertex("0110")) == "0110");
}

TEST_CASE("word problem") {
  CHECK(is_identity(decode_number(2212), parse_word("ca^2")));
  CHECK(is_identity(decode_number(731), parse_word("b^-1c")));
  CHECK_FALSE(is_identity(decode_number(731), parse_word("a")));
  CHECK(equals(decode_number(820), parse_word("b"), parse_word("c")));
  CHECK(equals(decode_number(767), parse_word("c"), parse_word("a^2")));
  CHECK_FALSE(equals(decode_number(767), parse_word("c"), parse_word("a^-2")));
  CHECK_FALSE(equals(decode_number(2240), parse_word("a"), parse_word("b")));
}

TEST_CASE("element store agrees with the word problem") {
  const Automaton a = decode_number(2240);
  ElementStore store(a);
  const auto w = parse_word("ab^-1c");
  const auto g = store.evaluate(w);
  CHECK(store.multiply(g, store.inverse(g)) == ElementStore::identity());
  CHECK(store.evaluate(w.power(3)) == store.power(g, 3));
  for (const char* v : {"0", "1", "01", "110"}) {
    const auto x = parse_vertex(v);
    CHECK(store.act(g, x) == act(a, w, x));
    CHECK(store.section(g, x) == store.evaluate(section(a, w, x)));
  }
  ElementStore s731(decode_number(731));
  CHECK(s731.evaluate(parse_word("b^-1c")) == ElementStore::identity());
  CHECK(s731.evaluate(parse_word("ba^2")) == ElementStore::identity());
}

TEST_CASE("orders") {
  CHECK(order_bounded(decode_number(748), parse_word("a"), 100).order == 2);
  CHECK(order_bounded(decode_number(731), parse_word("a"), 100).kind == OrderResult::Kind::Infinite);
  CHECK(order_bounded(decode_number(731), GenWord(), 100).order == 1);
  CHECK(order_bounded(decode_number(731), GenWord(), 100).to_string() == "1");
}

TEST_CASE("GF(2) polynomial arithmetic") {
  const GF2Poly x = GF2Poly::monomial(1);
  const GF2Poly p = x * x + GF2Poly::one();  // (1+t)^2
  CHECK(p == (x + GF2Poly::one()) * (x + GF2Poly::one()));
  CHECK(p.degree() == 2);
  CHECK(p % (x + GF2Poly::one()) == GF2Poly::zero());
  CHECK(gcd(p, x * (x + GF2Poly::one())) == x + GF2Poly::one());
  const RationalSeries s = all_ones_series();
  CHECK(s.expand(6) == std::vector<int>{1, 1, 1, 1, 1, 1});
  CHECK(s * s.inverse() == RationalSeries::constant(true));
  CHECK(s.to_string() == "(1)/(1 + t)");
}

TEST_CASE("transitivity series") {
  const Automaton add = parse_binary_recursion("a=σ(1,a)");
  CHECK(transitivity_series(add, parse_word("a")) == all_ones_series());
  CHECK(transitivity_series(add, GenWord()).is_zero());
  CHECK(transitivity_series(decode_number(2199), parse_word("ac")) == all_ones_series());
  CHECK(is_level_transitive(add, parse_word("a")));
  CHECK(is_level_transitive(decode_number(2199), parse_word("ac")));
  CHECK_FALSE(is_level_transitive(decode_number(748), parse_word("a")));
  // brute-force orbits
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(orbit_length(decode_number(2199), parse_word("ac"), n) == (std::size_t{1} << n));
    CHECK(orbit_length(add, parse_word("a"), n) == (std::size_t{1} << n));
  }
  CHECK(orbit_length(decode_number(748), parse_word("a"), 3) <= 2);
}

TEST_CASE("non-torsion partition") {
  CHECK(nontorsion_partition(decode_number(870)));
  CHECK_FALSE(nontorsion_partition(decode_number(1)));
  const auto p = nontorsion_partition(decode_number(820));
  REQUIRE(p);
  CHECK(p->first == std::vector<StateId>{0});
  CHECK(p->second == std::vector<StateId>{1, 2});
}

TEST_CASE("infinite order certificates") {
  CHECK(certify_infinite_order(decode_number(731), parse_word("a")));
  CHECK_FALSE(certify_infinite_order(decode_number(748), parse_word("a")));
  CHECK_FALSE(certify_infinite_order(decode_number(1), parse_word("a")));
}

TEST_CASE("not-free witnesses") {
  const Automaton a = decode_number(744);
  // this word is (1, cac^-1a^-1)
  const GenWord w = parse_word("aca^-1bc^-1b^-1");
  CHECK(is_identity(a, section(a, w, 0)));
  CHECK(equals(a, section(a, w, 1), parse_word("cac^-1a^-1")));
  CHECK(root_perm(a, w) == LetterPerm{0, 1});

  const auto found = not_free_witness(a, 6);
  REQUIRE(found);
  const auto& [u, v] = *found;
  CHECK(is_identity(a, section(a, u, 0)));
  CHECK_FALSE(is_identity(a, section(a, u, 1)));
  CHECK(is_identity(a, section(a, v, 1)));
  CHECK_FALSE(is_identity(a, section(a, v, 0)));

  CHECK_FALSE(not_free_witness(decode_number(731), 6));
  CHECK(not_free_witness(decode_number(885), 6));
  CHECK_FALSE(not_free_witness(decode_number(884), 6));
}
