#include "doctest.h"

#include <set>

#include "selfsim/automaton.hpp"
#include "selfsim/symmetry.hpp"
#include "selfsim/tree_action.hpp"
#include "selfsim/word.hpp"

using namespace selfsim;

TEST_CASE("permutation helpers") {
  const LetterPerm p{1, 2, 0};
  CHECK(compose(p, inverse_perm(p)) == identity_perm(3));
  CHECK(cycle_notation(p) == "(012)");
  CHECK(cycle_notation(identity_perm(2)) == "1");
  std::set<std::uint64_t> ranks;
  for (std::uint64_t r = 0; r < 24; ++r) {
    const auto q = perm_unrank(r, 4);
    CHECK(is_permutation(q));
    CHECK(perm_rank(q) == r);
    ranks.insert(r);
  }
  CHECK(ranks.size() == 24);
}

TEST_CASE("numbering spot values") {
  const Automaton one = decode_number(1);
  for (StateId s = 0; s < 3; ++s) {
    CHECK_FALSE(one.is_active(s));
    CHECK(one.transition(s, 0) == 0);
    CHECK(one.transition(s, 1) == 0);
  }
  CHECK(decode_number(731).recursion_text() == "a=σ(b,a), b=(a,a), c=(a,a)");
  CHECK(decode_number(2240).recursion_text() == "a=σ(b,c), b=σ(c,b), c=(a,a)");
  CHECK(encode_number(parse_binary_recursion("a=σ(b,a); b=(a,a); c=(a,a)")) == 731);
  CHECK(encode_number(parse_binary_recursion("a=s(b,c), b=s(c,b), c=(a,a)")) == 2240);
  CHECK(encode_number(one) == 1);
}

TEST_CASE("numbering is a bijection on 1..5832") {
  std::set<std::string> seen;
  for (std::uint32_t n = 1; n <= kAutomatonCount32; ++n) {
    const Automaton a = decode_number(n);
    REQUIRE(encode_number(a) == n);
    seen.insert(a.recursion_text());
  }
  CHECK(seen.size() == 5832);
  CHECK_THROWS_AS(decode_number(0), AutomatonError);
  CHECK_THROWS_AS(decode_number(5833), AutomatonError);
}

TEST_CASE("mixed radix index round trips for other shapes") {
  CHECK(automaton_count(3, 2) == 5832);
  CHECK(automaton_count(2, 3) == 2 * 2 * 2 * 2 * 2 * 2 * 36);
  for (auto [m, d] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {1, 4}}) {
    const auto count = automaton_count(m, d);
    for (std::uint64_t i = 0; i < count; i += 1 + count / 97)
      CHECK(mixed_radix_index(from_mixed_radix_index(i, m, d)) == i);
  }
}

TEST_CASE("inverse automaton") {
  const Automaton add = parse_binary_recursion("a=σ(1,a)");
  const Automaton inv = invert(add);
  CHECK(inv.recursion_lines()[0] == "a=σ(a,1)");
  // all states of 846 are involutions
  const Automaton a = decode_number(846);
  CHECK(encode_number(invert(a)) == 846);
}

TEST_CASE("dual automaton") {
  const auto d = dual(decode_number(846));
  REQUIRE(d);
  CHECK(d->alphabet_size() == 3);
  CHECK(d->state_count() == 2);
  const auto lines = d->recursion_lines({"a", "b", "c"});
  CHECK(lines[0] == "A=(acb)(B,A,A)");
  CHECK(lines[1] == "B=(ac)(A,B,B)");
  CHECK_FALSE(dual(decode_number(1)));
  CHECK(is_fully_invertible(decode_number(2240)));
  CHECK(is_fully_invertible(decode_number(846)));
  CHECK_FALSE(is_fully_invertible(decode_number(1)));
}

TEST_CASE("minimization") {
  const auto m820 = minimize_with_map(decode_number(820));
  CHECK(m820.automaton.state_count() == 2);
  CHECK(m820.state_map[1] == m820.state_map[2]);
  CHECK(minimize(decode_number(1)).state_count() == 1);
  CHECK(minimize(decode_number(2240)).state_count() == 3);
  // b is trivial in 766 but a and c still differ
  CHECK(minimize(decode_number(766)).state_count() == 3);
  CHECK(trivial_states(decode_number(766))[1]);
}

TEST_CASE("structural flags") {
  const auto add = structural_flags(parse_binary_recursion("a=σ(1,a)"));
  CHECK(add.has_trivial_state);
  CHECK(add.open_set_condition);
  CHECK(structural_flags(decode_number(846)).dual_invertible);
  const auto f2240 = structural_flags(decode_number(2240));
  CHECK_FALSE(f2240.has_trivial_state);
  CHECK_FALSE(f2240.open_set_condition);
  CHECK(f2240.fully_invertible);
}

TEST_CASE("symmetry operations") {
  const auto ops = all_symmetry_ops(3, 2);
  CHECK(ops.size() == 24);
  const Automaton a = decode_number(2240);
  for (const auto& f : ops)
    for (const auto& g : ops) CHECK(apply(f.after(g), a) == apply(f, apply(g, a)));
}

TEST_CASE("symmetry classes") {
  CHECK(symmetry_class(decode_number(742)).number == symmetry_class(decode_number(740)).number);
  const auto table = classify_all(1);
  CHECK(table.rep(742) == 740);
  CHECK(table.rep(731) == 731);
  CHECK(table.representatives().size() == 194);
  std::size_t small = 0;
  for (auto r : table.representatives()) small += table.reduced_state_count.at(r) < 3;
  CHECK(small == 10);
  for (std::uint32_t n = 1; n <= 729; ++n) REQUIRE(table.rep(n) == 1);
  for (std::uint32_t n = 5104; n <= 5832; ++n) REQUIRE(table.rep(n) == table.rep(5104));
}

TEST_CASE("small groups of two-state machines") {
  CHECK(small_group(minimize(parse_binary_recursion("a=σ(1,a)"))) == SmallGroup::Z);
  CHECK(small_group(minimize(parse_binary_recursion("a=σ(b,a); b=(b,a)"))) == SmallGroup::Lamplighter);
  CHECK(small_group(minimize(parse_binary_recursion("a=σ(a,a); b=(b,b)"))) == SmallGroup::C2);
  CHECK(small_group(minimize(decode_number(1))) == SmallGroup::Trivial);
  CHECK(to_string(SmallGroup::InfiniteDihedral) == "D_inf");
}

TEST_CASE("word parsing") {
  CHECK(format_word(parse_word("b^-1c")) == "b^-1c");
  CHECK(format_word(parse_word("ba^2")) == "ba^2");
  CHECK(format_word(parse_word("[a,b]")) == "a^-1b^-1ab");
  CHECK(format_word(parse_word("a^b")) == "bab^-1");
  CHECK(format_word(parse_word("(b^-1a)^b^-1")) == "b^-2ab");
  CHECK(format_word(parse_word("A")) == "a^-1");
  CHECK(format_word(parse_word("1")) == "1");
  CHECK(format_word(parse_word("a⁻¹b²")) == "a^-1b^2");
  CHECK(format_word(parse_word("a\\cdot b")) == "ab");
  CHECK(format_word(parse_word("aa^-1")) == "1");
  CHECK_THROWS_AS(parse_word("a^"), WordSyntaxError);
  CHECK_THROWS_AS(parse_word("d", 3), WordSyntaxError);
  CHECK_THROWS_AS(parse_word("(ab"), WordSyntaxError);
}

TEST_CASE("word algebra") {
  const GenWord w = parse_word("ab^-1c");
  CHECK((w * w.inverse()).empty());
  CHECK(w.power(-1) == w.inverse());
  CHECK(w.power(3).size() == 9);
  CHECK(format_word(parse_word("bab^-1").cyclically_reduced()) == "a");
  CHECK(commutator(GenWord::generator(0), GenWord::generator(1)) == parse_word("[a,b]"));
}
