#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/element_store.hpp"
#include "selfsim/gf2.hpp"
#include "selfsim/word.hpp"

namespace selfsim {

using Vertex = std::vector<Letter>;

/// "0110" -> {0,1,1,0}. Throws std::invalid_argument on other characters.
Vertex parse_vertex(const std::string& text, std::size_t d = 2);
std::string format_vertex(const Vertex& v);

LetterPerm root_perm(const Automaton& a, const GenWord& w);
/// Section at a single letter; the result has at most |w| letters.
GenWord section(const Automaton& a, const GenWord& w, Letter x);
GenWord section(const Automaton& a, const GenWord& w, const Vertex& v);
Vertex act(const Automaton& a, const GenWord& w, const Vertex& v);

/// Exact word problem: w = 1 iff every word in the (finite) section closure
/// of w has trivial root permutation.
bool is_identity(const Automaton& a, const GenWord& w);
bool equals(const Automaton& a, const GenWord& u, const GenWord& v);

/// The section closure of w as a graph: node 0 is w, each node records its
/// root permutation and the node index of its section at every letter.
struct SectionGraph {
  std::vector<GenWord> words;
  std::vector<LetterPerm> perms;
  std::vector<std::vector<std::size_t>> children;
};
SectionGraph section_graph(const Automaton& a, const GenWord& w);

/// Series of the abelianization image sum_n (active sections at level n mod 2) t^n.
RationalSeries transitivity_series(const Automaton& a, const GenWord& w);
RationalSeries transitivity_series(const ElementStore& store, ElementStore::Id g);
bool is_level_transitive(const Automaton& a, const GenWord& w);
bool is_level_transitive(const ElementStore& store, ElementStore::Id g);

struct OrderResult {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  std::uint64_t order = 0;  // set for Finite

  static OrderResult finite(std::uint64_t k) { return {Kind::Finite, k}; }
  static OrderResult infinite() { return {Kind::Infinite, 0}; }
  static OrderResult unknown() { return {Kind::Unknown, 0}; }
  std::string to_string() const;
};

/// Least k <= cap with w^k = 1; Infinite when certified, else Unknown.
OrderResult order_bounded(const Automaton& a, const GenWord& w, std::uint64_t cap);

/// Two-part split (first = P, second = Q) satisfying the non-torsion
/// conditions: one part is the active states, the other the inactive ones;
/// every P-state sends both arrows into one part; every Q-state sends one
/// arrow into each part.
using StatePartition = std::pair<std::vector<StateId>, std::vector<StateId>>;
std::optional<StatePartition> nontorsion_partition(const Automaton& a);

/// True when w has an odd number of active letters and an odd number of
/// inactive letters and a non-torsion partition exists.
bool in_nontorsion_class(const Automaton& a, const GenWord& w);

/// Sound, incomplete infinite-order certificate: level transitivity, the
/// non-torsion class, or a power w^k (k <= 4) fixing a vertex of depth <= 6
/// whose section is itself certified (or equals w^{+-1} with k even).
bool certify_infinite_order(ElementStore& store, ElementStore::Id g, const GenWord* w = nullptr,
                            int nesting = 2);
bool certify_infinite_order(const Automaton& a, const GenWord& w);

/// Two nontrivial elements of the forms (1,u) and (v,1) among the words of
/// length <= radius, or empty. Returned as (first, second) with first=(1,u).
std::optional<std::pair<GenWord, GenWord>> not_free_witness(const Automaton& a, int radius);

}  // namespace selfsim
