#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/element_store.hpp"
#include "selfsim/perm_group.hpp"
#include "selfsim/word.hpp"

namespace selfsim {

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

class LevelTooDeep : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest level size accepted by the level-n computations.
inline constexpr std::size_t kMaxLevelSize = 4096;

/// Number of vertices d^n; throws LevelTooDeep above kMaxLevelSize.
std::size_t level_size(std::size_t d, std::size_t n);

/// Vertex x1...xn has index sum x_i d^(n-i).
std::size_t vertex_index(const std::vector<Letter>& v, std::size_t d);
std::vector<Letter> vertex_at(std::size_t index, std::size_t d, std::size_t n);

/// Level-n permutation of every state.
std::vector<Perm> level_permutations(const Automaton& a, std::size_t n);
/// Level-n permutation of a stored element.
Perm level_permutation(const ElementStore& store, ElementStore::Id g, std::size_t n);

PermGroup level_group(const Automaton& a, std::size_t n);
/// |G / Stab_G(n)| by Schreier-Sims.
BigInt level_quotient_order(const Automaton& a, std::size_t n);
/// log2 of the level orders for n = 0..max_level; -1 where not a power of 2.
std::vector<int> level_order_exponents(const Automaton& a, std::size_t max_level);

struct GrowthRecord {
  std::size_t radius = 0;
  std::vector<std::uint64_t> counts;  // elements of length <= k, k = 0..radius
};

/// Ball sizes for the generating set of all states and their inverses.
GrowthRecord growth_sequence(const Automaton& a, std::size_t radius);

/// Group order when the closure finishes within cap elements.
std::optional<std::uint64_t> enumerate_if_finite(const Automaton& a, std::uint64_t cap);

bool verify_relator(const Automaton& a, const GenWord& w);

/// Identity words of length <= radius in length-lex order, skipping words
/// that the greedy filter derives from relators found earlier.
std::vector<GenWord> relator_search(const Automaton& a, std::size_t radius);

/// True when w reduces to the empty word by cyclic rewriting with the
/// given relators (deletion of conjugates, or replacing at least half of a
/// cyclic conjugate by the inverse of the rest).
bool derivable_from(const GenWord& w, const std::vector<GenWord>& relators, std::size_t budget = 4000);

/// Same word up to cyclic conjugation and inversion.
bool same_relator(const GenWord& u, const GenWord& v);

Verdict group_level_transitive(const Automaton& a, std::size_t depth);

Verdict self_replicating_check(const Automaton& a, std::size_t radius, std::size_t depth);

}  // namespace selfsim
