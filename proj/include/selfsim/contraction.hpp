#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/element_store.hpp"
#include "selfsim/word.hpp"

namespace selfsim {

struct Nucleus {
  std::vector<GenWord> elements;  // one word per element, shortest first
  std::size_t size() const { return elements.size(); }
};

struct NucleusOptions {
  std::size_t size_cap = 512;
  std::size_t depth_cap = 10;
};

/// Grows the set of persistent sections until the sections of all pairwise
/// products fall back into it. Empty when a cap is exceeded.
std::optional<Nucleus> nucleus_search(const Automaton& a, const NucleusOptions& opt = {});

/// Size of the nucleus together with the first-level sections of every
/// pairwise product of its elements.
std::optional<std::size_t> nucleus_product_closure_size(const Automaton& a, const NucleusOptions& opt = {});

struct NoncontractionWitness {
  GenWord word;
  std::vector<Letter> vertex;
  bool certified = false;  // infinite order proved; otherwise a candidate only
};

struct WitnessOptions {
  std::size_t word_radius = 6;
  std::size_t vertex_depth = 6;
  std::size_t candidate_cap = 100;  // certification attempts before giving up
};

/// Nontrivial w fixing a vertex v with section w at v. The first certified
/// witness is returned; failing that, the first candidate.
std::optional<NoncontractionWitness> noncontraction_witness(const Automaton& a,
                                                            const WitnessOptions& opt = {});

/// True when w fixes v, its section there equals w, and w is certified of
/// infinite order.
bool is_noncontraction_witness(const Automaton& a, const GenWord& w, const std::vector<Letter>& v);

struct ContractionStatus {
  enum class Kind { Yes, No, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Nucleus> nucleus;
  std::optional<NoncontractionWitness> witness;  // certified when kind == No
  std::string label() const;
};

ContractionStatus contraction_status(const Automaton& a, const NucleusOptions& nopt = {},
                                     const WitnessOptions& wopt = {});

struct ActivityClass {
  enum class Kind { Bounded, Polynomial, Exponential };
  Kind kind = Kind::Bounded;
  int degree = 0;                     // polynomial degree; 0 when Bounded
  std::vector<std::uint64_t> counts;  // f_s(n) for n = 0..12
  std::string label() const;
};

/// Active sections at level n counted as paths of length n in the Moore
/// diagram from s that end at an active state.
std::vector<std::uint64_t> active_section_counts(const Automaton& a, StateId s, std::size_t max_n);
ActivityClass activity_class(const Automaton& a, StateId s);

struct TileGraph {
  std::size_t level = 0;
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // v1 < v2, vertex indices
};

class NotContracting : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

TileGraph tile_graph(const Automaton& a, const Nucleus& nucleus, std::size_t level);
/// Runs nucleus_search first; throws NotContracting when it fails.
TileGraph tile_graph(const Automaton& a, std::size_t level);

}  // namespace selfsim
