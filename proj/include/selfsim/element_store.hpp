#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/word.hpp"

namespace selfsim {

/// Interned tree automorphisms generated by one automaton.
///
/// The store is itself a minimal automaton: every node has a root
/// permutation and one child per letter, and no two nodes define the same
/// automorphism. Element equality is therefore id equality. Products and
/// inverses are built as temporary pair automata and folded back into the
/// store.
class ElementStore {
 public:
  using Id = std::uint32_t;

  explicit ElementStore(const Automaton& a);

  const Automaton& automaton() const { return automaton_; }
  std::size_t alphabet_size() const { return d_; }
  std::size_t size() const { return perm_of_.size(); }

  static constexpr Id identity() { return 0; }
  Id generator(StateId s) const { return state_ids_[s]; }
  Id generator_inverse(StateId s);
  Id letter(GenLetter l) { return l.exp > 0 ? generator(l.state) : generator_inverse(l.state); }

  Id multiply(Id f, Id g);
  Id inverse(Id f);
  Id power(Id f, long k);
  Id evaluate(const GenWord& w);

  const LetterPerm& perm(Id f) const { return perms_[perm_of_[f]]; }
  bool is_active(Id f) const { return perm_of_[f] != 0; }
  Id section(Id f, Letter x) const { return children_[static_cast<std::size_t>(f) * d_ + x]; }
  Id section(Id f, const std::vector<Letter>& v) const;
  std::vector<Letter> act(Id f, const std::vector<Letter>& v) const;

  /// All ids reachable from the given ones by taking sections, in BFS order.
  std::vector<Id> section_closure(const std::vector<Id>& roots) const;

 private:
  enum class Kind : std::uint8_t { State, Product, Inverse };
  struct Key {
    Kind kind;
    Id a;
    Id b;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return (static_cast<std::size_t>(k.a) * 0x9E3779B97F4A7C15ULL) ^
             (static_cast<std::size_t>(k.b) << 2) ^ static_cast<std::size_t>(k.kind);
    }
  };
  // Child reference of a temporary node: existing id or temporary index.
  struct Ref {
    bool temp;
    Id index;
  };
  struct Temp {
    Key key;
    std::uint16_t perm;
    std::vector<Ref> children;
    Id resolved = kUnresolved;
  };
  static constexpr Id kUnresolved = UINT32_MAX;

  Id build(const Key& root);
  bool shortcut(const Key& k, Id& out) const;
  std::uint16_t intern_perm(const LetterPerm& p);
  Id create_node(std::uint16_t perm, const std::vector<Id>& children);
  std::uint64_t signature_hash(std::uint16_t perm, const Id* children) const;
  std::uint64_t deep_hash_existing(Id f) const;
  std::uint64_t deep_hash_temp(const std::vector<Temp>& temps, std::size_t t) const;
  bool match_existing(std::vector<Temp>& temps, std::size_t t, Id e);
  void resolve(std::vector<Temp>& temps);

  Automaton automaton_;
  std::size_t d_;
  std::vector<LetterPerm> perms_;
  std::vector<std::uint16_t> perm_of_;
  std::vector<Id> children_;
  std::vector<Id> state_ids_;
  std::vector<std::vector<Letter>> probes_;
  std::unordered_multimap<std::uint64_t, Id> by_signature_;
  std::unordered_multimap<std::uint64_t, Id> by_deep_hash_;
  std::unordered_map<Key, Id, KeyHash> cache_;
};

}  // namespace selfsim
