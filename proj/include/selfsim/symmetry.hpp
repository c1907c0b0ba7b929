#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selfsim/automaton.hpp"

namespace selfsim {

/// Composite of generator inversion, a state relabelling and a letter
/// relabelling. Applied in that order: invert first, then rename states and
/// letters.
struct SymmetryOp {
  bool invert = false;
  std::vector<StateId> state_perm;  // old state -> new state
  LetterPerm letter_perm;           // old letter -> new letter

  /// (*this)(other(A)) expressed as a single op.
  SymmetryOp after(const SymmetryOp& other) const;
  bool operator==(const SymmetryOp&) const = default;
};

Automaton apply(const SymmetryOp& op, const Automaton& a);

/// All inversion x state-permutation x letter-permutation combinations.
/// For (m,d) = (3,2) there are 24 of them.
std::vector<SymmetryOp> all_symmetry_ops(std::size_t m, std::size_t d);

/// Groups generated by at most two-state binary automata.
enum class SmallGroup { Trivial, C2, Klein, Z, InfiniteDihedral, Lamplighter };
std::string to_string(SmallGroup g);

/// Looks the minimized machine up in the catalogue of (2,2)-automata (a
/// one-state machine is treated as the two-state machine with a duplicate
/// state). Empty for machines with more than two states or d != 2.
std::optional<SmallGroup> small_group(const Automaton& minimized);

struct SymmetryClass {
  Automaton canonical;                // least-index representative of the orbit
  std::optional<std::uint32_t> number;  // set when canonical is a (3,2)-automaton
  std::size_t reduced_state_count = 0;
};

/// Minimizes a and returns the least encoding over all symmetry ops.
///
/// The one-state mirror machine mu = σ(mu,mu) is canonicalised as the
/// two-state machine {σ(a,a), (b,b)}, so that the all-active (3,2)-automata
/// share their class with automaton 1090.
SymmetryClass symmetry_class(const Automaton& a);

struct ClassTable {
  std::vector<std::uint32_t> class_rep;            // index n in 1..5832 (slot 0 unused)
  std::map<std::uint32_t, std::size_t> reduced_state_count;  // rep -> state count

  std::uint32_t rep(std::uint32_t n) const { return class_rep.at(n); }
  std::vector<std::uint32_t> representatives() const;
};

/// Runs symmetry_class over 1..5832. jobs <= 1 evaluates sequentially.
ClassTable classify_all(unsigned jobs = 1);

}  // namespace selfsim
