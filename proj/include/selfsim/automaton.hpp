#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace selfsim {

using Letter = std::uint8_t;
using StateId = std::uint32_t;

/// Permutation of the alphabet {0,...,d-1}, stored as its image table.
using LetterPerm = std::vector<Letter>;

LetterPerm identity_perm(std::size_t d);
LetterPerm inverse_perm(const LetterPerm& p);
/// (p * q)(x) = p(q(x))
LetterPerm compose(const LetterPerm& p, const LetterPerm& q);
bool is_identity_perm(const LetterPerm& p);
bool is_permutation(const LetterPerm& p);
/// Lexicographic rank of p among all permutations of its size.
std::uint64_t perm_rank(const LetterPerm& p);
LetterPerm perm_unrank(std::uint64_t rank, std::size_t d);
/// "1" for the identity, otherwise disjoint cycles over the letter digits,
/// e.g. "(01)" or "(021)".
std::string cycle_notation(const LetterPerm& p);

class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite invertible Mealy automaton over the alphabet {0,...,d-1}.
///
/// State s acts on words by s(xw) = output(s)(x) transition(s,x)(w).
/// Instances are immutable once constructed.
class Automaton {
 public:
  Automaton(std::size_t alphabet_size, std::vector<LetterPerm> output,
            std::vector<std::vector<StateId>> transition,
            std::vector<std::string> labels = {});

  std::size_t alphabet_size() const { return d_; }
  std::size_t state_count() const { return output_.size(); }

  const LetterPerm& output(StateId s) const { return output_[s]; }
  StateId transition(StateId s, Letter x) const { return transition_[s][x]; }
  const std::vector<StateId>& transitions(StateId s) const { return transition_[s]; }
  bool is_active(StateId s) const { return !is_identity_perm(output_[s]); }

  const std::string& label(StateId s) const { return labels_[s]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Wreath recursion text, one line per state: "a=σ(b,a)" for binary
  /// automata; larger alphabets print the cycle notation of the output, using
  /// letter_names for the letters when given.
  std::vector<std::string> recursion_lines(const std::vector<std::string>& letter_names = {}) const;
  std::string recursion_text() const;

  bool operator==(const Automaton& other) const {
    return d_ == other.d_ && output_ == other.output_ && transition_ == other.transition_;
  }

  /// Default state names: a, b, c, ... (then s26, s27, ...).
  static std::string default_label(StateId s);

 private:
  std::size_t d_;
  std::vector<LetterPerm> output_;
  std::vector<std::vector<StateId>> transition_;
  std::vector<std::string> labels_;
};

/// Binary automaton from per-state activity bits and (left, right) targets.
Automaton binary_automaton(const std::vector<bool>& active,
                           const std::vector<std::pair<StateId, StateId>>& targets,
                           std::vector<std::string> labels = {});

/// Parses "a=σ(b,a); b=(a,a)" style recursions over the binary alphabet.
/// "s" or "σ" marks an active state; "1" names an implicit trivial state.
Automaton parse_binary_recursion(const std::string& text);

// ---------------------------------------------------------------------------
// Numbering of (m,d)-automata.

inline constexpr std::uint32_t kAutomatonCount32 = 5832;

/// Number of (m,d)-automata: m^(m d) (d!)^m.
std::uint64_t automaton_count(std::size_t m, std::size_t d);

/// Mixed-radix index in [0, automaton_count(m,d)) generalising the
/// (3,2) numbering: transitions are the low digits (base m, state-major,
/// letter-minor), output permutation ranks the high digits (base d!).
std::uint64_t mixed_radix_index(const Automaton& a);
Automaton from_mixed_radix_index(std::uint64_t index, std::size_t m, std::size_t d);

/// Number in 1..5832 of a (3,2)-automaton. Throws AutomatonError on any
/// other shape.
std::uint32_t encode_number(const Automaton& a);
/// Inverse of encode_number. Throws AutomatonError when n is out of range.
Automaton decode_number(std::uint32_t n);

// ---------------------------------------------------------------------------
// Structural operations.

/// State s of the result acts as s^-1.
Automaton invert(const Automaton& a);

/// Exchange states and letters: the dual has one state per letter x with
/// output q -> transition(q, x) and transition q -> output(q)(x). Empty when
/// some letter does not permute the states.
std::optional<Automaton> dual(const Automaton& a);

bool is_fully_invertible(const Automaton& a);

/// Partition-refinement minimization. The result numbers its states by
/// first DFS visit from the class of state 0 (then by smallest original
/// state for classes not reachable from it).
struct Minimization {
  Automaton automaton;
  std::vector<StateId> state_map;  // original state -> minimized state
};
Minimization minimize_with_map(const Automaton& a);
Automaton minimize(const Automaton& a);

/// States whose induced tree automorphism is the identity.
std::vector<bool> trivial_states(const Automaton& a);

struct StructuralFlags {
  bool has_trivial_state = false;
  bool open_set_condition = false;
  bool strongly_connected = false;
  bool dual_invertible = false;
  bool fully_invertible = false;
};
StructuralFlags structural_flags(const Automaton& a);

}  // namespace selfsim
