#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selfsim/automaton.hpp"

namespace selfsim {

struct GenLetter {
  StateId state = 0;
  std::int8_t exp = 1;  // +1 or -1

  GenLetter inverse() const { return {state, static_cast<std::int8_t>(-exp)}; }
  auto operator<=>(const GenLetter&) const = default;
};

/// Freely reduced word over generators and their formal inverses. The
/// rightmost letter acts first: (uv)(x) = u(v(x)).
class GenWord {
 public:
  GenWord() = default;
  explicit GenWord(const std::vector<GenLetter>& letters);

  static GenWord generator(StateId s, int exp = 1);

  const std::vector<GenLetter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  GenWord inverse() const;
  GenWord power(long k) const;
  GenWord operator*(const GenWord& rhs) const;
  /// y * this * y^-1
  GenWord conjugated_by(const GenWord& y) const;

  /// Cyclic reduction: strips inverse letter pairs from the two ends.
  GenWord cyclically_reduced() const;

  auto operator<=>(const GenWord&) const = default;

 private:
  std::vector<GenLetter> letters_;
};

/// Commutator [x,y] = x^-1 y^-1 x y.
GenWord commutator(const GenWord& x, const GenWord& y);

class WordSyntaxError : public std::runtime_error {
 public:
  WordSyntaxError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Parses words such as "b^-1c", "ba^2", "[a,b]^2", "(b^-1a)^b^-1" or
/// "a⁻¹ca⁻¹b". Lowercase letters are generators, uppercase letters their
/// inverses, "1" the identity. x^k is a power, x^y (y a letter or a
/// bracketed word, optionally with its own exponent) is y x y^-1.
/// Throws WordSyntaxError, or when a letter exceeds state_count.
GenWord parse_word(const std::string& text, std::size_t state_count = 26);

/// Compact form with runs written as powers: "ba^2", "b^-1c", "1" for empty.
std::string format_word(const GenWord& w);

}  // namespace selfsim
