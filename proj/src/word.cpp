#include "selfsim/word.hpp"

#include <cctype>
#include <utility>

namespace selfsim {

namespace {

void push_reduced(std::vector<GenLetter>& out, GenLetter l) {
  if (!out.empty() && out.back().state == l.state && out.back().exp == -l.exp)
    out.pop_back();
  else
    out.push_back(l);
}

}  // namespace

GenWord::GenWord(const std::vector<GenLetter>& letters) {
  for (const auto& l : letters) push_reduced(letters_, l);
}

GenWord GenWord::generator(StateId s, int exp) {
  GenWord w;
  w.letters_.push_back({s, static_cast<std::int8_t>(exp < 0 ? -1 : 1)});
  return w;
}

GenWord GenWord::inverse() const {
  GenWord w;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

GenWord GenWord::power(long k) const {
  const GenWord base = k < 0 ? inverse() : *this;
  GenWord out;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

GenWord GenWord::operator*(const GenWord& rhs) const {
  GenWord w = *this;
  for (const auto& l : rhs.letters_) push_reduced(w.letters_, l);
  return w;
}

GenWord GenWord::conjugated_by(const GenWord& y) const { return y * *this * y.inverse(); }

GenWord GenWord::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == letters_[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  GenWord w;
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                    letters_.begin() + static_cast<std::ptrdiff_t>(hi));
  return w;
}

GenWord commutator(const GenWord& x, const GenWord& y) {
  return x.inverse() * y.inverse() * x * y;
}

// ---------------------------------------------------------------------------

namespace {

// Rewrites superscript digits and minus signs as "^-12" and drops product
// symbols.
std::string normalize(const std::string& text) {
  static const std::pair<const char*, char> supers[] = {
      {"⁰", '0'}, {"¹", '1'}, {"²", '2'}, {"³", '3'}, {"⁴", '4'},
      {"⁵", '5'}, {"⁶", '6'}, {"⁷", '7'}, {"⁸", '8'}, {"⁹", '9'},
      {"⁻", '-'}};
  auto super_at = [&](std::size_t i) -> char {
    for (const auto& [seq, ch] : supers) {
      const std::string s(seq);
      if (text.compare(i, s.size(), s) == 0) return ch;
    }
    return 0;
  };
  auto super_len = [&](std::size_t i) -> std::size_t {
    for (const auto& [seq, ch] : supers) {
      const std::string s(seq);
      if (text.compare(i, s.size(), s) == 0) return s.size();
    }
    return 0;
  };
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 5, "\\cdot") == 0) {
      i += 5;
      continue;
    }
    if (text.compare(i, 2, "·") == 0) {
      i += 2;
      continue;
    }
    if (super_at(i)) {
      out += '^';
      while (i < text.size() && super_at(i)) {
        out += super_at(i);
        i += super_len(i);
      }
      continue;
    }
    const char c = text[i++];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') continue;
    out += c;
  }
  return out;
}

class Parser {
 public:
  Parser(std::string s, std::size_t m) : s_(std::move(s)), m_(m) {}

  GenWord parse() {
    GenWord w = sequence();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const { throw WordSyntaxError(msg, pos_); }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  GenWord sequence() {
    GenWord w;
    while (pos_ < s_.size() && peek() != ')' && peek() != ']' && peek() != ',' && peek() != '}')
      w = w * atom();
    return w;
  }

  bool at_integer() const {
    std::size_t p = pos_;
    if (p < s_.size() && s_[p] == '{') ++p;
    if (p < s_.size() && s_[p] == '-') ++p;
    return p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]));
  }

  long integer() {
    const bool braced = peek() == '{';
    if (braced) ++pos_;
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    const long k = std::stol(s_.substr(start, pos_ - start));
    if (braced) expect('}');
    return k;
  }

  GenWord primary() {
    const char c = peek();
    if (c == '(' || c == '{') {
      ++pos_;
      GenWord w = sequence();
      expect(c == '(' ? ')' : '}');
      return w;
    }
    if (c == '[') {
      ++pos_;
      GenWord x = sequence();
      expect(',');
      GenWord y = sequence();
      expect(']');
      return commutator(x, y);
    }
    if (c == '1') {
      ++pos_;
      return {};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      const bool inv = std::isupper(static_cast<unsigned char>(c));
      const StateId s = static_cast<StateId>(std::tolower(static_cast<unsigned char>(c)) - 'a');
      if (s >= m_) {
        --pos_;
        fail(std::string("letter '") + c + "' names no state");
      }
      return GenWord::generator(s, inv ? -1 : 1);
    }
    if (c == '\0') fail("unexpected end of word");
    fail(std::string("unexpected '") + c + "'");
  }

  GenWord atom() {
    GenWord w = primary();
    while (peek() == '^') {
      ++pos_;
      if (at_integer()) {
        w = w.power(integer());
      } else {
        GenWord y = primary();
        if (peek() == '^' && pos_ + 1 < s_.size()) {
          const std::size_t save = pos_;
          ++pos_;
          if (at_integer())
            y = y.power(integer());
          else
            pos_ = save;
        }
        w = w.conjugated_by(y);
      }
    }
    return w;
  }

  std::string s_;
  std::size_t m_;
  std::size_t pos_ = 0;
};

}  // namespace

GenWord parse_word(const std::string& text, std::size_t state_count) {
  return Parser(normalize(text), state_count).parse();
}

std::string format_word(const GenWord& w) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const long run = static_cast<long>(j - i) * ls[i].exp;
    out += Automaton::default_label(ls[i].state);
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

}  // namespace selfsim
