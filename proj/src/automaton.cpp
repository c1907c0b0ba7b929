#include "selfsim/automaton.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

namespace selfsim {

LetterPerm identity_perm(std::size_t d) {
  LetterPerm p(d);
  std::iota(p.begin(), p.end(), Letter{0});
  return p;
}

LetterPerm inverse_perm(const LetterPerm& p) {
  LetterPerm q(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) q[p[x]] = static_cast<Letter>(x);
  return q;
}

LetterPerm compose(const LetterPerm& p, const LetterPerm& q) {
  LetterPerm r(q.size());
  for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
  return r;
}

bool is_identity_perm(const LetterPerm& p) {
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] != x) return false;
  return true;
}

bool is_permutation(const LetterPerm& p) {
  std::vector<bool> seen(p.size(), false);
  for (Letter y : p) {
    if (y >= p.size() || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

namespace {

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && r > UINT64_MAX / base) throw AutomatonError("numbering overflow");
    r *= base;
  }
  return r;
}

}  // namespace

std::uint64_t perm_rank(const LetterPerm& p) {
  // Lehmer code
  std::uint64_t rank = 0;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

LetterPerm perm_unrank(std::uint64_t rank, std::size_t d) {
  std::vector<Letter> pool = identity_perm(d);
  LetterPerm p;
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint64_t f = factorial(d - 1 - i);
    const std::size_t k = rank / f;
    rank %= f;
    p.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return p;
}

std::string cycle_notation(const LetterPerm& p) {
  if (is_identity_perm(p)) return "1";
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (done[x] || p[x] == x) continue;
    out += '(';
    for (std::size_t y = x; !done[y]; y = p[y]) {
      done[y] = true;
      out += std::to_string(y);
    }
    out += ')';
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string Automaton::default_label(StateId s) {
  if (s < 26) return std::string(1, static_cast<char>('a' + s));
  return "s" + std::to_string(s);
}

Automaton::Automaton(std::size_t alphabet_size, std::vector<LetterPerm> output,
                     std::vector<std::vector<StateId>> transition,
                     std::vector<std::string> labels)
    : d_(alphabet_size), output_(std::move(output)), transition_(std::move(transition)),
      labels_(std::move(labels)) {
  if (d_ < 2) throw AutomatonError("alphabet must have at least 2 letters");
  if (output_.empty()) throw AutomatonError("automaton needs at least one state");
  if (transition_.size() != output_.size())
    throw AutomatonError("output and transition maps disagree on the state count");
  const std::size_t m = output_.size();
  for (std::size_t s = 0; s < m; ++s) {
    if (output_[s].size() != d_ || !is_permutation(output_[s]))
      throw AutomatonError("output of state " + std::to_string(s) + " is not a permutation");
    if (transition_[s].size() != d_)
      throw AutomatonError("transition row of state " + std::to_string(s) + " has wrong size");
    for (StateId t : transition_[s])
      if (t >= m) throw AutomatonError("transition target out of range");
  }
  if (labels_.empty()) {
    for (std::size_t s = 0; s < m; ++s) labels_.push_back(default_label(static_cast<StateId>(s)));
  } else if (labels_.size() != m) {
    throw AutomatonError("label count does not match the state count");
  }
}

std::vector<std::string> Automaton::recursion_lines(
    const std::vector<std::string>& letter_names) const {
  std::vector<std::string> lines;
  for (StateId s = 0; s < state_count(); ++s) {
    std::string line = labels_[s] + "=";
    if (d_ == 2) {
      if (is_active(s)) line += "σ";
    } else if (is_active(s)) {
      if (letter_names.empty()) {
        line += cycle_notation(output_[s]);
      } else {
        // same cycles, printed with the letter names
        std::vector<bool> done(d_, false);
        for (std::size_t x = 0; x < d_; ++x) {
          if (done[x] || output_[s][x] == x) continue;
          line += '(';
          for (std::size_t y = x; !done[y]; y = output_[s][y]) {
            done[y] = true;
            line += letter_names[y];
          }
          line += ')';
        }
      }
    }
    line += '(';
    for (std::size_t x = 0; x < d_; ++x) {
      if (x) line += ',';
      line += labels_[transition_[s][x]];
    }
    line += ')';
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string Automaton::recursion_text() const {
  std::string out;
  for (const auto& line : recursion_lines()) {
    if (!out.empty()) out += ", ";
    out += line;
  }
  return out;
}

Automaton binary_automaton(const std::vector<bool>& active,
                           const std::vector<std::pair<StateId, StateId>>& targets,
                           std::vector<std::string> labels) {
  std::vector<LetterPerm> out;
  std::vector<std::vector<StateId>> tr;
  for (std::size_t s = 0; s < active.size(); ++s) {
    out.push_back(active[s] ? LetterPerm{1, 0} : LetterPerm{0, 1});
    tr.push_back({targets.at(s).first, targets.at(s).second});
  }
  return Automaton(2, std::move(out), std::move(tr), std::move(labels));
}

Automaton parse_binary_recursion(const std::string& text) {
  static const std::regex line_re(
      R"(([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(σ|\\sigma|s)?\s*\(\s*([A-Za-z0-9_]+)\s*,\s*([A-Za-z0-9_]+)\s*\))");
  std::vector<std::string> names;
  std::vector<bool> active;
  std::vector<std::pair<std::string, std::string>> raw;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), line_re);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    names.push_back(m[1]);
    active.push_back(m[2].matched);
    raw.emplace_back(m[3], m[4]);
  }
  if (names.empty()) throw AutomatonError("no wreath recursion found in '" + text + "'");
  auto index_of = [&](const std::string& name) -> StateId {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return static_cast<StateId>(it - names.begin());
    if (name == "1") {
      names.push_back("1");
      active.push_back(false);
      raw.emplace_back("1", "1");
      return static_cast<StateId>(names.size() - 1);
    }
    throw AutomatonError("undefined state '" + name + "'");
  };
  std::vector<std::pair<StateId, StateId>> targets;
  for (std::size_t s = 0; s < raw.size(); ++s) {
    const auto [l, r] = raw[s];
    const StateId li = index_of(l);
    const StateId ri = index_of(r);
    targets.emplace_back(li, ri);
  }
  return binary_automaton(active, targets, names);
}

// ---------------------------------------------------------------------------

std::uint64_t automaton_count(std::size_t m, std::size_t d) {
  return checked_pow(m, m * d) * checked_pow(factorial(d), m);
}

std::uint64_t mixed_radix_index(const Automaton& a) {
  const std::size_t m = a.state_count();
  const std::size_t d = a.alphabet_size();
  std::uint64_t trans = 0;
  std::uint64_t weight = 1;
  for (StateId s = 0; s < m; ++s)
    for (Letter x = 0; x < d; ++x) {
      trans += a.transition(s, x) * weight;
      weight *= m;
    }
  std::uint64_t perms = 0;
  std::uint64_t pw = 1;
  const std::uint64_t df = factorial(d);
  for (StateId s = 0; s < m; ++s) {
    perms += perm_rank(a.output(s)) * pw;
    pw *= df;
  }
  return trans + checked_pow(m, m * d) * perms;
}

Automaton from_mixed_radix_index(std::uint64_t index, std::size_t m, std::size_t d) {
  if (index >= automaton_count(m, d)) throw AutomatonError("automaton index out of range");
  const std::uint64_t tspan = checked_pow(m, m * d);
  std::uint64_t trans = index % tspan;
  std::uint64_t perms = index / tspan;
  std::vector<std::vector<StateId>> tr(m, std::vector<StateId>(d));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t x = 0; x < d; ++x) {
      tr[s][x] = static_cast<StateId>(trans % m);
      trans /= m;
    }
  const std::uint64_t df = factorial(d);
  std::vector<LetterPerm> out;
  for (std::size_t s = 0; s < m; ++s) {
    out.push_back(perm_unrank(perms % df, d));
    perms /= df;
  }
  return Automaton(d, std::move(out), std::move(tr));
}

std::uint32_t encode_number(const Automaton& a) {
  if (a.state_count() != 3 || a.alphabet_size() != 2)
    throw AutomatonError("numbering is defined for 3-state automata over 2 letters only");
  return static_cast<std::uint32_t>(mixed_radix_index(a) + 1);
}

Automaton decode_number(std::uint32_t n) {
  if (n < 1 || n > kAutomatonCount32)
    throw AutomatonError("automaton number " + std::to_string(n) + " outside 1.." +
                         std::to_string(kAutomatonCount32));
  return from_mixed_radix_index(n - 1, 3, 2);
}

// ---------------------------------------------------------------------------

Automaton invert(const Automaton& a) {
  std::vector<LetterPerm> out;
  std::vector<std::vector<StateId>> tr;
  for (StateId s = 0; s < a.state_count(); ++s) {
    const LetterPerm inv = inverse_perm(a.output(s));
    std::vector<StateId> row(a.alphabet_size());
    for (Letter x = 0; x < a.alphabet_size(); ++x) row[x] = a.transition(s, inv[x]);
    out.push_back(inv);
    tr.push_back(std::move(row));
  }
  return Automaton(a.alphabet_size(), std::move(out), std::move(tr), a.labels());
}

std::optional<Automaton> dual(const Automaton& a) {
  const std::size_t m = a.state_count();
  const std::size_t d = a.alphabet_size();
  if (m > 255) return std::nullopt;
  std::vector<LetterPerm> out;
  std::vector<std::vector<StateId>> tr;
  std::vector<std::string> labels;
  for (Letter x = 0; x < d; ++x) {
    LetterPerm p(m);
    std::vector<StateId> row(m);
    for (StateId q = 0; q < m; ++q) {
      p[q] = static_cast<Letter>(a.transition(q, x));
      row[q] = a.output(q)[x];
    }
    if (!is_permutation(p)) return std::nullopt;
    out.push_back(std::move(p));
    tr.push_back(std::move(row));
    labels.push_back(x < 26 ? std::string(1, static_cast<char>('A' + x)) : "L" + std::to_string(x));
  }
  return Automaton(m, std::move(out), std::move(tr), std::move(labels));
}

bool is_fully_invertible(const Automaton& a) {
  return dual(a).has_value() && dual(invert(a)).has_value();
}

Minimization minimize_with_map(const Automaton& a) {
  const std::size_t m = a.state_count();
  const std::size_t d = a.alphabet_size();
  std::vector<std::uint32_t> cls(m);
  std::size_t classes = 0;
  {
    std::map<LetterPerm, std::uint32_t> ids;
    for (StateId s = 0; s < m; ++s)
      cls[s] = ids.emplace(a.output(s), static_cast<std::uint32_t>(ids.size())).first->second;
    classes = ids.size();
  }
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(m);
    for (StateId s = 0; s < m; ++s) {
      std::vector<std::uint32_t> sig{cls[s]};
      for (Letter x = 0; x < d; ++x) sig.push_back(cls[a.transition(s, x)]);
      next[s] = ids.emplace(std::move(sig), static_cast<std::uint32_t>(ids.size())).first->second;
    }
    cls = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }

  // Renumber classes by DFS preorder from the class of state 0.
  std::vector<StateId> rep(classes, 0);
  std::vector<bool> has_rep(classes, false);
  for (StateId s = 0; s < m; ++s)
    if (!has_rep[cls[s]]) {
      rep[cls[s]] = s;
      has_rep[cls[s]] = true;
    }
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> order(classes, kUnset);
  std::uint32_t next_id = 0;
  auto visit = [&](auto&& self, std::uint32_t c) -> void {
    if (order[c] != kUnset) return;
    order[c] = next_id++;
    for (Letter x = 0; x < d; ++x) self(self, cls[a.transition(rep[c], x)]);
  };
  for (StateId s = 0; s < m; ++s) visit(visit, cls[s]);

  std::vector<LetterPerm> out(classes);
  std::vector<std::vector<StateId>> tr(classes, std::vector<StateId>(d));
  std::vector<std::string> labels(classes);
  for (std::uint32_t c = 0; c < classes; ++c) {
    const StateId s = rep[c];
    out[order[c]] = a.output(s);
    labels[order[c]] = a.label(s);
    for (Letter x = 0; x < d; ++x) tr[order[c]][x] = order[cls[a.transition(s, x)]];
  }
  Minimization result{Automaton(d, std::move(out), std::move(tr), std::move(labels)), {}};
  for (StateId s = 0; s < m; ++s) result.state_map.push_back(order[cls[s]]);
  return result;
}

Automaton minimize(const Automaton& a) { return minimize_with_map(a).automaton; }

std::vector<bool> trivial_states(const Automaton& a) {
  // A state is nontrivial iff an active state is reachable from it.
  const std::size_t m = a.state_count();
  std::vector<std::vector<StateId>> rev(m);
  for (StateId s = 0; s < m; ++s)
    for (StateId t : a.transitions(s)) rev[t].push_back(s);
  std::vector<bool> nontrivial(m, false);
  std::vector<StateId> stack;
  for (StateId s = 0; s < m; ++s)
    if (a.is_active(s)) {
      nontrivial[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    const StateId t = stack.back();
    stack.pop_back();
    for (StateId s : rev[t])
      if (!nontrivial[s]) {
        nontrivial[s] = true;
        stack.push_back(s);
      }
  }
  std::vector<bool> trivial(m);
  for (StateId s = 0; s < m; ++s) trivial[s] = !nontrivial[s];
  return trivial;
}

namespace {

std::vector<bool> reachable_from(const Automaton& a, StateId start) {
  std::vector<bool> seen(a.state_count(), false);
  std::vector<StateId> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId t : a.transitions(s))
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
  }
  return seen;
}

}  // namespace

StructuralFlags structural_flags(const Automaton& a) {
  StructuralFlags f;
  const auto trivial = trivial_states(a);
  f.has_trivial_state = std::find(trivial.begin(), trivial.end(), true) != trivial.end();
  if (f.has_trivial_state) {
    f.open_set_condition = true;
    for (StateId s = 0; s < a.state_count() && f.open_set_condition; ++s) {
      const auto reach = reachable_from(a, s);
      bool hits = false;
      for (StateId t = 0; t < a.state_count(); ++t) hits = hits || (reach[t] && trivial[t]);
      f.open_set_condition = hits;
    }
  }
  f.strongly_connected = true;
  for (StateId s = 0; s < a.state_count() && f.strongly_connected; ++s) {
    const auto reach = reachable_from(a, s);
    f.strongly_connected = std::all_of(reach.begin(), reach.end(), [](bool b) { return b; });
  }
  f.dual_invertible = dual(a).has_value();
  f.fully_invertible = is_fully_invertible(a);
  return f;
}

}  // namespace selfsim
