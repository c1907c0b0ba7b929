#include "selfsim/tree_action.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace selfsim {

Vertex parse_vertex(const std::string& text, std::size_t d) {
  Vertex v;
  for (char c : text) {
    if (c < '0' || static_cast<std::size_t>(c - '0') >= d || d > 10)
      throw std::invalid_argument("bad vertex letter '" + std::string(1, c) + "'");
    v.push_back(static_cast<Letter>(c - '0'));
  }
  return v;
}

std::string format_vertex(const Vertex& v) {
  std::string s;
  for (Letter x : v) s += static_cast<char>('0' + x);
  return s;
}

namespace {

Letter letter_image(const Automaton& a, GenLetter l, Letter x) {
  if (l.exp > 0) return a.output(l.state)[x];
  return inverse_perm(a.output(l.state))[x];
}

GenLetter letter_section(const Automaton& a, GenLetter l, Letter x) {
  if (l.exp > 0) return {a.transition(l.state, x), 1};
  const Letter pre = inverse_perm(a.output(l.state))[x];
  return {a.transition(l.state, pre), -1};
}

}  // namespace

LetterPerm root_perm(const Automaton& a, const GenWord& w) {
  LetterPerm p = identity_perm(a.alphabet_size());
  for (const auto& l : w.letters()) {
    const LetterPerm q = l.exp > 0 ? a.output(l.state) : inverse_perm(a.output(l.state));
    p = compose(p, q);
  }
  return p;
}

GenWord section(const Automaton& a, const GenWord& w, Letter x) {
  const auto& ls = w.letters();
  std::vector<GenLetter> out(ls.size());
  Letter y = x;
  for (std::size_t i = ls.size(); i-- > 0;) {
    out[i] = letter_section(a, ls[i], y);
    y = letter_image(a, ls[i], y);
  }
  return GenWord(out);
}

GenWord section(const Automaton& a, const GenWord& w, const Vertex& v) {
  GenWord s = w;
  for (Letter x : v) s = section(a, s, x);
  return s;
}

Vertex act(const Automaton& a, const GenWord& w, const Vertex& v) {
  Vertex out;
  GenWord s = w;
  for (Letter x : v) {
    out.push_back(root_perm(a, s)[x]);
    s = section(a, s, x);
  }
  return out;
}

bool is_identity(const Automaton& a, const GenWord& w) {
  std::set<GenWord> seen{w};
  std::deque<GenWord> queue{w};
  while (!queue.empty()) {
    const GenWord u = queue.front();
    queue.pop_front();
    if (!is_identity_perm(root_perm(a, u))) return false;
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      GenWord s = section(a, u, x);
      if (seen.insert(s).second) queue.push_back(std::move(s));
    }
  }
  return true;
}

bool equals(const Automaton& a, const GenWord& u, const GenWord& v) {
  return is_identity(a, u * v.inverse());
}

SectionGraph section_graph(const Automaton& a, const GenWord& w) {
  SectionGraph g;
  std::map<GenWord, std::size_t> index{{w, 0}};
  g.words.push_back(w);
  for (std::size_t i = 0; i < g.words.size(); ++i) {
    const GenWord u = g.words[i];
    g.perms.push_back(root_perm(a, u));
    std::vector<std::size_t> kids;
    for (Letter x = 0; x < a.alphabet_size(); ++x) {
      GenWord s = section(a, u, x);
      auto [it, fresh] = index.emplace(s, g.words.size());
      if (fresh) g.words.push_back(std::move(s));
      kids.push_back(it->second);
    }
    g.children.push_back(std::move(kids));
  }
  return g;
}

namespace {

void require_binary(std::size_t d) {
  if (d != 2) throw std::invalid_argument("transitivity series needs a 2-letter alphabet");
}

}  // namespace

RationalSeries transitivity_series(const Automaton& a, const GenWord& w) {
  require_binary(a.alphabet_size());
  const SectionGraph g = section_graph(a, w);
  std::vector<int> rhs;
  for (const auto& p : g.perms) rhs.push_back(is_identity_perm(p) ? 0 : 1);
  return solve_section_system(g.children, rhs)[0];
}

RationalSeries transitivity_series(const ElementStore& store, ElementStore::Id g) {
  require_binary(store.alphabet_size());
  const auto nodes = store.section_closure({g});
  std::unordered_map<ElementStore::Id, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  std::vector<std::vector<std::size_t>> rows(nodes.size());
  std::vector<int> rhs(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    rhs[i] = store.is_active(nodes[i]) ? 1 : 0;
    for (Letter x = 0; x < 2; ++x) rows[i].push_back(index.at(store.section(nodes[i], x)));
  }
  return solve_section_system(rows, rhs)[0];
}

namespace {

// Level n is transitive iff an odd number of level-n sections are active.
// The parities form a linear recurrence of order at most k (the closure
// size), so comparing the first k + 1 terms with the all-ones sequence
// decides equality of the series.
bool odd_active_at_every_level(const std::vector<std::vector<std::size_t>>& children,
                               const std::vector<bool>& active) {
  const std::size_t k = children.size();
  std::vector<std::uint8_t> count(k, 0), next(k);
  count[0] = 1;
  for (std::size_t n = 0; n <= k; ++n) {
    std::uint8_t parity = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (active[i]) parity ^= count[i];
    if (!parity) return false;
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < k; ++i)
      if (count[i])
        for (std::size_t c : children[i]) next[c] ^= 1;
    count.swap(next);
  }
  return true;
}

}  // namespace

bool is_level_transitive(const Automaton& a, const GenWord& w) {
  require_binary(a.alphabet_size());
  const SectionGraph g = section_graph(a, w);
  std::vector<bool> active;
  for (const auto& p : g.perms) active.push_back(!is_identity_perm(p));
  return odd_active_at_every_level(g.children, active);
}

bool is_level_transitive(const ElementStore& store, ElementStore::Id g) {
  require_binary(store.alphabet_size());
  const auto nodes = store.section_closure({g});
  std::unordered_map<ElementStore::Id, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  std::vector<std::vector<std::size_t>> children(nodes.size());
  std::vector<bool> active(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    active[i] = store.is_active(nodes[i]);
    for (Letter x = 0; x < 2; ++x) children[i].push_back(index.at(store.section(nodes[i], x)));
  }
  return odd_active_at_every_level(children, active);
}

std::string OrderResult::to_string() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(order);
    case Kind::Infinite: return "infinite";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<StatePartition> nontorsion_partition(const Automaton& a) {
  if (a.alphabet_size() != 2) return std::nullopt;
  const std::size_t m = a.state_count();
  if (m < 2 || m > 20) return std::nullopt;
  for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
    auto in_p = [&](StateId s) { return ((mask >> s) & 1) != 0; };
    bool p_active = true, p_inactive = true;
    for (StateId s = 0; s < m; ++s) {
      p_active = p_active && (in_p(s) == a.is_active(s));
      p_inactive = p_inactive && (in_p(s) == !a.is_active(s));
    }
    if (!p_active && !p_inactive) continue;
    bool ok = true;
    for (StateId s = 0; s < m && ok; ++s) {
      const bool left = in_p(a.transition(s, 0));
      const bool right = in_p(a.transition(s, 1));
      ok = in_p(s) ? left == right : left != right;
    }
    if (!ok) continue;
    StatePartition part;
    for (StateId s = 0; s < m; ++s) (in_p(s) ? part.first : part.second).push_back(s);
    return part;
  }
  return std::nullopt;
}

bool in_nontorsion_class(const Automaton& a, const GenWord& w) {
  if (!nontorsion_partition(a)) return false;
  std::size_t active = 0, inactive = 0;
  for (const auto& l : w.letters()) (a.is_active(l.state) ? active : inactive) += 1;
  return (active % 2 == 1) && (inactive % 2 == 1);
}

namespace {

constexpr int kMaxPower = 4;
constexpr std::size_t kMaxFixedDepth = 6;
// Elements with larger section closures are not raised to powers, and a
// single certification may add at most this many elements to the store.
constexpr std::size_t kMaxPowerClosure = 200;
constexpr std::size_t kStoreBudget = 20000;

bool certify(ElementStore& store, ElementStore::Id g, const GenWord* w, int nesting,
             std::map<ElementStore::Id, bool>& transitive_memo, std::size_t store_limit) {
  using Id = ElementStore::Id;
  if (g == ElementStore::identity()) return false;
  const bool binary = store.alphabet_size() == 2;
  auto transitive = [&](Id h) {
    auto it = transitive_memo.find(h);
    if (it != transitive_memo.end()) return it->second;
    const bool t = binary && is_level_transitive(store, h);
    transitive_memo.emplace(h, t);
    return t;
  };
  if (transitive(g)) return true;
  if (w && in_nontorsion_class(store.automaton(), *w)) return true;
  if (nesting <= 0) return false;
  const std::size_t g_closure = store.section_closure({g}).size();
  if (g_closure > kMaxPowerClosure) return false;

  const Id g_inv = store.inverse(g);
  Id p = ElementStore::identity();
  for (int k = 1; k <= kMaxPower; ++k) {
    if (store.section_closure({p}).size() * g_closure > kStoreBudget) return false;
    p = store.multiply(p, g);
    if (store.size() > store_limit) return false;
    if (p == ElementStore::identity()) return false;
    // walk the vertices fixed by p, depth first
    std::vector<std::pair<Id, std::size_t>> stack{{p, 0}};
    while (!stack.empty()) {
      const auto [h, depth] = stack.back();
      stack.pop_back();
      if (depth > 0) {
        // Torsion in the binary tree group has 2-power order, so an even
        // power with section g^{+-1} at a fixed vertex forces infinite order.
        if (binary && k % 2 == 0 && (h == g || h == g_inv)) return true;
        if (h != g && h != g_inv && h != ElementStore::identity() &&
            certify(store, h, nullptr, nesting - 1, transitive_memo, store_limit))
          return true;
      }
      if (depth == kMaxFixedDepth) continue;
      const LetterPerm& perm = store.perm(h);
      for (Letter x = 0; x < store.alphabet_size(); ++x)
        if (perm[x] == x) stack.emplace_back(store.section(h, x), depth + 1);
    }
  }
  return false;
}

}  // namespace

bool certify_infinite_order(ElementStore& store, ElementStore::Id g, const GenWord* w, int nesting) {
  std::map<ElementStore::Id, bool> memo;
  return certify(store, g, w, nesting, memo, store.size() + kStoreBudget);
}

bool certify_infinite_order(const Automaton& a, const GenWord& w) {
  ElementStore store(a);
  return certify_infinite_order(store, store.evaluate(w), &w);
}

OrderResult order_bounded(const Automaton& a, const GenWord& w, std::uint64_t cap) {
  if (w.empty()) return OrderResult::finite(1);
  if (a.alphabet_size() == 2 && is_level_transitive(a, w)) return OrderResult::infinite();
  ElementStore store(a);
  const auto g = store.evaluate(w);
  auto p = g;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (p == ElementStore::identity()) return OrderResult::finite(k);
    p = store.multiply(p, g);
  }
  if (certify_infinite_order(store, g, &w)) return OrderResult::infinite();
  return OrderResult::unknown();
}

std::optional<std::pair<GenWord, GenWord>> not_free_witness(const Automaton& a, int radius) {
  if (a.alphabet_size() != 2) return std::nullopt;
  using Id = ElementStore::Id;
  ElementStore store(a);
  std::vector<GenLetter> gens;
  for (StateId s = 0; s < a.state_count(); ++s) {
    gens.push_back({s, 1});
    gens.push_back({s, -1});
  }
  std::unordered_map<Id, bool> seen{{ElementStore::identity(), true}};
  std::vector<std::pair<Id, GenWord>> frontier{{ElementStore::identity(), GenWord()}};
  std::optional<GenWord> left_trivial, right_trivial;
  for (int len = 1; len <= radius; ++len) {
    std::vector<std::pair<Id, GenWord>> next;
    for (const auto& [id, word] : frontier)
      for (const auto& l : gens) {
        GenWord w = word * GenWord(std::vector<GenLetter>{l});
        if (w.size() != static_cast<std::size_t>(len)) continue;
        const Id g = store.multiply(id, store.letter(l));
        if (!seen.emplace(g, true).second) continue;
        if (!store.is_active(g)) {
          const bool s0 = store.section(g, 0) == ElementStore::identity();
          const bool s1 = store.section(g, 1) == ElementStore::identity();
          if (s0 && !s1 && !left_trivial) left_trivial = w;
          if (s1 && !s0 && !right_trivial) right_trivial = w;
          if (left_trivial && right_trivial) return std::make_pair(*left_trivial, *right_trivial);
        }
        next.emplace_back(g, std::move(w));
      }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace selfsim
