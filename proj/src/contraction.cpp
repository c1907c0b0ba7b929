#include "selfsim/contraction.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "selfsim/group_analysis.hpp"
#include "selfsim/tree_action.hpp"

namespace selfsim {

namespace {

using Id = ElementStore::Id;

// Element ids paired with the shortest word seen for each.
class WordBook {
 public:
  WordBook(const Automaton& a, ElementStore& store) : a_(a), store_(store) {}

  void note(Id id, const GenWord& w) {
    auto it = words_.find(id);
    if (it == words_.end())
      words_.emplace(id, w);
    else if (w.size() < it->second.size())
      it->second = w;
  }
  const GenWord& word(Id id) const { return words_.at(id); }

  Id child(Id id, Letter x) {
    const Id c = store_.section(id, x);
    if (!words_.count(c)) note(c, section(a_, word(id), x));
    return c;
  }

 private:
  const Automaton& a_;
  ElementStore& store_;
  std::unordered_map<Id, GenWord> words_;
};

// Nodes of `nodes` that lie on a cycle of the section graph restricted to
// `nodes`, plus everything reachable from them inside `nodes`.
std::vector<Id> persistent_part(const std::vector<Id>& nodes, const ElementStore& store) {
  std::unordered_map<Id, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
  const std::size_t n = nodes.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (Letter x = 0; x < store.alphabet_size(); ++x) {
      auto it = index.find(store.section(nodes[i], x));
      if (it != index.end()) adj[i].push_back(it->second);
    }
  // Tarjan, iterative
  std::vector<int> low(n, 0), num(n, -1), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> comp_size;
  int counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (num[root] >= 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, k] = call.back();
      if (k < adj[v].size()) {
        const std::size_t w = adj[v][k++];
        if (num[w] < 0) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
        continue;
      }
      if (low[v] == num[v]) {
        const int c = static_cast<int>(comp_size.size());
        std::size_t size = 0;
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = c;
          ++size;
          if (w == v) break;
        }
        comp_size.push_back(size);
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  std::vector<bool> keep(n, false);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    bool cyclic = comp_size[static_cast<std::size_t>(comp[i])] > 1;
    for (std::size_t j : adj[i]) cyclic = cyclic || j == i;
    if (cyclic) {
      keep[i] = true;
      queue.push_back(i);
    }
  }
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t j : adj[queue[q]])
      if (!keep[j]) {
        keep[j] = true;
        queue.push_back(j);
      }
  std::vector<Id> out;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(nodes[i]);
  return out;
}

struct NucleusState {
  std::vector<Id> members;
  std::unordered_set<Id> set;
};

bool grow_nucleus(const Automaton& a, ElementStore& store, WordBook& book, NucleusState& nuc,
                  const NucleusOptions& opt) {
  auto add = [&](Id id) {
    if (nuc.set.insert(id).second) nuc.members.push_back(id);
  };

  std::vector<Id> roots{ElementStore::identity()};
  book.note(ElementStore::identity(), GenWord());
  for (StateId s = 0; s < a.state_count(); ++s) {
    const Id g = store.generator(s);
    const Id gi = store.generator_inverse(s);
    book.note(g, GenWord::generator(s, 1));
    book.note(gi, GenWord::generator(s, -1));
    roots.push_back(g);
    roots.push_back(gi);
  }
  auto closure = store.section_closure(roots);
  for (Id id : closure)
    for (Letter x = 0; x < store.alphabet_size(); ++x) book.child(id, x);
  for (Id id : persistent_part(closure, store)) add(id);
  if (nuc.members.size() > opt.size_cap) return false;

  std::size_t done = 0;  // pairs (i, j) with i, j < done are settled
  while (done < nuc.members.size()) {
    const std::size_t limit = nuc.members.size();
    for (std::size_t i = 0; i < limit; ++i)
      for (std::size_t j = (i < done ? done : 0); j < limit; ++j) {
        const Id g = nuc.members[i];
        const Id h = nuc.members[j];
        const Id p = store.multiply(g, h);
        book.note(p, book.word(g) * book.word(h));
        if (nuc.set.count(p)) continue;
        // explore sections of p outside the current set
        std::vector<Id> explored;
        std::unordered_set<Id> seen{p};
        std::vector<std::pair<Id, std::size_t>> stack{{p, 0}};
        while (!stack.empty()) {
          const auto [f, depth] = stack.back();
          stack.pop_back();
          explored.push_back(f);
          for (Letter x = 0; x < store.alphabet_size(); ++x) {
            const Id c = book.child(f, x);
            if (nuc.set.count(c) || !seen.insert(c).second) continue;
            if (depth + 1 > opt.depth_cap) return false;
            stack.emplace_back(c, depth + 1);
          }
        }
        for (Id id : persistent_part(explored, store)) add(id);
        if (nuc.members.size() > opt.size_cap) return false;
      }
    done = limit;
  }
  return true;
}

Nucleus to_nucleus(const NucleusState& nuc, const WordBook& book) {
  Nucleus out;
  for (Id id : nuc.members) out.elements.push_back(book.word(id));
  std::sort(out.elements.begin(), out.elements.end(), [](const GenWord& u, const GenWord& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    return u < v;
  });
  return out;
}

}  // namespace

std::optional<Nucleus> nucleus_search(const Automaton& a, const NucleusOptions& opt) {
  ElementStore store(a);
  WordBook book(a, store);
  NucleusState nuc;
  if (!grow_nucleus(a, store, book, nuc, opt)) return std::nullopt;
  return to_nucleus(nuc, book);
}

std::optional<std::size_t> nucleus_product_closure_size(const Automaton& a, const NucleusOptions& opt) {
  ElementStore store(a);
  WordBook book(a, store);
  NucleusState nuc;
  if (!grow_nucleus(a, store, book, nuc, opt)) return std::nullopt;
  std::unordered_set<Id> closed(nuc.members.begin(), nuc.members.end());
  for (Id g : nuc.members)
    for (Id h : nuc.members) {
      const Id p = store.multiply(g, h);
      for (Letter x = 0; x < store.alphabet_size(); ++x) closed.insert(store.section(p, x));
    }
  return closed.size();
}

// ---------------------------------------------------------------------------

bool is_noncontraction_witness(const Automaton& a, const GenWord& w, const std::vector<Letter>& v) {
  if (v.empty()) return false;
  ElementStore store(a);
  const Id g = store.evaluate(w);
  if (g == ElementStore::identity()) return false;
  if (store.act(g, v) != v || store.section(g, v) != g) return false;
  return certify_infinite_order(store, g, &w);
}

std::optional<NoncontractionWitness> noncontraction_witness(const Automaton& a, const WitnessOptions& opt) {
  ElementStore store(a);
  std::vector<GenLetter> letters;
  for (StateId s = 0; s < a.state_count(); ++s) {
    letters.push_back({s, 1});
    letters.push_back({s, -1});
  }
  std::optional<NoncontractionWitness> candidate;
  std::size_t attempts = 0;
  std::unordered_set<Id> seen{ElementStore::identity()};
  std::vector<std::pair<Id, GenWord>> layer{{ElementStore::identity(), GenWord()}};
  for (std::size_t len = 1; len <= opt.word_radius; ++len) {
    std::vector<std::pair<Id, GenWord>> next;
    for (const auto& [id, w] : layer)
      for (const auto& l : letters) {
        GenWord u = w * GenWord(std::vector<GenLetter>{l});
        if (u.size() != len) continue;
        const Id g = store.multiply(id, store.letter(l));
        if (!seen.insert(g).second) continue;
        // fixed vertices of g, depth first in lexicographic order
        std::vector<std::pair<Id, std::vector<Letter>>> stack{{g, {}}};
        while (!stack.empty()) {
          auto [h, v] = stack.back();
          stack.pop_back();
          if (!v.empty() && h == g) {
            NoncontractionWitness wit{u, v, false};
            if (certify_infinite_order(store, g, &u)) {
              wit.certified = true;
              return wit;
            }
            if (!candidate) candidate = wit;
            if (++attempts >= opt.candidate_cap) return candidate;
            break;
          }
          if (v.size() == opt.vertex_depth) continue;
          for (Letter x = static_cast<Letter>(store.alphabet_size()); x-- > 0;) {
            if (store.perm(h)[x] != x) continue;
            auto vx = v;
            vx.push_back(x);
            stack.emplace_back(store.section(h, x), std::move(vx));
          }
        }
        next.emplace_back(g, std::move(u));
      }
    layer = std::move(next);
  }
  return candidate;
}

std::string ContractionStatus::label() const {
  switch (kind) {
    case Kind::Yes: return "yes";
    case Kind::No: return "no";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

ContractionStatus contraction_status(const Automaton& a, const NucleusOptions& nopt,
                                     const WitnessOptions& wopt) {
  ContractionStatus st;
  st.nucleus = nucleus_search(a, nopt);
  if (st.nucleus) {
    st.kind = ContractionStatus::Kind::Yes;
    return st;
  }
  st.witness = noncontraction_witness(a, wopt);
  if (st.witness && st.witness->certified) st.kind = ContractionStatus::Kind::No;
  return st;
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> active_section_counts(const Automaton& a, StateId s, std::size_t max_n) {
  const std::size_t m = a.state_count();
  std::vector<std::uint64_t> paths(m, 0);
  paths[s] = 1;
  std::vector<std::uint64_t> counts;
  for (std::size_t n = 0; n <= max_n; ++n) {
    std::uint64_t c = 0;
    for (StateId t = 0; t < m; ++t)
      if (a.is_active(t)) c += paths[t];
    counts.push_back(c);
    std::vector<std::uint64_t> next(m, 0);
    for (StateId t = 0; t < m; ++t)
      for (StateId u : a.transitions(t)) next[u] += paths[t];
    paths = std::move(next);
  }
  return counts;
}

std::string ActivityClass::label() const {
  switch (kind) {
    case Kind::Bounded: return "bounded";
    case Kind::Polynomial: return "polynomial(" + std::to_string(degree) + ")";
    case Kind::Exponential: return "exponential";
  }
  return "?";
}

ActivityClass activity_class(const Automaton& a, StateId s) {
  const std::size_t m = a.state_count();
  // reachability matrix (m is small)
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (StateId u = 0; u < m; ++u) {
    std::vector<StateId> stack{u};
    reach[u][u] = true;
    while (!stack.empty()) {
      const StateId t = stack.back();
      stack.pop_back();
      for (StateId v : a.transitions(t))
        if (!reach[u][v]) {
          reach[u][v] = true;
          stack.push_back(v);
        }
    }
  }
  // strongly connected components by mutual reachability
  std::vector<int> comp(m, -1);
  int comps = 0;
  for (StateId u = 0; u < m; ++u) {
    if (comp[u] >= 0) continue;
    for (StateId v = 0; v < m; ++v)
      if (reach[u][v] && reach[v][u]) comp[v] = comps;
    ++comps;
  }
  std::vector<std::size_t> verts(comps, 0), inner(comps, 0);
  for (StateId u = 0; u < m; ++u) {
    ++verts[comp[u]];
    for (StateId v : a.transitions(u))
      if (comp[v] == comp[u]) ++inner[comp[u]];
  }
  auto reaches_active = [&](StateId u) {
    for (StateId v = 0; v < m; ++v)
      if (reach[u][v] && a.is_active(v)) return true;
    return false;
  };
  std::vector<bool> relevant(comps, false);
  for (StateId u = 0; u < m; ++u)
    if (reach[s][u] && reaches_active(u)) relevant[comp[u]] = true;

  ActivityClass out;
  out.counts = active_section_counts(a, s, 12);
  for (int c = 0; c < comps; ++c)
    if (relevant[c] && inner[c] > verts[c]) {
      out.kind = ActivityClass::Kind::Exponential;
      return out;
    }
  // Longest chain of cycle components on a path from s to an active state.
  // Components are numbered in discovery order, which is not topological,
  // so iterate to a fixed point over the (acyclic) condensation.
  std::vector<int> best(comps, -1);  // cycles counted from this component to an active state
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId u = 0; u < m; ++u) {
      if (!relevant[comp[u]]) continue;
      const int own = inner[comp[u]] == verts[comp[u]] ? 1 : 0;
      int v_best = a.is_active(u) ? 0 : -1;
      for (StateId v : a.transitions(u)) {
        if (!relevant[comp[v]]) continue;
        if (comp[v] == comp[u]) {
          for (StateId w = 0; w < m; ++w)
            if (comp[w] == comp[u] && a.is_active(w)) v_best = std::max(v_best, 0);
        } else if (best[comp[v]] >= 0) {
          v_best = std::max(v_best, best[comp[v]]);
        }
      }
      if (v_best >= 0 && v_best + own > best[comp[u]]) {
        best[comp[u]] = v_best + own;
        changed = true;
      }
    }
  }
  const int cycles = relevant[comp[s]] ? best[comp[s]] : 0;
  out.degree = std::max(cycles - 1, 0);
  out.kind = out.degree == 0 ? ActivityClass::Kind::Bounded : ActivityClass::Kind::Polynomial;
  return out;
}

// ---------------------------------------------------------------------------

TileGraph tile_graph(const Automaton& a, const Nucleus& nucleus, std::size_t level) {
  const std::size_t n = level_size(a.alphabet_size(), level);
  ElementStore store(a);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& w : nucleus.elements) {
    const Perm p = level_permutation(store, store.evaluate(w), level);
    for (std::size_t v = 0; v < n; ++v)
      if (p[v] != v) edges.emplace(std::min<std::size_t>(v, p[v]), std::max<std::size_t>(v, p[v]));
  }
  return {level, n, {edges.begin(), edges.end()}};
}

TileGraph tile_graph(const Automaton& a, std::size_t level) {
  const auto nucleus = nucleus_search(a);
  if (!nucleus) throw NotContracting("no nucleus found within the search caps");
  return tile_graph(a, *nucleus, level);
}

}  // namespace selfsim
