#include "selfsim/group_analysis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "selfsim/tree_action.hpp"

namespace selfsim {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::size_t level_size(std::size_t d, std::size_t n) {
  std::size_t size = 1;
  for (std::size_t k = 0; k < n; ++k) {
    size *= d;
    if (size > kMaxLevelSize)
      throw LevelTooDeep("level " + std::to_string(n) + " has more than " +
                         std::to_string(kMaxLevelSize) + " vertices");
  }
  return size;
}

std::size_t vertex_index(const std::vector<Letter>& v, std::size_t d) {
  std::size_t idx = 0;
  for (Letter x : v) idx = idx * d + x;
  return idx;
}

std::vector<Letter> vertex_at(std::size_t index, std::size_t d, std::size_t n) {
  std::vector<Letter> v(n);
  for (std::size_t k = n; k-- > 0;) {
    v[k] = static_cast<Letter>(index % d);
    index /= d;
  }
  return v;
}

std::vector<Perm> level_permutations(const Automaton& a, std::size_t n) {
  const std::size_t d = a.alphabet_size();
  const std::size_t m = a.state_count();
  level_size(d, n);
  std::vector<Perm> cur(m, Perm{0});
  std::size_t block = 1;  // d^(k-1)
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Perm> next(m, Perm(block * d));
    for (StateId s = 0; s < m; ++s)
      for (Letter x = 0; x < d; ++x) {
        const Perm& below = cur[a.transition(s, x)];
        const std::size_t out = a.output(s)[x];
        for (std::size_t r = 0; r < block; ++r)
          next[s][x * block + r] = static_cast<Point>(out * block + below[r]);
      }
    cur = std::move(next);
    block *= d;
  }
  return cur;
}

Perm level_permutation(const ElementStore& store, ElementStore::Id g, std::size_t n) {
  const std::size_t d = store.alphabet_size();
  level_size(d, n);
  std::map<std::pair<ElementStore::Id, std::size_t>, Perm> memo;
  auto rec = [&](auto&& self, ElementStore::Id f, std::size_t k) -> Perm {
    if (k == 0) return Perm{0};
    auto it = memo.find({f, k});
    if (it != memo.end()) return it->second;
    std::size_t block = 1;
    for (std::size_t i = 1; i < k; ++i) block *= d;
    Perm p(block * d);
    for (Letter x = 0; x < d; ++x) {
      const Perm below = self(self, store.section(f, x), k - 1);
      const std::size_t out = store.perm(f)[x];
      for (std::size_t r = 0; r < block; ++r) p[x * block + r] = static_cast<Point>(out * block + below[r]);
    }
    memo.emplace(std::make_pair(f, k), p);
    return p;
  };
  return rec(rec, g, n);
}

PermGroup level_group(const Automaton& a, std::size_t n) {
  const std::size_t size = level_size(a.alphabet_size(), n);
  return PermGroup(size, level_permutations(a, n));
}

BigInt level_quotient_order(const Automaton& a, std::size_t n) { return level_group(a, n).order(); }

std::vector<int> level_order_exponents(const Automaton& a, std::size_t max_level) {
  std::vector<int> out;
  for (std::size_t n = 0; n <= max_level; ++n) {
    BigInt order = level_quotient_order(a, n);
    const unsigned msb = boost::multiprecision::msb(order);
    out.push_back(order == (BigInt(1) << msb) ? static_cast<int>(msb) : -1);
  }
  return out;
}

namespace {

std::vector<ElementStore::Id> symmetric_generators(ElementStore& store) {
  std::vector<ElementStore::Id> gens;
  for (StateId s = 0; s < store.automaton().state_count(); ++s) {
    for (auto g : {store.generator(s), store.generator_inverse(s)})
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  return gens;
}

}  // namespace

GrowthRecord growth_sequence(const Automaton& a, std::size_t radius) {
  ElementStore store(a);
  const auto gens = symmetric_generators(store);
  GrowthRecord rec;
  rec.radius = radius;
  std::unordered_set<ElementStore::Id> seen{ElementStore::identity()};
  std::vector<ElementStore::Id> frontier{ElementStore::identity()};
  rec.counts.push_back(1);
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<ElementStore::Id> next;
    for (auto f : frontier)
      for (auto g : gens) {
        const auto h = store.multiply(f, g);
        if (seen.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
    rec.counts.push_back(seen.size());
  }
  return rec;
}

std::optional<std::uint64_t> enumerate_if_finite(const Automaton& a, std::uint64_t cap) {
  ElementStore store(a);
  const auto gens = symmetric_generators(store);
  std::unordered_set<ElementStore::Id> seen{ElementStore::identity()};
  std::vector<ElementStore::Id> frontier{ElementStore::identity()};
  while (!frontier.empty()) {
    std::vector<ElementStore::Id> next;
    for (auto f : frontier)
      for (auto g : gens) {
        const auto h = store.multiply(f, g);
        if (seen.insert(h).second) {
          if (seen.size() > cap) return std::nullopt;
          next.push_back(h);
        }
      }
    frontier = std::move(next);
  }
  return seen.size();
}

bool verify_relator(const Automaton& a, const GenWord& w) { return is_identity(a, w); }

// ---------------------------------------------------------------------------

namespace {

std::vector<GenLetter> rotate(const std::vector<GenLetter>& v, std::size_t k) {
  std::vector<GenLetter> r(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  r.insert(r.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

std::vector<std::vector<GenLetter>> cyclic_forms(const GenWord& r) {
  std::set<std::vector<GenLetter>> forms;
  for (const GenWord& base : {r.cyclically_reduced(), r.inverse().cyclically_reduced()}) {
    const auto& ls = base.letters();
    for (std::size_t k = 0; k < ls.size(); ++k) forms.insert(rotate(ls, k));
  }
  return {forms.begin(), forms.end()};
}

}  // namespace

bool same_relator(const GenWord& u, const GenWord& v) {
  const auto target = v.cyclically_reduced().letters();
  for (const auto& f : cyclic_forms(u))
    if (f == target) return true;
  return u.cyclically_reduced().empty() && target.empty();
}

bool derivable_from(const GenWord& w, const std::vector<GenWord>& relators, std::size_t budget) {
  const GenWord start = w.cyclically_reduced();
  if (start.empty()) return true;
  std::vector<std::vector<GenLetter>> forms;
  for (const auto& r : relators)
    for (auto& f : cyclic_forms(r))
      if (!f.empty()) forms.push_back(std::move(f));
  const std::size_t max_len = start.size();
  std::set<GenWord> visited{start};
  std::vector<GenWord> stack{start};
  while (!stack.empty() && visited.size() <= budget) {
    const GenWord cur = stack.back();
    stack.pop_back();
    const auto& ls = cur.letters();
    const std::size_t n = ls.size();
    for (const auto& rho : forms) {
      const std::size_t len = rho.size();
      for (std::size_t p = 0; p < n; ++p) {
        std::size_t match = 0;
        while (match < len && match < n && ls[(p + match) % n] == rho[match]) ++match;
        for (std::size_t k = (len + 1) / 2; k <= match; ++k) {
          if (k == 0) continue;
          // replace the matched piece rho[0..k) by (rho[k..len))^-1
          std::vector<GenLetter> repl;
          for (std::size_t i = len; i-- > k;) repl.push_back(rho[i].inverse());
          for (std::size_t i = k; i < n; ++i) repl.push_back(ls[(p + i) % n]);
          GenWord next = GenWord(repl).cyclically_reduced();
          if (next.empty()) return true;
          if (next.size() > max_len) continue;
          if (visited.insert(next).second) stack.push_back(std::move(next));
        }
      }
    }
  }
  return false;
}

std::vector<GenWord> relator_search(const Automaton& a, std::size_t radius) {
  ElementStore store(a);
  std::vector<GenLetter> alphabet;
  for (StateId s = 0; s < a.state_count(); ++s) {
    alphabet.push_back({s, 1});
    alphabet.push_back({s, -1});
  }
  std::vector<GenWord> found;
  std::vector<std::pair<GenWord, ElementStore::Id>> layer{{GenWord(), ElementStore::identity()}};
  for (std::size_t len = 1; len <= radius; ++len) {
    std::vector<std::pair<GenWord, ElementStore::Id>> next;
    for (const auto& [w, id] : layer)
      for (const auto& l : alphabet) {
        if (!w.empty() && w.letters().back() == l.inverse()) continue;
        GenWord u = w * GenWord(std::vector<GenLetter>{l});
        const auto g = store.multiply(id, store.letter(l));
        if (g == ElementStore::identity() && !derivable_from(u, found)) found.push_back(u);
        next.emplace_back(std::move(u), g);
      }
    layer = std::move(next);
  }
  return found;
}

// ---------------------------------------------------------------------------

Verdict group_level_transitive(const Automaton& a, std::size_t depth) {
  if (a.alphabet_size() != 2) return Verdict::Unknown;
  ElementStore store(a);
  const auto gens = symmetric_generators(store);
  // Products of at most 3 generators: a level-transitive or certified
  // infinite-order one makes the group infinite, hence level transitive.
  std::vector<std::pair<ElementStore::Id, GenWord>> layer{{ElementStore::identity(), GenWord()}};
  std::vector<GenLetter> letters;
  for (StateId s = 0; s < a.state_count(); ++s) {
    letters.push_back({s, 1});
    letters.push_back({s, -1});
  }
  std::vector<std::pair<ElementStore::Id, GenWord>> candidates;
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::pair<ElementStore::Id, GenWord>> next;
    for (const auto& [id, w] : layer)
      for (const auto& l : letters) {
        GenWord u = w * GenWord(std::vector<GenLetter>{l});
        if (u.size() != static_cast<std::size_t>(len)) continue;
        const auto g = store.multiply(id, store.letter(l));
        if (is_level_transitive(store, g)) return Verdict::Yes;
        candidates.emplace_back(g, u);
        next.emplace_back(g, std::move(u));
      }
    layer = std::move(next);
  }
  for (std::size_t n = 1; n <= depth; ++n)
    if (!level_group(a, n).is_transitive()) return Verdict::No;
  if (enumerate_if_finite(a, 10000)) return Verdict::No;
  for (const auto& [g, w] : candidates)
    if (certify_infinite_order(store, g, &w)) return Verdict::Yes;
  return Verdict::Unknown;
}

Verdict self_replicating_check(const Automaton& a, std::size_t radius, std::size_t depth) {
  if (a.alphabet_size() != 2) return Verdict::Unknown;
  using Id = ElementStore::Id;
  ElementStore store(a);
  std::vector<Id> gens;
  for (StateId s = 0; s < a.state_count(); ++s) gens.push_back(store.generator(s));

  // Transversal of Stab(1): r_0 = 1 and r_1 = some active generator.
  std::optional<Id> mover;
  for (Id g : gens)
    if (store.is_active(g)) {
      mover = g;
      break;
    }
  std::vector<Id> reps{ElementStore::identity()};
  if (mover) reps.push_back(*mover);
  std::vector<Id> stab;
  for (std::size_t x = 0; x < reps.size(); ++x)
    for (Id s : gens) {
      const Id sr = store.multiply(s, reps[x]);
      const Letter image = store.perm(sr)[0];
      const Id back = store.inverse(reps[image]);
      stab.push_back(store.multiply(back, sr));
    }

  bool all_yes = true;
  for (Letter v = 0; v < 2; ++v) {
    std::vector<Id> proj;
    for (Id h : stab) {
      const Id p = store.section(h, v);
      if (p != ElementStore::identity() && std::find(proj.begin(), proj.end(), p) == proj.end())
        proj.push_back(p);
    }
    // No: the projection is a proper subgroup on some finite level.
    for (std::size_t k = 1; k <= depth; ++k) {
      std::vector<Perm> hp, gp;
      for (Id p : proj) hp.push_back(level_permutation(store, p, k));
      for (Id g : gens) gp.push_back(level_permutation(store, g, k));
      const std::size_t n = level_size(2, k);
      if (PermGroup(n, hp).order() != PermGroup(n, gp).order()) return Verdict::No;
    }
    // Yes: every generator lies in the radius ball of the projection.
    std::vector<Id> ball_gens;
    for (Id p : proj) {
      ball_gens.push_back(p);
      ball_gens.push_back(store.inverse(p));
    }
    std::unordered_set<Id> seen{ElementStore::identity()};
    std::vector<Id> frontier{ElementStore::identity()};
    for (std::size_t r = 0; r < radius; ++r) {
      std::vector<Id> next;
      for (Id f : frontier)
        for (Id g : ball_gens) {
          const Id h = store.multiply(f, g);
          if (seen.insert(h).second) next.push_back(h);
        }
      frontier = std::move(next);
    }
    for (Id g : gens) all_yes = all_yes && seen.count(g) > 0;
  }
  return all_yes ? Verdict::Yes : Verdict::Unknown;
}

}  // namespace selfsim
