#include "selfsim/element_store.hpp"

#include <map>
#include <random>

namespace selfsim {

namespace {

constexpr std::size_t kProbeCount = 6;
constexpr std::size_t kProbeDepth = 40;

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return h * 0xBF58476D1CE4E5B9ULL;
}

}  // namespace

ElementStore::ElementStore(const Automaton& a) : automaton_(a), d_(a.alphabet_size()) {
  std::mt19937_64 rng(0x5e1f5e1fULL);
  for (std::size_t i = 0; i < kProbeCount; ++i) {
    std::vector<Letter> probe(kProbeDepth);
    for (auto& x : probe) x = static_cast<Letter>(rng() % d_);
    probes_.push_back(std::move(probe));
  }
  intern_perm(identity_perm(d_));
  const std::vector<Id> loops(d_, 0);
  create_node(0, loops);
  for (StateId s = 0; s < a.state_count(); ++s) state_ids_.push_back(build({Kind::State, s, 0}));
}

std::uint16_t ElementStore::intern_perm(const LetterPerm& p) {
  for (std::size_t i = 0; i < perms_.size(); ++i)
    if (perms_[i] == p) return static_cast<std::uint16_t>(i);
  perms_.push_back(p);
  return static_cast<std::uint16_t>(perms_.size() - 1);
}

std::uint64_t ElementStore::signature_hash(std::uint16_t perm, const Id* children) const {
  std::uint64_t h = mix(0, perm);
  for (std::size_t x = 0; x < d_; ++x) h = mix(h, children[x]);
  return h;
}

std::uint64_t ElementStore::deep_hash_existing(Id f) const {
  std::uint64_t h = 0;
  for (const auto& probe : probes_) {
    Id node = f;
    for (Letter x : probe) {
      h = mix(h, perms_[perm_of_[node]][x]);
      node = section(node, x);
    }
  }
  return h;
}

std::uint64_t ElementStore::deep_hash_temp(const std::vector<Temp>& temps, std::size_t t) const {
  std::uint64_t h = 0;
  for (const auto& probe : probes_) {
    bool in_temp = true;
    Id node = static_cast<Id>(t);
    for (Letter x : probe) {
      if (in_temp && temps[node].resolved != kUnresolved) {
        in_temp = false;
        node = temps[node].resolved;
      }
      if (in_temp) {
        const Temp& tp = temps[node];
        h = mix(h, perms_[tp.perm][x]);
        in_temp = tp.children[x].temp;
        node = tp.children[x].index;
      } else {
        h = mix(h, perms_[perm_of_[node]][x]);
        node = section(node, x);
      }
    }
  }
  return h;
}

ElementStore::Id ElementStore::create_node(std::uint16_t perm, const std::vector<Id>& children) {
  const Id id = static_cast<Id>(perm_of_.size());
  perm_of_.push_back(perm);
  children_.insert(children_.end(), children.begin(), children.end());
  by_signature_.emplace(signature_hash(perm, children.data()), id);
  by_deep_hash_.emplace(deep_hash_existing(id), id);
  return id;
}

bool ElementStore::shortcut(const Key& k, Id& out) const {
  if (k.kind == Kind::Product) {
    if (k.a == 0) {
      out = k.b;
      return true;
    }
    if (k.b == 0) {
      out = k.a;
      return true;
    }
  } else if (k.kind == Kind::Inverse && k.a == 0) {
    out = 0;
    return true;
  }
  const auto it = cache_.find(k);
  if (it == cache_.end()) return false;
  out = it->second;
  return true;
}

ElementStore::Id ElementStore::build(const Key& root) {
  Id done;
  if (shortcut(root, done)) return done;

  std::vector<Temp> temps;
  std::unordered_map<Key, Id, KeyHash> index;
  temps.push_back({root, 0, {}, kUnresolved});
  index.emplace(root, 0);
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const Key k = temps[i].key;
    LetterPerm p;
    std::vector<Key> child_keys(d_);
    if (k.kind == Kind::State) {
      p = automaton_.output(k.a);
      for (Letter x = 0; x < d_; ++x) child_keys[x] = {Kind::State, automaton_.transition(k.a, x), 0};
    } else if (k.kind == Kind::Product) {
      const LetterPerm& pg = perm(k.b);
      p = compose(perm(k.a), pg);
      for (Letter x = 0; x < d_; ++x)
        child_keys[x] = {Kind::Product, section(k.a, pg[x]), section(k.b, x)};
    } else {
      p = inverse_perm(perm(k.a));
      for (Letter x = 0; x < d_; ++x) child_keys[x] = {Kind::Inverse, section(k.a, p[x]), 0};
    }
    std::vector<Ref> refs(d_);
    for (Letter x = 0; x < d_; ++x) {
      Id known;
      if (shortcut(child_keys[x], known)) {
        refs[x] = {false, known};
        continue;
      }
      auto [it, fresh] = index.emplace(child_keys[x], static_cast<Id>(temps.size()));
      if (fresh) temps.push_back({child_keys[x], 0, {}, kUnresolved});
      refs[x] = {true, it->second};
    }
    temps[i].perm = intern_perm(p);
    temps[i].children = std::move(refs);
  }

  resolve(temps);
  for (const auto& t : temps) {
    cache_.emplace(t.key, t.resolved);
    if (t.key.kind == Kind::Inverse) cache_.emplace(Key{Kind::Inverse, t.resolved, 0}, t.key.a);
  }
  return temps[0].resolved;
}

bool ElementStore::match_existing(std::vector<Temp>& temps, std::size_t t, Id e) {
  std::unordered_map<Id, Id> assign{{static_cast<Id>(t), e}};
  std::vector<std::pair<Id, Id>> stack{{static_cast<Id>(t), e}};
  while (!stack.empty()) {
    const auto [ti, ei] = stack.back();
    stack.pop_back();
    const Temp& tp = temps[ti];
    if (tp.perm != perm_of_[ei]) return false;
    for (Letter x = 0; x < d_; ++x) {
      const Ref r = tp.children[x];
      const Id target = section(ei, x);
      if (!r.temp) {
        if (r.index != target) return false;
        continue;
      }
      if (temps[r.index].resolved != kUnresolved) {
        if (temps[r.index].resolved != target) return false;
        continue;
      }
      auto [it, fresh] = assign.emplace(r.index, target);
      if (!fresh) {
        if (it->second != target) return false;
        continue;
      }
      stack.emplace_back(r.index, target);
    }
  }
  for (const auto& [ti, ei] : assign) temps[ti].resolved = ei;
  return true;
}

void ElementStore::resolve(std::vector<Temp>& temps) {
  const std::size_t n = temps.size();
  std::vector<std::vector<Id>> parents(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (const Ref& r : temps[i].children)
      if (r.temp) {
        parents[r.index].push_back(static_cast<Id>(i));
        ++pending[i];
      }

  std::vector<Id> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (pending[i] == 0) ready.push_back(static_cast<Id>(i));
  std::vector<bool> announced(n, false);

  // Resolves every temp whose children are all known, then notifies parents.
  auto propagate = [&]() {
    bool progress = false;
    std::vector<Id> children(d_);
    while (!ready.empty()) {
      const Id i = ready.back();
      ready.pop_back();
      Temp& t = temps[i];
      if (t.resolved == kUnresolved) {
        for (Letter x = 0; x < d_; ++x) {
          const Ref r = t.children[x];
          children[x] = r.temp ? temps[r.index].resolved : r.index;
        }
        const std::uint64_t h = signature_hash(t.perm, children.data());
        auto [lo, hi] = by_signature_.equal_range(h);
        for (auto it = lo; it != hi && t.resolved == kUnresolved; ++it) {
          const Id cand = it->second;
          if (perm_of_[cand] != t.perm) continue;
          bool same = true;
          for (Letter x = 0; x < d_ && same; ++x) same = section(cand, x) == children[x];
          if (same) t.resolved = cand;
        }
        if (t.resolved == kUnresolved) t.resolved = create_node(t.perm, children);
        progress = true;
      }
      if (!announced[i]) {
        announced[i] = true;
        for (Id p : parents[i])
          if (--pending[p] == 0) ready.push_back(p);
      }
    }
    return progress;
  };
  auto announce_matched = [&]() {
    for (std::size_t i = 0; i < n; ++i)
      if (temps[i].resolved != kUnresolved && !announced[i]) ready.push_back(static_cast<Id>(i));
  };

  for (;;) {
    propagate();
    bool matched = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (temps[i].resolved != kUnresolved) continue;
      auto [lo, hi] = by_deep_hash_.equal_range(deep_hash_temp(temps, i));
      for (auto it = lo; it != hi; ++it)
        if (match_existing(temps, i, it->second)) {
          matched = true;
          break;
        }
    }
    if (!matched) break;
    announce_matched();
  }

  // What is left differs from every stored element: refine it as a small
  // automaton whose exits into the store are distinct atoms.
  std::vector<Id> open;
  for (std::size_t i = 0; i < n; ++i)
    if (temps[i].resolved == kUnresolved) open.push_back(static_cast<Id>(i));
  if (open.empty()) return;

  std::vector<std::uint32_t> cls(n, 0);
  std::size_t classes = 0;
  {
    std::map<std::uint16_t, std::uint32_t> ids;
    for (Id i : open) cls[i] = ids.emplace(temps[i].perm, static_cast<std::uint32_t>(ids.size())).first->second;
    classes = ids.size();
  }
  for (;;) {
    // atoms are encoded as (1, id), temp classes as (0, class)
    std::map<std::vector<std::uint64_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> next(n, 0);
    for (Id i : open) {
      std::vector<std::uint64_t> sig{cls[i]};
      for (const Ref& r : temps[i].children) {
        if (r.temp && temps[r.index].resolved == kUnresolved)
          sig.push_back(cls[r.index]);
        else
          sig.push_back((std::uint64_t{1} << 40) | (r.temp ? temps[r.index].resolved : r.index));
      }
      next[i] = ids.emplace(std::move(sig), static_cast<std::uint32_t>(ids.size())).first->second;
    }
    cls = std::move(next);
    if (ids.size() == classes) break;
    classes = ids.size();
  }

  std::vector<Id> rep(classes, kUnresolved);
  for (Id i : open)
    if (rep[cls[i]] == kUnresolved) rep[cls[i]] = i;
  const Id base = static_cast<Id>(perm_of_.size());
  for (std::size_t c = 0; c < classes; ++c) {
    perm_of_.push_back(temps[rep[c]].perm);
    for (const Ref& r : temps[rep[c]].children) {
      if (r.temp && temps[r.index].resolved == kUnresolved)
        children_.push_back(base + cls[r.index]);
      else
        children_.push_back(r.temp ? temps[r.index].resolved : r.index);
    }
  }
  for (std::size_t c = 0; c < classes; ++c) {
    const Id id = base + static_cast<Id>(c);
    by_signature_.emplace(signature_hash(perm_of_[id], &children_[static_cast<std::size_t>(id) * d_]), id);
    by_deep_hash_.emplace(deep_hash_existing(id), id);
  }
  for (Id i : open) temps[i].resolved = base + cls[i];

  // Temps above the cycles can now be folded in by signature.
  announce_matched();
  propagate();
}

ElementStore::Id ElementStore::generator_inverse(StateId s) { return inverse(generator(s)); }

ElementStore::Id ElementStore::multiply(Id f, Id g) { return build({Kind::Product, f, g}); }

ElementStore::Id ElementStore::inverse(Id f) { return build({Kind::Inverse, f, 0}); }

ElementStore::Id ElementStore::power(Id f, long k) {
  Id base = k < 0 ? inverse(f) : f;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  Id result = identity();
  while (e) {
    if (e & 1) result = multiply(result, base);
    base = multiply(base, base);
    e >>= 1;
  }
  return result;
}

ElementStore::Id ElementStore::evaluate(const GenWord& w) {
  Id result = identity();
  for (const auto& l : w.letters()) result = multiply(result, letter(l));
  return result;
}

ElementStore::Id ElementStore::section(Id f, const std::vector<Letter>& v) const {
  for (Letter x : v) f = section(f, x);
  return f;
}

std::vector<Letter> ElementStore::act(Id f, const std::vector<Letter>& v) const {
  std::vector<Letter> out;
  out.reserve(v.size());
  for (Letter x : v) {
    out.push_back(perm(f)[x]);
    f = section(f, x);
  }
  return out;
}

std::vector<ElementStore::Id> ElementStore::section_closure(const std::vector<Id>& roots) const {
  std::unordered_map<Id, bool> seen;
  std::vector<Id> order;
  for (Id r : roots)
    if (seen.emplace(r, true).second) order.push_back(r);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Letter x = 0; x < d_; ++x) {
      const Id c = section(order[i], x);
      if (seen.emplace(c, true).second) order.push_back(c);
    }
  return order;
}

}  // namespace selfsim
