#include "selfsim/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace selfsim {

SymmetryOp SymmetryOp::after(const SymmetryOp& other) const {
  // Inversion commutes with relabelling, so the parts compose independently.
  SymmetryOp r;
  r.invert = invert != other.invert;
  r.state_perm.resize(other.state_perm.size());
  for (std::size_t s = 0; s < other.state_perm.size(); ++s)
    r.state_perm[s] = state_perm[other.state_perm[s]];
  r.letter_perm = compose(letter_perm, other.letter_perm);
  return r;
}

Automaton apply(const SymmetryOp& op, const Automaton& a) {
  const Automaton base = op.invert ? invert(a) : a;
  const std::size_t m = base.state_count();
  const std::size_t d = base.alphabet_size();
  if (op.state_perm.size() != m || op.letter_perm.size() != d)
    throw AutomatonError("symmetry op does not match the automaton shape");
  const LetterPerm q = op.letter_perm;
  const LetterPerm q_inv = inverse_perm(q);
  std::vector<LetterPerm> out(m);
  std::vector<std::vector<StateId>> tr(m, std::vector<StateId>(d));
  std::vector<std::string> labels(m);
  for (StateId s = 0; s < m; ++s) {
    const StateId t = op.state_perm[s];
    out[t] = compose(q, compose(base.output(s), q_inv));
    labels[t] = base.label(s);
    for (Letter x = 0; x < d; ++x) tr[t][q[x]] = op.state_perm[base.transition(s, x)];
  }
  return Automaton(d, std::move(out), std::move(tr), std::move(labels));
}

std::vector<SymmetryOp> all_symmetry_ops(std::size_t m, std::size_t d) {
  std::vector<SymmetryOp> ops;
  for (bool inv : {false, true}) {
    std::vector<StateId> sp(m);
    std::iota(sp.begin(), sp.end(), StateId{0});
    do {
      LetterPerm lp = identity_perm(d);
      do {
        ops.push_back({inv, sp, lp});
      } while (std::next_permutation(lp.begin(), lp.end()));
    } while (std::next_permutation(sp.begin(), sp.end()));
  }
  return ops;
}

std::string to_string(SmallGroup g) {
  switch (g) {
    case SmallGroup::Trivial: return "trivial";
    case SmallGroup::C2: return "C2";
    case SmallGroup::Klein: return "C2xC2";
    case SmallGroup::Z: return "Z";
    case SmallGroup::InfiniteDihedral: return "D_inf";
    case SmallGroup::Lamplighter: return "Z wr C2";
  }
  return "?";
}

std::optional<SmallGroup> small_group(const Automaton& minimized) {
  if (minimized.alphabet_size() != 2) return std::nullopt;
  if (minimized.state_count() == 1)
    return minimized.is_active(0) ? SmallGroup::C2 : SmallGroup::Trivial;
  if (minimized.state_count() != 2) return std::nullopt;
  const bool act0 = minimized.is_active(0);
  const bool act1 = minimized.is_active(1);
  if (!act0 && !act1) return SmallGroup::Trivial;
  if (act0 && act1) return SmallGroup::C2;
  // Relabel so that state 0 ('a') is the active one.
  const StateId a = act0 ? 0 : 1;
  auto rel = [&](StateId t) { return t == a ? 0 : 1; };
  const int a0 = rel(minimized.transition(a, 0));
  const int a1 = rel(minimized.transition(a, 1));
  const int b0 = rel(minimized.transition(1 - a, 0));
  const int b1 = rel(minimized.transition(1 - a, 1));
  // Rows: targets of a (aa, ab, ba, bb); columns: targets of b.
  using G = SmallGroup;
  static const G table[4][4] = {
      //        b=(a,a)  (a,b)                 (b,a)                 (b,b)
      /* aa */ {G::Klein, G::InfiniteDihedral, G::InfiniteDihedral, G::C2},
      /* ab */ {G::Z, G::Lamplighter, G::Lamplighter, G::Z},
      /* ba */ {G::Z, G::Lamplighter, G::Lamplighter, G::Z},
      /* bb */ {G::Klein, G::InfiniteDihedral, G::InfiniteDihedral, G::C2},
  };
  return table[a0 * 2 + a1][b0 * 2 + b1];
}

namespace {

Automaton mirror_as_two_states() {
  return binary_automaton({true, false}, {{0, 0}, {1, 1}});
}

}  // namespace

SymmetryClass symmetry_class(const Automaton& a) {
  Automaton m = minimize(a);
  if (m.state_count() == 1 && m.alphabet_size() == 2 && m.is_active(0)) m = mirror_as_two_states();
  const std::size_t states = m.state_count();
  const auto ops = all_symmetry_ops(states, m.alphabet_size());
  std::optional<Automaton> best;
  std::uint64_t best_index = 0;
  for (const auto& op : ops) {
    Automaton candidate = apply(op, m);
    const std::uint64_t idx = mixed_radix_index(candidate);
    if (!best || idx < best_index) {
      best = std::move(candidate);
      best_index = idx;
    }
  }
  SymmetryClass result{*best, std::nullopt, states};
  if (states == 3 && m.alphabet_size() == 2) result.number = static_cast<std::uint32_t>(best_index + 1);
  return result;
}

std::vector<std::uint32_t> ClassTable::representatives() const {
  std::vector<std::uint32_t> reps;
  for (std::uint32_t n = 1; n < class_rep.size(); ++n)
    if (class_rep[n] == n) reps.push_back(n);
  return reps;
}

ClassTable classify_all(unsigned jobs) {
  // key = (state count, canonical index); equal keys share a class
  std::vector<std::pair<std::size_t, std::uint64_t>> keys(kAutomatonCount32 + 1);
  auto work = [&](std::uint32_t begin, std::uint32_t step) {
    for (std::uint32_t n = begin; n <= kAutomatonCount32; n += step) {
      const SymmetryClass c = symmetry_class(decode_number(n));
      keys[n] = {c.reduced_state_count, mixed_radix_index(c.canonical)};
    }
  };
  if (jobs <= 1) {
    work(1, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, 1 + j, jobs);
    for (auto& t : pool) t.join();
  }
  std::map<std::pair<std::size_t, std::uint64_t>, std::uint32_t> first;
  ClassTable table;
  table.class_rep.assign(kAutomatonCount32 + 1, 0);
  for (std::uint32_t n = 1; n <= kAutomatonCount32; ++n) {
    const auto [it, fresh] = first.emplace(keys[n], n);
    table.class_rep[n] = it->second;
    if (fresh) table.reduced_state_count[n] = keys[n].first;
  }
  return table;
}

}  // namespace selfsim
