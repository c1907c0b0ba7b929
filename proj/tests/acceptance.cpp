// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "properties.hpp"
#include "selfsim/automaton.hpp"
#include "selfsim/contraction.hpp"
#include "selfsim/group_analysis.hpp"
#include "selfsim/pipeline.hpp"
#include "selfsim/schreier.hpp"
#include "selfsim/symmetry.hpp"
#include "selfsim/tree_action.hpp"

using namespace selfsim;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class F>
double timed(F&& f) {
  const auto t0 = Clock::now();
  f();
  return seconds_since(t0);
}

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

const FixtureEntry& entry(const FixtureSet& f, std::uint32_t n) {
  for (const auto& e : f.entries)
    if (e.number == n) return e;
  throw std::runtime_error("fixture has no entry " + std::to_string(n));
}

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double s = seconds_since(t0);
  if (!c.ok) ++failures;
  std::printf("%s %2d %s [%s]", c.ok ? "PASS" : "FAIL", id, title.c_str(), fmt(s).c_str());
  for (const auto& n : c.notes) std::printf("; %s", n.c_str());
  std::printf("\n");
  std::fflush(stdout);
}

}  // namespace

int main() {
  const FixtureSet fixtures = load_fixtures(SELFSIM_FIXTURES);
  const unsigned jobs = default_jobs();

  run(1, "numbering bijection on 1..5832 with spot values", [](Check& c) {
    const auto t0 = Clock::now();
    std::size_t bad = 0;
    for (std::uint32_t n = 1; n <= 5832; ++n) bad += encode_number(decode_number(n)) != n;
    c.require(bad == 0, std::to_string(bad) + " numbers do not round-trip");
    c.require(decode_number(1).recursion_text() == "a=(a,a), b=(a,a), c=(a,a)", "1 decodes wrong");
    c.require(decode_number(731).recursion_text() == "a=σ(b,a), b=(a,a), c=(a,a)", "731 decodes wrong");
    c.require(decode_number(2240).recursion_text() == "a=σ(b,c), b=σ(c,b), c=(a,a)", "2240 decodes wrong");
    c.require(seconds_since(t0) < 1.0, "slower than 1s");
  });

  ClassTable table;
  run(2, "classification: 194 classes, 10 small, both numbering ranges", [&](Check& c) {
    const auto t0 = Clock::now();
    table = classify_all(jobs);
    const auto reps = table.representatives();
    std::size_t small = 0;
    for (auto r : reps) small += table.reduced_state_count.at(r) < 3;
    bool low = true, high = true;
    for (std::uint32_t n = 1; n <= 729; ++n) low = low && table.rep(n) == 1;
    for (std::uint32_t n = 5104; n <= 5832; ++n) high = high && table.rep(n) == table.rep(5104);
    c.note(std::to_string(reps.size()) + " classes, " + std::to_string(small) + " small");
    c.require(reps.size() == 194, "class count");
    c.require(small == 10, "small class count");
    c.require(low, "1..729 not all in the class of 1");
    c.require(high, "5104..5832 not a single class");
    c.require(seconds_since(t0) < 120.0, "slower than 2 min");
  });

  run(3, "class table matches the fixture for all 5832 automata", [&](Check& c) {
    std::size_t match = 0;
    for (std::uint32_t n = 1; n <= 5832; ++n) match += fixtures.class_rep.at(n) == table.rep(n);
    c.note(std::to_string(match) + "/5832 match");
    c.require(match == 5832, "mismatched rows");
  });

  run(4, "level quotient orders for levels 0..8", [&](Check& c) {
    double slowest = 0;
    for (std::uint32_t n : {1, 730, 731, 739, 748, 802, 820, 846, 852, 2240, 2212, 2294}) {
      std::vector<int> got;
      const double s = timed([&] { got = level_order_exponents(decode_number(n), 8); });
      slowest = std::max(slowest, s);
      const auto& want = entry(fixtures, n).sf;
      c.require(got == std::vector<int>(want.begin(), want.begin() + 9),
                std::to_string(n) + " computed " + join(got));
      c.require(s <= 10.0, std::to_string(n) + " took " + fmt(s));
    }
    c.note("slowest " + fmt(slowest));
  });

  run(5, "growth counts up to radius 5", [&](Check& c) {
    double slowest = 0;
    for (std::uint32_t n : {1, 731, 748, 820, 852, 870, 2240}) {
      GrowthRecord g;
      const double s = timed([&] { g = growth_sequence(decode_number(n), 5); });
      slowest = std::max(slowest, s);
      const auto& want = entry(fixtures, n).gr;
      c.require(g.counts == std::vector<std::uint64_t>(want.begin(), want.begin() + 6),
                std::to_string(n) + " computed " + join(g.counts));
      c.require(s <= 60.0, std::to_string(n) + " took " + fmt(s));
    }
    c.note("slowest " + fmt(slowest));
  });

  run(6, "finite groups: six isomorphism types of orders 1,2,4,8,8,16 within cap 1000", [&](Check& c) {
    const auto summary = summarize(table, 1000, jobs);
    std::map<std::uint32_t, std::uint64_t> found(summary.finite.begin(), summary.finite.end());
    std::map<std::uint32_t, std::uint64_t> six(fixtures.finite_orders.begin(), fixtures.finite_orders.end());
    std::vector<std::uint64_t> orders;
    for (const auto& [rep, order] : six) {
      orders.push_back(order);
      const auto it = found.find(rep);
      c.require(it != found.end() && it->second == order, std::to_string(rep) + " order differs");
    }
    std::sort(orders.begin(), orders.end());
    c.require(orders == std::vector<std::uint64_t>{1, 2, 4, 8, 8, 16}, "fixture orders " + join(orders));

    // every other finite representative is listed as isomorphic to one of the six
    std::map<std::uint32_t, std::uint32_t> iso;
    std::ifstream in(SELFSIM_FIXTURES);
    const auto doc = nlohmann::json::parse(in);
    for (const auto& row : doc.at("class_table").at("rows"))
      if (!row.at(2).is_null()) iso[row.at(0).get<std::uint32_t>()] = row.at(2).get<std::uint32_t>();
    std::size_t extra = 0;
    for (const auto& [rep, order] : found) {
      if (six.count(rep)) continue;
      ++extra;
      const auto it = iso.find(rep);
      const bool covered = it != iso.end() && six.count(it->second) && six.at(it->second) == order;
      c.require(covered, std::to_string(rep) + " finite of order " + std::to_string(order) +
                             " but not listed as isomorphic to one of the six");
    }
    for (const auto& [rep, target] : iso)
      if (six.count(target) && table.rep(rep) == rep)
        c.require(found.count(rep) > 0, std::to_string(rep) + " listed isomorphic to a finite group but exceeds cap");
    c.note(std::to_string(found.size()) + " finite representatives, " + std::to_string(extra) +
           " isomorphic to one of the six");
  });

  run(7, "transcribed relators hold; 2240 has none of length <= 6", [&](Check& c) {
    const auto t0 = Clock::now();
    std::size_t checked = 0;
    for (std::uint32_t n : {731, 820, 846, 852, 870, 2212, 2294, 2396}) {
      const Automaton a = decode_number(n);
      for (const auto& [word, asserted] : entry(fixtures, n).relators) {
        if (!asserted) continue;
        ++checked;
        c.require(is_identity(a, parse_word(word, 3)), std::to_string(n) + " relator " + word);
      }
    }
    const auto rel = relator_search(decode_number(2240), 6);
    c.require(rel.empty(), "2240 relator " + (rel.empty() ? std::string() : format_word(rel.front())));
    c.note(std::to_string(checked) + " relators checked");
    c.require(seconds_since(t0) <= 30.0, "slower than 30s");
  });

  run(8, "transitivity series, cross-checked by orbits on levels 1..10", [&](Check& c) {
    const auto orbit_transitive = [](const Automaton& a, const GenWord& w, std::size_t max_level) {
      ElementStore store(a);
      const auto g = store.evaluate(w);
      for (std::size_t n = 1; n <= max_level; ++n) {
        const Perm p = level_permutation(store, g, n);
        std::size_t len = 0, v = 0;
        do {
          v = p[v];
          ++len;
        } while (v != 0);
        if (len != p.size()) return false;
      }
      return true;
    };
    const auto one = all_ones_series();
    const Automaton add = parse_binary_recursion("a=σ(1,a)");
    const Automaton a2199 = decode_number(2199), a748 = decode_number(748);
    const GenWord a = parse_word("a"), ac = parse_word("ac");
    c.require(transitivity_series(add, a) == one, "adding machine series");
    c.require(transitivity_series(a2199, ac) == one, "2199 ac series");
    c.require(!(transitivity_series(a748, a) == one), "748 a series");
    c.require(orbit_transitive(add, a, 10), "adding machine orbits");
    c.require(orbit_transitive(a2199, ac, 10), "2199 ac orbits");
    c.require(!orbit_transitive(a748, a, 10), "748 a orbits");
  });

  run(9, "non-torsion partition for 870, none for 1", [](Check& c) {
    const auto p = nontorsion_partition(decode_number(870));
    c.require(p.has_value(), "no partition for 870");
    c.require(!nontorsion_partition(decode_number(1)), "partition found for 1");
  });

  run(10, "nucleus sizes 52, 41, 73 and product closure 77", [](Check& c) {
    for (auto [n, want] : {std::pair{2229u, 52u}, {752u, 41u}, {968u, 73u}}) {
      std::optional<Nucleus> nuc;
      const double s = timed([&] { nuc = nucleus_search(decode_number(n)); });
      const std::size_t got = nuc ? nuc->size() : 0;
      c.require(got == want, std::to_string(n) + " computed " + (nuc ? std::to_string(got) : "none"));
      c.require(s <= 120.0, std::to_string(n) + " took " + fmt(s));
    }
    const auto closure = nucleus_product_closure_size(decode_number(968));
    c.require(closure == 77u, "968 closure computed " + (closure ? std::to_string(*closure) : "none"));
  });

  run(11, "contraction statuses 852 yes, 846 no, 861 unknown, 2240 no", [](Check& c) {
    using K = ContractionStatus::Kind;
    for (auto [n, want] : {std::pair{852u, K::Yes}, {846u, K::No}, {861u, K::Unknown}, {2240u, K::No}}) {
      ContractionStatus st;
      const double s = timed([&] { st = contraction_status(decode_number(n)); });
      c.require(st.kind == want, std::to_string(n) + " computed " + st.label());
      c.note(std::to_string(n) + " " + st.label() + " " + fmt(s));
    }
  });

  run(12, "level 7 spectra, 731 level 3 circulant, level 9 timing", [](Check& c) {
    for (std::uint32_t n : {731, 820, 852}) {
      const Automaton a = decode_number(n);
      SpectrumResult r;
      const double s = timed([&] { r = level_spectrum(a, 7); });
      const Matrix m = operator_matrix(a, 7);
      double trace = 0, sum = 0;
      for (std::size_t i = 0; i < m.n; ++i) trace += m(i, i);
      bool in_range = true, has_one = false;
      for (double e : r.eigenvalues) {
        sum += e;
        in_range = in_range && e >= -1 - 1e-9 && e <= 1 + 1e-9;
        has_one = has_one || std::abs(e - 1) < 1e-9;
      }
      c.require(std::abs(trace - sum) <= 1e-9 * 128, std::to_string(n) + " trace");
      c.require(in_range, std::to_string(n) + " eigenvalue outside [-1,1]");
      c.require(has_one, std::to_string(n) + " eigenvalue 1 missing");
      c.require(s <= 10.0, std::to_string(n) + " took " + fmt(s));
    }
    const auto r3 = level_spectrum(decode_number(731), 3);
    std::vector<double> want;
    for (int k = 0; k < 8; ++k) {
      const double x = 2 * std::numbers::pi * k / 8;
      want.push_back((std::cos(x) + 2 * std::cos(2 * x)) / 3);
    }
    std::sort(want.begin(), want.end());
    auto got = r3.eigenvalues;
    std::sort(got.begin(), got.end());
    bool close = got.size() == want.size();
    for (std::size_t i = 0; close && i < got.size(); ++i) close = std::abs(got[i] - want[i]) <= 1e-9;
    c.require(close, "731 level 3 spectrum differs from the circulant");
    const double s9 = timed([] { level_spectrum(decode_number(731), 9); });
    c.note("level 9 " + fmt(s9));
    c.require(s9 <= 300.0, "level 9 slower than 5 min");
  });

  run(13, "property suites, 1000 cases each", [](Check& c) {
    for (const auto& o : {props::chain_rule(1000), props::homomorphism(1000), props::minimization(1000),
                          props::stabilizer_chain(1000), props::nucleus_closure(1000),
                          props::transitivity_agreement(1000)}) {
      c.require(o.cases == 1000 && o.failures == 0,
                o.name + ": " + std::to_string(o.failures) + " failures, first " + o.first_failure);
    }
  });

  return failures ? 1 : 0;
}
