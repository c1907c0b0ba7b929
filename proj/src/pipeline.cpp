#include "selfsim/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "selfsim/tree_action.hpp"

namespace selfsim {

namespace {

constexpr std::uint32_t kLastNumber = 5832;

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::min<std::size_t>(jobs, count); ++j)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

unsigned default_jobs() {
  if (const char* env = std::getenv("SELFSIM_JOBS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

const ClassTable& shared_class_table() {
  static const ClassTable table = classify_all(default_jobs());
  return table;
}

AnalysisReport report(std::uint32_t n, const Budgets& b) {
  if (n < 1 || n > kLastNumber) throw OutOfRange("automaton number must be in 1..5832");
  const Automaton a = decode_number(n);
  AnalysisReport r;
  r.number = n;
  r.recursion = a.recursion_text();
  const auto& table = shared_class_table();
  r.representative = table.rep(n);
  r.minimized_states = minimize(a).state_count();
  r.sf = level_order_exponents(a, b.sf_level);
  r.growth = growth_sequence(a, b.growth_radius);
  r.finite_order = enumerate_if_finite(a, b.enumeration_cap);
  r.relators = relator_search(a, b.relator_radius);
  const auto status = contraction_status(a, b.nucleus, b.witness);
  r.contraction = status.label();
  if (status.nucleus) r.nucleus_size = status.nucleus->size();
  if (status.kind == ContractionStatus::Kind::No)
    r.witness = format_word(status.witness->word) + " at " + format_vertex(status.witness->vertex);
  r.self_replicating = self_replicating_check(a, b.replication_radius, b.replication_depth);
  for (StateId s = 0; s < a.state_count(); ++s) r.activity.push_back(activity_class(a, s).label());
  r.flags = structural_flags(a);
  if (b.spectrum_level > 0) {
    r.spectrum = level_spectrum(a, b.spectrum_level).histogram;
    r.spectrum_level = b.spectrum_level;
  }
  return r;
}

nlohmann::ordered_json to_json(const AnalysisReport& r) {
  nlohmann::ordered_json j;
  j["number"] = r.number;
  j["recursion"] = r.recursion;
  j["representative"] = r.representative;
  j["minimized_states"] = r.minimized_states;
  j["sf"] = r.sf;
  j["gr"] = r.growth.counts;
  j["finite_order"] = r.finite_order ? nlohmann::ordered_json(*r.finite_order) : nlohmann::ordered_json(nullptr);
  auto rels = nlohmann::ordered_json::array();
  for (const auto& w : r.relators) rels.push_back(format_word(w));
  j["relators"] = rels;
  j["contracting"] = r.contraction;
  if (r.nucleus_size) j["nucleus_size"] = *r.nucleus_size;
  if (!r.witness.empty()) j["witness"] = r.witness;
  j["self_replicating"] = to_string(r.self_replicating);
  j["activity"] = r.activity;
  j["flags"] = {{"has_trivial_state", r.flags.has_trivial_state},
                {"open_set_condition", r.flags.open_set_condition},
                {"strongly_connected", r.flags.strongly_connected},
                {"dual_invertible", r.flags.dual_invertible},
                {"fully_invertible", r.flags.fully_invertible}};
  if (r.spectrum) j["spectrum"] = {{"level", r.spectrum_level}, {"bins", r.spectrum->counts}};
  return j;
}

ClassificationSummary summarize(const ClassTable& table, std::uint64_t cap, unsigned jobs) {
  ClassificationSummary s;
  const auto reps = table.representatives();
  s.classes = reps.size();
  for (auto rep : reps)
    if (table.reduced_state_count.at(rep) < 3) ++s.small_classes;
  std::vector<std::optional<std::uint64_t>> orders(reps.size());
  parallel_for(reps.size(), jobs, [&](std::size_t i) { orders[i] = enumerate_if_finite(decode_number(reps[i]), cap); });
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (orders[i]) s.finite.emplace_back(reps[i], *orders[i]);
  s.low_range_trivial = true;
  for (std::uint32_t n = 1; n <= 729; ++n) s.low_range_trivial = s.low_range_trivial && table.rep(n) == 1;
  s.high_range_single = true;
  for (std::uint32_t n = 5104; n <= kLastNumber; ++n)
    s.high_range_single = s.high_range_single && table.rep(n) == table.rep(5104);
  return s;
}

nlohmann::ordered_json to_json(const ClassificationSummary& s) {
  nlohmann::ordered_json j;
  j["classes"] = s.classes;
  j["small_classes"] = s.small_classes;
  auto fin = nlohmann::ordered_json::array();
  for (const auto& [rep, order] : s.finite) fin.push_back({{"representative", rep}, {"order", order}});
  j["finite_groups"] = fin;
  j["range_1_729_trivial"] = s.low_range_trivial;
  j["range_5104_5832_single_class"] = s.high_range_single;
  return j;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t line_of(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Line of the first occurrence of needle, or 1.
std::size_t line_of(const std::string& text, const std::string& needle) {
  const auto pos = text.find(needle);
  return pos == std::string::npos ? 1 : line_of(text, pos);
}

}  // namespace

FixtureSet parse_fixtures(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FixtureError(e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  FixtureSet f;
  std::string where = "\"headline\"";
  try {
    const auto& h = j.at("headline");
    f.classes = h.at("classes").get<std::size_t>();
    f.small_classes = h.at("small_classes").get<std::size_t>();
    for (const auto& [rep, order] : h.at("finite_orders").items())
      f.finite_orders.emplace_back(static_cast<std::uint32_t>(std::stoul(rep)), order.get<std::uint64_t>());
    where = "\"class_table\"";
    f.class_rep.assign(kLastNumber + 1, 0);
    for (const auto& row : j.at("class_table").at("rows")) {
      const auto n = row.at(0).get<std::uint32_t>();
      if (n < 1 || n > kLastNumber) throw FixtureError("automaton number out of range", line_of(text, where));
      f.class_rep[n] = row.at(1).get<std::uint32_t>();
    }
    for (const auto& e : j.at("entries")) {
      FixtureEntry fe;
      fe.number = e.at("number").get<std::uint32_t>();
      where = "\"number\": " + std::to_string(fe.number);
      if (fe.number < 1 || fe.number > kLastNumber)
        throw FixtureError("automaton number out of range", line_of(text, where));
      fe.recursion = e.at("recursion").get<std::vector<std::string>>();
      fe.group = e.value("group", "");
      fe.contracting = e.at("contracting").get<std::string>();
      fe.self_replicating = e.at("self_replicating").get<std::string>();
      fe.sf = e.at("sf").get<std::vector<int>>();
      fe.gr = e.at("gr").get<std::vector<std::uint64_t>>();
      for (const auto& r : e.at("relators")) fe.relators.emplace_back(r.at("word"), r.at("asserted"));
      f.entries.push_back(std::move(fe));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FixtureError(e.what(), line_of(text, where));
  }
  return f;
}

FixtureSet load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open " + path, 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixtures(ss.str());
}

std::string to_string(FactStatus s) {
  switch (s) {
    case FactStatus::Pass: return "PASS";
    case FactStatus::Fail: return "FAIL";
    case FactStatus::Skipped: return "SKIP";
  }
  return "?";
}

namespace {

template <typename T>
std::string list_text(const std::vector<T>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

FactVerdict verdict(std::string fact, bool ok, std::string computed) {
  return {std::move(fact), ok ? FactStatus::Pass : FactStatus::Fail, ok ? "" : "computed " + computed};
}

std::vector<FactVerdict> verify_entry(const FixtureEntry& e, const Budgets& b) {
  std::vector<FactVerdict> out;
  const std::string id = std::to_string(e.number);
  const Automaton a = decode_number(e.number);

  const auto lines = a.recursion_lines();
  out.push_back(verdict(id + " recursion", lines == e.recursion, a.recursion_text()));

  const std::size_t sf_top = std::min(b.sf_level + 1, e.sf.size());
  if (sf_top == 0) {
    out.push_back({id + " sf", FactStatus::Skipped, "no levels in budget"});
  } else {
    const auto sf = level_order_exponents(a, sf_top - 1);
    const std::vector<int> want(e.sf.begin(), e.sf.begin() + static_cast<long>(sf_top));
    out.push_back(verdict(id + " sf[0.." + std::to_string(sf_top - 1) + "]", sf == want, list_text(sf)));
  }

  const std::size_t gr_top = std::min(b.growth_radius + 1, e.gr.size());
  if (gr_top == 0) {
    out.push_back({id + " gr", FactStatus::Skipped, "no radius in budget"});
  } else {
    const auto gr = growth_sequence(a, gr_top - 1).counts;
    const std::vector<std::uint64_t> want(e.gr.begin(), e.gr.begin() + static_cast<long>(gr_top));
    out.push_back(verdict(id + " gr[0.." + std::to_string(gr_top - 1) + "]", gr == want, list_text(gr)));
  }

  for (const auto& [text, asserted] : e.relators) {
    const std::string fact = id + " relator " + text;
    if (!asserted) {
      out.push_back({fact, FactStatus::Skipped, "annotation only"});
      continue;
    }
    try {
      const bool ok = verify_relator(a, parse_word(text, a.state_count()));
      out.push_back(verdict(fact, ok, "nontrivial"));
    } catch (const WordSyntaxError& err) {
      out.push_back({fact, FactStatus::Fail, err.what()});
    }
  }

  // Fixture labels are yes, no or n/a; only a proved contradiction fails.
  const auto status = contraction_status(a, b.nucleus, b.witness);
  const std::string got = status.label();
  const std::string fact = id + " contracting";
  if (e.contracting == "n/a") {
    out.push_back({fact, FactStatus::Pass, got == "unknown" ? "" : "resolved: " + got});
  } else if (got == "unknown") {
    out.push_back({fact, FactStatus::Skipped, "undecided within caps"});
  } else {
    out.push_back(verdict(fact, got == e.contracting, got));
  }

  const Verdict sr = self_replicating_check(a, b.replication_radius, b.replication_depth);
  const std::string sr_fact = id + " self-replicating";
  if (sr == Verdict::Unknown)
    out.push_back({sr_fact, FactStatus::Skipped, "undecided within budget"});
  else
    out.push_back(verdict(sr_fact, to_string(sr) == e.self_replicating, to_string(sr)));
  return out;
}

}  // namespace

std::vector<FactVerdict> verify_fixtures(const FixtureSet& f, const Budgets& b, unsigned jobs) {
  std::vector<FactVerdict> out;
  if (f.classes || f.small_classes || !f.finite_orders.empty() ||
      std::any_of(f.class_rep.begin(), f.class_rep.end(), [](std::uint32_t r) { return r != 0; })) {
    const auto& table = shared_class_table();
    const auto summary = summarize(table, b.enumeration_cap, jobs);
    if (f.classes) out.push_back(verdict("classes", summary.classes == f.classes, std::to_string(summary.classes)));
    if (f.small_classes)
      out.push_back(verdict("small classes", summary.small_classes == f.small_classes,
                            std::to_string(summary.small_classes)));
    for (const auto& [rep, order] : f.finite_orders) {
      std::optional<std::uint64_t> got;
      for (const auto& [r, o] : summary.finite)
        if (r == rep) got = o;
      out.push_back(verdict("finite order " + std::to_string(rep), got == order,
                            got ? std::to_string(*got) : "not finite within cap"));
    }
    std::size_t checked = 0, wrong = 0;
    std::string first_wrong;
    for (std::uint32_t n = 1; n < f.class_rep.size(); ++n) {
      if (f.class_rep[n] == 0) continue;
      ++checked;
      if (table.rep(n) != f.class_rep[n]) {
        if (!wrong) first_wrong = std::to_string(n) + "->" + std::to_string(table.rep(n));
        ++wrong;
      }
    }
    if (checked)
      out.push_back(verdict("class table (" + std::to_string(checked) + " rows)", wrong == 0,
                            std::to_string(wrong) + " mismatches, first " + first_wrong));
  }
  std::vector<std::vector<FactVerdict>> per_entry(f.entries.size());
  parallel_for(f.entries.size(), jobs, [&](std::size_t i) { per_entry[i] = verify_entry(f.entries[i], b); });
  for (auto& v : per_entry) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace selfsim
