#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "selfsim/automaton.hpp"
#include "selfsim/contraction.hpp"
#include "selfsim/group_analysis.hpp"
#include "selfsim/schreier.hpp"
#include "selfsim/symmetry.hpp"

namespace selfsim {

struct Budgets {
  std::size_t sf_level = 8;
  std::size_t growth_radius = 5;
  std::uint64_t enumeration_cap = 10000;
  std::size_t relator_radius = 5;
  std::size_t spectrum_level = 7;  // 0 disables the spectrum
  std::size_t replication_radius = 4;
  std::size_t replication_depth = 5;
  NucleusOptions nucleus;
  WitnessOptions witness;
};

/// Worker count from SELFSIM_JOBS, else the hardware concurrency.
unsigned default_jobs();

/// Class table over all 5832 automata, computed once per process.
const ClassTable& shared_class_table();

struct AnalysisReport {
  std::uint32_t number = 0;
  std::string recursion;
  std::uint32_t representative = 0;
  std::size_t minimized_states = 0;
  std::vector<int> sf;  // log2 of level-quotient orders, levels 0..L
  GrowthRecord growth;
  std::optional<std::uint64_t> finite_order;
  std::vector<GenWord> relators;
  std::string contraction;  // yes / no / unknown
  std::optional<std::size_t> nucleus_size;
  std::string witness;      // "word at vertex" when contraction is no
  Verdict self_replicating = Verdict::Unknown;
  std::vector<std::string> activity;  // per state
  StructuralFlags flags;
  std::optional<Histogram> spectrum;
  std::size_t spectrum_level = 0;
};

class OutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

AnalysisReport report(std::uint32_t n, const Budgets& budgets = {});
nlohmann::ordered_json to_json(const AnalysisReport& r);

struct ClassificationSummary {
  std::size_t classes = 0;
  std::size_t small_classes = 0;  // reduce to fewer than 3 states
  std::vector<std::pair<std::uint32_t, std::uint64_t>> finite;  // representative, order
  bool low_range_trivial = false;   // 1..729 all in the class of 1
  bool high_range_single = false;   // 5104..5832 share one class
};

ClassificationSummary summarize(const ClassTable& table, std::uint64_t enumeration_cap, unsigned jobs = 1);
nlohmann::ordered_json to_json(const ClassificationSummary& s);

// ---------------------------------------------------------------------------
// Fixtures

class FixtureError : public std::runtime_error {
 public:
  FixtureError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct FixtureEntry {
  std::uint32_t number = 0;
  std::vector<std::string> recursion;
  std::string group;  // annotation only
  std::string contracting;
  std::string self_replicating;
  std::vector<int> sf;
  std::vector<std::uint64_t> gr;
  std::vector<std::pair<std::string, bool>> relators;  // word, asserted
};

struct FixtureSet {
  std::size_t classes = 0;
  std::size_t small_classes = 0;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> finite_orders;
  std::vector<std::uint32_t> class_rep;  // index n; slot 0 unused, 0 where absent
  std::vector<FixtureEntry> entries;
};

FixtureSet load_fixtures(const std::string& path);
FixtureSet parse_fixtures(const std::string& text);

enum class FactStatus { Pass, Fail, Skipped };
std::string to_string(FactStatus s);

struct FactVerdict {
  std::string fact;  // e.g. "2240 sf[5]"
  FactStatus status = FactStatus::Skipped;
  std::string detail;  // computed value on Fail, reason on Skipped
};

std::vector<FactVerdict> verify_fixtures(const FixtureSet& fixtures, const Budgets& budgets = {},
                                         unsigned jobs = 1);

}  // namespace selfsim
