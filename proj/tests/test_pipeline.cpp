#include "doctest.h"

#include <map>

#include "selfsim/pipeline.hpp"

using namespace selfsim;

namespace {

Budgets light() {
  Budgets b;
  b.sf_level = 6;
  b.growth_radius = 4;
  b.relator_radius = 4;
  b.spectrum_level = 4;
  return b;
}

const char* kMini = R"json({
  "format": 1,
  "headline": {"classes": 194, "small_classes": 10, "finite_orders": {"748": 16}},
  "class_table": {"rows": [[742, 740, 740], [731, 731, 731]]},
  "entries": [
    {"number": 2240, "recursion": ["a=σ(b,c)", "b=σ(c,b)", "c=(a,a)"], "contracting": "no",
     "self_replicating": "no", "sf": [0, 1, 2, 4, 7, 10, 14, 21, 34], "gr": [1, 7, 37, 187],
     "relators": []},
    {"number": 846, "recursion": ["a=σ(c,c)", "b=(a,b)", "c=(b,a)"], "contracting": "no",
     "self_replicating": "no", "sf": [0, 1, 3], "gr": [1, 4],
     "relators": [{"word": "a^2", "asserted": true}, {"word": "ab", "asserted": false}]}
  ]
})json";

}  // namespace

TEST_CASE("report for 731") {
  const auto r = report(731, light());
  CHECK(r.sf == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK(r.growth.counts == std::vector<std::uint64_t>{1, 5, 9, 13, 17});
  CHECK(r.contraction == "yes");
  CHECK(r.self_replicating == Verdict::Yes);
  CHECK(r.representative == 731);
  CHECK(r.minimized_states == 2);
  const auto j = to_json(r);
  CHECK(j["gr"].size() == 5);
  CHECK(j["spectrum"]["bins"].size() == 64);
}

TEST_CASE("report for 1 and 846") {
  const auto r1 = report(1, light());
  CHECK(r1.growth.counts == std::vector<std::uint64_t>(5, 1));
  CHECK(r1.finite_order == 1u);
  const auto r846 = report(846, light());
  CHECK(r846.contraction == "no");
  CHECK(r846.relators.size() == 3);
  for (const auto& w : r846.relators) CHECK(w.size() == 2);
  CHECK_THROWS_AS(report(0), OutOfRange);
  CHECK_THROWS_AS(report(5833), OutOfRange);
}

TEST_CASE("reports are deterministic") {
  CHECK(to_json(report(852, light())).dump() == to_json(report(852, light())).dump());
}

TEST_CASE("classification summary") {
  const auto s = summarize(shared_class_table(), 1000);
  CHECK(s.classes == 194);
  CHECK(s.small_classes == 10);
  CHECK(s.low_range_trivial);
  CHECK(s.high_range_single);
  std::map<std::uint32_t, std::uint64_t> finite(s.finite.begin(), s.finite.end());
  CHECK(finite.at(1) == 1);
  CHECK(finite.at(1090) == 2);
  CHECK(finite.at(730) == 4);
  CHECK(finite.at(847) == 8);
  CHECK(finite.at(802) == 8);
  CHECK(finite.at(748) == 16);
}

TEST_CASE("fixture verification") {
  const auto f = parse_fixtures(kMini);
  CHECK(f.entries.size() == 2);
  const auto v = verify_fixtures(f, light());
  std::map<std::string, FactVerdict> by;
  for (const auto& x : v) by[x.fact] = x;
  CHECK(by.at("classes").status == FactStatus::Pass);
  CHECK(by.at("finite order 748").status == FactStatus::Pass);
  CHECK(by.at("class table (2 rows)").status == FactStatus::Pass);
  CHECK(by.at("2240 sf[0..6]").status == FactStatus::Pass);
  CHECK(by.at("2240 gr[0..3]").status == FactStatus::Pass);
  CHECK(by.at("2240 contracting").status == FactStatus::Pass);
  CHECK(by.at("846 relator a^2").status == FactStatus::Pass);
  CHECK(by.at("846 relator ab").status == FactStatus::Skipped);
  CHECK(by.at("846 recursion").status == FactStatus::Pass);
}

TEST_CASE("a corrupted fixture fails with the computed value") {
  std::string text = kMini;
  text.replace(text.find("14, 21, 34"), 10, "14, 22, 34");
  Budgets b = light();
  b.sf_level = 8;
  const auto v = verify_fixtures(parse_fixtures(text), b);
  bool seen = false;
  for (const auto& x : v)
    if (x.fact == "2240 sf[0..8]") {
      seen = true;
      CHECK(x.status == FactStatus::Fail);
      CHECK(x.detail == "computed 0,1,2,4,7,10,14,21,34");
    }
  CHECK(seen);
}

TEST_CASE("fixture parse errors carry line numbers") {
  try {
    parse_fixtures("{\n  \"headline\": {\n    \"classes\": ,\n  }\n}");
    FAIL("expected an error");
  } catch (const FixtureError& e) {
    CHECK(e.line == 3);
  }
  try {
    parse_fixtures("{\n\"headline\": {\"classes\": 1, \"small_classes\": 1, \"finite_orders\": {}},\n"
                   "\"class_table\": {\"rows\": []},\n\"entries\": [{\"number\": 7}]\n}");
    FAIL("expected an error");
  } catch (const FixtureError& e) {
    CHECK(e.line == 4);
  }
}

TEST_CASE("shipped fixture file loads") {
  const auto f = load_fixtures(SELFSIM_FIXTURES);
  CHECK(f.entries.size() == 122);
  CHECK(f.classes == 194);
  CHECK(f.class_rep[742] == 740);
}
