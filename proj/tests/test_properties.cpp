#include "doctest.h"

#include "properties.hpp"

using namespace selfsim;

namespace {

constexpr int kCases = 1000;

void expect_clean(const props::Outcome& o) {
  INFO(o.name << ": first failure " << o.first_failure);
  CHECK(o.cases == kCases);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("chain rule for sections") { expect_clean(props::chain_rule(kCases)); }

TEST_CASE("element store is a homomorphism") { expect_clean(props::homomorphism(kCases)); }

TEST_CASE("minimization preserves the action") { expect_clean(props::minimization(kCases)); }

TEST_CASE("stabilizer chain order matches exhaustive enumeration") {
  expect_clean(props::stabilizer_chain(kCases));
}

TEST_CASE("nucleus closure and contraction sampling") {
  int contracting = 0;
  expect_clean(props::nucleus_closure(kCases, 15, &contracting));
  CHECK(contracting > 100);
}

TEST_CASE("fast and series transitivity tests agree") { expect_clean(props::transitivity_agreement(kCases)); }
