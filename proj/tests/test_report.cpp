#include <gtest/gtest.h>

#include "latdesign/catalog.hpp"
#include "latdesign/report.hpp"

using namespace latdesign;

TEST(Report, QuickSubsetPassesAndValidates) {
  report::Options o;
  o.scope = report::Scope::Quick;
  o.criteria = {2, 7, 8};
  const auto r = report::run_report(o);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.items.size(), 10u);
  for (const auto& i : r.items) EXPECT_TRUE(i.source == "reference" || i.source == "derived");
  EXPECT_TRUE(report::validate_json(report::to_json(r)).empty());
  EXPECT_EQ(report::to_csv(r).rfind("criterion,section,lattice,name", 0), 0u);
}

TEST(Report, ValidatorRejectsBrokenDocuments) {
  EXPECT_FALSE(report::validate_json("{").empty());
  EXPECT_FALSE(report::validate_json(R"({"schema_version": 1})").empty());
  EXPECT_FALSE(report::validate_json(R"({"schema_version": 99, "scope": "full", "summary": {}, "criteria": [], "items": []})").empty());
}

TEST(Report, IdenticalAcrossWorkerCounts) {
  report::Options o;
  o.scope = report::Scope::Quick;
  o.criteria = {1, 6};
  o.workers = 1;
  const auto a = report::to_json(report::run_report(o), false);
  o.workers = 3;
  EXPECT_EQ(a, report::to_json(report::run_report(o), false));
}

TEST(Report, CorruptedLatticeIsIsolated) {
  report::Options o;
  o.scope = report::Scope::Quick;
  o.criteria = {1, 4};
  // Swap in a wrong lattice under one catalog name.
  o.overrides.emplace("L1621", catalog::build("L1622"));
  const auto r = report::run_report(o);
  EXPECT_FALSE(r.ok());
  bool l1621_failed = false;
  for (const auto& i : r.items) {
    if (i.lattice == "L1621" && !i.ok()) l1621_failed = true;
    if (i.lattice != "L1621" && i.lattice != "") EXPECT_TRUE(i.ok()) << i.lattice << " " << i.name;
  }
  EXPECT_TRUE(l1621_failed);
}

TEST(Report, ResourceCapBecomesDistinctStatus) {
  report::Options o;
  o.scope = report::Scope::Quick;
  o.criteria = {4};
  o.max_vectors = 1000;
  const auto r = report::run_report(o);
  EXPECT_TRUE(r.has_resource_abort());
  EXPECT_FALSE(r.ok());
}

TEST(Report, ScopeNames) {
  EXPECT_EQ(report::parse_scope("quick"), report::Scope::Quick);
  EXPECT_EQ(report::scope_name(report::Scope::Full), "full");
  EXPECT_THROW(report::parse_scope("medium"), std::invalid_argument);
}
