#include "jacring/audit.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace jacring;

namespace {

const std::vector<Preset> kBoth{Preset::kGeometric, Preset::kPaper};

// One entry per audited statement.
const std::vector<std::pair<std::string, std::string>> kStatements{
    {"Poincare formula", "poincare-formula"},
    {"Pontryagin product definition", "pontryagin-product-J"},
    {"second grading on J", "beauville-bigrading-J"},
    {"second grading on J, positive weights", "beauville-positive-weights"},
    {"class of the Poincare line bundle", "poincare-class-J"},
    {"Fourier involution", "fourier-involution-J"},
    {"Fourier exchanges products", "fourier-exchange-J"},
    {"Fourier grading", "fourier-grading-J"},
    {"generation on J", "jac-generation"},
    {"extension of multiplication by n", "ext-mult-extension"},
    {"eigenspace decomposition on P", "ext-eigenspaces"},
    {"projective bundle formula", "pb-formula"},
    {"eigendecomposition along the bundle", "ext-eigendecomp"},
    {"blow-up resolution", "blowup-resolution"},
    {"Pontryagin product on P", "ext-pontryagin-P"},
    {"Pontryagin degree on P", "pontryagin-degree-P"},
    {"Pontryagin compatibility", "ext-pontryagin-compat"},
    {"decomposition of cycles", "wtilde-decomposition"},
    {"extended theta class", "ext-theta-class"},
    {"extended Poincare class definition", "ext-poincare-definition"},
    {"extended Poincare class simplification", "ext-poincare-class"},
    {"extended Fourier definition", "ext-fourier-definition"},
    {"extended Fourier involution", "ext-fourier-involution"},
    {"extended Fourier exchange", "ext-fourier-exchange"},
    {"extended Fourier grading", "ext-fourier-grading"},
    {"generation on P", "gpb-generation"},
};

const ClaimRecord& find(const AuditReport& r, const std::string& id, unsigned g, const std::string& preset) {
  for (const auto& rec : r.claims) {
    if (rec.id == id && rec.genus == g && rec.preset == preset) return rec;
  }
  throw std::runtime_error("missing record " + id);
}

}  // namespace

TEST(Registry, CoversEveryStatement) {
  std::set<std::string> expected, registered;
  for (const auto& [label, id] : kStatements) expected.insert(id);
  for (const auto& c : claim_registry()) {
    EXPECT_TRUE(registered.insert(c.id).second) << "duplicate id " << c.id;
    EXPECT_FALSE(c.statement.empty());
    EXPECT_FALSE(c.formula.empty());
  }
  std::vector<std::string> missing, extra;
  std::set_difference(expected.begin(), expected.end(), registered.begin(), registered.end(),
                      std::back_inserter(missing));
  std::set_difference(registered.begin(), registered.end(), expected.begin(), expected.end(),
                      std::back_inserter(extra));
  EXPECT_TRUE(missing.empty()) << "first missing: " << (missing.empty() ? "" : missing.front());
  EXPECT_TRUE(extra.empty()) << "first extra: " << (extra.empty() ? "" : extra.front());
}

TEST(Audit, ExampleVerdicts) {
  auto r = run_audit({1, 2, 3, 4}, kBoth, {"poincare-formula", "ext-poincare-class"});
  for (unsigned g = 1; g <= 4; ++g) {
    EXPECT_EQ(find(r, "poincare-formula", g, "any").status, ClaimStatus::kVerified);
    EXPECT_EQ(find(r, "ext-poincare-class", g, "any").status, ClaimStatus::kVerified);
  }
  auto f = run_audit({1, 2, 3}, kBoth, {"fourier-involution-J"});
  for (const auto& rec : f.claims) EXPECT_EQ(rec.status, ClaimStatus::kVerified) << rec.genus;
}

TEST(Audit, EigendecompWitnessShowsBothEigenvalues) {
  auto r = run_audit({2}, kBoth, {"ext-eigendecomp"});
  const auto& geo = find(r, "ext-eigendecomp", 2, "geometric");
  ASSERT_EQ(geo.status, ClaimStatus::kRefuted);
  EXPECT_EQ(geo.witness["input"], "H");
  const auto& first = geo.witness["eigenvalues"][0];
  EXPECT_EQ(first["op"], "nstar");
  EXPECT_EQ(first["computed"], "2*H");
  EXPECT_EQ(first["expected"], "4*H");
  EXPECT_EQ(find(r, "ext-eigendecomp", 2, "paper").status, ClaimStatus::kVerified);
}

TEST(Audit, ExtendedFourierInvolutionIsDefinitive) {
  auto r = run_audit({1, 2}, kBoth, {"ext-fourier-involution"});
  ASSERT_EQ(r.claims.size(), 4u);
  for (const auto& rec : r.claims) {
    ASSERT_NE(rec.status, ClaimStatus::kSkipped);
    if (rec.status == ClaimStatus::kRefuted) {
      EXPECT_TRUE(rec.witness.contains("lhs"));
      EXPECT_TRUE(rec.witness.contains("rhs"));
      EXPECT_NE(rec.witness["lhs"], rec.witness["rhs"]);
    }
  }
}

TEST(Audit, GenerationOnPReportsDimensions) {
  auto r = run_audit({2}, kBoth, {"gpb-generation"});
  for (const auto& rec : r.claims) {
    const Json& info = rec.status == ClaimStatus::kVerified ? rec.details : rec.witness;
    ASSERT_TRUE(info.contains("table"));
    EXPECT_FALSE(info["table"].empty());
  }
  EXPECT_EQ(find(r, "gpb-generation", 2, "geometric").details["relation"], "equal");
}

TEST(Audit, NotModeledClaimIsReported) {
  auto r = run_audit({2}, kBoth, {"beauville-positive-weights"});
  ASSERT_EQ(r.claims.size(), 1u);
  EXPECT_EQ(r.claims[0].status, ClaimStatus::kNotModeled);
  EXPECT_FALSE(r.claims[0].note.empty());
}

TEST(Audit, DeterministicJson) {
  AuditSettings s;
  s.seed = 7;
  const auto a = render_report(run_audit({2}, kBoth, {}, s), ReportFormat::kJson);
  const auto b = render_report(run_audit({2}, kBoth, {}, s), ReportFormat::kJson);
  EXPECT_EQ(a, b);
}

TEST(Audit, SampledDomainsRecordSeedAndFollowIt) {
  AuditSettings s;
  s.unary_exhaustive_max_genus = 1;
  s.pair_exhaustive_max_genus = 1;
  s.samples = 3;
  s.seed = 11;
  const std::vector<std::string> ids{"fourier-exchange-J", "ext-pontryagin-compat"};
  auto r1 = run_audit({2}, kBoth, ids, s);
  auto r2 = run_audit({2}, kBoth, ids, s);
  EXPECT_EQ(report_json(r1).dump(), report_json(r2).dump());
  const auto& rec = find(r1, "fourier-exchange-J", 2, "any");
  EXPECT_EQ(rec.domain["kind"], "sampled");
  const auto seed1 = rec.domain["seed"].get<std::uint64_t>();
  s.seed = 12;
  auto r3 = run_audit({2}, kBoth, ids, s);
  EXPECT_NE(find(r3, "fourier-exchange-J", 2, "any").domain["seed"].get<std::uint64_t>(), seed1);
}

TEST(Audit, BudgetAndGenusCapsSkip) {
  AuditSettings s;
  s.budget = std::chrono::milliseconds(1);
  auto r = run_audit({2}, {Preset::kPaper}, {"ext-pontryagin-P"}, s);
  ASSERT_EQ(r.claims.size(), 1u);
  EXPECT_EQ(r.claims[0].status, ClaimStatus::kSkipped);

  AuditSettings cap;
  cap.pp_max_genus = 1;
  auto c = run_audit({1, 2}, kBoth, {"ext-poincare-class"}, cap);
  EXPECT_EQ(find(c, "ext-poincare-class", 1, "any").status, ClaimStatus::kVerified);
  EXPECT_EQ(find(c, "ext-poincare-class", 2, "any").status, ClaimStatus::kSkipped);
}

TEST(Audit, RejectsUnknownClaimAndFormat) {
  EXPECT_THROW(run_audit({1}, kBoth, {"no-such-claim"}), RangeError);
  EXPECT_THROW(parse_report_format("xml"), RangeError);
}

TEST(Render, EmptyReportIsHeaderOnly) {
  AuditReport empty;
  EXPECT_EQ(render_report(empty, ReportFormat::kText), "claim  genus  preset     status\n");
  auto j = report_json(empty);
  EXPECT_EQ(j["engine_version"], kEngineVersion);
  EXPECT_TRUE(j["claims"].empty());
}

TEST(Render, SingleVerifiedRow) {
  auto r = run_audit({1}, kBoth, {"poincare-formula"});
  const auto text = render_report(r, ReportFormat::kText);
  EXPECT_NE(text.find("poincare-formula  1      any        verified\n"), std::string::npos);
  auto j = report_json(r);
  ASSERT_EQ(j["claims"].size(), 1u);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j["claims"][0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"id", "paper_ref", "quote", "genus", "preset", "status", "domain", "millis"}));
  EXPECT_TRUE(j["claims"][0]["millis"].is_null());
  EXPECT_TRUE(report_json(r, {true})["claims"][0]["millis"].is_number());
}

TEST(Render, RefutedRowCarriesWitnessBlock) {
  auto r = run_audit({1}, {Preset::kPaper}, {"ext-mult-extension"});
  ASSERT_EQ(r.claims[0].status, ClaimStatus::kRefuted);
  const auto text = render_report(r, ReportFormat::kText);
  EXPECT_NE(text.find("    witness:\n"), std::string::npos);
  EXPECT_NE(text.find("\"lhs\""), std::string::npos);
  EXPECT_NE(text.find("\"rhs\""), std::string::npos);
  // Rationals in reports are always num/den.
  EXPECT_EQ(r.claims[0].witness["degree"], "8/1");
}
