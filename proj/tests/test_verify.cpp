#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "qcorr/verify.hpp"

using namespace qcorr;

namespace {

const VerifyReport& seeded_report() {
  static const VerifyReport rep = verify_report(1, 100);
  return rep;
}

double value_of(const VerifyItem& it, const std::string& name) {
  for (const auto& v : it.values)
    if (v.name == name) return v.value;
  ADD_FAILURE() << "missing value " << name;
  return NAN;
}

}  // namespace

TEST(Verify, EigensystemItemsPass) {
  const auto& rep = seeded_report();
  for (const char* name : {"eigenvalues_analytic_vs_numeric", "eigenvector_residual"}) {
    const auto* it = rep.find(name);
    ASSERT_NE(it, nullptr) << name;
    EXPECT_EQ(it->status, VerifyStatus::Pass) << name;
    EXPECT_LT(it->magnitude, 1e-9) << name;
    EXPECT_EQ(it->count, 400u) << name;  // four eigenpairs per draw
  }
}

TEST(Verify, PartitionFunctionAndCornerElementPass) {
  const auto& rep = seeded_report();
  EXPECT_EQ(rep.find("thermal_partition_function")->status, VerifyStatus::Pass);
  EXPECT_EQ(rep.find("thermal_element_rho11")->status, VerifyStatus::Pass);
}

TEST(Verify, OracleAgreesWithEuclideanReading) {
  const auto& rep = seeded_report();
  EXPECT_EQ(rep.find("tmin_euclidean_vs_oracle")->status, VerifyStatus::Pass);
  EXPECT_EQ(rep.find("tmin_free_branch_vs_oracle")->status, VerifyStatus::Pass);
  EXPECT_EQ(rep.find("uin_free_branch_vs_oracle")->status, VerifyStatus::Pass);
  EXPECT_GT(rep.find("tmin_free_branch_vs_oracle")->count, 0u);
}

TEST(Verify, UnityClaimFlaggedWithValues) {
  const auto* it = seeded_report().find("claim_eigenstates_unit_correlations");
  ASSERT_NE(it, nullptr);
  EXPECT_EQ(it->status, VerifyStatus::Flagged);
  EXPECT_NEAR(value_of(*it, "concurrence_phi1"), 1.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(value_of(*it, "concurrence_phi3"), 1.0, 1e-12);
  EXPECT_NEAR(value_of(*it, "uin_phi1"), 0.2, 1e-6);
  EXPECT_NEAR(it->magnitude, 0.8, 1e-6);
}

TEST(Verify, SignConventionIsImmaterial) {
  const auto* it = seeded_report().find("tmin_sign_convention_sensitivity");
  EXPECT_EQ(it->status, VerifyStatus::Pass);
  EXPECT_LT(it->magnitude, 1e-12);
}

TEST(Verify, ZeroSamplesSkipsSampledItemsOnly) {
  const auto rep = verify_report(7, 0);
  std::size_t claims = 0;
  for (const auto& it : rep.items) {
    if (it.group == "vi") {
      ++claims;
      EXPECT_NE(it.status, VerifyStatus::Skipped) << it.name;
      EXPECT_GT(it.count, 0u);
    } else {
      EXPECT_EQ(it.status, VerifyStatus::Skipped) << it.name;
    }
  }
  EXPECT_EQ(claims, 2u);
}

TEST(Verify, SameSeedSameReport) {
  const auto a = report_to_json(verify_report(3, 12)).dump();
  EXPECT_EQ(a, report_to_json(verify_report(3, 12)).dump());
}

TEST(Verify, JsonAndTextRender) {
  const auto& rep = seeded_report();
  const auto j = report_to_json(rep);
  EXPECT_EQ(j["seed"], 1);
  EXPECT_EQ(j["samples"], 100);
  ASSERT_EQ(j["items"].size(), rep.items.size());
  EXPECT_EQ(j["items"][0]["status"], "PASS");
  const std::string text = report_to_text(rep);
  EXPECT_NE(text.find("[FLAGGED] (vi) claim_eigenstates_unit_correlations"), std::string::npos);
  EXPECT_NE(text.find("concurrence_phi1 = 0.447214"), std::string::npos);
}
