#include <gtest/gtest.h>

#include <algorithm>

#include "negabase/lab.hpp"

using namespace negabase;

TEST(Oracles, SmallValues) {
  // t = 0110100110010110...
  const std::string t = "0110100110010110";
  for (Integer n = 0; n < 16; ++n) EXPECT_EQ(lab::thue_morse(n), t[n] - '0');
  EXPECT_EQ(lab::g(0), 0);
  EXPECT_EQ(lab::g(-3), 1);  // 1101
  EXPECT_EQ(lab::g(6), 1);   // 11010
  EXPECT_EQ(lab::t_prime(-1), 0);
  EXPECT_EQ(lab::t_double_prime(-1), 1);
  EXPECT_EQ(lab::t_prime(-3), lab::thue_morse(2));
  // r(1..7): 1, 10, 11, 100, 101, 110, 111
  const Label r[] = {1, 1, 1, 1, 0, 1, 1};
  for (Integer n = 1; n <= 7; ++n) EXPECT_EQ(lab::runs_parity(n), r[n - 1]) << n;
  EXPECT_THROW(lab::thue_morse(-1), DomainError);
}

TEST(BuildG, MatchesDefinition) {
  const OutputAutomaton g = lab::build_g();
  EXPECT_EQ(g.alphabet().track(0).base, Base::negative(2));
  for (Integer n = -10000; n <= 10000; ++n) ASSERT_EQ(g.evaluate(n), lab::g(n)) << n;
}

TEST(TwoSidedThueMorse, ReflectionsHold) {
  const auto tm = lab::build_thue_morse_two_sided();
  for (Integer n = -256; n <= 256; ++n) {
    ASSERT_EQ(tm.t_prime.evaluate(n), lab::t_prime(n)) << n;
    ASSERT_EQ(tm.t_double_prime.evaluate(n), lab::t_double_prime(n)) << n;
  }
}

TEST(ClosedForms, KnownValues) {
  EXPECT_EQ(lab::closed_form_l(4), 170);
  EXPECT_EQ(lab::closed_form_a(4), 342);
  EXPECT_EQ(lab::closed_form_a(5), 598);
  EXPECT_EQ(lab::closed_form_l(5), 938);
  EXPECT_EQ(lab::closed_form_m(3), 14);
  EXPECT_EQ(lab::closed_form_b(5), 150);
  EXPECT_EQ(lab::closed_form_m(5), 234);
  EXPECT_EQ(lab::closed_form_b(1), 3);
}

TEST(RecordSetters, VReport) {
  const auto rep = lab::record_setters('v');
  const std::vector<lab::RecordPair> table = {{2, 0}, {3, 3}, {22, 10}, {38, 58}, {342, 170}, {598, 938}};
  ASSERT_GE(rep.enumerated.size(), table.size());
  EXPECT_TRUE(std::equal(table.begin(), table.end(), rep.enumerated.begin()));
  EXPECT_EQ(rep.enumerated, rep.oracle);
  EXPECT_EQ(rep.enumerated, rep.closed_form);
  EXPECT_TRUE(rep.mismatches.empty());
  EXPECT_TRUE(rep.flagged.empty());
  EXPECT_TRUE(rep.vseq_exact);
}

TEST(RecordSetters, WReportFlagsB1) {
  const auto rep = lab::record_setters('w');
  const std::vector<lab::RecordPair> table = {{0, 0}, {1, 1}, {6, 2}, {10, 14}, {86, 42}, {150, 234}};
  EXPECT_TRUE(std::equal(table.begin(), table.end(), rep.enumerated.begin()));
  EXPECT_EQ(rep.enumerated, rep.oracle);
  EXPECT_TRUE(rep.mismatches.empty());
  ASSERT_EQ(rep.flagged.size(), 1u);
  EXPECT_NE(rep.flagged[0].find("b(1)"), std::string::npos);
  EXPECT_THROW(lab::record_setters('x'), Error);
}

TEST(ShurScript, HasWarningAndPipeline) {
  const std::string s = lab::shur_script();
  EXPECT_NE(s.find("400 GB"), std::string::npos);
  EXPECT_NE(s.find("join TM21 T21[x] T22[x]"), std::string::npos);
  EXPECT_NE(s.find("image SHUR xi VTM2"), std::string::npos);
  EXPECT_NE(s.find("011001001101001011010011001"), std::string::npos);
}

TEST(Lab, EveryFastReproductionPasses) {
  for (const auto& id : lab::theorem_ids()) {
    if (id.starts_with("records")) continue;  // covered above
    const auto r = lab::run(id);
    EXPECT_TRUE(r.passed()) << id;
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << id << ": " << c.name << " " << c.detail;
  }
  EXPECT_THROW(lab::run("nope"), Error);
}
