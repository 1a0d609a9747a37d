#include <gtest/gtest.h>

#include <bit>

#include "negabase/builders.hpp"
#include "negabase/compiler.hpp"
#include "negabase/transform.hpp"
#include "support/oracle.hpp"

using namespace negabase;
using builders::Sign;

namespace {

Label tm_at(Integer n) { return static_cast<Label>(std::popcount(static_cast<std::uint64_t>(n)) & 1); }

OutputAutomaton thue_morse() { return builders::digit_sum_parity(Base::positive(2), "n"); }

OutputAutomaton constant_word(Label c, const Base& b, const char* track = "n") {
  return combine_predicates({{compile("?" + b.name() + " " + track + "=" + track,
                                      EmptyEnvironment{}, b),
                              c}});
}

template <class M>
void expect_same_function(const M& a, const M& b) {
  const M ma = minimize(a);
  const M mb = minimize(b);
  EXPECT_EQ(ma.transition_table(), mb.transition_table());
  EXPECT_EQ(ma.labels(), mb.labels());
}

// Word automaton in base k on (x, y): x + 2y mod 3.
OutputAutomaton mod3_word(int k) {
  const Base b = Base::positive(k);
  std::vector<std::pair<Automaton, Label>> parts;
  for (Label r = 1; r <= 2; ++r) {
    parts.emplace_back(compile("Eq x+2*y=3*q+" + std::to_string(r), EmptyEnvironment{}, b), r);
  }
  return combine_predicates(parts);
}

}  // namespace

TEST(Combine, FirstMatchWinsAndDefaultIsZero) {
  const Base b = Base::negative(2);
  const EmptyEnvironment env;
  const OutputAutomaton d = combine_predicates({{compile("?msd_neg_2 n<0", env), 5},
                                                {compile("?msd_neg_2 n<10", env), 7},
                                                {compile("?msd_neg_2 n=n+1", env), 9}});
  for (Integer n = -30; n <= 30; ++n) EXPECT_EQ(d.evaluate(n), n < 0 ? 5 : n < 10 ? 7 : 0) << n;
  const OutputAutomaton never = combine_predicates({{compile("?msd_neg_2 n=n+1", env), 4}});
  for (Integer n = -10; n <= 10; ++n) EXPECT_EQ(never.evaluate(n), 0);
  (void)b;
}

TEST(SplitRsplit, SplitOfRsplitIsIdentityOnN) {
  const OutputAutomaton t = thue_morse();
  const OutputAutomaton r = rsplit_word(t, {Sign::Plus});
  const OutputAutomaton back = split_word(r, {Sign::Plus});
  EXPECT_EQ(back.alphabet().track(0).base, Base::positive(2));
  for (Integer n = 0; n <= 1000; ++n) ASSERT_EQ(back.evaluate(n), tm_at(n)) << n;
  expect_same_function(back, t);
}

TEST(SplitRsplit, RsplitFillsTheOtherSideWithZero) {
  const OutputAutomaton r = rsplit_word(thue_morse(), {Sign::Plus});
  for (Integer n = -200; n <= -1; ++n) ASSERT_EQ(r.evaluate(n), 0) << n;
  for (Integer n = 0; n <= 200; ++n) ASSERT_EQ(r.evaluate(n), tm_at(n)) << n;
  const OutputAutomaton m = rsplit_word(thue_morse(), {Sign::Minus});
  for (Integer n = -200; n <= 200; ++n) ASSERT_EQ(m.evaluate(n), n <= 0 ? tm_at(-n) : 0) << n;
}

TEST(SplitRsplit, ShiftedReflection) {
  // T2[n] = t(n-1) for n >= 1; rsplit [-] gives T22[-5] = t(4).
  const Base b = Base::positive(2);
  MapEnvironment env;
  env.add_word("T", thue_morse());
  const OutputAutomaton t2 = combine_predicates({{compile("T[n-1]=@1", env, b), 1}});
  const OutputAutomaton t22 = rsplit_word(t2, {Sign::Minus});
  EXPECT_EQ(t22.evaluate(-5), tm_at(4));
  for (Integer n = -100; n <= -1; ++n) EXPECT_EQ(t22.evaluate(n), tm_at(-n - 1)) << n;
}

TEST(SplitRsplit, TwoTrackSigns) {
  for (int k : {2, 3}) {
    const OutputAutomaton b = mod3_word(k);
    const OutputAutomaton r = rsplit_word(b, {Sign::Plus, Sign::Minus});
    auto mod3 = [](Integer v) { return static_cast<Label>(((v % 3) + 3) % 3); };
    for (Integer x = -12; x <= 12; ++x) {
      for (Integer y = -12; y <= 12; ++y) {
        const Integer v[] = {x, y};
        const Label want = (x >= 0 && y <= 0) ? mod3(x - 2 * y) : 0;
        ASSERT_EQ(r.evaluate(v), want) << k << " " << x << " " << y;
      }
    }
    // Split back with the opposite sign on y: S(x, y) = R(x, -y) = B(x, y).
    const OutputAutomaton s = split_word(r, {Sign::Plus, Sign::Minus});
    for (Integer x = 0; x <= 30; ++x) {
      for (Integer y = 0; y <= 30; ++y) {
        const Integer v[] = {x, y};
        ASSERT_EQ(s.evaluate(v), b.evaluate(v));
      }
    }
  }
}

TEST(SplitRsplit, SplitOfNegativeWordSampled) {
  // G on (x, y): parity of 1s of x - 2y in base -2; split [+] [-].
  const Base nb = Base::negative(2);
  MapEnvironment env;
  env.add_word("G", builders::digit_sum_parity(nb));
  const OutputAutomaton bw = combine_predicates({{compile("G[x-2*y]=@1", env, nb), 1}});
  const OutputAutomaton bs = split_word(bw, {Sign::Plus, Sign::Minus});
  const OutputAutomaton g = builders::digit_sum_parity(nb);
  for (Integer x = 0; x <= 50; ++x) {
    for (Integer y = 0; y <= 50; ++y) {
      const Integer v[] = {x, y};
      ASSERT_EQ(bs.evaluate(v), g.evaluate(x + 2 * y)) << x << " " << y;
    }
  }
}

TEST(SplitRsplit, ConstantsStayConstant) {
  const OutputAutomaton c = constant_word(3, Base::negative(2));
  const OutputAutomaton s = split_word(c, {Sign::Plus});
  for (Integer n = 0; n < 100; ++n) EXPECT_EQ(s.evaluate(n), 3);
  const OutputAutomaton z = rsplit_word(constant_word(0, Base::positive(3)), {Sign::Minus});
  for (Integer n = -50; n <= 50; ++n) EXPECT_EQ(z.evaluate(n), 0);
  EXPECT_THROW(split_word(c, {Sign::Plus, Sign::Plus}), ArityError);
  EXPECT_THROW(split_word(thue_morse(), {Sign::Plus}), NumerationError);
}

TEST(Join, FirstNonzeroPointwise) {
  const OutputAutomaton t = thue_morse();
  const OutputAutomaton pos = rsplit_word(t, {Sign::Plus});
  const OutputAutomaton neg = rename_tracks(rsplit_word(constant_word(2, Base::positive(2)), {Sign::Minus}), {"n"});
  const OutputAutomaton j = join_words({pos, neg});
  for (Integer n = -60; n <= 60; ++n) {
    const Label a = pos.evaluate(n);
    EXPECT_EQ(j.evaluate(n), a != 0 ? a : neg.evaluate(n)) << n;
  }
  // Joining with constant 0 changes nothing; a nowhere-zero first input wins.
  const OutputAutomaton zero = constant_word(0, Base::negative(2));
  expect_same_function(join_words({zero, pos}), pos);
  const OutputAutomaton three = constant_word(3, Base::negative(2));
  expect_same_function(join_words({three, pos}), three);
}

TEST(Join, AssociativeOnDisjointSupports) {
  const Base b = Base::negative(2);
  const EmptyEnvironment env;
  const OutputAutomaton a = combine_predicates({{compile("?msd_neg_2 n<_5", env), 1}});
  const OutputAutomaton c = combine_predicates({{compile("?msd_neg_2 n>=_5 & n<7", env), 2}});
  const OutputAutomaton d = combine_predicates({{compile("?msd_neg_2 n>=7 & n<40", env), 3}});
  const OutputAutomaton left = join_words({a, join_words({c, d})});
  const OutputAutomaton flat = join_words({a, c, d});
  for (Integer n = -80; n <= 80; ++n) EXPECT_EQ(left.evaluate(n), flat.evaluate(n)) << n;
  (void)b;
}

TEST(Join, TracksAlignByName) {
  const Base b = Base::negative(2);
  const EmptyEnvironment env;
  const OutputAutomaton xy = combine_predicates({{compile("?msd_neg_2 x<y", env), 1}});
  const OutputAutomaton yx = rename_tracks(xy, {"y", "x"});  // now 1 where y < x
  const OutputAutomaton j = join_words({xy, yx});
  EXPECT_EQ(j.alphabet().names(), (std::vector<std::string>{"x", "y"}));
  for (Integer x = -8; x <= 8; ++x) {
    for (Integer y = -8; y <= 8; ++y) {
      const Integer v[] = {x, y};
      EXPECT_EQ(j.evaluate(v), x != y ? 1 : 0);
    }
  }
  (void)b;
}

TEST(Morphism, ParseAndFormat) {
  const Morphism m = parse_morphism("0 -> 01\n1 -> 10 [2] -> [12]0");
  EXPECT_EQ(m.images.at(2), (std::vector<Label>{12, 0}));
  EXPECT_EQ(m.uniform_length(), 2u);
  EXPECT_EQ(parse_morphism(format_morphism(m)), m);
  EXPECT_FALSE(parse_morphism("0 -> 0 1 -> 10").uniform_length().has_value());
  EXPECT_THROW(parse_morphism("0 - 01"), ParseError);
  EXPECT_THROW(parse_morphism("0 -> 01 0 -> 10"), ParseError);
}

TEST(Image, TwoSidedFloorDivision) {
  const OutputAutomaton zero = constant_word(0, Base::negative(2));
  const OutputAutomaton w = apply_morphism(parse_morphism("0 -> 01 1 -> 10"), zero);
  EXPECT_EQ(w.evaluate(0), 0);
  EXPECT_EQ(w.evaluate(1), 1);
  EXPECT_EQ(w.evaluate(-1), 1);
  EXPECT_EQ(w.evaluate(-2), 0);
}

TEST(Image, AgreesWithDirectExpansion) {
  // Image of g under a 3-uniform morphism, against the definition.
  const OutputAutomaton g = builders::digit_sum_parity(Base::negative(2));
  const Morphism xi = parse_morphism("0 -> 012 1 -> 200");
  const OutputAutomaton w = apply_morphism(xi, g);
  for (Integer n = -150; n <= 150; ++n) {
    const Integer q = negabase::testing::floor_div(n, 3);
    ASSERT_EQ(w.evaluate(n), xi.images.at(g.evaluate(q))[n - 3 * q]) << n;
  }
  expect_same_function(apply_morphism(parse_morphism("0 -> 0 1 -> 1"), g), g);
  EXPECT_THROW(apply_morphism(parse_morphism("0 -> 0 1 -> 10"), g), Error);
  EXPECT_THROW(apply_morphism(parse_morphism("0 -> 00"), g), Error);
}
