#include <gtest/gtest.h>

#include <map>
#include <set>

#include "negabase/builders.hpp"
#include "support/oracle.hpp"

using namespace negabase;
using negabase::testing::for_each_padded_tuple;

// Every state of M_k has a fixed meaning in terms of d = [x] + [y] - [z] of
// the prefix read so far: q0 <-> d = 0, q1 <-> d = -1, q2 <-> d = 1, and the
// dead state q3 <-> |d| > 1 at some point.
TEST(NegativeAdder, StateMeaningsHoldExhaustively) {
  for (int k : {2, 3}) {
    const Automaton m = builders::negative_adder(k);
    EXPECT_EQ(m.num_states(), 4u);
    for_each_padded_tuple(m, 5, [&](const std::vector<DigitWord>& w, const std::vector<Integer>& v) {
      const State s = m.run_tracks(w);
      const Integer d = v[0] + v[1] - v[2];
      bool went_wide = false;
      for (std::size_t len = 1; len <= w[0].size(); ++len) {
        std::vector<DigitWord> prefix;
        for (const auto& t : w) prefix.emplace_back(t.begin(), t.begin() + static_cast<long>(len));
        const Base b = Base::negative(k);
        const Integer pd = decode(prefix[0], b) + decode(prefix[1], b) - decode(prefix[2], b);
        went_wide = went_wide || pd < -1 || pd > 1;
      }
      const State expected = went_wide ? 3 : (d == 0 ? 0 : (d == -1 ? 1 : 2));
      ASSERT_EQ(s, expected) << k;
      ASSERT_EQ(m.accepting(s), v[0] + v[1] == v[2]);
    });
  }
}

TEST(NegativeComparator, StateMeaningsHoldExhaustively) {
  for (int k : {2, 3}) {
    const Automaton n = builders::negative_comparator(k);
    EXPECT_EQ(n.num_states(), 3u);
    for_each_padded_tuple(n, 6, [&](const std::vector<DigitWord>& w, const std::vector<Integer>& v) {
      const State s = n.run_tracks(w);
      const State expected = v[0] == v[1] ? 0 : (v[0] > v[1] ? 1 : 2);
      ASSERT_EQ(s, expected) << k;
      ASSERT_EQ(n.accepting(s), v[0] < v[1]);
    });
  }
}

TEST(Converter, AcceptsExactlyTheSignedConversion) {
  for (int k : {2, 3, 4}) {
    const Automaton plus = builders::converter(k, builders::Sign::Plus);
    const Automaton minus = builders::converter(k, builders::Sign::Minus);
    for_each_padded_tuple(plus, k == 4 ? 4 : 6, [&](const std::vector<DigitWord>& w, const std::vector<Integer>& v) {
      ASSERT_EQ(plus.accepts_tracks(w), v[0] == v[1]) << k;
      ASSERT_EQ(minus.accepts_tracks(w), v[0] == -v[1]) << k;
    });
  }
}

// Records which situations lead to each converter state. q0 is the all-zero
// prefix, q2 holds x = y with x > 0 and q4 holds x = -y with x > 0. q1 always
// has y = x + 1 > 0 and q3 always has y = -x - 1 < 0, but both are reached with
// x = 0 as well (e.g. [0,1] for q1, [0,1][0,k-1] for q3), so "x > 0" only
// holds there from the second nonzero digit of x on.
TEST(Converter, ObservedStateClassification) {
  for (int k : {2, 3}) {
    const Automaton p = builders::converter(k, builders::Sign::Plus);
    std::map<State, std::set<std::string>> seen;
    const Base bk = Base::positive(k);
    const Base bn = Base::negative(k);
    for_each_padded_tuple(p, 6, [&](const std::vector<DigitWord>& w, const std::vector<Integer>& v) {
      const State s = p.run_tracks(w);
      if (s == 5) return;
      const Integer x = decode(w[0], bk);
      const Integer y = decode(w[1], bn);
      ASSERT_EQ(x, v[0]);
      ASSERT_EQ(y, v[1]);
      switch (s) {
        case 0:
          ASSERT_EQ(x, 0);
          ASSERT_EQ(y, 0);
          break;
        case 1:
          ASSERT_EQ(y, x + 1);
          ASSERT_GT(y, 0);
          break;
        case 2:
          ASSERT_EQ(x, y);
          ASSERT_GT(x, 0);
          break;
        case 3:
          ASSERT_EQ(y, -x - 1);
          ASSERT_LT(y, 0);
          break;
        case 4:
          ASSERT_EQ(x, -y);
          ASSERT_GT(x, 0);
          break;
        default: FAIL();
      }
      seen[s].insert(x > 0 ? "x>0" : "x=0");
    });
    const std::set<std::string> both{"x=0", "x>0"};
    EXPECT_EQ(seen[1], both);
    EXPECT_EQ(seen[3], both);
    EXPECT_EQ(seen[2], std::set<std::string>{"x>0"});
    EXPECT_EQ(seen[4], std::set<std::string>{"x>0"});
  }
}

TEST(Constant, AcceptsPaddedEncodingOnly) {
  const Base b = Base::negative(2);
  const Automaton three = builders::constant(3, b);
  for (Integer n = -50; n <= 50; ++n) {
    const Integer v[] = {n};
    EXPECT_EQ(three.accepts_values(v, 2), n == 3);
  }
  const std::vector<DigitWord> w{parse_word("000111", b)};
  EXPECT_TRUE(three.accepts_tracks(w));
}

TEST(Builders, PositiveAndNegativeBasesAgreeWithArithmetic) {
  for (const Base& b : {Base::positive(2), Base::positive(3), Base::negative(2), Base::negative(3)}) {
    const Automaton add = builders::adder(b, "x", "y", "z");
    const Automaton lt = builders::less_than(b, "x", "y");
    const Automaton eq = builders::equality(b, "x", "y");
    for_each_padded_tuple(add, 4, [&](const std::vector<DigitWord>& w, const std::vector<Integer>& v) {
      ASSERT_EQ(add.accepts_tracks(w), v[0] + v[1] == v[2]) << b.name();
    });
    for_each_padded_tuple(lt, 5, [&](const std::vector<DigitWord>& w, const std::vector<Integer>& v) {
      ASSERT_EQ(lt.accepts_tracks(w), v[0] < v[1]) << b.name();
      ASSERT_EQ(eq.accepts_tracks(w), v[0] == v[1]) << b.name();
    });
  }
  EXPECT_THROW(builders::adder(Base::nega_fibonacci(), "x", "y", "z"), CompileError);
}

TEST(Builders, NegaFibonacciValidity) {
  const Base f = Base::nega_fibonacci();
  const Automaton valid = builders::valid_words(f);
  const Automaton canon = builders::canonical_words(f);
  for (int len = 0; len <= 8; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      DigitWord w;
      for (int i = len - 1; i >= 0; --i) w.push_back(static_cast<Digit>((bits >> i) & 1));
      bool ok = true;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) ok = ok && !(w[i] == 1 && w[i + 1] == 1);
      const std::vector<DigitWord> t{w};
      EXPECT_EQ(valid.accepts_tracks(t), ok);
      EXPECT_EQ(canon.accepts_tracks(t), is_canonical(w, f));
    }
  }
}
