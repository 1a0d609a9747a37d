#include <gtest/gtest.h>

#include <random>

#include "negabase/automaton.hpp"
#include "negabase/builders.hpp"
#include "negabase/nfa.hpp"
#include "support/oracle.hpp"

using namespace negabase;

namespace {

TrackAlphabet binary_tracks(std::initializer_list<const char*> names) {
  std::vector<Track> t;
  for (const char* n : names) t.push_back({n, Base::negative(2)});
  return TrackAlphabet(std::move(t));
}

Automaton random_dfa(std::mt19937& rng, const TrackAlphabet& alpha, std::size_t states) {
  std::uniform_int_distribution<State> pick(0, static_cast<State>(states - 1));
  std::vector<State> next(states * alpha.size());
  for (auto& t : next) t = pick(rng);
  std::vector<Label> labels(states);
  for (auto& l : labels) l = static_cast<Label>(rng() % 2);
  return Automaton(alpha, std::move(next), std::move(labels));
}

// Calls fn on every word of length <= max_len over `letters` letters.
template <class Fn>
void for_each_word(std::size_t letters, std::size_t max_len, Fn fn) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<Letter> w(len, 0);
    while (true) {
      fn(w);
      std::size_t pos = len;
      while (pos > 0 && ++w[pos - 1] == letters) w[--pos] = 0;
      if (pos == 0) break;
    }
  }
}

}  // namespace

TEST(TrackAlphabet, LetterZeroIsAllZerosAndTrackZeroIsMostSignificant) {
  TrackAlphabet a({{"x", Base::negative(3)}, {"y", Base::negative(2)}});
  EXPECT_EQ(a.size(), 6u);
  EXPECT_EQ(a.letter(std::vector<Digit>{0, 0}), 0u);
  EXPECT_EQ(a.letter(std::vector<Digit>{0, 1}), 1u);
  EXPECT_EQ(a.letter(std::vector<Digit>{1, 0}), 2u);
  EXPECT_EQ(a.digits(5), (std::vector<Digit>{2, 1}));
  EXPECT_THROW(TrackAlphabet({{"x", Base::negative(2)}, {"x", Base::negative(2)}}), Error);
}

TEST(Minimize, PreservesLanguageOnRandomMachines) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto alpha = binary_tracks({"x"});
    const Automaton a = random_dfa(rng, alpha, 2 + trial % 7);
    const Automaton m = minimize(a);
    EXPECT_LE(m.num_states(), a.num_states());
    for_each_word(alpha.size(), 9, [&](const std::vector<Letter>& w) { ASSERT_EQ(a.accepts(w), m.accepts(w)); });
    const Automaton again = minimize(m);
    EXPECT_EQ(again.transition_table(), m.transition_table());
    EXPECT_EQ(again.labels(), m.labels());
  }
}

TEST(Minimize, IsCanonicalUnderStateRenumbering) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto alpha = binary_tracks({"x", "y"});
    const std::size_t n = 6;
    const Automaton a = random_dfa(rng, alpha, n);
    // Permute states 1..n-1 and keep 0 as the start.
    std::vector<State> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    std::vector<State> next(a.transition_table().size());
    std::vector<Label> labels(n);
    for (State s = 0; s < n; ++s) {
      labels[perm[s]] = a.label(s);
      for (Letter l = 0; l < alpha.size(); ++l) next[perm[s] * alpha.size() + l] = perm[a.next(s, l)];
    }
    const Automaton b(alpha, next, labels);
    EXPECT_EQ(minimize(a).transition_table(), minimize(b).transition_table());
    EXPECT_EQ(minimize(a).labels(), minimize(b).labels());
  }
}

TEST(Nfa, DeterminizationAgreesWithSimulation) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Nfa nfa(binary_tracks({"x"}));
    for (int i = 0; i < 5; ++i) nfa.add_state(rng() % 3 == 0);
    nfa.add_initial(0);
    if (rng() % 2) nfa.add_initial(static_cast<State>(rng() % 5));
    for (int e = 0; e < 9; ++e) nfa.add_transition(rng() % 5, rng() % 2, rng() % 5);
    for (int e = 0; e < 2; ++e) nfa.add_epsilon(rng() % 5, rng() % 5);
    const Automaton d = nfa.determinize();
    for_each_word(2, 10, [&](const std::vector<Letter>& w) { ASSERT_EQ(nfa.accepts(w), d.accepts(w)) << trial; });
  }
}

TEST(BooleanOps, DeMorganOnRandomMachines) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Automaton a = random_dfa(rng, binary_tracks({"x", "y"}), 4);
    const Automaton b = random_dfa(rng, binary_tracks({"y", "z"}), 4);
    const Automaton lhs = complement(product(a, b, combiners::conj));
    const Automaton rhs = product(complement(a), complement(b), combiners::disj);
    EXPECT_TRUE(equivalent(lhs, rhs));
    EXPECT_EQ(lhs.alphabet().names(), (std::vector<std::string>{"x", "y", "z"}));
  }
}

TEST(BooleanOps, SharedNameInDifferentBasesIsRejected) {
  const Automaton a = builders::equality(Base::negative(2), "x", "y");
  const Automaton b = builders::equality(Base::positive(2), "x", "y");
  EXPECT_THROW(product(a, b, combiners::conj), NumerationError);
}

TEST(Project, MatchesPaddedWitnessSearch) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto alpha = binary_tracks({"x", "y"});
    const Automaton a = random_dfa(rng, alpha, 4);
    const Automaton p = project(a, "y");
    ASSERT_EQ(p.alphabet().names(), std::vector<std::string>{"x"});
    // Reference: states reachable after m padding letters (x digit 0, any y),
    // for m up to a bound past which the reachable set cycles.
    std::vector<std::vector<char>> padded;
    std::vector<char> cur(a.num_states(), 0);
    cur[0] = 1;
    for (int m = 0; m <= 40; ++m) {
      padded.push_back(cur);
      std::vector<char> nxt(a.num_states(), 0);
      for (State s = 0; s < a.num_states(); ++s) {
        if (!cur[s]) continue;
        nxt[a.next(s, alpha.letter(std::vector<Digit>{0, 0}))] = 1;
        nxt[a.next(s, alpha.letter(std::vector<Digit>{0, 1}))] = 1;
      }
      cur = nxt;
    }
    // The result is zero-closed: leading zero letters of w may be dropped too.
    for_each_word(2, 7, [&](const std::vector<Letter>& full) {
      bool expected = false;
      for (std::size_t drop = 0; drop <= full.size(); ++drop) {
        if (drop > 0 && full[drop - 1] != 0) break;
        const std::vector<Letter> w(full.begin() + static_cast<long>(drop), full.end());
        for (const auto& start : padded) {
          std::vector<char> set = start;
          for (Letter xd : w) {
            std::vector<char> nxt(a.num_states(), 0);
            for (State s = 0; s < a.num_states(); ++s) {
              if (!set[s]) continue;
              for (Digit yd = 0; yd < 2; ++yd) nxt[a.next(s, alpha.letter(std::vector<Digit>{static_cast<Digit>(xd), yd}))] = 1;
            }
            set = nxt;
          }
          for (State s = 0; s < a.num_states(); ++s) expected = expected || (set[s] && a.accepting(s));
        }
      }
      ASSERT_EQ(p.accepts(full), expected) << trial;
    });
  }
}

TEST(Project, LongerWitnessIsFound) {
  // Ey (x + y = z & y = 6): y needs 5 digits in base -2 while x, z may be short.
  const Base b = Base::negative(2);
  const Automaton a = product(builders::adder(b, "x", "y", "z"), builders::constant(6, b, "y"), combiners::conj);
  const Automaton p = project(a, "y");
  for (Integer x = -20; x <= 20; ++x) {
    for (Integer z = -20; z <= 20; ++z) {
      const Integer v[] = {x, z};
      EXPECT_EQ(p.accepts_values(v), x + 6 == z) << x << " " << z;
    }
  }
}

TEST(ZeroClosure, AcceptanceIgnoresLeadingZeros) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Automaton a = zero_closure(random_dfa(rng, binary_tracks({"x"}), 5));
    for_each_word(2, 8, [&](const std::vector<Letter>& w) {
      std::vector<Letter> padded{0};
      padded.insert(padded.end(), w.begin(), w.end());
      ASSERT_EQ(a.accepts(w), a.accepts(padded));
    });
  }
}

TEST(Enumerate, LengthThenLexOrder) {
  const Base b = Base::negative(2);
  const auto words = enumerate_accepted(builders::constant(5, b, "x"), 5);
  ASSERT_EQ(words.size(), 3u);
  EXPECT_EQ(format_word(words[0].tracks[0]), "101");
  EXPECT_EQ(format_word(words[1].tracks[0]), "0101");
  EXPECT_EQ(format_word(words[2].tracks[0]), "00101");
  for (const auto& w : words) EXPECT_EQ(w.values[0], 5);
  EXPECT_EQ(enumerate_accepted(builders::constant(5, b, "x"), 5, 1).size(), 1u);
}

TEST(Decide, RequiresClosedAutomaton) {
  EXPECT_TRUE(decide(Automaton::constant(true)));
  EXPECT_FALSE(decide(Automaton::constant(false)));
  EXPECT_THROW(decide(builders::constant(1, Base::negative(2))), ArityError);
}

TEST(Tracks, MergeSortAndRename) {
  const Base b = Base::negative(2);
  // x + x = z  with y merged into x.
  const Automaton doubled = merge_tracks(builders::adder(b, "x", "y", "z"), 0, 1);
  EXPECT_EQ(doubled.alphabet().names(), (std::vector<std::string>{"x", "z"}));
  for (Integer x = -30; x <= 30; ++x) {
    const Integer v[] = {x, 2 * x};
    const Integer w[] = {x, 2 * x + 1};
    EXPECT_TRUE(doubled.accepts_values(v));
    EXPECT_FALSE(doubled.accepts_values(w));
  }
  const Automaton renamed = rename_tracks(builders::less_than(b, "x", "y"), {"b", "a"});
  const Automaton sorted = sort_tracks(renamed);
  EXPECT_EQ(sorted.alphabet().names(), (std::vector<std::string>{"a", "b"}));
  const Integer v[] = {3, 1};  // a=3 > b=1
  EXPECT_TRUE(sorted.accepts_values(v));
}

TEST(OutputAutomaton, EvaluateIgnoresPaddingAndReportsAlphabet) {
  const Base b = Base::negative(2);
  // Output 1 exactly on x = 3.
  const Automaton three = builders::constant(3, b, "x");
  const OutputAutomaton d(three.alphabet(), three.transition_table(), three.labels());
  EXPECT_EQ(d.output_alphabet(), (std::vector<Label>{0, 1}));
  for (Integer n = -10; n <= 10; ++n) EXPECT_EQ(d.evaluate(n), n == 3 ? 1 : 0);
  const Integer v[] = {3};
  EXPECT_EQ(d.output(d.run_values(v, 4)), 1);
  const auto eq = outputs_equal(d, rename_tracks(d, {"y"}));
  const Integer pair[] = {3, 5};
  EXPECT_FALSE(eq.accepts_values(pair));
}
