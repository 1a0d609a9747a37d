#include "negabase/builders.hpp"

namespace negabase::builders {

namespace {

struct TableBuilder {
  TrackAlphabet alphabet;
  std::size_t states;
  State dead;
  std::vector<State> next;
  std::vector<Label> labels;

  TableBuilder(TrackAlphabet a, std::size_t n, State dead_state)
      : alphabet(std::move(a)), states(n), dead(dead_state), next(n * alphabet.size(), dead_state), labels(n, 0) {}

  void set(State from, std::initializer_list<int> digits, State to) {
    std::vector<Digit> d;
    for (int v : digits) d.push_back(static_cast<Digit>(v));
    next[from * alphabet.size() + alphabet.letter(d)] = to;
  }
  Automaton build() { return Automaton(std::move(alphabet), std::move(next), std::move(labels)); }
};

}  // namespace

Automaton negative_adder(int k, const std::string& x, const std::string& y, const std::string& z) {
  const Base base = Base::negative(k);
  TableBuilder t(TrackAlphabet({{x, base}, {y, base}, {z, base}}), 4, 3);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      for (int c = 0; c < k; ++c) {
        const int d = a + b - c;
        if (d == 0) t.set(0, {a, b, c}, 0);
        if (d == -1) t.set(0, {a, b, c}, 1);
        if (d == 1) t.set(0, {a, b, c}, 2);
        if (d - k == 0) t.set(2, {a, b, c}, 0);
        if (d - k == -1) t.set(2, {a, b, c}, 1);
        if (d - k == 1) t.set(2, {a, b, c}, 2);
      }
    }
  }
  t.set(1, {0, 0, k - 1}, 2);
  t.labels[0] = 1;
  return t.build();
}

Automaton negative_comparator(int k, const std::string& x, const std::string& y) {
  const Base base = Base::negative(k);
  TableBuilder t(TrackAlphabet({{x, base}, {y, base}}), 3, 0);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      t.set(0, {a, b}, a == b ? 0 : (a > b ? 1 : 2));
      t.set(1, {a, b}, 2);
      t.set(2, {a, b}, 1);
    }
  }
  t.labels[2] = 1;
  return t.build();
}

Automaton converter(int k, Sign sign, const std::string& x, const std::string& y) {
  TableBuilder t(TrackAlphabet({{x, Base::positive(k)}, {y, Base::negative(k)}}), 6, 5);
  t.set(0, {0, 0}, 0);
  for (int a = 0; a <= k - 2; ++a) t.set(0, {a, a + 1}, 1);
  for (int m = 1; m <= k - 1; ++m) t.set(0, {m, m}, 2);
  for (int b = 0; b <= k - 1; ++b) t.set(1, {b, k - (b + 1)}, 3);
  for (int c = 1; c <= k - 1; ++c) t.set(1, {c, k - c}, 4);
  t.set(2, {0, 0}, 4);
  t.set(3, {k - 1, 0}, 1);
  for (int a = 0; a <= k - 2; ++a) t.set(4, {a, a + 1}, 1);
  for (int n = 0; n <= k - 1; ++n) t.set(4, {n, n}, 2);
  t.labels[0] = 1;
  t.labels[sign == Sign::Plus ? 2 : 4] = 1;
  return t.build();
}

Automaton constant(Integer m, const Base& base, const std::string& x) {
  const DigitWord word = encode(m, base);
  const std::size_t len = word.size();
  // States 0..len track how much of the word has been matched; len + 1 is dead.
  TableBuilder t(TrackAlphabet({{x, base}}), len + 2, static_cast<State>(len + 1));
  t.set(0, {0}, 0);
  for (std::size_t i = 0; i < len; ++i) t.set(static_cast<State>(i), {word[i]}, static_cast<State>(i + 1));
  t.labels[len] = 1;
  return minimize(t.build());
}

Automaton adder(const Base& base, const std::string& x, const std::string& y, const std::string& z) {
  if (base.kind() == BaseKind::Negative) return negative_adder(base.radix(), x, y, z);
  if (base.kind() != BaseKind::Positive) throw CompileError("addition is not supported in " + base.name());
  const int k = base.radix();
  // State c: the not-yet-read suffix must produce carry c into this position.
  TableBuilder t(TrackAlphabet({{x, base}, {y, base}, {z, base}}), 3, 2);
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) {
        for (int s = 0; s < k; ++s) {
          const int carry_in = s + k * c - a - b;
          if (carry_in == 0 || carry_in == 1) t.set(static_cast<State>(c), {a, b, s}, static_cast<State>(carry_in));
        }
      }
    }
  }
  t.labels[0] = 1;
  return t.build();
}

Automaton less_than(const Base& base, const std::string& x, const std::string& y) {
  if (base.kind() == BaseKind::Negative) return negative_comparator(base.radix(), x, y);
  if (base.kind() != BaseKind::Positive) throw CompileError("ordering is not supported in " + base.name());
  const int k = base.radix();
  TableBuilder t(TrackAlphabet({{x, base}, {y, base}}), 3, 0);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      t.set(0, {a, b}, a == b ? 0 : (a < b ? 1 : 2));
      t.set(1, {a, b}, 1);
      t.set(2, {a, b}, 2);
    }
  }
  t.labels[1] = 1;
  return t.build();
}

Automaton equality(const Base& base, const std::string& x, const std::string& y) {
  TableBuilder t(TrackAlphabet({{x, base}, {y, base}}), 2, 1);
  for (int a = 0; a < base.digit_count(); ++a) t.set(0, {a, a}, 0);
  t.labels[0] = 1;
  return t.build();
}

Automaton valid_words(const Base& base, const std::string& x) {
  if (base.all_words_valid()) return Automaton::constant(true, TrackAlphabet({{x, base}}));
  // 0: last digit 0 (or start), 1: last digit 1, 2: dead.
  TableBuilder t(TrackAlphabet({{x, base}}), 3, 2);
  t.set(0, {0}, 0);
  t.set(0, {1}, 1);
  t.set(1, {0}, 0);
  t.labels[0] = 1;
  t.labels[1] = 1;
  return t.build();
}

Automaton canonical_words(const Base& base, const std::string& x) {
  // 0: start (empty word accepted), 1: after a leading nonzero digit,
  // 2: last digit was 1 (negaFibonacci only), 3: dead.
  TableBuilder t(TrackAlphabet({{x, base}}), 4, 3);
  const bool fib = base.kind() == BaseKind::NegaFibonacci;
  for (int d = 1; d < base.digit_count(); ++d) t.set(0, {d}, fib ? 2 : 1);
  for (int d = 0; d < base.digit_count(); ++d) {
    if (fib) {
      t.set(1, {d}, d == 1 ? 2 : 1);
      if (d == 0) t.set(2, {0}, 1);
    } else {
      t.set(1, {d}, 1);
    }
  }
  t.labels[0] = 1;
  t.labels[1] = 1;
  t.labels[2] = 1;
  return minimize(t.build());
}

OutputAutomaton digit_sum_parity(const Base& base, const std::string& n) {
  if (base.kind() == BaseKind::NegaFibonacci) throw NumerationError("digit-sum parity needs base k or -k");
  const TrackAlphabet alphabet({{n, base}});
  std::vector<State> next(2 * alphabet.size());
  for (State s = 0; s < 2; ++s) {
    for (Letter d = 0; d < alphabet.size(); ++d) next[s * alphabet.size() + d] = s ^ (d & 1);
  }
  return OutputAutomaton(alphabet, std::move(next), {0, 1});
}

}  // namespace negabase::builders
