#include "negabase/regex.hpp"

#include <cctype>

#include "negabase/builders.hpp"

namespace negabase {

namespace {

struct Fragment {
  State start;
  State accept;
};

class RegexParser {
 public:
  RegexParser(std::string_view pattern, Nfa& nfa) : src_(pattern), nfa_(nfa) {}

  Fragment parse() {
    Fragment f = alternation();
    skip_space();
    if (pos_ < src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("regex: " + msg, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  Fragment empty() {
    const State s = nfa_.add_state();
    return {s, s};
  }

  Fragment alternation() {
    Fragment f = concatenation();
    while (peek('|')) {
      ++pos_;
      Fragment g = concatenation();
      const State s = nfa_.add_state();
      const State t = nfa_.add_state();
      nfa_.add_epsilon(s, f.start);
      nfa_.add_epsilon(s, g.start);
      nfa_.add_epsilon(f.accept, t);
      nfa_.add_epsilon(g.accept, t);
      f = {s, t};
    }
    return f;
  }

  Fragment concatenation() {
    Fragment f = empty();
    while (true) {
      skip_space();
      if (pos_ >= src_.size() || src_[pos_] == '|' || src_[pos_] == ')') return f;
      Fragment g = repetition();
      nfa_.add_epsilon(f.accept, g.start);
      f = {f.start, g.accept};
    }
  }

  Fragment repetition() {
    Fragment f = atom();
    while (peek('*') || peek('+') || peek('?')) {
      const char op = src_[pos_++];
      const State s = nfa_.add_state();
      const State t = nfa_.add_state();
      nfa_.add_epsilon(s, f.start);
      nfa_.add_epsilon(f.accept, t);
      if (op != '+') nfa_.add_epsilon(s, t);
      if (op != '?') nfa_.add_epsilon(f.accept, f.start);
      f = {s, t};
    }
    return f;
  }

  Fragment atom() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of pattern");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Fragment f = alternation();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return f;
    }
    const Letter letter = c == '[' ? tuple() : single();
    const State s = nfa_.add_state();
    const State t = nfa_.add_state();
    nfa_.add_transition(s, letter, t);
    return {s, t};
  }

  int digit_value(char c) const {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
  }

  Letter single() {
    const auto& alpha = nfa_.alphabet();
    const int d = digit_value(src_[pos_]);
    if (d < 0) fail(std::string("unexpected '") + src_[pos_] + "'");
    if (alpha.arity() != 1) fail("a single digit needs a one-track pattern; use [d1,d2,...]");
    if (d >= alpha.radix(0)) fail("digit " + std::to_string(d) + " is outside the alphabet");
    ++pos_;
    return static_cast<Letter>(d);
  }

  Letter tuple() {
    const auto& alpha = nfa_.alphabet();
    ++pos_;  // '['
    std::vector<Digit> digits;
    while (true) {
      skip_space();
      std::size_t start = pos_;
      bool negative = false;
      if (pos_ < src_.size() && src_[pos_] == '-') {
        negative = true;
        ++pos_;
      }
      int value = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        value = value * 10 + (src_[pos_++] - '0');
      }
      if (pos_ == start || negative) fail("expected a digit in tuple");
      if (digits.size() >= alpha.arity() || value >= alpha.radix(digits.size())) fail("tuple digit out of range");
      digits.push_back(static_cast<Digit>(value));
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (pos_ < src_.size() && src_[pos_] == ']') {
        ++pos_;
        break;
      }
      fail("expected ',' or ']' in tuple");
    }
    if (digits.size() != alpha.arity()) {
      fail("tuple has " + std::to_string(digits.size()) + " digits, pattern has " + std::to_string(alpha.arity()) +
           " tracks");
    }
    return alpha.letter(digits);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Nfa& nfa_;
};

}  // namespace

Nfa regex_to_nfa(std::string_view pattern, const TrackAlphabet& alphabet) {
  Nfa nfa(alphabet);
  RegexParser parser(pattern, nfa);
  const Fragment f = parser.parse();
  nfa.add_initial(f.start);
  nfa.set_accepting(f.accept);
  return nfa;
}

Automaton compile_regex(std::string_view pattern, const TrackAlphabet& alphabet) {
  Automaton a = zero_closure(regex_to_nfa(pattern, alphabet).determinize());
  for (const auto& t : alphabet.tracks()) {
    if (!t.base.all_words_valid()) a = product(a, builders::valid_words(t.base, t.name), combiners::conj);
  }
  return a;
}

}  // namespace negabase
