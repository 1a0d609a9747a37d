#pragma once

#include <span>
#include <vector>

#include "negabase/automaton.hpp"

namespace negabase {

/// Nondeterministic automaton with ε-moves over a track alphabet.
class Nfa {
 public:
  explicit Nfa(TrackAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const TrackAlphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return accepting_.size(); }

  State add_state(bool accepting = false);
  void set_accepting(State s, bool accepting = true) { accepting_.at(s) = accepting; }
  void add_initial(State s) { initial_.push_back(s); }
  void add_transition(State from, Letter letter, State to);
  void add_epsilon(State from, State to);

  bool accepts(std::span<const Letter> word) const;

  /// Subset construction; the result is complete and minimized.
  Automaton determinize() const;

 private:
  void close(std::vector<State>& set, std::vector<char>& in_set) const;

  TrackAlphabet alphabet_;
  std::vector<char> accepting_;
  std::vector<State> initial_;
  std::vector<std::vector<std::pair<Letter, State>>> edges_;
  std::vector<std::vector<State>> epsilon_;
};

}  // namespace negabase
