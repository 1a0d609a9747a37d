#include "negabase/nfa.hpp"

#include <algorithm>
#include <map>

namespace negabase {

State Nfa::add_state(bool accepting) {
  accepting_.push_back(accepting ? 1 : 0);
  edges_.emplace_back();
  epsilon_.emplace_back();
  return static_cast<State>(accepting_.size() - 1);
}

void Nfa::add_transition(State from, Letter letter, State to) {
  if (from >= num_states() || to >= num_states()) throw Error("NFA state out of range");
  if (letter >= alphabet_.size()) throw Error("NFA letter out of range");
  edges_[from].emplace_back(letter, to);
}

void Nfa::add_epsilon(State from, State to) {
  if (from >= num_states() || to >= num_states()) throw Error("NFA state out of range");
  epsilon_[from].push_back(to);
}

void Nfa::close(std::vector<State>& set, std::vector<char>& in_set) const {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (State t : epsilon_[set[i]]) {
      if (!in_set[t]) {
        in_set[t] = 1;
        set.push_back(t);
      }
    }
  }
}

bool Nfa::accepts(std::span<const Letter> word) const {
  std::vector<char> in_set(num_states(), 0);
  std::vector<State> current;
  for (State s : initial_) {
    if (!in_set[s]) {
      in_set[s] = 1;
      current.push_back(s);
    }
  }
  close(current, in_set);
  for (Letter a : word) {
    std::vector<State> next;
    std::fill(in_set.begin(), in_set.end(), 0);
    for (State s : current) {
      for (auto [l, t] : edges_[s]) {
        if (l == a && !in_set[t]) {
          in_set[t] = 1;
          next.push_back(t);
        }
      }
    }
    close(next, in_set);
    current = std::move(next);
  }
  return std::any_of(current.begin(), current.end(), [&](State s) { return accepting_[s] != 0; });
}

Automaton Nfa::determinize() const {
  const std::size_t letters = alphabet_.size();
  std::vector<char> in_set(num_states(), 0);
  std::vector<State> start;
  for (State s : initial_) {
    if (!in_set[s]) {
      in_set[s] = 1;
      start.push_back(s);
    }
  }
  close(start, in_set);
  std::sort(start.begin(), start.end());

  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> sets{start};
  ids.emplace(start, 0);
  std::vector<State> next;
  std::vector<Label> labels;
  for (std::size_t head = 0; head < sets.size(); ++head) {
    const auto current = sets[head];
    labels.push_back(std::any_of(current.begin(), current.end(), [&](State s) { return accepting_[s] != 0; }) ? 1 : 0);
    std::vector<std::vector<State>> by_letter(letters);
    for (State s : current) {
      for (auto [l, t] : edges_[s]) by_letter[l].push_back(t);
    }
    for (Letter a = 0; a < letters; ++a) {
      auto& target = by_letter[a];
      std::fill(in_set.begin(), in_set.end(), 0);
      std::vector<State> uniq;
      for (State t : target) {
        if (!in_set[t]) {
          in_set[t] = 1;
          uniq.push_back(t);
        }
      }
      close(uniq, in_set);
      std::sort(uniq.begin(), uniq.end());
      auto [it, inserted] = ids.try_emplace(uniq, static_cast<State>(sets.size()));
      if (inserted) sets.push_back(uniq);
      next.push_back(it->second);
    }
  }
  return minimize(Automaton(alphabet_, std::move(next), std::move(labels)));
}

}  // namespace negabase
