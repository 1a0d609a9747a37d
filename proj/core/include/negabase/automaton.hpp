#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negabase/numeration.hpp"

namespace negabase {

using State = std::uint32_t;
using Letter = std::uint32_t;
using Label = std::int32_t;

/// One input of an automaton: a variable name and the numeration it is read in.
struct Track {
  std::string name;
  Base base;

  friend bool operator==(const Track&, const Track&) = default;
};

/// Product alphabet Σ_k1 × ... × Σ_km. Letter indices enumerate the tuples in
/// lexicographic order with track 0 most significant, so letter 0 is always
/// the all-zeros tuple. Zero tracks give a single (empty) letter.
class TrackAlphabet {
 public:
  TrackAlphabet() = default;
  explicit TrackAlphabet(std::vector<Track> tracks);

  const std::vector<Track>& tracks() const noexcept { return tracks_; }
  const Track& track(std::size_t i) const { return tracks_.at(i); }
  std::size_t arity() const noexcept { return tracks_.size(); }
  std::size_t size() const noexcept { return size_; }
  int radix(std::size_t track) const { return tracks_[track].base.digit_count(); }

  Digit digit(Letter letter, std::size_t track) const noexcept {
    return static_cast<Digit>((letter / stride_[track]) % static_cast<Letter>(radix(track)));
  }
  Letter letter(std::span<const Digit> digits) const;
  std::vector<Digit> digits(Letter letter) const;

  std::optional<std::size_t> find(std::string_view name) const;
  std::vector<std::string> names() const;

  friend bool operator==(const TrackAlphabet& a, const TrackAlphabet& b) { return a.tracks_ == b.tracks_; }

 private:
  std::vector<Track> tracks_;
  std::vector<Letter> stride_;
  std::size_t size_ = 1;
};

/// Complete deterministic machine with an integer label on every state.
/// State 0 is the start state.
class StateMachine {
 public:
  const TrackAlphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return labels_.size(); }
  std::size_t num_letters() const noexcept { return alphabet_.size(); }
  static constexpr State start() noexcept { return 0; }

  State next(State s, Letter a) const noexcept { return next_[static_cast<std::size_t>(s) * num_letters() + a]; }
  Label label(State s) const noexcept { return labels_[s]; }

  State run(std::span<const Letter> word, State from = start()) const;
  /// Runs on equal-length digit words, one per track.
  State run_tracks(std::span<const DigitWord> words) const;
  /// Encodes each value in its track's numeration, pads with leading zeros
  /// to a common length (plus `extra_padding`) and runs.
  State run_values(std::span<const Integer> values, std::size_t extra_padding = 0) const;

  const std::vector<State>& transition_table() const noexcept { return next_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

 protected:
  StateMachine(TrackAlphabet alphabet, std::vector<State> next, std::vector<Label> labels);

  TrackAlphabet alphabet_;
  std::vector<State> next_;
  std::vector<Label> labels_;
};

/// DFA over a product of digit tracks; labels are 0 (reject) or 1 (accept).
class Automaton : public StateMachine {
 public:
  Automaton(TrackAlphabet alphabet, std::vector<State> next, std::vector<Label> labels);

  /// One-state automaton accepting everything (`value` true) or nothing.
  static Automaton constant(bool value, TrackAlphabet alphabet = {});

  bool accepting(State s) const noexcept { return labels_[s] != 0; }
  bool accepts(std::span<const Letter> word) const { return accepting(run(word)); }
  bool accepts_tracks(std::span<const DigitWord> words) const { return accepting(run_tracks(words)); }
  bool accepts_values(std::span<const Integer> values, std::size_t extra_padding = 0) const {
    return accepting(run_values(values, extra_padding));
  }
};

/// DFAO: a DFA whose states carry outputs; an automatic sequence.
class OutputAutomaton : public StateMachine {
 public:
  OutputAutomaton(TrackAlphabet alphabet, std::vector<State> next, std::vector<Label> outputs);

  static OutputAutomaton constant(Label value, TrackAlphabet alphabet);

  Label output(State s) const noexcept { return labels_[s]; }
  /// Sorted distinct outputs over reachable states.
  std::vector<Label> output_alphabet() const;

  Label evaluate(Integer n) const;
  Label evaluate(std::span<const Integer> values) const;
};

using BoolCombiner = bool (*)(bool, bool);

namespace combiners {
inline bool conj(bool a, bool b) { return a && b; }
inline bool disj(bool a, bool b) { return a || b; }
inline bool implies(bool a, bool b) { return !a || b; }
inline bool iff(bool a, bool b) { return a == b; }
inline bool exclusive(bool a, bool b) { return a != b; }
}  // namespace combiners

/// Product with tracks aligned by name; the result's tracks are the sorted
/// union of both track sets. A shared name read in different numerations
/// raises NumerationError. The result is minimized.
Automaton product(const Automaton& a, const Automaton& b, BoolCombiner combiner);

Automaton complement(const Automaton& a);

/// Existential projection of one track. Accepts w iff for some word w' equal
/// to w up to leading all-zero letters, some (possibly longer) padded word
/// with w' on the kept tracks is accepted; so the erased track may need more
/// digits than the others. The result is zero-closed and minimized.
Automaton project(const Automaton& a, std::size_t track);
Automaton project(const Automaton& a, std::string_view track_name);

Automaton minimize(const Automaton& a);
OutputAutomaton minimize(const OutputAutomaton& a);

/// Accepts w iff some word equal to w up to leading all-zero letters is
/// accepted; the result satisfies accept(0̄·w) = accept(w). Minimized.
Automaton zero_closure(const Automaton& a);

/// Truth value of a 0-track automaton.
bool decide(const Automaton& a);

/// Language equality (tracks must match exactly).
bool equivalent(const Automaton& a, const Automaton& b);

struct AcceptedWord {
  std::vector<DigitWord> tracks;
  std::vector<Integer> values;
};

/// Accepted words of length <= max_len in length-then-lex order. Words that
/// are not valid representations (negaFibonacci with adjacent 1s) are skipped.
/// Stops after `limit` words.
std::vector<AcceptedWord> enumerate_accepted(const Automaton& a, std::size_t max_len,
                                             std::size_t limit = static_cast<std::size_t>(-1));

/// Acceptor for the states whose output satisfies `keep`.
template <std::predicate<Label> Pred>
Automaton accept_where(const OutputAutomaton& d, Pred keep) {
  std::vector<Label> labels(d.num_states());
  for (State s = 0; s < d.num_states(); ++s) labels[s] = keep(d.output(s)) ? 1 : 0;
  return minimize(Automaton(d.alphabet(), d.transition_table(), std::move(labels)));
}

/// Pointwise product of two DFAOs aligned by track name. Minimized.
OutputAutomaton combine_outputs(const OutputAutomaton& a, const OutputAutomaton& b, Label (*fn)(Label, Label));

/// Acceptor over the union of both track sets for d1[...] == d2[...].
Automaton outputs_equal(const OutputAutomaton& a, const OutputAutomaton& b);

namespace detail {
struct RawMachine {
  TrackAlphabet alphabet;
  std::vector<State> next;
  std::vector<Label> labels;
};

RawMachine minimize_raw(const StateMachine& m);
RawMachine with_track_names(const StateMachine& m, const std::vector<std::string>& names);
RawMachine with_track_order(const StateMachine& m, const std::vector<std::size_t>& order);
RawMachine merge_tracks(const StateMachine& m, std::size_t keep, std::size_t drop);
RawMachine product_raw(const StateMachine& a, const StateMachine& b, Label (*fn)(Label, Label));
}  // namespace detail

/// Same machine with tracks renamed positionally.
template <std::derived_from<StateMachine> M>
M rename_tracks(const M& m, const std::vector<std::string>& names) {
  auto raw = detail::with_track_names(m, names);
  return M(std::move(raw.alphabet), std::move(raw.next), std::move(raw.labels));
}

/// Permutes tracks: track i of the result is track order[i] of the input.
template <std::derived_from<StateMachine> M>
M reorder_tracks(const M& m, const std::vector<std::size_t>& order) {
  auto raw = detail::with_track_order(m, order);
  return M(std::move(raw.alphabet), std::move(raw.next), std::move(raw.labels));
}

/// Sorts tracks alphabetically by name.
template <std::derived_from<StateMachine> M>
M sort_tracks(const M& m) {
  const auto& tracks = m.alphabet().tracks();
  std::vector<std::size_t> order(tracks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return tracks[x].name < tracks[y].name; });
  return reorder_tracks(m, order);
}

/// Restricts to inputs where tracks `keep` and `drop` carry the same digit,
/// then removes `drop`. Equal digits on equal-length words means equal values.
template <std::derived_from<StateMachine> M>
M merge_tracks(const M& m, std::size_t keep, std::size_t drop) {
  auto raw = detail::merge_tracks(m, keep, drop);
  return minimize(M(std::move(raw.alphabet), std::move(raw.next), std::move(raw.labels)));
}

}  // namespace negabase
