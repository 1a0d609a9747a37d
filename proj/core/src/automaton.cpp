#include "negabase/automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace negabase {

namespace {

constexpr std::size_t kMaxLetters = std::size_t{1} << 24;

struct StateSetHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (State s : v) {
      h ^= s;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

}  // namespace

// ---------------------------------------------------------------- alphabet

TrackAlphabet::TrackAlphabet(std::vector<Track> tracks) : tracks_(std::move(tracks)), stride_(tracks_.size()) {
  std::unordered_set<std::string> seen;
  for (const auto& t : tracks_) {
    if (!seen.insert(t.name).second) throw Error("duplicate track name '" + t.name + "'");
  }
  size_ = 1;
  for (std::size_t i = tracks_.size(); i-- > 0;) {
    stride_[i] = static_cast<Letter>(size_);
    size_ *= static_cast<std::size_t>(radix(i));
    if (size_ > kMaxLetters) throw Error("track alphabet too large");
  }
}

Letter TrackAlphabet::letter(std::span<const Digit> digits) const {
  if (digits.size() != tracks_.size()) throw ArityError("letter arity mismatch");
  Letter out = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= radix(i)) throw DigitError("digit out of range for track '" + tracks_[i].name + "'");
    out += digits[i] * stride_[i];
  }
  return out;
}

std::vector<Digit> TrackAlphabet::digits(Letter letter) const {
  std::vector<Digit> out(tracks_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = digit(letter, i);
  return out;
}

std::optional<std::size_t> TrackAlphabet::find(std::string_view name) const {
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (tracks_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> TrackAlphabet::names() const {
  std::vector<std::string> out;
  out.reserve(tracks_.size());
  for (const auto& t : tracks_) out.push_back(t.name);
  return out;
}

// ---------------------------------------------------------------- machines

StateMachine::StateMachine(TrackAlphabet alphabet, std::vector<State> next, std::vector<Label> labels)
    : alphabet_(std::move(alphabet)), next_(std::move(next)), labels_(std::move(labels)) {
  if (labels_.empty()) throw Error("automaton needs at least one state");
  if (next_.size() != labels_.size() * alphabet_.size()) throw Error("transition table has the wrong size");
  for (State t : next_) {
    if (t >= labels_.size()) throw Error("transition target out of range");
  }
}

State StateMachine::run(std::span<const Letter> word, State from) const {
  State s = from;
  for (Letter a : word) s = next(s, a);
  return s;
}

State StateMachine::run_tracks(std::span<const DigitWord> words) const {
  if (words.size() != alphabet_.arity()) throw ArityError("expected one word per track");
  const std::size_t length = words.empty() ? 0 : words[0].size();
  for (const auto& w : words) {
    if (w.size() != length) throw ArityError("track words must have equal length");
  }
  std::vector<Digit> tuple(words.size());
  State s = start();
  for (std::size_t pos = 0; pos < length; ++pos) {
    for (std::size_t t = 0; t < words.size(); ++t) tuple[t] = words[t][pos];
    s = next(s, alphabet_.letter(tuple));
  }
  return s;
}

State StateMachine::run_values(std::span<const Integer> values, std::size_t extra_padding) const {
  if (values.size() != alphabet_.arity()) throw ArityError("expected one value per track");
  std::vector<DigitWord> words;
  std::size_t length = 0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    words.push_back(encode(values[t], alphabet_.track(t).base));
    length = std::max(length, words.back().size());
  }
  length += extra_padding;
  for (auto& w : words) w.insert(w.begin(), length - w.size(), Digit{0});
  return run_tracks(words);
}

Automaton::Automaton(TrackAlphabet alphabet, std::vector<State> next, std::vector<Label> labels)
    : StateMachine(std::move(alphabet), std::move(next), std::move(labels)) {
  for (Label& l : labels_) l = (l != 0) ? 1 : 0;
}

Automaton Automaton::constant(bool value, TrackAlphabet alphabet) {
  const std::size_t letters = alphabet.size();
  return Automaton(std::move(alphabet), std::vector<State>(letters, 0), {value ? 1 : 0});
}

OutputAutomaton::OutputAutomaton(TrackAlphabet alphabet, std::vector<State> next, std::vector<Label> outputs)
    : StateMachine(std::move(alphabet), std::move(next), std::move(outputs)) {}

OutputAutomaton OutputAutomaton::constant(Label value, TrackAlphabet alphabet) {
  const std::size_t letters = alphabet.size();
  return OutputAutomaton(std::move(alphabet), std::vector<State>(letters, 0), {value});
}

std::vector<Label> OutputAutomaton::output_alphabet() const {
  std::vector<char> seen(num_states(), 0);
  std::vector<State> stack{start()};
  seen[start()] = 1;
  std::vector<Label> out;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    out.push_back(output(s));
    for (Letter a = 0; a < num_letters(); ++a) {
      State t = next(s, a);
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Label OutputAutomaton::evaluate(Integer n) const { return evaluate(std::span<const Integer>(&n, 1)); }

Label OutputAutomaton::evaluate(std::span<const Integer> values) const { return output(run_values(values)); }

// ---------------------------------------------------------------- minimization

namespace detail {

namespace {

// Canonical BFS renumbering from the start state over letters in index order;
// unreachable states are dropped.
RawMachine canonicalize(const TrackAlphabet& alphabet, std::size_t num_states, const std::vector<State>& next,
                        const std::vector<Label>& labels) {
  const std::size_t letters = alphabet.size();
  constexpr State kUnset = std::numeric_limits<State>::max();
  std::vector<State> id(num_states, kUnset);
  std::vector<State> order;
  order.reserve(num_states);
  id[0] = 0;
  order.push_back(0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const State s = order[head];
    for (Letter a = 0; a < letters; ++a) {
      const State t = next[static_cast<std::size_t>(s) * letters + a];
      if (id[t] == kUnset) {
        id[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  RawMachine out{alphabet, std::vector<State>(order.size() * letters), std::vector<Label>(order.size())};
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.labels[i] = labels[order[i]];
    for (Letter a = 0; a < letters; ++a) {
      out.next[i * letters + a] = id[next[static_cast<std::size_t>(order[i]) * letters + a]];
    }
  }
  return out;
}

// Hopcroft partition refinement. Returns the block index of every state.
std::vector<State> hopcroft_blocks(std::size_t n, std::size_t letters, const std::vector<State>& next,
                                   const std::vector<Label>& labels, std::size_t& num_blocks) {
  // Predecessor lists in CSR form, indexed by letter * n + target.
  std::vector<std::uint32_t> pred_start(letters * n + 1, 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t a = 0; a < letters; ++a) ++pred_start[a * n + next[s * letters + a] + 1];
  }
  std::partial_sum(pred_start.begin(), pred_start.end(), pred_start.begin());
  std::vector<State> preds(n * letters);
  {
    std::vector<std::uint32_t> fill(pred_start.begin(), pred_start.end() - 1);
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t a = 0; a < letters; ++a) preds[fill[a * n + next[s * letters + a]]++] = static_cast<State>(s);
    }
  }

  std::vector<State> elems(n);
  std::iota(elems.begin(), elems.end(), State{0});
  std::stable_sort(elems.begin(), elems.end(), [&](State x, State y) { return labels[x] < labels[y]; });
  std::vector<std::uint32_t> pos(n), block(n);
  std::vector<std::uint32_t> first, end, mid;
  for (std::size_t i = 0; i < n; ++i) {
    pos[elems[i]] = static_cast<std::uint32_t>(i);
    if (i == 0 || labels[elems[i]] != labels[elems[i - 1]]) {
      if (!first.empty()) end.back() = static_cast<std::uint32_t>(i);
      first.push_back(static_cast<std::uint32_t>(i));
      end.push_back(static_cast<std::uint32_t>(n));
      mid.push_back(static_cast<std::uint32_t>(i));
    }
    block[elems[i]] = static_cast<std::uint32_t>(first.size() - 1);
  }

  // A new block always enters the worklist for every letter: it is the smaller
  // half of the split, which is the Hopcroft rule whether or not its parent
  // was still pending.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> work;
  {
    std::size_t largest = 0;
    for (std::size_t b = 1; b < first.size(); ++b) {
      if (end[b] - first[b] > end[largest] - first[largest]) largest = b;
    }
    for (std::size_t b = 0; b < first.size(); ++b) {
      if (b == largest) continue;
      for (std::size_t a = 0; a < letters; ++a) {
        work.emplace_back(static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(a));
      }
    }
  }

  std::vector<State> splitter;
  std::vector<std::uint32_t> touched;
  while (!work.empty()) {
    const auto [sb, a] = work.back();
    work.pop_back();
    splitter.assign(elems.begin() + first[sb], elems.begin() + end[sb]);
    touched.clear();
    for (State s : splitter) {
      const std::size_t key = static_cast<std::size_t>(a) * n + s;
      for (std::uint32_t i = pred_start[key]; i < pred_start[key + 1]; ++i) {
        const State p = preds[i];
        const std::uint32_t b = block[p];
        if (pos[p] < mid[b]) continue;  // already marked
        if (mid[b] == first[b]) touched.push_back(b);
        const std::uint32_t target = mid[b]++;
        const State other = elems[target];
        std::swap(elems[pos[p]], elems[target]);
        pos[other] = pos[p];
        pos[p] = target;
      }
    }
    for (std::uint32_t b : touched) {
      if (mid[b] == end[b]) {
        mid[b] = first[b];
        continue;
      }
      const std::uint32_t nb = static_cast<std::uint32_t>(first.size());
      const std::uint32_t marked = mid[b] - first[b];
      const std::uint32_t unmarked = end[b] - mid[b];
      if (marked <= unmarked) {
        first.push_back(first[b]);
        end.push_back(mid[b]);
        first[b] = mid[b];
      } else {
        first.push_back(mid[b]);
        end.push_back(end[b]);
        end[b] = mid[b];
      }
      mid.push_back(first[nb]);
      mid[b] = first[b];
      for (std::uint32_t i = first[nb]; i < end[nb]; ++i) block[elems[i]] = nb;
      for (std::size_t c = 0; c < letters; ++c) work.emplace_back(nb, static_cast<std::uint32_t>(c));
    }
  }
  num_blocks = first.size();
  return {block.begin(), block.end()};
}

}  // namespace

RawMachine minimize_raw(const StateMachine& m) {
  // Drop unreachable states first so Hopcroft only sees the useful part.
  RawMachine reach = canonicalize(m.alphabet(), m.num_states(), m.transition_table(), m.labels());
  const std::size_t n = reach.labels.size();
  const std::size_t letters = reach.alphabet.size();
  std::size_t num_blocks = 0;
  const auto block = hopcroft_blocks(n, letters, reach.next, reach.labels, num_blocks);
  std::vector<State> q_next(num_blocks * letters);
  std::vector<Label> q_labels(num_blocks);
  std::vector<char> done(num_blocks, 0);
  for (std::size_t s = 0; s < n; ++s) {
    const State b = block[s];
    if (done[b]) continue;
    done[b] = 1;
    q_labels[b] = reach.labels[s];
    for (std::size_t a = 0; a < letters; ++a) q_next[b * letters + a] = block[reach.next[s * letters + a]];
  }
  // The start block must be block 0 for canonicalize; swap if needed.
  const State start_block = block[0];
  if (start_block != 0) {
    auto relabel = [&](State x) -> State { return x == 0 ? start_block : (x == start_block ? 0 : x); };
    for (auto& t : q_next) t = relabel(t);
    for (std::size_t a = 0; a < letters; ++a) std::swap(q_next[a], q_next[start_block * letters + a]);
    std::swap(q_labels[0], q_labels[start_block]);
  }
  return canonicalize(reach.alphabet, num_blocks, q_next, q_labels);
}

RawMachine with_track_names(const StateMachine& m, const std::vector<std::string>& names) {
  if (names.size() != m.alphabet().arity()) throw ArityError("track rename needs one name per track");
  std::vector<Track> tracks = m.alphabet().tracks();
  for (std::size_t i = 0; i < tracks.size(); ++i) tracks[i].name = names[i];
  return {TrackAlphabet(std::move(tracks)), m.transition_table(), m.labels()};
}

RawMachine with_track_order(const StateMachine& m, const std::vector<std::size_t>& order) {
  const auto& src = m.alphabet();
  if (order.size() != src.arity()) throw ArityError("track order needs one index per track");
  std::vector<Track> tracks;
  for (std::size_t i : order) tracks.push_back(src.track(i));
  TrackAlphabet dst(std::move(tracks));
  const std::size_t letters = dst.size();
  std::vector<Letter> to_src(letters);
  std::vector<Digit> digits(order.size());
  for (Letter a = 0; a < letters; ++a) {
    for (std::size_t i = 0; i < order.size(); ++i) digits[order[i]] = dst.digit(a, i);
    to_src[a] = src.letter(digits);
  }
  std::vector<State> next(m.num_states() * letters);
  for (State s = 0; s < m.num_states(); ++s) {
    for (Letter a = 0; a < letters; ++a) next[s * letters + a] = m.next(s, to_src[a]);
  }
  return {std::move(dst), std::move(next), m.labels()};
}

RawMachine merge_tracks(const StateMachine& m, std::size_t keep, std::size_t drop) {
  const auto& src = m.alphabet();
  if (keep == drop || keep >= src.arity() || drop >= src.arity()) throw ArityError("invalid tracks to merge");
  if (src.track(keep).base != src.track(drop).base) throw NumerationError("merged tracks use different numerations");
  std::vector<Track> tracks;
  std::vector<std::size_t> src_index;
  for (std::size_t i = 0; i < src.arity(); ++i) {
    if (i == drop) continue;
    tracks.push_back(src.track(i));
    src_index.push_back(i);
  }
  TrackAlphabet dst(std::move(tracks));
  const std::size_t letters = dst.size();
  std::vector<Letter> to_src(letters);
  std::vector<Digit> digits(src.arity());
  for (Letter a = 0; a < letters; ++a) {
    for (std::size_t i = 0; i < src_index.size(); ++i) digits[src_index[i]] = dst.digit(a, i);
    digits[drop] = digits[keep];
    to_src[a] = src.letter(digits);
  }
  std::vector<State> next(m.num_states() * letters);
  for (State s = 0; s < m.num_states(); ++s) {
    for (Letter a = 0; a < letters; ++a) next[s * letters + a] = m.next(s, to_src[a]);
  }
  return {std::move(dst), std::move(next), m.labels()};
}

RawMachine product_raw(const StateMachine& a, const StateMachine& b, Label (*fn)(Label, Label)) {
  // Sorted union of track names; shared names must agree on numeration.
  std::vector<Track> tracks = a.alphabet().tracks();
  for (const auto& t : b.alphabet().tracks()) {
    auto it = std::find_if(tracks.begin(), tracks.end(), [&](const Track& u) { return u.name == t.name; });
    if (it == tracks.end()) {
      tracks.push_back(t);
    } else if (it->base != t.base) {
      throw NumerationError("track '" + t.name + "' is read in both " + it->base.name() + " and " + t.base.name());
    }
  }
  std::sort(tracks.begin(), tracks.end(), [](const Track& x, const Track& y) { return x.name < y.name; });
  TrackAlphabet joint(std::move(tracks));
  const std::size_t letters = joint.size();

  auto letter_map = [&](const TrackAlphabet& part) {
    std::vector<std::size_t> where(part.arity());
    for (std::size_t i = 0; i < part.arity(); ++i) where[i] = *joint.find(part.track(i).name);
    std::vector<Letter> map(letters);
    std::vector<Digit> digits(part.arity());
    for (Letter l = 0; l < letters; ++l) {
      for (std::size_t i = 0; i < where.size(); ++i) digits[i] = joint.digit(l, where[i]);
      map[l] = part.letter(digits);
    }
    return map;
  };
  const auto map_a = letter_map(a.alphabet());
  const auto map_b = letter_map(b.alphabet());

  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> order{{0, 0}};
  ids.emplace(0, 0);
  std::vector<State> next;
  std::vector<Label> labels;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto [sa, sb] = order[head];
    labels.push_back(fn(a.label(sa), b.label(sb)));
    for (Letter l = 0; l < letters; ++l) {
      const State ta = a.next(sa, map_a[l]);
      const State tb = b.next(sb, map_b[l]);
      const std::uint64_t key = (static_cast<std::uint64_t>(ta) << 32) | tb;
      auto [it, inserted] = ids.try_emplace(key, static_cast<State>(order.size()));
      if (inserted) order.emplace_back(ta, tb);
      next.push_back(it->second);
    }
  }
  return {std::move(joint), std::move(next), std::move(labels)};
}

}  // namespace detail

Automaton minimize(const Automaton& a) {
  auto raw = detail::minimize_raw(a);
  return Automaton(std::move(raw.alphabet), std::move(raw.next), std::move(raw.labels));
}

OutputAutomaton minimize(const OutputAutomaton& a) {
  auto raw = detail::minimize_raw(a);
  return OutputAutomaton(std::move(raw.alphabet), std::move(raw.next), std::move(raw.labels));
}

// ---------------------------------------------------------------- boolean algebra

Automaton product(const Automaton& a, const Automaton& b, BoolCombiner combiner) {
  auto raw = detail::product_raw(a, b, [](Label x, Label y) -> Label { return (x != 0 ? 2 : 0) | (y != 0 ? 1 : 0); });
  for (Label& l : raw.labels) l = combiner((l & 2) != 0, (l & 1) != 0) ? 1 : 0;
  return minimize(Automaton(std::move(raw.alphabet), std::move(raw.next), std::move(raw.labels)));
}

Automaton complement(const Automaton& a) {
  std::vector<Label> labels(a.labels());
  for (Label& l : labels) l = l ? 0 : 1;
  return Automaton(a.alphabet(), a.transition_table(), std::move(labels));
}

// ---------------------------------------------------------------- projection

namespace {

// Subset construction for "erase one track (optional), then allow any number of
// extra leading all-zero letters". A pseudo-state `pad` stands for the start
// while only padding has been read; it re-enters itself on the zero letter and
// otherwise behaves like every state reachable from the start on padding.
Automaton padded_subset_construction(const Automaton& a, std::optional<std::size_t> erased) {
  const auto& src = a.alphabet();
  std::vector<Track> kept_tracks;
  std::vector<std::size_t> kept_index;
  for (std::size_t i = 0; i < src.arity(); ++i) {
    if (erased && i == *erased) continue;
    kept_tracks.push_back(src.track(i));
    kept_index.push_back(i);
  }
  TrackAlphabet kept(std::move(kept_tracks));
  const std::size_t letters = kept.size();
  const int erased_radix = erased ? src.radix(*erased) : 1;

  std::vector<std::vector<Letter>> expand(letters);
  std::vector<Digit> digits(src.arity());
  for (Letter k = 0; k < letters; ++k) {
    for (std::size_t i = 0; i < kept_index.size(); ++i) digits[kept_index[i]] = kept.digit(k, i);
    for (int d = 0; d < erased_radix; ++d) {
      if (erased) digits[*erased] = static_cast<Digit>(d);
      expand[k].push_back(src.letter(digits));
    }
  }

  const auto n = static_cast<State>(a.num_states());
  const State pad = n;
  std::vector<State> padding_states;
  {
    std::vector<char> seen(n, 0);
    padding_states.push_back(0);
    seen[0] = 1;
    for (std::size_t head = 0; head < padding_states.size(); ++head) {
      for (Letter f : expand[0]) {
        const State t = a.next(padding_states[head], f);
        if (!seen[t]) {
          seen[t] = 1;
          padding_states.push_back(t);
        }
      }
    }
  }
  const bool padding_accepts =
      std::any_of(padding_states.begin(), padding_states.end(), [&](State s) { return a.accepting(s); });

  std::unordered_map<std::vector<State>, State, StateSetHash> ids;
  std::vector<std::vector<State>> sets{{pad}};
  ids.emplace(sets[0], 0);
  std::vector<State> next;
  std::vector<Label> labels;
  std::vector<std::uint32_t> stamp(n + 1, 0);
  std::uint32_t epoch = 0;
  std::vector<State> target;
  for (std::size_t head = 0; head < sets.size(); ++head) {
    bool accepting = false;
    for (State s : sets[head]) accepting = accepting || (s == pad ? padding_accepts : a.accepting(s));
    labels.push_back(accepting ? 1 : 0);
    for (Letter k = 0; k < letters; ++k) {
      ++epoch;
      target.clear();
      auto add = [&](State t) {
        if (stamp[t] != epoch) {
          stamp[t] = epoch;
          target.push_back(t);
        }
      };
      for (State s : sets[head]) {
        if (s == pad) {
          if (k == 0) add(pad);
          for (State z : padding_states) {
            for (Letter f : expand[k]) add(a.next(z, f));
          }
        } else {
          for (Letter f : expand[k]) add(a.next(s, f));
        }
      }
      std::sort(target.begin(), target.end());
      auto [it, inserted] = ids.try_emplace(target, static_cast<State>(sets.size()));
      if (inserted) sets.push_back(target);
      next.push_back(it->second);
    }
  }
  return minimize(Automaton(std::move(kept), std::move(next), std::move(labels)));
}

}  // namespace

Automaton project(const Automaton& a, std::size_t track) {
  if (track >= a.alphabet().arity()) throw ArityError("no track " + std::to_string(track) + " to project");
  return padded_subset_construction(a, track);
}

Automaton project(const Automaton& a, std::string_view track_name) {
  auto index = a.alphabet().find(track_name);
  if (!index) throw ArityError("automaton has no track named '" + std::string(track_name) + "'");
  return project(a, *index);
}

Automaton zero_closure(const Automaton& a) { return padded_subset_construction(a, std::nullopt); }

bool decide(const Automaton& a) {
  if (a.alphabet().arity() != 0) {
    throw ArityError("cannot decide an automaton with " + std::to_string(a.alphabet().arity()) + " free tracks");
  }
  return a.accepting(Automaton::start());
}

bool equivalent(const Automaton& a, const Automaton& b) {
  if (!(a.alphabet() == b.alphabet())) return false;
  auto diff = product(a, b, combiners::exclusive);
  return diff.num_states() == 1 && !diff.accepting(0);
}

// ---------------------------------------------------------------- enumeration

std::vector<AcceptedWord> enumerate_accepted(const Automaton& a, std::size_t max_len, std::size_t limit) {
  const std::size_t n = a.num_states();
  const std::size_t letters = a.num_letters();
  // live[r][s]: some word of length exactly r leads from s to acceptance.
  std::vector<std::vector<char>> live(max_len + 1, std::vector<char>(n, 0));
  for (State s = 0; s < n; ++s) live[0][s] = a.accepting(s) ? 1 : 0;
  for (std::size_t r = 1; r <= max_len; ++r) {
    for (State s = 0; s < n; ++s) {
      for (Letter l = 0; l < letters && !live[r][s]; ++l) live[r][s] = live[r - 1][a.next(s, l)];
    }
  }

  const auto& alphabet = a.alphabet();
  std::vector<AcceptedWord> out;
  std::vector<Letter> word;
  auto emit = [&]() {
    AcceptedWord w;
    w.tracks.assign(alphabet.arity(), DigitWord(word.size()));
    for (std::size_t i = 0; i < word.size(); ++i) {
      for (std::size_t t = 0; t < alphabet.arity(); ++t) w.tracks[t][i] = alphabet.digit(word[i], t);
    }
    try {
      for (std::size_t t = 0; t < alphabet.arity(); ++t) w.values.push_back(decode(w.tracks[t], alphabet.track(t).base));
    } catch (const CanonicityError&) {
      return;
    }
    out.push_back(std::move(w));
  };
  for (std::size_t length = 0; length <= max_len && out.size() < limit; ++length) {
    if (!live[length][0]) continue;
    // Iterative DFS in lexicographic order.
    struct Frame {
      State state;
      Letter next_letter;
    };
    std::vector<Frame> stack{{0, 0}};
    word.clear();
    if (length == 0) {
      emit();
      continue;
    }
    while (!stack.empty() && out.size() < limit) {
      Frame& top = stack.back();
      const std::size_t depth = stack.size() - 1;
      if (top.next_letter >= letters) {
        stack.pop_back();
        if (!word.empty()) word.pop_back();
        continue;
      }
      const Letter l = top.next_letter++;
      const State t = a.next(top.state, l);
      if (!live[length - depth - 1][t]) continue;
      word.push_back(l);
      if (depth + 1 == length) {
        emit();
        word.pop_back();
      } else {
        stack.push_back({t, 0});
      }
    }
  }
  if (out.size() > limit) out.resize(limit);
  return out;
}

// ---------------------------------------------------------------- DFAO products

OutputAutomaton combine_outputs(const OutputAutomaton& a, const OutputAutomaton& b, Label (*fn)(Label, Label)) {
  auto raw = detail::product_raw(a, b, fn);
  return minimize(OutputAutomaton(std::move(raw.alphabet), std::move(raw.next), std::move(raw.labels)));
}

Automaton outputs_equal(const OutputAutomaton& a, const OutputAutomaton& b) {
  auto raw = detail::product_raw(a, b, [](Label x, Label y) -> Label { return x == y ? 1 : 0; });
  return minimize(Automaton(std::move(raw.alphabet), std::move(raw.next), std::move(raw.labels)));
}

}  // namespace negabase
