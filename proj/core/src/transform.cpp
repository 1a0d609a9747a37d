#include "negabase/transform.hpp"

#include <cctype>
#include <charconv>

#include "negabase/compiler.hpp"

namespace negabase {

namespace {

Label first_nonzero(Label a, Label b) { return a != 0 ? a : b; }

OutputAutomaton indicator(const Automaton& a, Label value) {
  std::vector<Label> labels(a.num_states());
  for (State s = 0; s < a.num_states(); ++s) labels[s] = a.accepting(s) ? value : 0;
  return OutputAutomaton(a.alphabet(), a.transition_table(), std::move(labels));
}

OutputAutomaton relabel(const OutputAutomaton& d, const std::vector<Label>& map) {
  std::vector<Label> labels(d.labels());
  for (Label& l : labels) l = map.at(static_cast<std::size_t>(l));
  return minimize(OutputAutomaton(d.alphabet(), d.transition_table(), std::move(labels)));
}

int common_radix(const OutputAutomaton& d, BaseKind kind, const char* what) {
  const auto& tracks = d.alphabet().tracks();
  if (tracks.empty()) throw NumerationError(std::string(what) + " needs at least one input");
  const int k = tracks[0].base.radix();
  for (const auto& t : tracks) {
    if (t.base.kind() != kind || t.base.radix() != k) {
      throw NumerationError(std::string(what) + " needs every input in base " +
                            (kind == BaseKind::Negative ? "-" : "") + std::to_string(k) + ", found " + t.base.name());
    }
  }
  return k;
}

// Shared part of split and rsplit: for each output a != 0, the set of `from`
// tuples whose converted partner tuple reads a, projected onto `from`.
OutputAutomaton convert(const OutputAutomaton& src, const std::vector<builders::Sign>& signs, bool src_negative) {
  const int k = common_radix(src, src_negative ? BaseKind::Negative : BaseKind::Positive,
                             src_negative ? "split" : "rsplit");
  const std::size_t m = src.alphabet().arity();
  if (signs.size() != m) {
    throw ArityError("expected " + std::to_string(m) + " signs, got " + std::to_string(signs.size()));
  }
  std::vector<std::string> kept = src.alphabet().names();
  std::vector<std::string> hidden;
  for (std::size_t i = 0; i < m; ++i) hidden.push_back("%" + std::to_string(i));
  const OutputAutomaton renamed = rename_tracks(src, hidden);

  std::optional<Automaton> link;
  for (std::size_t i = 0; i < m; ++i) {
    // Converter tracks: base k first, base -k second.
    Automaton c = src_negative ? builders::converter(k, signs[i], kept[i], hidden[i])
                               : builders::converter(k, signs[i], hidden[i], kept[i]);
    link = link ? product(*link, c, combiners::conj) : c;
  }

  std::vector<std::pair<Automaton, Label>> parts;
  for (Label a : renamed.output_alphabet()) {
    if (a == 0) continue;
    Automaton p = product(accept_where(renamed, [a](Label o) { return o == a; }), *link, combiners::conj);
    for (const auto& h : hidden) p = project(p, h);
    parts.emplace_back(reorder_tracks(p, [&] {
                         std::vector<std::size_t> order;
                         for (const auto& name : kept) order.push_back(*p.alphabet().find(name));
                         return order;
                       }()),
                       a);
  }
  const Base target = src_negative ? Base::positive(k) : Base::negative(k);
  if (parts.empty()) {
    std::vector<Track> tracks;
    for (const auto& name : kept) tracks.push_back({name, target});
    return OutputAutomaton::constant(0, TrackAlphabet(std::move(tracks)));
  }
  return combine_predicates(parts);
}

}  // namespace

std::optional<std::size_t> Morphism::uniform_length() const {
  if (images.empty()) return std::nullopt;
  const std::size_t u = images.begin()->second.size();
  for (const auto& [a, w] : images) {
    if (w.size() != u) return std::nullopt;
  }
  return u;
}

Morphism parse_morphism(std::string_view text) {
  Morphism out;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void { throw ParseError("morphism: " + msg, 1, pos + 1); };
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto letter = [&]() -> Label {
    if (pos >= text.size()) fail("expected a letter");
    if (text[pos] == '[') {
      const std::size_t close = text.find(']', pos);
      if (close == std::string_view::npos) fail("missing ']'");
      Label v = 0;
      const auto body = text.substr(pos + 1, close - pos - 1);
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc{} || ptr != body.data() + body.size()) fail("bad bracketed letter");
      pos = close + 1;
      return v;
    }
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) fail(std::string("unexpected '") + text[pos] + "'");
    return text[pos++] - '0';
  };
  skip_space();
  while (pos < text.size()) {
    const Label from = letter();
    skip_space();
    if (text.substr(pos, 2) != "->") fail("expected '->'");
    pos += 2;
    skip_space();
    std::vector<Label> image;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) image.push_back(letter());
    if (image.empty()) fail("empty image");
    if (!out.images.emplace(from, std::move(image)).second) fail("letter " + std::to_string(from) + " mapped twice");
    skip_space();
  }
  if (out.images.empty()) fail("no rules");
  return out;
}

std::string format_morphism(const Morphism& m) {
  auto letter = [](Label v) { return v >= 0 && v <= 9 ? std::to_string(v) : "[" + std::to_string(v) + "]"; };
  std::string out;
  for (const auto& [a, w] : m.images) {
    out += letter(a) + " -> ";
    for (Label b : w) out += letter(b);
    out += "\n";
  }
  return out;
}

OutputAutomaton combine_predicates(const std::vector<std::pair<Automaton, Label>>& parts) {
  if (parts.empty()) throw ArityError("combine needs at least one predicate");
  const auto& tracks = parts[0].first.alphabet();
  OutputAutomaton index = indicator(parts[0].first, 1);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (!(parts[i].first.alphabet() == tracks)) throw ArityError("combined predicates must have the same tracks");
    index = combine_outputs(index, indicator(parts[i].first, static_cast<Label>(i + 1)), first_nonzero);
  }
  std::vector<Label> value{0};
  for (const auto& p : parts) value.push_back(p.second);
  return relabel(index, value);
}

OutputAutomaton split_word(const OutputAutomaton& a, const std::vector<builders::Sign>& signs) {
  return convert(a, signs, true);
}

OutputAutomaton rsplit_word(const OutputAutomaton& b, const std::vector<builders::Sign>& signs) {
  return convert(b, signs, false);
}

OutputAutomaton join_words(const std::vector<OutputAutomaton>& words) {
  if (words.empty()) throw ArityError("join needs at least one input");
  OutputAutomaton out = words[0];
  std::vector<std::string> order;
  auto note = [&](const OutputAutomaton& w) {
    for (const auto& n : w.alphabet().names()) {
      if (std::find(order.begin(), order.end(), n) == order.end()) order.push_back(n);
    }
  };
  note(words[0]);
  for (std::size_t i = 1; i < words.size(); ++i) {
    out = combine_outputs(out, words[i], first_nonzero);
    note(words[i]);
  }
  std::vector<std::size_t> perm;
  for (const auto& n : order) perm.push_back(*out.alphabet().find(n));
  return reorder_tracks(out, perm);
}

OutputAutomaton apply_morphism(const Morphism& xi, const OutputAutomaton& v) {
  const auto u = xi.uniform_length();
  if (!u) throw CompileError("image needs a uniform morphism");
  if (v.alphabet().arity() != 1) throw ArityError("image needs a one-input word automaton");
  for (Label a : v.output_alphabet()) {
    if (!xi.images.count(a)) throw CompileError("output " + std::to_string(a) + " is not in the morphism's domain");
  }
  const Track& track = v.alphabet().track(0);
  const OutputAutomaton vq = rename_tracks(v, {"q"});
  std::map<Label, std::optional<Automaton>> by_letter;
  EmptyEnvironment env;
  for (std::size_t r = 0; r < *u; ++r) {
    // n = u*q + r, then group the source letters by the letter they put at r.
    const Automaton position = compile("n = " + std::to_string(*u) + "*q + " + std::to_string(r), env, track.base);
    std::map<Label, std::vector<Label>> sources;
    for (const auto& [a, w] : xi.images) sources[w[r]].push_back(a);
    for (const auto& [c, from] : sources) {
      Automaton piece = product(
          position,
          accept_where(vq, [&from](Label o) { return std::find(from.begin(), from.end(), o) != from.end(); }),
          combiners::conj);
      auto& slot = by_letter[c];
      slot = slot ? product(*slot, piece, combiners::disj) : piece;
    }
  }
  std::vector<std::pair<Automaton, Label>> parts;
  for (auto& [c, a] : by_letter) parts.emplace_back(rename_tracks(project(*a, "q"), {track.name}), c);
  return combine_predicates(parts);
}

}  // namespace negabase
