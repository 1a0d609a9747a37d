#include "negabase/io.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace negabase {

namespace {

// Base names as written in headers; `{0,1,2}` is accepted on input as msd_3.
Base parse_base_token(std::string_view token, std::size_t line) {
  if (token.starts_with('{') && token.ends_with('}')) {
    int count = 0;
    std::string_view body = token.substr(1, token.size() - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const std::size_t comma = std::min(body.find(',', pos), body.size());
      const std::string expected = std::to_string(count);
      if (body.substr(pos, comma - pos) != expected) {
        throw ParseError("alphabet sets must be {0,1,...,k-1}", line, 1);
      }
      ++count;
      pos = comma + 1;
    }
    return Base::positive(count);
  }
  try {
    return Base::parse(token);
  } catch (const NumerationError& e) {
    throw ParseError(e.what(), line, 1);
  }
}

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

long parse_number(const std::string& s, std::size_t line) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("expected a number, got '" + s + "'", line, 1);
  return v;
}

template <class M>
M read_machine(std::string_view text, bool word) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t end = std::min(text.find('\n', pos), text.size());
      std::string line(text.substr(pos, end - pos));
      ++number;
      pos = end + 1;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      lines.emplace_back(number, std::move(line));
    }
  }
  if (lines.empty()) throw ParseError("empty automaton file", 1, 1);

  const auto header = split_words(lines[0].second);
  std::size_t idx = 1;
  if (!word && header.size() == 1 && (header[0] == "true" || header[0] == "false")) {
    if (lines.size() > 1) throw ParseError("unexpected content after constant automaton", lines[1].first, 1);
    return M(TrackAlphabet{}, {0}, {header[0] == "true" ? 1 : 0});
  }
  std::vector<Track> tracks;
  if (!(header.size() == 1 && header[0] == "const")) {
    for (const auto& token : header) tracks.push_back({"", parse_base_token(token, lines[0].first)});
  }
  // Optional variable names.
  if (idx < lines.size()) {
    const auto words = split_words(lines[idx].second);
    if (!words.empty() && words[0] == "vars") {
      if (words.size() - 1 != tracks.size()) {
        throw ParseError("vars line names " + std::to_string(words.size() - 1) + " tracks, header has " +
                             std::to_string(tracks.size()),
                         lines[idx].first, 1);
      }
      for (std::size_t t = 0; t < tracks.size(); ++t) tracks[t].name = words[t + 1];
      ++idx;
    }
  }
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    if (tracks[t].name.empty()) tracks[t].name = "x" + std::to_string(t);
  }
  TrackAlphabet alphabet(std::move(tracks));

  std::map<long, Label> labels;
  std::map<std::pair<long, Letter>, std::pair<long, std::size_t>> edges;  // target, line
  std::optional<long> current;
  for (; idx < lines.size(); ++idx) {
    const auto& [number, line] = lines[idx];
    if (auto arrow = line.find("->"); arrow != std::string::npos) {
      if (!current) throw ParseError("transition before any state", number, 1);
      const auto lhs = split_words(line.substr(0, arrow));
      const auto rhs = split_words(line.substr(arrow + 2));
      if (rhs.size() != 1) throw ParseError("expected one target state", number, arrow + 3);
      if (lhs.size() != alphabet.arity()) {
        throw ParseError("expected " + std::to_string(alphabet.arity()) + " digits", number, 1);
      }
      std::vector<Digit> digits;
      for (const auto& d : lhs) {
        const long v = parse_number(d, number);
        if (v < 0 || v >= alphabet.radix(digits.size())) throw ParseError("digit out of range", number, 1);
        digits.push_back(static_cast<Digit>(v));
      }
      const Letter letter = alphabet.letter(digits);
      if (!edges.emplace(std::pair{*current, letter}, std::pair{parse_number(rhs[0], number), number}).second) {
        throw ParseError("nondeterministic transition", number, 1);
      }
    } else {
      const auto words = split_words(line);
      if (words.size() != 2) throw ParseError("expected 'state label'", number, 1);
      current = parse_number(words[0], number);
      const long label = parse_number(words[1], number);
      if (!labels.emplace(*current, static_cast<Label>(label)).second) {
        throw ParseError("state " + words[0] + " declared twice", number, 1);
      }
    }
  }
  if (labels.empty()) throw ParseError("automaton has no states", lines.back().first, 1);
  if (labels.begin()->first != 0) throw ParseError("state 0 (the start state) is missing", lines[0].first, 1);

  // Renumber declared states densely, keeping order; add a sink if needed.
  std::map<long, State> id;
  for (const auto& [s, l] : labels) id.emplace(s, static_cast<State>(id.size()));
  const State sink = static_cast<State>(id.size());
  bool needs_sink = false;
  std::vector<State> next(id.size() * alphabet.size(), sink);
  for (const auto& [key, edge] : edges) {
    const auto& [target, line] = edge;
    auto it = id.find(target);
    if (it == id.end()) throw ParseError("transition to undeclared state " + std::to_string(target), line, 1);
    next[id.at(key.first) * alphabet.size() + key.second] = it->second;
  }
  for (State t : next) needs_sink = needs_sink || t == sink;
  std::vector<Label> out;
  for (const auto& [s, l] : labels) out.push_back(l);
  if (needs_sink) {
    out.push_back(0);
    next.insert(next.end(), alphabet.size(), sink);
  }
  return M(std::move(alphabet), std::move(next), std::move(out));
}

std::string dot_machine(const StateMachine& m, std::string_view name, bool word) {
  const std::size_t letters = m.num_letters();
  auto is_sink = [&](State s) {
    if (word || m.label(s) != 0) return false;
    for (Letter a = 0; a < letters; ++a) {
      if (m.next(s, a) != s) return false;
    }
    return true;
  };
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir = LR;\n";
  out << "  node [shape = circle];\n";
  out << "  __start [shape = point, style = invis];\n";
  for (State s = 0; s < m.num_states(); ++s) {
    if (is_sink(s) && s != 0) continue;
    out << "  " << s << " [";
    if (word) {
      out << "label = \"" << s << "/" << m.label(s) << "\"";
    } else {
      out << "label = \"" << s << "\"";
      if (m.label(s)) out << ", shape = doublecircle";
    }
    out << "];\n";
  }
  out << "  __start -> 0;\n";
  for (State s = 0; s < m.num_states(); ++s) {
    if (is_sink(s) && s != 0) continue;
    std::map<State, std::string> grouped;
    for (Letter a = 0; a < letters; ++a) {
      const State t = m.next(s, a);
      if (is_sink(t) && t != 0) continue;
      auto& label = grouped[t];
      if (!label.empty()) label += ", ";
      label += format_letter(m.alphabet(), a);
    }
    for (const auto& [t, label] : grouped) out << "  " << s << " -> " << t << " [label = \"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string format_letter(const TrackAlphabet& alphabet, Letter letter) {
  if (alphabet.arity() == 1) return std::to_string(alphabet.digit(letter, 0));
  std::string out = "[";
  for (std::size_t t = 0; t < alphabet.arity(); ++t) {
    if (t) out += ",";
    out += std::to_string(alphabet.digit(letter, t));
  }
  return out + "]";
}

namespace {

std::string write_machine(const StateMachine& m, bool word) {
  const auto& alpha = m.alphabet();
  std::ostringstream out;
  if (alpha.arity() == 0 && !word && m.num_states() == 1) {
    out << (m.label(0) ? "true" : "false") << "\n";
    return out.str();
  }
  if (alpha.arity() == 0) {
    out << "const\n";
  } else {
    for (std::size_t t = 0; t < alpha.arity(); ++t) out << (t ? " " : "") << alpha.track(t).base.name();
    out << "\nvars";
    for (const auto& t : alpha.tracks()) out << " " << t.name;
    out << "\n";
  }
  for (State s = 0; s < m.num_states(); ++s) {
    out << "\n" << s << " " << m.label(s) << "\n";
    for (Letter a = 0; a < m.num_letters(); ++a) {
      for (std::size_t t = 0; t < alpha.arity(); ++t) out << (t ? " " : "") << static_cast<int>(alpha.digit(a, t));
      out << " -> " << m.next(s, a) << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string write_automaton(const Automaton& a) { return write_machine(a, false); }

std::string write_automaton(const OutputAutomaton& d) { return write_machine(d, true); }

Automaton read_automaton(std::string_view text) { return read_machine<Automaton>(text, false); }

OutputAutomaton read_word_automaton(std::string_view text) { return read_machine<OutputAutomaton>(text, true); }

std::string to_dot(const Automaton& a, std::string_view name) { return dot_machine(a, name, false); }

std::string to_dot(const OutputAutomaton& d, std::string_view name) { return dot_machine(d, name, true); }

}  // namespace negabase
