#pragma once

#include <string>
#include <string_view>

#include "negabase/automaton.hpp"

namespace negabase {

/// Text form of an automaton (see docs/file-format.md). Deterministic: equal
/// machines give byte-identical text.
std::string write_automaton(const Automaton& a);
std::string write_automaton(const OutputAutomaton& d);

/// Parses the text form. Missing transitions go to an implicit rejecting
/// (output 0) sink. Errors are ParseErrors with line numbers.
Automaton read_automaton(std::string_view text);
OutputAutomaton read_word_automaton(std::string_view text);

/// Graphviz rendering. For acceptors the rejecting sink (if any) is hidden.
std::string to_dot(const Automaton& a, std::string_view name);
std::string to_dot(const OutputAutomaton& d, std::string_view name);

/// Renders one letter: "1" for a single track, "[0,1]" for several, "[]" for none.
std::string format_letter(const TrackAlphabet& alphabet, Letter letter);

}  // namespace negabase
