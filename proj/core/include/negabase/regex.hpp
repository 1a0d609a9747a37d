#pragma once

#include <string_view>

#include "negabase/automaton.hpp"
#include "negabase/nfa.hpp"

namespace negabase {

/// Thompson construction. Letters are digits (`0`-`9`, `a`-`z`) for a single
/// track or bracketed tuples `[0,1]`; operators are `|`, `*`, `+`, `?`,
/// parentheses and juxtaposition. Whitespace is ignored.
Nfa regex_to_nfa(std::string_view pattern, const TrackAlphabet& alphabet);

/// regex_to_nfa, determinized, closed under leading all-zero letters,
/// restricted to valid representations and minimized.
Automaton compile_regex(std::string_view pattern, const TrackAlphabet& alphabet);

}  // namespace negabase
