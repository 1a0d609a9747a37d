#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negabase/automaton.hpp"
#include "negabase/builders.hpp"

namespace negabase {

/// Letter -> word map over integer letters.
struct Morphism {
  std::map<Label, std::vector<Label>> images;

  /// Common image length, if every image has the same length.
  std::optional<std::size_t> uniform_length() const;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// Parses `0 -> 01 1 -> 10`: letters are digits or bracketed integers
/// (`[12]`, `[-1]`); rules are separated by whitespace.
Morphism parse_morphism(std::string_view text);
std::string format_morphism(const Morphism& m);

/// DFAO whose output is the value paired with the first accepting predicate,
/// 0 if none accepts. All predicates must have the same tracks.
OutputAutomaton combine_predicates(const std::vector<std::pair<Automaton, Label>>& parts);

/// Base -k DFAO A to base k DFAO D with D[x1..xm] = A[s1*x1, ..., sm*xm].
OutputAutomaton split_word(const OutputAutomaton& a, const std::vector<builders::Sign>& signs);

/// Base k DFAO B to base -k DFAO R with R[y] = B[s*y] when every s_i*y_i >= 0
/// and 0 otherwise.
OutputAutomaton rsplit_word(const OutputAutomaton& b, const std::vector<builders::Sign>& signs);

/// Pointwise first nonzero output; tracks are aligned by name and appear in
/// order of first occurrence.
OutputAutomaton join_words(const std::vector<OutputAutomaton>& words);

/// W[n] = xi(V[q])[r] where n = u*q + r, 0 <= r < u (floor division, so the
/// negative side of a two-sided word is covered too). xi must be u-uniform.
OutputAutomaton apply_morphism(const Morphism& xi, const OutputAutomaton& v);

}  // namespace negabase
