#pragma once

#include <map>
#include <string>
#include <string_view>

#include "negabase/automaton.hpp"
#include "negabase/formula.hpp"

namespace negabase {

/// Named automata visible to a formula: `$name(...)` predicates and `W[...]`
/// word automata. Returned pointers must stay valid for the compilation.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual const Automaton* find_predicate(std::string_view name) const = 0;
  virtual const OutputAutomaton* find_word(std::string_view name) const = 0;
};

/// Environment with nothing in it.
class EmptyEnvironment final : public Environment {
 public:
  const Automaton* find_predicate(std::string_view) const override { return nullptr; }
  const OutputAutomaton* find_word(std::string_view) const override { return nullptr; }
};

/// Environment backed by two maps; handy for tests and one-off compilations.
class MapEnvironment final : public Environment {
 public:
  void add_predicate(const std::string& name, Automaton a) { predicates_.insert_or_assign(name, std::move(a)); }
  void add_word(const std::string& name, OutputAutomaton d) { words_.insert_or_assign(name, std::move(d)); }

  const Automaton* find_predicate(std::string_view name) const override {
    auto it = predicates_.find(name);
    return it == predicates_.end() ? nullptr : &it->second;
  }
  const OutputAutomaton* find_word(std::string_view name) const override {
    auto it = words_.find(name);
    return it == words_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, Automaton, std::less<>> predicates_;
  std::map<std::string, OutputAutomaton, std::less<>> words_;
};

/// Compiles a formula to an automaton over its free variables, one track per
/// variable in alphabetical order, all in the formula's numeration (the tag if
/// present, otherwise `default_base`). Variables range over Z in negative
/// bases and over N in positive ones.
Automaton compile(const ParsedFormula& formula, const Environment& env, const Base& default_base = Base::positive(2));
Automaton compile(std::string_view text, const Environment& env, const Base& default_base = Base::positive(2));

/// Numeration a formula is compiled in.
Base formula_base(const ParsedFormula& formula, const Base& default_base);

}  // namespace negabase
