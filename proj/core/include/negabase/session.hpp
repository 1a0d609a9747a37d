#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negabase/compiler.hpp"
#include "negabase/transform.hpp"

namespace negabase {

/// One token of a command statement.
struct ScriptToken {
  enum class Kind { Word, String, Bracket };
  Kind kind;
  std::string text;  // strings unquoted, brackets without [ ]
  SourcePos pos;     // for strings: position of the first character inside the quotes
};

struct Statement {
  std::vector<ScriptToken> tokens;
  SourcePos pos;
};

/// Splits a script into statements ending in ':' or ';' (a final unterminated
/// statement is accepted). '#' starts a comment outside strings.
std::vector<Statement> parse_script(std::string_view text);

struct EvalResult {
  std::string name;
  Automaton automaton;
  /// Set when the formula has no free variables.
  std::optional<bool> truth;
};

/// The command interpreter: named predicates, word automata and morphisms,
/// optionally persisted to a directory (automata/, words/, morphisms/).
/// Builtin words: T (Thue-Morse, msd_2) and G (parity of 1s, msd_neg_2).
class Session final : public Environment {
 public:
  struct Options {
    std::optional<std::filesystem::path> directory;
    Base default_base = Base::positive(2);
    bool write_dot = true;
  };

  Session();
  explicit Session(Options options);

  Automaton def(const std::string& name, std::string_view formula, SourcePos origin = {});
  EvalResult eval(const std::string& name, std::string_view formula, SourcePos origin = {});
  Automaton reg(const std::string& name, const std::vector<Base>& tracks, std::string_view pattern);
  /// (predicate, value) pairs; a missing value means the 1-based position.
  OutputAutomaton combine(const std::string& name, const std::vector<std::pair<std::string, std::optional<Label>>>& parts);
  void add_morphism(const std::string& name, Morphism m);
  OutputAutomaton image(const std::string& name, const std::string& morphism_name, const std::string& word_name);
  OutputAutomaton split(const std::string& name, const std::string& word_name, const std::vector<builders::Sign>& signs);
  OutputAutomaton rsplit(const std::string& name, const std::vector<builders::Sign>& signs, const std::string& word_name);
  /// (word, variables) pairs.
  OutputAutomaton join(const std::string& name, const std::vector<std::pair<std::string, std::vector<std::string>>>& parts);

  void store_predicate(const std::string& name, Automaton a);
  void store_word(const std::string& name, OutputAutomaton d);

  const Automaton& predicate(std::string_view name) const;
  const OutputAutomaton& word(std::string_view name) const;
  const Morphism& morphism(std::string_view name) const;

  const Automaton* find_predicate(std::string_view name) const override;
  const OutputAutomaton* find_word(std::string_view name) const override;

  /// Runs every statement, writing one line of output per command. Errors
  /// are rethrown as SessionError prefixed with `source:line:column`.
  void run(std::string_view script, std::string_view source, std::ostream& out);
  void execute(const Statement& statement, std::ostream& out);

  const std::optional<std::filesystem::path>& directory() const noexcept { return options_.directory; }
  std::optional<std::filesystem::path> predicate_path(std::string_view name) const;
  std::optional<std::filesystem::path> word_path(std::string_view name) const;

 private:
  void persist(const std::filesystem::path& file, const std::string& text, const std::string& dot) const;

  Options options_;
  mutable std::map<std::string, Automaton, std::less<>> predicates_;
  mutable std::map<std::string, OutputAutomaton, std::less<>> words_;
  mutable std::map<std::string, Morphism, std::less<>> morphisms_;
};

}  // namespace negabase
