#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "negabase/automaton.hpp"

namespace negabase {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

// ---------------------------------------------------------------- terms

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct VarTerm {
  std::string name;
};
struct ConstTerm {
  Integer value;
};
/// Unary minus, written `_` in the concrete syntax.
struct NegTerm {
  TermPtr operand;
};
enum class ArithOp { Add, Sub, Mul, Div };
struct ArithTerm {
  ArithOp op;
  TermPtr lhs;
  TermPtr rhs;
};
/// `W[i][j]`: the output of word automaton W at the given indices.
struct AccessTerm {
  std::string word;
  std::vector<TermPtr> indices;
};
/// `@3`: an output letter of a word automaton.
struct OutputLiteral {
  Label value;
};

struct Term {
  std::variant<VarTerm, ConstTerm, NegTerm, ArithTerm, AccessTerm, OutputLiteral> node;
  SourcePos pos;
};

// ---------------------------------------------------------------- formulas

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class RelOp { Eq, Ne, Lt, Gt, Le, Ge };
enum class Connective { And, Or, Xor, Implies, Iff };
enum class Quantifier { Exists, ForAll };

struct BoolLiteral {
  bool value;
};
struct Relation {
  RelOp op;
  TermPtr lhs;
  TermPtr rhs;
};
/// `$name(args)`: a stored predicate applied positionally.
struct PredicateCall {
  std::string name;
  std::vector<TermPtr> args;
};
struct Negation {
  FormulaPtr operand;
};
struct BinaryFormula {
  Connective op;
  FormulaPtr lhs;
  FormulaPtr rhs;
};
struct Quantified {
  Quantifier quantifier;
  std::vector<std::string> vars;
  FormulaPtr body;
};

struct Formula {
  std::variant<BoolLiteral, Relation, PredicateCall, Negation, BinaryFormula, Quantified> node;
  SourcePos pos;
};

struct ParsedFormula {
  /// From a leading `?msd_k` / `?msd_neg_k` / `?msd_neg_fib` tag.
  std::optional<Base> numeration;
  FormulaPtr root;
};

/// Parses the Walnut formula language. Errors carry line/column relative to
/// `origin` (the position of the first character of `text`).
ParsedFormula parse_formula(std::string_view text, SourcePos origin = {});

std::string to_string(const Term& t);
std::string to_string(const Formula& f);

/// Free variables in sorted order.
std::set<std::string> free_variables(const Formula& f);

}  // namespace negabase
