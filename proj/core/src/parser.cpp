#include <cctype>
#include <charconv>
#include <functional>

#include "negabase/formula.hpp"

namespace negabase {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  Dollar,  // $name
  Output,  // @value
  Tag,     // ?msd_...
  Quant,   // E or A introducing a variable list
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Not,
  And,
  Or,
  Xor,
  Implies,
  Iff,
  Eq,
  Ne,
  Lt,
  Gt,
  Le,
  Ge,
  Plus,
  Minus,
  Star,
  Slash,
  Underscore,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::vector<Token> lex(std::string_view src, SourcePos origin) {
  std::vector<Token> out;
  std::size_t i = 0;
  SourcePos pos = origin;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    }
  };
  auto error = [&](const std::string& msg) { throw ParseError(msg, pos.line, pos.column); };
  auto is_ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourcePos start = pos;
    auto push = [&](Tok kind, std::size_t len) {
      out.push_back({kind, std::string(src.substr(i, len)), start});
      advance(len);
    };
    auto rest = src.substr(i);
    if (rest.starts_with("<=>")) push(Tok::Iff, 3);
    else if (rest.starts_with("=>")) push(Tok::Implies, 2);
    else if (rest.starts_with("!=")) push(Tok::Ne, 2);
    else if (rest.starts_with("<=")) push(Tok::Le, 2);
    else if (rest.starts_with(">=")) push(Tok::Ge, 2);
    else if (c == '<') push(Tok::Lt, 1);
    else if (c == '>') push(Tok::Gt, 1);
    else if (c == '=') push(Tok::Eq, 1);
    else if (c == '(') push(Tok::LParen, 1);
    else if (c == ')') push(Tok::RParen, 1);
    else if (c == '[') push(Tok::LBracket, 1);
    else if (c == ']') push(Tok::RBracket, 1);
    else if (c == ',') push(Tok::Comma, 1);
    else if (c == '~') push(Tok::Not, 1);
    else if (c == '&') push(Tok::And, 1);
    else if (c == '|') push(Tok::Or, 1);
    else if (c == '^') push(Tok::Xor, 1);
    else if (c == '+') push(Tok::Plus, 1);
    else if (c == '-') push(Tok::Minus, 1);
    else if (c == '*') push(Tok::Star, 1);
    else if (c == '/') push(Tok::Slash, 1);
    else if (c == '_') push(Tok::Underscore, 1);
    else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
      push(Tok::Number, n);
    } else if (c == '@') {
      std::size_t n = 1;
      if (n < rest.size() && (rest[n] == '-' || rest[n] == '_')) ++n;
      const std::size_t digits_start = n;
      while (n < rest.size() && std::isdigit(static_cast<unsigned char>(rest[n]))) ++n;
      if (n == digits_start) error("expected an output value after '@'");
      push(Tok::Output, n);
    } else if (c == '$' || c == '?') {
      std::size_t n = 1;
      while (n < rest.size() && is_ident_char(rest[n])) ++n;
      if (n == 1) error(std::string("expected a name after '") + c + "'");
      push(c == '$' ? Tok::Dollar : Tok::Tag, n);
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      // `E`/`A` directly followed (after optional spaces) by a lowercase
      // variable is a quantifier; otherwise an identifier such as `AS[n]`.
      if ((c == 'E' || c == 'A')) {
        std::size_t n = 1;
        while (n < rest.size() && (rest[n] == ' ' || rest[n] == '\t')) ++n;
        if (n < rest.size() && std::islower(static_cast<unsigned char>(rest[n])) &&
            (n > 1 || rest.size() == 1 || !is_ident_char(rest[1]) || std::islower(static_cast<unsigned char>(rest[1])))) {
          push(Tok::Quant, 1);
          continue;
        }
      }
      std::size_t n = 1;
      while (n < rest.size() && is_ident_char(rest[n])) ++n;
      push(Tok::Ident, n);
    } else {
      error(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ParsedFormula parse() {
    ParsedFormula out;
    if (peek().kind == Tok::Tag) {
      const Token tag = take();
      try {
        out.numeration = Base::parse(std::string_view(tag.text).substr(1));
      } catch (const NumerationError& e) {
        throw ParseError(e.what(), tag.pos.line, tag.pos.column);
      }
    }
    if (peek().kind == Tok::End) fail("empty formula");
    out.root = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return out;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(idx_ + ahead, toks_.size() - 1)]; }
  Token take() { return toks_[std::min(idx_++, toks_.size() - 1)]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++idx_;
    return true;
  }
  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return take();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " near " + near, t.pos.line, t.pos.column);
  }

  static FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
  static TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

  FormulaPtr formula() { return iff(); }

  FormulaPtr iff() {
    auto lhs = implies();
    while (peek().kind == Tok::Iff) {
      const SourcePos pos = take().pos;
      lhs = make({BinaryFormula{Connective::Iff, lhs, implies()}, pos});
    }
    return lhs;
  }

  FormulaPtr implies() {
    auto lhs = exclusive();
    if (peek().kind == Tok::Implies) {
      const SourcePos pos = take().pos;
      return make({BinaryFormula{Connective::Implies, lhs, implies()}, pos});
    }
    return lhs;
  }

  FormulaPtr exclusive() {
    auto lhs = disjunction();
    while (peek().kind == Tok::Xor) {
      const SourcePos pos = take().pos;
      lhs = make({BinaryFormula{Connective::Xor, lhs, disjunction()}, pos});
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    auto lhs = conjunction();
    while (peek().kind == Tok::Or) {
      const SourcePos pos = take().pos;
      lhs = make({BinaryFormula{Connective::Or, lhs, conjunction()}, pos});
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    auto lhs = unary();
    while (peek().kind == Tok::And) {
      const SourcePos pos = take().pos;
      lhs = make({BinaryFormula{Connective::And, lhs, unary()}, pos});
    }
    return lhs;
  }

  // A quantifier's scope extends as far right as possible.
  FormulaPtr unary() {
    const SourcePos pos = peek().pos;
    if (accept(Tok::Not)) return make({Negation{unary()}, pos});
    if (peek().kind == Tok::Quant) {
      const Quantifier q = take().text == "E" ? Quantifier::Exists : Quantifier::ForAll;
      std::vector<std::string> vars{expect(Tok::Ident, "a variable after the quantifier").text};
      while (accept(Tok::Comma)) vars.push_back(expect(Tok::Ident, "a variable").text);
      return make({Quantified{q, std::move(vars), formula()}, pos});
    }
    return atom();
  }

  FormulaPtr atom() {
    const Token& t = peek();
    const SourcePos pos = t.pos;
    if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false") && !is_relation_start(1)) {
      const bool value = take().text == "true";
      return make({BoolLiteral{value}, pos});
    }
    if (t.kind == Tok::Dollar) {
      std::string name = take().text.substr(1);
      expect(Tok::LParen, "'(' after predicate name");
      std::vector<TermPtr> args;
      if (peek().kind != Tok::RParen) {
        args.push_back(term());
        while (accept(Tok::Comma)) args.push_back(term());
      }
      expect(Tok::RParen, "')' after predicate arguments");
      return make({PredicateCall{std::move(name), std::move(args)}, pos});
    }
    if (t.kind == Tok::LParen) {
      // Either a parenthesized term starting a relation or a parenthesized formula.
      const std::size_t saved = idx_;
      try {
        return relation();
      } catch (const ParseError&) {
        idx_ = saved;
      }
      take();
      auto inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return relation();
  }

  bool is_relation_start(std::size_t ahead) const {
    switch (peek(ahead).kind) {
      case Tok::Eq:
      case Tok::Ne:
      case Tok::Lt:
      case Tok::Gt:
      case Tok::Le:
      case Tok::Ge:
        return true;
      default:
        return false;
    }
  }

  FormulaPtr relation() {
    const SourcePos pos = peek().pos;
    auto lhs = term();
    RelOp op;
    switch (peek().kind) {
      case Tok::Eq: op = RelOp::Eq; break;
      case Tok::Ne: op = RelOp::Ne; break;
      case Tok::Lt: op = RelOp::Lt; break;
      case Tok::Gt: op = RelOp::Gt; break;
      case Tok::Le: op = RelOp::Le; break;
      case Tok::Ge: op = RelOp::Ge; break;
      default: fail("expected a relation (=, !=, <, >, <=, >=)");
    }
    take();
    auto rhs = term();
    return make({Relation{op, std::move(lhs), std::move(rhs)}, pos});
  }

  TermPtr term() {
    auto lhs = product();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token op = take();
      lhs = make({ArithTerm{op.kind == Tok::Plus ? ArithOp::Add : ArithOp::Sub, lhs, product()}, op.pos});
    }
    return lhs;
  }

  TermPtr product() {
    auto lhs = prefix();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token op = take();
      lhs = make({ArithTerm{op.kind == Tok::Star ? ArithOp::Mul : ArithOp::Div, lhs, prefix()}, op.pos});
    }
    return lhs;
  }

  TermPtr prefix() {
    const SourcePos pos = peek().pos;
    if (accept(Tok::Underscore)) return make({NegTerm{prefix()}, pos});
    return primary();
  }

  TermPtr primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number: {
        take();
        Integer value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{}) throw ParseError("integer literal out of range", t.pos.line, t.pos.column);
        return make({ConstTerm{value}, t.pos});
      }
      case Tok::Output: {
        take();
        std::string digits = t.text.substr(1);
        const bool negative = !digits.empty() && (digits[0] == '-' || digits[0] == '_');
        if (negative) digits = digits.substr(1);
        Label value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc{}) throw ParseError("output value out of range", t.pos.line, t.pos.column);
        return make({OutputLiteral{negative ? -value : value}, t.pos});
      }
      case Tok::Ident: {
        take();
        if (peek().kind != Tok::LBracket) return make({VarTerm{t.text}, t.pos});
        std::vector<TermPtr> indices;
        while (accept(Tok::LBracket)) {
          indices.push_back(term());
          expect(Tok::RBracket, "']'");
        }
        return make({AccessTerm{t.text, std::move(indices)}, t.pos});
      }
      case Tok::LParen: {
        take();
        auto inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("expected a term");
    }
  }

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

const char* relop_text(RelOp op) {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
    case RelOp::Lt: return "<";
    case RelOp::Gt: return ">";
    case RelOp::Le: return "<=";
    case RelOp::Ge: return ">=";
  }
  return "?";
}

const char* connective_text(Connective op) {
  switch (op) {
    case Connective::And: return "&";
    case Connective::Or: return "|";
    case Connective::Xor: return "^";
    case Connective::Implies: return "=>";
    case Connective::Iff: return "<=>";
  }
  return "?";
}

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

}  // namespace

ParsedFormula parse_formula(std::string_view text, SourcePos origin) { return Parser(lex(text, origin)).parse(); }

std::string to_string(const Term& t) {
  return std::visit(Overload{
                        [](const VarTerm& v) { return v.name; },
                        [](const ConstTerm& c) { return std::to_string(c.value); },
                        [](const NegTerm& n) { return "_(" + to_string(*n.operand) + ")"; },
                        [](const ArithTerm& a) {
                          static constexpr const char* ops[] = {"+", "-", "*", "/"};
                          return "(" + to_string(*a.lhs) + ops[static_cast<int>(a.op)] + to_string(*a.rhs) + ")";
                        },
                        [](const AccessTerm& a) {
                          std::string out = a.word;
                          for (const auto& i : a.indices) out += "[" + to_string(*i) + "]";
                          return out;
                        },
                        [](const OutputLiteral& o) { return "@" + std::to_string(o.value); },
                    },
                    t.node);
}

std::string to_string(const Formula& f) {
  return std::visit(Overload{
                        [](const BoolLiteral& b) { return std::string(b.value ? "true" : "false"); },
                        [](const Relation& r) { return to_string(*r.lhs) + relop_text(r.op) + to_string(*r.rhs); },
                        [](const PredicateCall& p) {
                          std::string out = "$" + p.name + "(";
                          for (std::size_t i = 0; i < p.args.size(); ++i) out += (i ? "," : "") + to_string(*p.args[i]);
                          return out + ")";
                        },
                        [](const Negation& n) { return "~(" + to_string(*n.operand) + ")"; },
                        [](const BinaryFormula& b) {
                          return "(" + to_string(*b.lhs) + " " + connective_text(b.op) + " " + to_string(*b.rhs) + ")";
                        },
                        [](const Quantified& q) {
                          std::string out = q.quantifier == Quantifier::Exists ? "E" : "A";
                          for (std::size_t i = 0; i < q.vars.size(); ++i) out += (i ? "," : "") + q.vars[i];
                          return out + " (" + to_string(*q.body) + ")";
                        },
                    },
                    f.node);
}

namespace {

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  std::visit(Overload{
                 [&](const VarTerm& v) { out.insert(v.name); },
                 [](const ConstTerm&) {},
                 [&](const NegTerm& n) { collect_term_vars(*n.operand, out); },
                 [&](const ArithTerm& a) {
                   collect_term_vars(*a.lhs, out);
                   collect_term_vars(*a.rhs, out);
                 },
                 [&](const AccessTerm& a) {
                   for (const auto& i : a.indices) collect_term_vars(*i, out);
                 },
                 [](const OutputLiteral&) {},
             },
             t.node);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  std::visit(Overload{
                 [](const BoolLiteral&) {},
                 [&](const Relation& r) {
                   collect_term_vars(*r.lhs, out);
                   collect_term_vars(*r.rhs, out);
                 },
                 [&](const PredicateCall& p) {
                   for (const auto& a : p.args) collect_term_vars(*a, out);
                 },
                 [&](const Negation& n) { out = free_variables(*n.operand); },
                 [&](const BinaryFormula& b) {
                   out = free_variables(*b.lhs);
                   out.merge(free_variables(*b.rhs));
                 },
                 [&](const Quantified& q) {
                   out = free_variables(*q.body);
                   for (const auto& v : q.vars) out.erase(v);
                 },
             },
             f.node);
  return out;
}

}  // namespace negabase
