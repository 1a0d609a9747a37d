#include "negabase/compiler.hpp"

#include <map>

#include "negabase/builders.hpp"

namespace negabase {

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

Integer floor_div(Integer a, Integer b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string where(const SourcePos& pos) { return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": "; }

class FormulaCompiler {
 public:
  FormulaCompiler(const Base& base, const Environment& env) : base_(base), env_(env) {}

  Automaton compile(const Formula& f) {
    return std::visit(Overload{
                          [&](const BoolLiteral& b) { return Automaton::constant(b.value); },
                          [&](const Relation& r) { return relation(r, f.pos); },
                          [&](const PredicateCall& p) { return predicate(p, f.pos); },
                          [&](const Negation& n) { return negate(compile(*n.operand)); },
                          [&](const BinaryFormula& b) { return connect(b); },
                          [&](const Quantified& q) { return quantify(q); },
                      },
                      f.node);
  }

 private:
  // ------------------------------------------------------------ helpers

  Track track(const std::string& name) const { return {name, base_}; }

  std::string fresh() { return "%" + std::to_string(++fresh_counter_); }

  bool nega_fib() const { return base_.kind() == BaseKind::NegaFibonacci; }

  // Intersects with "every track is a valid representation"; only negaFibonacci
  // has invalid words.
  Automaton restrict_valid(Automaton a) const {
    if (!nega_fib()) return a;
    for (const auto& t : a.alphabet().tracks()) a = product(a, builders::valid_words(base_, t.name), combiners::conj);
    return a;
  }

  Automaton negate(const Automaton& a) const { return restrict_valid(complement(a)); }

  // Renames the positional tracks of `a` to `names`; repeated names are merged
  // (the corresponding tracks must carry equal digits).
  template <class M>
  M bind(const M& a, const std::vector<std::string>& names) {
    std::vector<std::string> unique(names.size());
    std::vector<std::pair<std::string, std::string>> merges;  // keep, drop
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (seen[names[i]]++ == 0) {
        unique[i] = names[i];
      } else {
        unique[i] = fresh();
        merges.emplace_back(names[i], unique[i]);
      }
    }
    M out = rename_tracks(a, unique);
    for (const auto& [keep, drop] : merges) {
      out = merge_tracks(out, *out.alphabet().find(keep), *out.alphabet().find(drop));
    }
    return out;
  }

  void require_arithmetic(const SourcePos& pos) const {
    if (nega_fib()) throw CompileError(where(pos) + "arithmetic is not available in msd_neg_fib");
  }

  Automaton constant_atom(Integer m, const std::string& x, const SourcePos& pos) const {
    if (m < 0 && !base_.covers_negatives()) {
      throw CompileError(where(pos) + "negative constant " + std::to_string(m) + " in a " + base_.name() + " formula");
    }
    return builders::constant(m, base_, x);
  }

  const OutputAutomaton& word(const std::string& name, const SourcePos& pos) const {
    const OutputAutomaton* d = env_.find_word(name);
    if (!d) throw CompileError(where(pos) + "unknown word automaton '" + name + "'");
    for (const auto& t : d->alphabet().tracks()) {
      if (t.base != base_) {
        throw NumerationError(where(pos) + "word automaton '" + name + "' is in " + t.base.name() +
                              " but the formula is in " + base_.name());
      }
    }
    return *d;
  }

  // ------------------------------------------------------------ term flattening
  //
  // Within one atom, constraints_ collects automata tying fresh variables to
  // subterms; finish() conjoins them with the atom and projects the fresh
  // variables away as soon as nothing left mentions them.

  std::optional<Integer> fold(const Term& t) const {
    return std::visit(Overload{
                          [&](const ConstTerm& c) -> std::optional<Integer> { return c.value; },
                          [&](const NegTerm& n) -> std::optional<Integer> {
                            auto v = fold(*n.operand);
                            if (!v) return std::nullopt;
                            return checked::mul(*v, -1);
                          },
                          [&](const ArithTerm& a) -> std::optional<Integer> {
                            auto l = fold(*a.lhs);
                            auto r = fold(*a.rhs);
                            if (!l || !r) return std::nullopt;
                            switch (a.op) {
                              case ArithOp::Add: return checked::add(*l, *r);
                              case ArithOp::Sub: return checked::add(*l, checked::mul(*r, -1));
                              case ArithOp::Mul: return checked::mul(*l, *r);
                              case ArithOp::Div:
                                if (*r == 0) throw CompileError(where(t.pos) + "division by zero");
                                return floor_div(*l, *r);
                            }
                            return std::nullopt;
                          },
                          [](const auto&) -> std::optional<Integer> { return std::nullopt; },
                      },
                      t.node);
  }

  std::string as_var(const Term& t) {
    if (const auto* v = std::get_if<VarTerm>(&t.node)) return v->name;
    std::string u = fresh();
    define(t, u);
    return u;
  }

  void add(Automaton a) { constraints_.push_back(restrict_valid(std::move(a))); }

  // Adds constraints forcing `target` = value of `t`.
  void define(const Term& t, const std::string& target) {
    if (auto c = fold(t)) {
      add(constant_atom(*c, target, t.pos));
      return;
    }
    std::visit(Overload{
                   [&](const VarTerm& v) { add(bind(builders::equality(base_, "a", "b"), {v.name, target})); },
                   [&](const ConstTerm&) {},
                   [&](const NegTerm& n) {
                     require_arithmetic(t.pos);
                     negation(as_var(*n.operand), target, t.pos);
                   },
                   [&](const ArithTerm& a) { arithmetic(a, target, t.pos); },
                   [&](const AccessTerm& a) { value_of(a, target, t.pos); },
                   [&](const OutputLiteral& o) { add(constant_atom(o.value, target, t.pos)); },
               },
               t.node);
  }

  void sum(const std::string& x, const std::string& y, const std::string& z, const SourcePos& pos) {
    require_arithmetic(pos);
    add(bind(builders::adder(base_, "a", "b", "c"), {x, y, z}));
  }

  // x + target = 0.
  void negation(const std::string& x, const std::string& target, const SourcePos& pos) {
    if (!base_.covers_negatives()) throw CompileError(where(pos) + "negation needs a negative base");
    const std::string zero = fresh();
    add(constant_atom(0, zero, pos));
    sum(x, target, zero, pos);
  }

  // target = m * x by binary doubling: 2y = y + y, (2j+1)y = y + 2jy.
  void multiply(Integer m, const std::string& x, const std::string& target, const SourcePos& pos) {
    require_arithmetic(pos);
    if (m == 0) {
      add(constant_atom(0, target, pos));
      return;
    }
    if (m < 0) {
      if (!base_.covers_negatives()) throw CompileError(where(pos) + "negative multiplier needs a negative base");
      const std::string w = fresh();
      multiply(-m, x, w, pos);
      negation(w, target, pos);
      return;
    }
    if (m == 1) {
      add(bind(builders::equality(base_, "a", "b"), {x, target}));
      return;
    }
    const std::string half = fresh();
    if (m % 2 == 0) {
      multiply(m / 2, x, half, pos);
      sum(half, half, target, pos);
    } else {
      multiply(m - 1, x, half, pos);
      sum(x, half, target, pos);
    }
  }

  void arithmetic(const ArithTerm& a, const std::string& target, const SourcePos& pos) {
    switch (a.op) {
      case ArithOp::Add:
        sum(as_var(*a.lhs), as_var(*a.rhs), target, pos);
        return;
      case ArithOp::Sub: {
        // l - r = target  <=>  r + target = l
        const std::string l = as_var(*a.lhs);
        const std::string r = as_var(*a.rhs);
        sum(r, target, l, pos);
        return;
      }
      case ArithOp::Mul: {
        if (auto m = fold(*a.lhs)) return multiply(*m, as_var(*a.rhs), target, pos);
        if (auto m = fold(*a.rhs)) return multiply(*m, as_var(*a.lhs), target, pos);
        throw CompileError(where(pos) + "multiplication needs a constant factor");
      }
      case ArithOp::Div: {
        auto m = fold(*a.rhs);
        if (!m) throw CompileError(where(pos) + "division needs a constant divisor");
        if (*m == 0) throw CompileError(where(pos) + "division by zero");
        require_arithmetic(pos);
        if (*m < 0 && !base_.covers_negatives()) {
          throw CompileError(where(pos) + "negative divisor needs a negative base");
        }
        // target = floor(y/m)  <=>  Er y = target*m + r & (0 <= r < m  or  m < r <= 0)
        const std::string y = as_var(*a.lhs);
        const std::string product_var = fresh();
        const std::string r = fresh();
        multiply(*m, target, product_var, pos);
        sum(product_var, r, y, pos);
        const std::string lo = fresh();
        const std::string hi = fresh();
        if (*m > 0) {
          add(constant_atom(0, lo, pos));
          add(constant_atom(*m, hi, pos));
          add(negate(builders::less_than(base_, r, lo)));  // r >= 0
          add(builders::less_than(base_, r, hi));          // r < m
        } else {
          add(constant_atom(*m, lo, pos));
          add(constant_atom(0, hi, pos));
          add(builders::less_than(base_, lo, r));        // m < r
          add(negate(builders::less_than(base_, hi, r)));  // r <= 0
        }
        return;
      }
    }
  }

  // Renamed copy of a word automaton read at the given index terms.
  OutputAutomaton access(const AccessTerm& a, const SourcePos& pos) {
    const OutputAutomaton& d = word(a.word, pos);
    if (a.indices.size() != d.alphabet().arity()) {
      throw ArityError(where(pos) + "'" + a.word + "' takes " + std::to_string(d.alphabet().arity()) +
                       " indices, got " + std::to_string(a.indices.size()));
    }
    std::vector<std::string> names;
    for (const auto& i : a.indices) names.push_back(as_var(*i));
    return bind(d, names);
  }

  // target = W[...] as a number.
  void value_of(const AccessTerm& a, const std::string& target, const SourcePos& pos) {
    const OutputAutomaton d = access(a, pos);
    std::optional<Automaton> all;
    for (Label v : d.output_alphabet()) {
      auto piece = product(accept_where(d, [v](Label o) { return o == v; }), constant_atom(v, target, pos),
                           combiners::conj);
      all = all ? product(*all, piece, combiners::disj) : piece;
    }
    add(all ? *all : Automaton::constant(false));
  }

  Automaton finish(Automaton core) {
    std::vector<Automaton> pending = std::move(constraints_);
    constraints_.clear();
    Automaton acc = restrict_valid(std::move(core));
    auto mentioned_later = [&](const std::string& name, std::size_t from) {
      for (std::size_t j = from; j < pending.size(); ++j) {
        if (pending[j].alphabet().find(name)) return true;
      }
      return false;
    };
    auto eliminate = [&](std::size_t from) {
      for (const auto& name : acc.alphabet().names()) {
        if (name.starts_with('%') && !mentioned_later(name, from)) acc = project(acc, name);
      }
    };
    // Conjoin from the most recently added constraint (the outermost subterm
    // definitions come last, innermost first).
    for (std::size_t i = pending.size(); i-- > 0;) {
      acc = product(acc, pending[i], combiners::conj);
      pending.pop_back();
      eliminate(0);
    }
    eliminate(0);
    return acc;
  }

  // ------------------------------------------------------------ atoms

  static bool is_access(const TermPtr& t) { return std::holds_alternative<AccessTerm>(t->node); }
  static const OutputLiteral* as_literal(const TermPtr& t) { return std::get_if<OutputLiteral>(&t->node); }

  Automaton relation(const Relation& r, const SourcePos& pos) {
    // W[...] = @a and W[...] = V[...] are compared output-wise without
    // materializing the value as a number.
    if (r.op == RelOp::Eq || r.op == RelOp::Ne) {
      const OutputLiteral* lit = as_literal(r.rhs);
      const TermPtr* acc_side = is_access(r.lhs) ? &r.lhs : nullptr;
      if (!lit && is_access(r.rhs) && as_literal(r.lhs)) {
        lit = as_literal(r.lhs);
        acc_side = &r.rhs;
      }
      if (lit && acc_side) {
        const OutputAutomaton d = access(std::get<AccessTerm>((*acc_side)->node), pos);
        const auto letters = d.output_alphabet();
        if (std::find(letters.begin(), letters.end(), lit->value) == letters.end()) {
          throw CompileError(where(pos) + "@" + std::to_string(lit->value) + " is not an output of '" +
                             std::get<AccessTerm>((*acc_side)->node).word + "'");
        }
        const Label v = lit->value;
        const bool eq = r.op == RelOp::Eq;
        return finish(accept_where(d, [v, eq](Label o) { return (o == v) == eq; }));
      }
      if (is_access(r.lhs) && is_access(r.rhs)) {
        const OutputAutomaton a = access(std::get<AccessTerm>(r.lhs->node), pos);
        const OutputAutomaton b = access(std::get<AccessTerm>(r.rhs->node), pos);
        Automaton same = outputs_equal(a, b);
        return finish(r.op == RelOp::Eq ? same : complement(same));
      }
    }
    switch (r.op) {
      case RelOp::Eq: {
        if (const auto* v = std::get_if<VarTerm>(&r.lhs->node)) {
          define(*r.rhs, v->name);
          return finish(Automaton::constant(true));
        }
        const std::string u = as_var(*r.lhs);
        define(*r.rhs, u);
        return finish(Automaton::constant(true));
      }
      case RelOp::Ne: {
        const std::string u = as_var(*r.lhs);
        const std::string v = as_var(*r.rhs);
        return finish(complement(bind(builders::equality(base_, "a", "b"), {u, v})));
      }
      case RelOp::Lt:
      case RelOp::Gt:
      case RelOp::Le:
      case RelOp::Ge: {
        std::string u = as_var(*r.lhs);
        std::string v = as_var(*r.rhs);
        if (r.op == RelOp::Gt || r.op == RelOp::Ge) std::swap(u, v);
        Automaton core = less_than(u, v, pos);
        if (r.op == RelOp::Le || r.op == RelOp::Ge) {
          core = product(core, bind(builders::equality(base_, "a", "b"), {u, v}), combiners::disj);
        }
        return finish(std::move(core));
      }
    }
    return Automaton::constant(false);
  }

  Automaton less_than(const std::string& u, const std::string& v, const SourcePos& pos) {
    if (nega_fib()) throw CompileError(where(pos) + "order comparisons are not available in msd_neg_fib");
    if (u == v) return Automaton::constant(false, TrackAlphabet({track(u)}));
    return builders::less_than(base_, u, v);
  }

  Automaton predicate(const PredicateCall& p, const SourcePos& pos) {
    const Automaton* a = env_.find_predicate(p.name);
    if (!a) throw CompileError(where(pos) + "unknown predicate '" + p.name + "'");
    if (p.args.size() != a->alphabet().arity()) {
      throw ArityError(where(pos) + "'" + p.name + "' takes " + std::to_string(a->alphabet().arity()) +
                       " arguments, got " + std::to_string(p.args.size()));
    }
    for (const auto& t : a->alphabet().tracks()) {
      if (t.base != base_) {
        throw NumerationError(where(pos) + "predicate '" + p.name + "' is in " + t.base.name() +
                              " but the formula is in " + base_.name());
      }
    }
    std::vector<std::string> names;
    for (const auto& arg : p.args) names.push_back(as_var(*arg));
    return finish(bind(*a, names));
  }

  // ------------------------------------------------------------ connectives

  Automaton connect(const BinaryFormula& b) {
    Automaton lhs = compile(*b.lhs);
    Automaton rhs = compile(*b.rhs);
    switch (b.op) {
      case Connective::And: return product(lhs, rhs, combiners::conj);
      case Connective::Or: return restrict_valid(product(lhs, rhs, combiners::disj));
      case Connective::Xor: return restrict_valid(product(lhs, rhs, combiners::exclusive));
      case Connective::Implies: return restrict_valid(product(lhs, rhs, combiners::implies));
      case Connective::Iff: return restrict_valid(product(lhs, rhs, combiners::iff));
    }
    return lhs;
  }

  Automaton quantify(const Quantified& q) {
    Automaton body = compile(*q.body);
    const bool forall = q.quantifier == Quantifier::ForAll;
    if (forall) body = negate(body);
    for (auto it = q.vars.rbegin(); it != q.vars.rend(); ++it) {
      if (body.alphabet().find(*it)) body = project(body, *it);
    }
    return forall ? negate(body) : body;
  }

  Base base_;
  const Environment& env_;
  std::vector<Automaton> constraints_;
  int fresh_counter_ = 0;
};

}  // namespace

Base formula_base(const ParsedFormula& formula, const Base& default_base) {
  return formula.numeration.value_or(default_base);
}

Automaton compile(const ParsedFormula& formula, const Environment& env, const Base& default_base) {
  FormulaCompiler compiler(formula_base(formula, default_base), env);
  return sort_tracks(compiler.compile(*formula.root));
}

Automaton compile(std::string_view text, const Environment& env, const Base& default_base) {
  return compile(parse_formula(text), env, default_base);
}

}  // namespace negabase
