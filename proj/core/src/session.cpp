#include "negabase/session.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "negabase/builders.hpp"
#include "negabase/io.hpp"
#include "negabase/regex.hpp"

namespace negabase {

namespace fs = std::filesystem;

namespace {

bool is_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

void check_name(const std::string& name) {
  if (!is_name(name)) throw SessionError("invalid name '" + name + "'");
}

// Moves a ParseError raised on a one-line string to its place in the script.
[[noreturn]] void relocate(const ParseError& e, SourcePos origin) {
  const std::size_t line = origin.line + e.line() - 1;
  const std::size_t column = e.line() == 1 ? origin.column + e.column() - 1 : e.column();
  throw ParseError(e.message(), line, column);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw SessionError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

builders::Sign parse_sign(const ScriptToken& t) {
  if (t.kind != ScriptToken::Kind::Bracket || (t.text != "+" && t.text != "-")) {
    throw ParseError("expected [+] or [-]", t.pos.line, t.pos.column);
  }
  return t.text == "+" ? builders::Sign::Plus : builders::Sign::Minus;
}

bool has_position_prefix(std::string_view msg) {
  std::size_t i = 0;
  auto digits = [&] {
    const std::size_t start = i;
    while (i < msg.size() && std::isdigit(static_cast<unsigned char>(msg[i]))) ++i;
    return i > start;
  };
  if (!digits() || i >= msg.size() || msg[i++] != ':') return false;
  return digits() && i < msg.size() && msg[i] == ':';
}

std::string describe(const Automaton& a) {
  std::string out = std::to_string(a.num_states()) + (a.num_states() == 1 ? " state" : " states");
  if (a.alphabet().arity() > 0) {
    out += " over (";
    const auto names = a.alphabet().names();
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
    out += ")";
  }
  return out;
}

std::string describe(const OutputAutomaton& d) {
  return std::to_string(d.num_states()) + (d.num_states() == 1 ? " state" : " states");
}

}  // namespace

// ---------------------------------------------------------------- script syntax

std::vector<Statement> parse_script(std::string_view text) {
  std::vector<Statement> out;
  Statement current;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
    ++i;
  };
  auto finish = [&] {
    if (!current.tokens.empty()) {
      current.pos = current.tokens.front().pos;
      out.push_back(std::move(current));
    }
    current = Statement{};
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
    } else if (c == ':' || c == ';') {
      advance();
      finish();
    } else if (c == '"') {
      const SourcePos start = pos;
      advance();
      ScriptToken t{ScriptToken::Kind::String, "", pos};
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '"') {
          advance();
          closed = true;
          break;
        }
        if (text[i] == '\\') {
          const SourcePos at = pos;
          advance();
          if (i >= text.size()) break;
          const char e = text[i];
          if (e == '"' || e == '\\') {
            t.text.push_back(e);
          } else if (e == 'n') {
            t.text.push_back('\n');
          } else {
            throw ParseError(std::string("unknown escape '\\") + e + "'", at.line, at.column);
          }
          advance();
          continue;
        }
        t.text.push_back(text[i]);
        advance();
      }
      if (!closed) throw ParseError("unterminated string", start.line, start.column);
      current.tokens.push_back(std::move(t));
    } else if (c == '[') {
      const SourcePos start = pos;
      advance();
      std::string body;
      while (i < text.size() && text[i] != ']') {
        body.push_back(text[i]);
        advance();
      }
      if (i >= text.size()) throw ParseError("missing ']'", start.line, start.column);
      advance();
      const auto first = body.find_first_not_of(" \t");
      const auto last = body.find_last_not_of(" \t");
      body = first == std::string::npos ? "" : body.substr(first, last - first + 1);
      current.tokens.push_back({ScriptToken::Kind::Bracket, std::move(body), start});
    } else {
      const SourcePos start = pos;
      std::string word;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
             std::string_view(":;\"[#").find(text[i]) == std::string_view::npos) {
        word.push_back(text[i]);
        advance();
      }
      current.tokens.push_back({ScriptToken::Kind::Word, std::move(word), start});
    }
  }
  finish();
  return out;
}

// ---------------------------------------------------------------- session

Session::Session() : Session(Options{}) {}

Session::Session(Options options) : options_(std::move(options)) {
  words_.emplace("T", builders::digit_sum_parity(Base::positive(2), "n"));
  words_.emplace("G", builders::digit_sum_parity(Base::negative(2), "n"));
  if (options_.directory) {
    for (const char* sub : {"automata", "words", "morphisms"}) fs::create_directories(*options_.directory / sub);
  }
}

std::optional<fs::path> Session::predicate_path(std::string_view name) const {
  if (!options_.directory) return std::nullopt;
  return *options_.directory / "automata" / (std::string(name) + ".txt");
}

std::optional<fs::path> Session::word_path(std::string_view name) const {
  if (!options_.directory) return std::nullopt;
  return *options_.directory / "words" / (std::string(name) + ".txt");
}

void Session::persist(const fs::path& file, const std::string& text, const std::string& dot) const {
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw SessionError("cannot write " + file.string());
    out << text;
  }
  if (options_.write_dot && !dot.empty()) {
    fs::path gv = file;
    gv.replace_extension(".gv");
    std::ofstream out(gv, std::ios::binary | std::ios::trunc);
    out << dot;
  }
}

void Session::store_predicate(const std::string& name, Automaton a) {
  check_name(name);
  if (auto p = predicate_path(name)) persist(*p, write_automaton(a), to_dot(a, name));
  predicates_.insert_or_assign(name, std::move(a));
}

void Session::store_word(const std::string& name, OutputAutomaton d) {
  check_name(name);
  if (auto p = word_path(name)) persist(*p, write_automaton(d), to_dot(d, name));
  words_.insert_or_assign(name, std::move(d));
}

const Automaton* Session::find_predicate(std::string_view name) const {
  if (auto it = predicates_.find(name); it != predicates_.end()) return &it->second;
  if (!is_name(name)) return nullptr;
  if (auto p = predicate_path(name); p && fs::exists(*p)) {
    return &predicates_.emplace(std::string(name), read_automaton(read_file(*p))).first->second;
  }
  return nullptr;
}

const OutputAutomaton* Session::find_word(std::string_view name) const {
  if (auto it = words_.find(name); it != words_.end()) return &it->second;
  if (!is_name(name)) return nullptr;
  if (auto p = word_path(name); p && fs::exists(*p)) {
    return &words_.emplace(std::string(name), read_word_automaton(read_file(*p))).first->second;
  }
  return nullptr;
}

const Automaton& Session::predicate(std::string_view name) const {
  if (const auto* a = find_predicate(name)) return *a;
  throw SessionError("unknown predicate '" + std::string(name) + "'");
}

const OutputAutomaton& Session::word(std::string_view name) const {
  if (const auto* d = find_word(name)) return *d;
  throw SessionError("unknown word automaton '" + std::string(name) + "'");
}

const Morphism& Session::morphism(std::string_view name) const {
  if (auto it = morphisms_.find(name); it != morphisms_.end()) return it->second;
  if (options_.directory && is_name(name)) {
    const fs::path p = *options_.directory / "morphisms" / (std::string(name) + ".txt");
    if (fs::exists(p)) return morphisms_.emplace(std::string(name), parse_morphism(read_file(p))).first->second;
  }
  throw SessionError("unknown morphism '" + std::string(name) + "'");
}

Automaton Session::def(const std::string& name, std::string_view formula, SourcePos origin) {
  check_name(name);
  Automaton a = compile(parse_formula(formula, origin), *this, options_.default_base);
  store_predicate(name, a);
  return a;
}

EvalResult Session::eval(const std::string& name, std::string_view formula, SourcePos origin) {
  check_name(name);
  Automaton a = compile(parse_formula(formula, origin), *this, options_.default_base);
  EvalResult r{name, a, std::nullopt};
  if (a.alphabet().arity() == 0) {
    r.truth = decide(a);
  } else {
    store_predicate(name, std::move(a));
  }
  return r;
}

Automaton Session::reg(const std::string& name, const std::vector<Base>& tracks, std::string_view pattern) {
  check_name(name);
  std::vector<Track> named;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    named.push_back({tracks.size() == 1 ? std::string("n") : "x" + std::to_string(i + 1), tracks[i]});
  }
  Automaton a = compile_regex(pattern, TrackAlphabet(std::move(named)));
  store_predicate(name, a);
  return a;
}

OutputAutomaton Session::combine(const std::string& name,
                                 const std::vector<std::pair<std::string, std::optional<Label>>>& parts) {
  check_name(name);
  std::vector<std::pair<Automaton, Label>> preds;
  std::optional<Track> shared;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Automaton& a = predicate(parts[i].first);
    if (a.alphabet().arity() != 1) {
      throw ArityError("combine: '" + parts[i].first + "' has " + std::to_string(a.alphabet().arity()) +
                       " free variables, expected 1");
    }
    if (!shared) shared = a.alphabet().track(0);
    if (a.alphabet().track(0).base != shared->base) {
      throw NumerationError("combine: '" + parts[i].first + "' is in " + a.alphabet().track(0).base.name() +
                            ", expected " + shared->base.name());
    }
    preds.emplace_back(rename_tracks(a, {shared->name}), parts[i].second.value_or(static_cast<Label>(i + 1)));
  }
  OutputAutomaton d = combine_predicates(preds);
  store_word(name, d);
  return d;
}

void Session::add_morphism(const std::string& name, Morphism m) {
  check_name(name);
  if (options_.directory) {
    persist(*options_.directory / "morphisms" / (name + ".txt"), format_morphism(m), "");
  }
  morphisms_.insert_or_assign(name, std::move(m));
}

OutputAutomaton Session::image(const std::string& name, const std::string& morphism_name,
                               const std::string& word_name) {
  check_name(name);
  OutputAutomaton d = apply_morphism(morphism(morphism_name), word(word_name));
  store_word(name, d);
  return d;
}

OutputAutomaton Session::split(const std::string& name, const std::string& word_name,
                               const std::vector<builders::Sign>& signs) {
  check_name(name);
  OutputAutomaton d = split_word(word(word_name), signs);
  store_word(name, d);
  return d;
}

OutputAutomaton Session::rsplit(const std::string& name, const std::vector<builders::Sign>& signs,
                                const std::string& word_name) {
  check_name(name);
  OutputAutomaton d = rsplit_word(word(word_name), signs);
  store_word(name, d);
  return d;
}

OutputAutomaton Session::join(const std::string& name,
                              const std::vector<std::pair<std::string, std::vector<std::string>>>& parts) {
  check_name(name);
  std::vector<OutputAutomaton> inputs;
  for (const auto& [w, vars] : parts) {
    const OutputAutomaton& d = word(w);
    if (vars.size() != d.alphabet().arity()) {
      throw ArityError("join: '" + w + "' takes " + std::to_string(d.alphabet().arity()) + " variables, got " +
                       std::to_string(vars.size()));
    }
    inputs.push_back(rename_tracks(d, vars));
  }
  OutputAutomaton d = join_words(inputs);
  store_word(name, d);
  return d;
}

// ---------------------------------------------------------------- commands

void Session::execute(const Statement& st, std::ostream& out) {
  const auto& tok = st.tokens;
  auto fail = [&](const std::string& msg, const SourcePos& at) -> void { throw ParseError(msg, at.line, at.column); };
  auto word_at = [&](std::size_t i, const char* what) -> const ScriptToken& {
    if (i >= tok.size() || tok[i].kind != ScriptToken::Kind::Word) {
      fail(std::string("expected ") + what, i < tok.size() ? tok[i].pos : tok.back().pos);
    }
    return tok[i];
  };
  auto string_at = [&](std::size_t i, const char* what) -> const ScriptToken& {
    if (i >= tok.size() || tok[i].kind != ScriptToken::Kind::String) {
      fail(std::string("expected ") + what + " in double quotes", i < tok.size() ? tok[i].pos : tok.back().pos);
    }
    return tok[i];
  };
  auto no_more = [&](std::size_t i) {
    if (i < tok.size()) fail("unexpected '" + tok[i].text + "'", tok[i].pos);
  };

  const std::string& command = word_at(0, "a command").text;
  if (command == "def" || command == "eval") {
    const std::string name = word_at(1, "a name").text;
    const ScriptToken& f = string_at(2, "a formula");
    no_more(3);
    if (command == "def") {
      out << name << ": " << describe(def(name, f.text, f.pos)) << "\n";
      return;
    }
    const EvalResult r = eval(name, f.text, f.pos);
    if (r.truth) {
      out << name << ": " << (*r.truth ? "TRUE" : "FALSE") << "\n";
    } else {
      out << name << ": " << describe(r.automaton);
      if (auto p = predicate_path(name)) out << " -> " << p->string();
      out << "\n";
    }
  } else if (command == "reg") {
    const std::string name = word_at(1, "a name").text;
    std::vector<Base> bases;
    std::size_t i = 2;
    for (; i < tok.size() && tok[i].kind == ScriptToken::Kind::Word; ++i) {
      const std::string& spec = tok[i].text;
      try {
        if (spec.starts_with('{')) {
          const auto commas = static_cast<int>(std::count(spec.begin(), spec.end(), ','));
          std::string expected = "{";
          for (int d = 0; d <= commas; ++d) expected += (d ? "," : "") + std::to_string(d);
          if (spec != expected + "}") fail("alphabet sets must be {0,1,...,k-1}", tok[i].pos);
          bases.push_back(Base::positive(commas + 1));
        } else {
          bases.push_back(Base::parse(spec));
        }
      } catch (const NumerationError& e) {
        fail(e.what(), tok[i].pos);
      }
    }
    if (bases.empty()) fail("expected a numeration system or alphabet", i < tok.size() ? tok[i].pos : st.pos);
    const ScriptToken& pattern = string_at(i, "a regular expression");
    no_more(i + 1);
    try {
      out << name << ": " << describe(reg(name, bases, pattern.text)) << "\n";
    } catch (const ParseError& e) {
      relocate(e, pattern.pos);
    }
  } else if (command == "combine") {
    const std::string name = word_at(1, "a name").text;
    std::vector<std::pair<std::string, std::optional<Label>>> parts;
    for (std::size_t i = 2; i < tok.size(); ++i) {
      const std::string& spec = word_at(i, "predicate[=value]").text;
      const auto eq = spec.find('=');
      if (eq == std::string::npos) {
        parts.emplace_back(spec, std::nullopt);
        continue;
      }
      Label v = 0;
      const std::string value = spec.substr(eq + 1);
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || ptr != value.data() + value.size()) fail("bad output value '" + value + "'", tok[i].pos);
      parts.emplace_back(spec.substr(0, eq), v);
    }
    if (parts.empty()) fail("combine needs at least one predicate", st.pos);
    out << name << ": " << describe(combine(name, parts)) << "\n";
  } else if (command == "morphism") {
    const std::string name = word_at(1, "a name").text;
    const ScriptToken& body = string_at(2, "morphism rules");
    no_more(3);
    Morphism m;
    try {
      m = parse_morphism(body.text);
    } catch (const ParseError& e) {
      relocate(e, body.pos);
    }
    const auto u = m.uniform_length();
    out << name << ": " << m.images.size() << " letters";
    if (u) out << ", " << *u << "-uniform";
    out << "\n";
    add_morphism(name, std::move(m));
  } else if (command == "image") {
    const std::string name = word_at(1, "a name").text;
    const std::string morph = word_at(2, "a morphism").text;
    const std::string src = word_at(3, "a word automaton").text;
    no_more(4);
    out << name << ": " << describe(image(name, morph, src)) << "\n";
  } else if (command == "split") {
    const std::string name = word_at(1, "a name").text;
    const std::string src = word_at(2, "a word automaton").text;
    std::vector<builders::Sign> signs;
    for (std::size_t i = 3; i < tok.size(); ++i) signs.push_back(parse_sign(tok[i]));
    out << name << ": " << describe(split(name, src, signs)) << "\n";
  } else if (command == "rsplit") {
    const std::string name = word_at(1, "a name").text;
    std::vector<builders::Sign> signs;
    std::size_t i = 2;
    for (; i < tok.size() && tok[i].kind == ScriptToken::Kind::Bracket; ++i) signs.push_back(parse_sign(tok[i]));
    const std::string src = word_at(i, "a word automaton").text;
    no_more(i + 1);
    out << name << ": " << describe(rsplit(name, signs, src)) << "\n";
  } else if (command == "join") {
    const std::string name = word_at(1, "a name").text;
    std::vector<std::pair<std::string, std::vector<std::string>>> parts;
    for (std::size_t i = 2; i < tok.size();) {
      const std::string w = word_at(i, "a word automaton").text;
      std::vector<std::string> vars;
      for (++i; i < tok.size() && tok[i].kind == ScriptToken::Kind::Bracket; ++i) {
        if (!is_name(tok[i].text)) fail("expected a variable in brackets", tok[i].pos);
        vars.push_back(tok[i].text);
      }
      if (vars.empty()) fail("expected [variable] after '" + w + "'", tok[i - 1].pos);
      parts.emplace_back(w, std::move(vars));
    }
    if (parts.empty()) fail("join needs at least one word automaton", st.pos);
    out << name << ": " << describe(join(name, parts)) << "\n";
  } else {
    fail("unknown command '" + command + "'", tok[0].pos);
  }
}

void Session::run(std::string_view script, std::string_view source, std::ostream& out) {
  auto located = [&](const std::string& msg, const SourcePos& at) {
    if (has_position_prefix(msg)) return std::string(source) + ":" + msg;
    return std::string(source) + ":" + std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg;
  };
  std::vector<Statement> statements;
  try {
    statements = parse_script(script);
  } catch (const Error& e) {
    throw SessionError(located(e.what(), {}));
  }
  for (const auto& st : statements) {
    try {
      execute(st, out);
      out.flush();
    } catch (const Error& e) {
      throw SessionError(located(e.what(), st.pos));
    }
  }
}

}  // namespace negabase
