#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "negabase/automaton.hpp"
#include "negabase/builders.hpp"
#include "negabase/io.hpp"
#include "negabase/numeration.hpp"
#include "negabase/lab.hpp"
#include "negabase/session.hpp"

namespace nb = negabase;

namespace {

std::filesystem::path session_dir() {
  const char* env = std::getenv("NEGABASE_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(".negabase");
}

nb::Session open_session() {
  nb::Session::Options opts;
  opts.directory = session_dir();
  return nb::Session(opts);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nb::SessionError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_scripts(const std::vector<std::string>& files) {
  nb::Session s = open_session();
  for (const auto& f : files) s.run(slurp(f), f, std::cout);
  return 0;
}

// Statements may span lines; a statement is complete once a ':' or ';'
// outside quotes has been seen.
int repl() {
  nb::Session s = open_session();
  std::string pending, line;
  std::size_t lineno = 0;
  const bool tty = ::isatty(STDIN_FILENO) != 0;
  auto prompt = [&] {
    if (tty) std::cout << (pending.empty() ? "negabase> " : "......... ") << std::flush;
  };
  prompt();
  while (std::getline(std::cin, line)) {
    ++lineno;
    pending += line + "\n";
    bool quoted = false, complete = false;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const char c = pending[i];
      if (c == '\\' && quoted) {
        ++i;
      } else if (c == '"') {
        quoted = !quoted;
      } else if (c == '#' && !quoted) {
        while (i < pending.size() && pending[i] != '\n') ++i;
      } else if ((c == ':' || c == ';') && !quoted) {
        complete = true;
      }
    }
    if (complete && !quoted) {
      try {
        s.run(pending, "<stdin>", std::cout);
      } catch (const nb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
      }
      pending.clear();
    }
    prompt();
  }
  if (tty) std::cout << "\n";
  return 0;
}

int lab(const std::string& id, bool json) {
  if (id == "shur-script") {
    std::cout << nb::lab::shur_script();
    return 0;
  }
  std::vector<std::string> ids;
  if (id == "all") {
    ids = nb::lab::theorem_ids();
  } else {
    ids.push_back(id);
  }
  bool ok = true;
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& i : ids) {
    const auto r = nb::lab::run(i);
    ok = ok && r.passed();
    if (json) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      reports.push_back(
          {{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"seconds", r.seconds}, {"checks", checks}});
      continue;
    }
    std::cout << r.id << ": " << r.title << "\n";
    for (const auto& c : r.checks) {
      std::cout << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) std::cout << " -- " << c.detail;
      std::cout << "\n";
    }
    std::cout << "  " << (r.passed() ? "PASS" : "FAIL") << " in " << r.seconds << " s\n";
  }
  if (json) std::cout << (id == "all" ? reports : reports[0]).dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"negabase: first-order queries over automatic sequences in negative bases"};
  app.require_subcommand(1);

  std::vector<std::string> scripts;
  auto* run = app.add_subcommand("run", "Run one or more scripts in the session directory");
  run->add_option("scripts", scripts, "Script files")->required()->check(CLI::ExistingFile);

  auto* repl_cmd = app.add_subcommand("repl", "Read commands from standard input");

  std::string base_name;
  std::string value;
  auto* encode = app.add_subcommand("encode", "Print the canonical representation of an integer");
  encode->add_option("--base", base_name, "Numeration system, e.g. -2, msd_neg_3, msd_neg_fib")->required();
  encode->add_option("n", value, "Integer")->required();
  auto* decode = app.add_subcommand("decode", "Print the integer a digit word represents");
  decode->add_option("--base", base_name, "Numeration system")->required();
  decode->add_option("word", value, "Digits, most significant first")->required();

  std::string which;
  int k = 2;
  bool dot = false;
  std::string sign = "+";
  auto* builtin = app.add_subcommand("builtin", "Print a hand-built automaton");
  builtin->add_option("which", which, "adder, cmp or conv")
      ->required()
      ->check(CLI::IsMember({"adder", "cmp", "conv"}));
  builtin->add_option("--k", k, "Base magnitude")->check(CLI::Range(2, 36));
  builtin->add_option("--sign", sign, "Converter sign")->check(CLI::IsMember({"+", "-"}));
  builtin->add_flag("--dot", dot, "Emit Graphviz instead of the text format");

  std::string name;
  std::size_t max_len = 8;
  auto* enumerate = app.add_subcommand("enumerate", "List accepted tuples of a stored predicate");
  enumerate->add_option("name", name, "Predicate name")->required();
  enumerate->add_option("--max-len", max_len, "Longest word to consider")->required();

  auto* dot_cmd = app.add_subcommand("dot", "Print a stored automaton as Graphviz");
  dot_cmd->add_option("name", name, "Predicate or word automaton name")->required();

  std::string lab_id;
  bool json = false;
  std::vector<std::string> lab_choices = nb::lab::theorem_ids();
  lab_choices.insert(lab_choices.end(), {"all", "shur-script"});
  auto* lab_cmd = app.add_subcommand("lab", "Reproduce one theorem and report each check");
  lab_cmd->add_option("id", lab_id, "Theorem id, 'all', or 'shur-script'")
      ->required()
      ->check(CLI::IsMember(lab_choices));
  lab_cmd->add_flag("--json", json, "Machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_scripts(scripts);
    if (*repl_cmd) return repl();
    if (*encode || *decode) {
      const nb::Base base = nb::Base::parse(base_name);
      if (*encode) {
        std::size_t used = 0;
        long long n = 0;
        try {
          n = std::stoll(value, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != value.size()) throw nb::DomainError("not an integer: " + value);
        const auto w = nb::encode(n, base);
        std::cout << (w.empty() ? std::string("0") : nb::format_word(w)) << "\n";
      } else {
        std::cout << nb::decode(nb::parse_word(value, base), base) << "\n";
      }
      return 0;
    }
    if (*builtin) {
      nb::Automaton a = which == "adder" ? nb::builders::negative_adder(k)
                        : which == "cmp" ? nb::builders::negative_comparator(k)
                                         : nb::builders::converter(k, sign == "+" ? nb::builders::Sign::Plus
                                                                                  : nb::builders::Sign::Minus);
      std::cout << (dot ? nb::to_dot(a, which) : nb::write_automaton(a));
      return 0;
    }
    if (*enumerate) {
      nb::Session s = open_session();
      const auto& a = s.predicate(name);
      const auto names = a.alphabet().names();
      std::set<std::vector<nb::Integer>> seen;
      for (const auto& w : nb::enumerate_accepted(a, max_len)) {
        if (!seen.insert(w.values).second) continue;
        for (std::size_t i = 0; i < names.size(); ++i) {
          std::cout << (i ? " " : "") << names[i] << "=" << w.values[i];
        }
        std::cout << "\n";
      }
      return 0;
    }
    if (*lab_cmd) return lab(lab_id, json);
    if (*dot_cmd) {
      nb::Session s = open_session();
      if (const auto* a = s.find_predicate(name)) {
        std::cout << nb::to_dot(*a, name);
      } else {
        std::cout << nb::to_dot(s.word(name), name);
      }
      return 0;
    }
  } catch (const nb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
