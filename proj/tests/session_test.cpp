#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "negabase/io.hpp"
#include "negabase/session.hpp"

using namespace negabase;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("negabase_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string run(Session& s, std::string_view script) {
  std::ostringstream out;
  s.run(script, "test.wlt", out);
  return out.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string error_of(Session& s, std::string_view script) {
  try {
    run(s, script);
  } catch (const SessionError& e) {
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST(ScriptSyntax, TokensStatementsAndComments) {
  const auto st = parse_script(
      "split AS A[+]: # comment ; not a statement\n"
      "rsplit T22 [ - ] T2;\n"
      "eval x \"a \\\"b\\\" \\\\ \\n\"");
  ASSERT_EQ(st.size(), 3u);
  ASSERT_EQ(st[0].tokens.size(), 4u);
  EXPECT_EQ(st[0].tokens[2].text, "A");
  EXPECT_EQ(st[0].tokens[3].kind, ScriptToken::Kind::Bracket);
  EXPECT_EQ(st[0].tokens[3].text, "+");
  EXPECT_EQ(st[1].tokens[2].text, "-");
  EXPECT_EQ(st[1].pos.line, 2u);
  EXPECT_EQ(st[2].tokens[2].kind, ScriptToken::Kind::String);
  EXPECT_EQ(st[2].tokens[2].text, "a \"b\" \\ \n");
  EXPECT_EQ(st[2].tokens[2].pos.column, 9u);
  EXPECT_THROW(parse_script("eval x \"\\q\":"), ParseError);
  EXPECT_THROW(parse_script("eval x \"open:"), ParseError);
  EXPECT_THROW(parse_script("split A G [+:"), ParseError);
}

TEST(SessionCommands, EvalPrintsVerdicts) {
  Session s;
  EXPECT_EQ(run(s, "eval t \"Ex x=x+0\":\neval f \"?msd_neg_2 Ex x<x\";"), "t: TRUE\nf: FALSE\n");
  const std::string out = run(s, "eval open \"x<y\":");
  EXPECT_EQ(out.rfind("open: ", 0), 0u);
  EXPECT_NE(s.find_predicate("open"), nullptr);
}

TEST(SessionCommands, DefThenPredicateCall) {
  Session s;
  run(s, "def even \"Ey x=2*y\": eval t \"Ax $even(x) | $even(x+1)\":");
  EXPECT_EQ(s.predicate("even").alphabet().arity(), 1u);
  EXPECT_EQ(run(s, "eval q \"$even(7)\":"), "q: FALSE\n");
}

TEST(SessionCommands, CombineWithValuesAndDefaults) {
  Session s;
  run(s,
      "def small \"?msd_neg_2 n<0\": def big \"?msd_neg_2 n>5\":\n"
      "combine W small=4 big:\n");
  const auto& w = s.word("W");
  EXPECT_EQ(w.evaluate(-3), 4);
  EXPECT_EQ(w.evaluate(2), 0);
  EXPECT_EQ(w.evaluate(9), 2);  // second in the list
  run(s, "def two \"?msd_neg_2 x<y\":");
  EXPECT_NE(error_of(s, "combine Bad two:").find("free variables"), std::string::npos);
  run(s, "def pos \"n>5\":");
  EXPECT_NE(error_of(s, "combine Mixed small pos:").find("msd_2"), std::string::npos);
}

TEST(SessionCommands, RegAcceptsAlphabetSets) {
  Session s;
  run(s, "reg ones {0,1} \"0*1*\": reg pairs msd_2 msd_2 \"([0,0]|[1,1])*\":");
  const Integer seven[] = {7};
  const Integer five[] = {5};
  EXPECT_TRUE(s.predicate("ones").accepts_values(seven));
  EXPECT_FALSE(s.predicate("ones").accepts_values(five));
  EXPECT_EQ(s.predicate("pairs").alphabet().arity(), 2u);
  EXPECT_NE(error_of(s, "reg bad {0,2} \"0\":").find("alphabet"), std::string::npos);
}

TEST(SessionCommands, MorphismImageSplitJoin) {
  Session s;
  const std::string out = run(s,
                              "morphism mu \"0 -> 01\\n1 -> 10\":\n"
                              "split SH G [+]:\n"
                              "image SM mu SH:\n"
                              "rsplit R [+] T:\n"
                              "join J R[n] G[n]:\n");
  EXPECT_NE(out.find("mu: 2 letters, 2-uniform"), std::string::npos);
  const auto& g = s.word("G");
  const auto& sm = s.word("SM");
  for (Integer n = 0; n < 40; ++n) {
    EXPECT_EQ(sm.evaluate(n), (g.evaluate(n / 2) + n % 2) % 2) << n;
  }
  const auto& j = s.word("J");
  const auto& t = s.word("T");
  for (Integer n = -20; n <= 20; ++n) {
    const Label r = n >= 0 ? t.evaluate(n) : 0;
    EXPECT_EQ(j.evaluate(n), r != 0 ? r : g.evaluate(n)) << n;
  }
}

TEST(SessionErrors, CarrySourceLineAndColumn) {
  Session s;
  EXPECT_EQ(error_of(s, "def a \"x<y\":\nfrobnicate x:"), "test.wlt:2:1: unknown command 'frobnicate'");
  // Formula errors point inside the string.
  const std::string e = error_of(s, "\n  eval q \"x < \":");
  EXPECT_EQ(e.rfind("test.wlt:2:", 0), 0u) << e;
  EXPECT_NE(error_of(s, "eval q \"$nope(x)\":").find("nope"), std::string::npos);
  EXPECT_NE(error_of(s, "eval q \"W[x]=@1\":").find("W"), std::string::npos);
  EXPECT_NE(error_of(s, "split X T [+]:").find("test.wlt:1:"), std::string::npos);
  EXPECT_NE(error_of(s, "eval q \"G[x]=@1\":").find("msd_neg_2"), std::string::npos);
  EXPECT_NE(error_of(s, "eval 1bad \"true\":").find("invalid name"), std::string::npos);
  EXPECT_NE(error_of(s, "reg r msd_2 \"(01\":").find("test.wlt:1:"), std::string::npos);
  EXPECT_NE(error_of(s, "eval q \"?lsd_neg_2 x=x\":").find("unsupported"), std::string::npos);
}

TEST(SessionPersistence, FilesRoundTripAndLoadLazily) {
  TempDir dir;
  const char* script =
      "def lt \"?msd_neg_2 x<y\":\n"
      "split SH G [+]:\n"
      "morphism mu \"0 -> 01 1 -> 10\":\n";
  {
    Session s(Session::Options{dir.path(), Base::positive(2), true});
    run(s, script);
  }
  EXPECT_TRUE(fs::exists(dir.path() / "automata" / "lt.txt"));
  EXPECT_TRUE(fs::exists(dir.path() / "automata" / "lt.gv"));
  EXPECT_TRUE(fs::exists(dir.path() / "words" / "SH.txt"));
  EXPECT_TRUE(fs::exists(dir.path() / "morphisms" / "mu.txt"));

  Session fresh(Session::Options{dir.path(), Base::positive(2), true});
  const Automaton& lt = fresh.predicate("lt");
  EXPECT_EQ(write_automaton(lt), slurp(dir.path() / "automata" / "lt.txt"));
  const Integer v[] = {-3, 2};
  EXPECT_TRUE(lt.accepts_values(v));
  EXPECT_EQ(fresh.morphism("mu").uniform_length(), 2u);
  EXPECT_EQ(run(fresh, "eval c \"?msd_neg_2 Ax ~$lt(x,x)\":"), "c: TRUE\n");
  EXPECT_THROW(fresh.word("missing"), SessionError);
}

TEST(SessionPersistence, IdenticalScriptsGiveIdenticalFiles) {
  TempDir a;
  const fs::path b = a.path() / "second";
  const char* script =
      "def tmn \"T[n-1]=@1\": combine T2 tmn: rsplit T22 [-] T2:\n"
      "def f \"?msd_neg_2 Ey x=2*y+1 & y<z\":\n";
  for (const fs::path& p : {a.path() / "first", b}) {
    Session s(Session::Options{p, Base::positive(2), true});
    run(s, script);
  }
  for (const char* f : {"automata/tmn.txt", "automata/f.txt", "words/T2.txt", "words/T22.txt", "words/T22.gv"}) {
    EXPECT_EQ(slurp(a.path() / "first" / f), slurp(b / f)) << f;
    EXPECT_FALSE(slurp(b / f).empty()) << f;
  }
}
