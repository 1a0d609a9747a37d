#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "negabase/session.hpp"

// Reproductions of the theorems about Thue-Morse, Shevelev's g and the runs
// sequence, each checked against direct integer-arithmetic oracles.
namespace negabase::lab {

// Oracles. thue_morse and runs_parity need n >= 0.
Label thue_morse(Integer n);
Label g(Integer n);
Label t_prime(Integer n);         // t(n) for n >= 0, t(-n-1) for n < 0
Label t_double_prime(Integer n);  // t(n) for n >= 0, 1 - t(-n-1) for n < 0
Label runs_parity(Integer n);

/// g as a DFAO in msd_neg_2.
OutputAutomaton build_g();

struct TwoSidedThueMorse {
  OutputAutomaton t_prime;         // TM21
  OutputAutomaton t_double_prime;  // TM22
};
/// Runs the two-sided construction script in `session` (TM21, TM22 and the
/// intermediate words are left there).
TwoSidedThueMorse build_thue_morse_two_sided(Session& session);
TwoSidedThueMorse build_thue_morse_two_sided();

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Report {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const;
};

struct RecordPair {
  Integer value = 0;
  Integer position = 0;
  bool operator==(const RecordPair&) const = default;
};

// Closed forms for the record-setters: v records are (a(n), l(n)), w records
// are (b(n), m(n)), for n = 0, 1, 2, ...
Integer closed_form_l(int n);
Integer closed_form_a(int n);
Integer closed_form_m(int n);
Integer closed_form_b(int n);

struct RecordSetterReport {
  char which = 'v';
  std::size_t depth = 0;
  std::vector<RecordPair> enumerated;   // accepted by recordv / recordw, by position
  std::vector<RecordPair> oracle;       // by direct scan over positions < 2^depth
  std::vector<RecordPair> closed_form;  // same length as enumerated
  std::vector<std::string> mismatches;  // closed form vs enumeration, unexplained
  std::vector<std::string> flagged;     // known conflicts between text and table
  bool vseq_exact = false;              // vseq/wseq accepts exactly (v(n), n), n <= 2^10
};

/// which is 'v' or 'w'.
RecordSetterReport record_setters(char which, std::size_t depth = 14);

/// The full Shur pipeline preceded by the two-sided construction, with a
/// resource warning. Not meant for routine runs.
std::string shur_script();

/// g, thue-morse, eq1, tmtest, shevelev, records-v, records-w, runs, shur-prefix.
const std::vector<std::string>& theorem_ids();

/// Runs one reproduction. Throws Error for an unknown id.
Report run(std::string_view id);

}  // namespace negabase::lab
