#pragma once

#include <string>

#include "negabase/automaton.hpp"

namespace negabase::builders {

/// x + y = z in base -k, most significant digit first. States are numbered as
/// in the classic construction: 0 start/accepting (difference 0), 1 (difference
/// -1), 2 (difference +1), 3 dead (|difference| > 1).
Automaton negative_adder(int k, const std::string& x = "x", const std::string& y = "y", const std::string& z = "z");

/// x < y in base -k. State 0: equal so far, 1: x > y, 2: x < y (accepting).
/// States 1 and 2 swap on every letter since each new digit flips the sign of
/// the weight of everything read so far.
Automaton negative_comparator(int k, const std::string& x = "x", const std::string& y = "y");

enum class Sign { Plus, Minus };

/// Converter between base k (track x) and base -k (track y). States 0..4 follow
/// the construction, 5 is dead. Sign::Plus accepts {0, 2}: [x]_k = [y]_{-k};
/// Sign::Minus accepts {0, 4}: [x]_k = -[y]_{-k}.
Automaton converter(int k, Sign sign, const std::string& x = "x", const std::string& y = "y");

/// x = m: accepts exactly 0*·encode(m).
Automaton constant(Integer m, const Base& base, const std::string& x = "x");

/// x + y = z in any base k or -k; positive bases use the carry automaton.
Automaton adder(const Base& base, const std::string& x, const std::string& y, const std::string& z);

/// x < y in any base k or -k.
Automaton less_than(const Base& base, const std::string& x, const std::string& y);

/// x = y (the diagonal).
Automaton equality(const Base& base, const std::string& x, const std::string& y);

/// Words that are valid representations in `base`: everything for ±k, no two
/// adjacent 1s for negaFibonacci.
Automaton valid_words(const Base& base, const std::string& x = "x");

/// Canonical words only (no leading zero), with validity as above. Not closed
/// under padding; a recognizer for is_canonical.
Automaton canonical_words(const Base& base, const std::string& x = "x");

/// Parity of the digit sum of the canonical representation: the Thue-Morse
/// word in msd_2, the sequence g in msd_neg_2.
OutputAutomaton digit_sum_parity(const Base& base, const std::string& n = "n");

}  // namespace negabase::builders
