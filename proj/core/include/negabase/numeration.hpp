#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "negabase/error.hpp"

namespace negabase {

using Integer = std::int64_t;
using Digit = std::uint8_t;

/// Most-significant-digit-first word, possibly with leading zeros.
using DigitWord = std::vector<Digit>;

enum class BaseKind : std::uint8_t { Positive, Negative, NegaFibonacci };

/// A numeration system: base k, base -k, or negaFibonacci.
class Base {
 public:
  static Base positive(int k);
  static Base negative(int k);
  static Base nega_fibonacci();

  /// Accepts Walnut names (`msd_2`, `msd_neg_3`, `msd_neg_fib`) and the
  /// short CLI forms (`2`, `-2`, `negafib`).
  static Base parse(std::string_view text);

  BaseKind kind() const noexcept { return kind_; }
  int radix() const noexcept { return radix_; }
  /// Size of the digit alphabet.
  int digit_count() const noexcept { return kind_ == BaseKind::NegaFibonacci ? 2 : radix_; }
  /// True when every integer (not just naturals) has a representation.
  bool covers_negatives() const noexcept { return kind_ != BaseKind::Positive; }
  /// True when every digit word is a valid representation of some integer.
  bool all_words_valid() const noexcept { return kind_ != BaseKind::NegaFibonacci; }

  /// Walnut-style name, e.g. `msd_neg_2`.
  std::string name() const;

  friend bool operator==(const Base&, const Base&) = default;
  friend auto operator<=>(const Base&, const Base&) = default;

 private:
  Base(BaseKind kind, int radix) : kind_(kind), radix_(radix) {}

  BaseKind kind_;
  int radix_;
};

DigitWord encode(Integer n, const Base& base);
Integer decode(std::span<const Digit> word, const Base& base);
bool is_canonical(std::span<const Digit> word, const Base& base);

/// Renders digits 0-9 then a-z; the empty word renders as "".
std::string format_word(std::span<const Digit> word);
/// Inverse of format_word; "ε" and "" both give the empty word.
DigitWord parse_word(std::string_view text, const Base& base);

/// F_i with F_0 = 0, F_1 = 1; throws OverflowError past the int64 range.
Integer fibonacci(int i);

namespace checked {
Integer add(Integer a, Integer b);
Integer mul(Integer a, Integer b);
}  // namespace checked

}  // namespace negabase
