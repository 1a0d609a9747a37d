#include "negabase/numeration.hpp"

#include <array>
#include <charconv>

namespace negabase {

namespace checked {

Integer add(Integer a, Integer b) {
  Integer out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in addition");
  return out;
}

Integer mul(Integer a, Integer b) {
  Integer out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in multiplication");
  return out;
}

}  // namespace checked

namespace {

constexpr int kMaxFibIndex = 92;  // F_92 is the largest Fibonacci number below 2^63

const std::array<Integer, kMaxFibIndex + 1>& fib_table() {
  static const auto table = [] {
    std::array<Integer, kMaxFibIndex + 1> t{};
    t[0] = 0;
    t[1] = 1;
    for (int i = 2; i <= kMaxFibIndex; ++i) t[i] = t[i - 1] + t[i - 2];
    return t;
  }();
  return table;
}

// Signed weight of negaFibonacci position i >= 1: (-1)^(i+1) F_i.
Integer nega_fib_weight(int i) { return (i % 2 == 1) ? fibonacci(i) : -fibonacci(i); }

DigitWord encode_radix(Integer n, int radix, bool negative) {
  DigitWord lsd_first;
  const Integer divisor = negative ? -radix : radix;
  while (n != 0) {
    Integer r = n % radix;
    if (r < 0) r += radix;
    lsd_first.push_back(static_cast<Digit>(r));
    n = (n - r) / divisor;
  }
  return {lsd_first.rbegin(), lsd_first.rend()};
}

// Words using positions <= t with no two adjacent 1s take exactly the values
// in [-(F_2 + F_4 + ...), F_1 + F_3 + ...]; position t is forced to 1 at the
// smallest t whose interval contains n.
DigitWord encode_nega_fibonacci(Integer n) {
  if (n == 0) return {};
  std::vector<Integer> low{0}, high{0};  // indexed by t
  int t = 0;
  while (n < low[t] || n > high[t]) {
    ++t;
    if (t > kMaxFibIndex) throw OverflowError("negaFibonacci encoding out of range");
    low.push_back(low[t - 1] + (t % 2 == 0 ? -fibonacci(t) : 0));
    high.push_back(high[t - 1] + (t % 2 == 1 ? fibonacci(t) : 0));
  }
  DigitWord word(static_cast<std::size_t>(t), 0);
  Integer rest = n;
  int top = t;
  while (rest != 0) {
    word[static_cast<std::size_t>(t - top)] = 1;
    rest -= nega_fib_weight(top);
    int next = 0;
    while (next < top && (rest < low[next] || rest > high[next])) ++next;
    if (rest != 0 && next >= top - 1) throw Error("negaFibonacci encoder invariant violated");
    top = next;
  }
  return word;
}

}  // namespace

Integer fibonacci(int i) {
  if (i < 0 || i > kMaxFibIndex) throw OverflowError("Fibonacci index out of range");
  return fib_table()[static_cast<std::size_t>(i)];
}

Base Base::positive(int k) {
  if (k < 2) throw NumerationError("radix must be at least 2");
  return Base(BaseKind::Positive, k);
}

Base Base::negative(int k) {
  if (k < 2) throw NumerationError("radix must be at least 2");
  return Base(BaseKind::Negative, k);
}

Base Base::nega_fibonacci() { return Base(BaseKind::NegaFibonacci, 2); }

std::string Base::name() const {
  switch (kind_) {
    case BaseKind::Positive:
      return "msd_" + std::to_string(radix_);
    case BaseKind::Negative:
      return "msd_neg_" + std::to_string(radix_);
    case BaseKind::NegaFibonacci:
      return "msd_neg_fib";
  }
  return {};
}

Base Base::parse(std::string_view text) {
  auto parse_int = [&](std::string_view digits) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
      throw NumerationError("unknown numeration system '" + std::string(text) + "'");
    }
    return value;
  };
  if (text.starts_with("lsd_")) throw NumerationError("unsupported numeration mode '" + std::string(text) + "'");
  if (text == "msd_neg_fib" || text == "negafib" || text == "neg_fib" || text == "-F") return nega_fibonacci();
  if (text == "msd_fib" || text == "fib") {
    throw NumerationError("unsupported numeration mode '" + std::string(text) + "'");
  }
  if (text.starts_with("msd_neg_")) return negative(parse_int(text.substr(8)));
  if (text.starts_with("msd_")) return positive(parse_int(text.substr(4)));
  if (text.starts_with("-")) return negative(parse_int(text.substr(1)));
  return positive(parse_int(text));
}

DigitWord encode(Integer n, const Base& base) {
  switch (base.kind()) {
    case BaseKind::Positive:
      if (n < 0) throw DomainError("negative integer " + std::to_string(n) + " has no " + base.name() + " representation");
      return encode_radix(n, base.radix(), false);
    case BaseKind::Negative:
      return encode_radix(n, base.radix(), true);
    case BaseKind::NegaFibonacci:
      return encode_nega_fibonacci(n);
  }
  return {};
}

Integer decode(std::span<const Digit> word, const Base& base) {
  for (Digit d : word) {
    if (d >= base.digit_count()) {
      throw DigitError("digit " + std::to_string(d) + " is outside the alphabet of " + base.name());
    }
  }
  if (base.kind() == BaseKind::NegaFibonacci) {
    Integer value = 0;
    const int length = static_cast<int>(word.size());
    for (int idx = 0; idx < length; ++idx) {
      if (word[static_cast<std::size_t>(idx)] == 0) continue;
      if (idx + 1 < length && word[static_cast<std::size_t>(idx) + 1] == 1) {
        throw CanonicityError("adjacent 1s in negaFibonacci word");
      }
      value = checked::add(value, nega_fib_weight(length - idx));
    }
    return value;
  }
  const Integer radix = base.kind() == BaseKind::Negative ? -base.radix() : base.radix();
  Integer value = 0;
  for (Digit d : word) value = checked::add(checked::mul(value, radix), d);
  return value;
}

bool is_canonical(std::span<const Digit> word, const Base& base) {
  if (!word.empty() && word.front() == 0) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] >= base.digit_count()) return false;
    if (base.kind() == BaseKind::NegaFibonacci && word[i] == 1 && i + 1 < word.size() && word[i + 1] == 1) {
      return false;
    }
  }
  return true;
}

std::string format_word(std::span<const Digit> word) {
  std::string out;
  out.reserve(word.size());
  for (Digit d : word) out.push_back(d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10));
  return out;
}

DigitWord parse_word(std::string_view text, const Base& base) {
  if (text == "ε") return {};
  DigitWord word;
  word.reserve(text.size());
  for (char c : text) {
    int d = -1;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'z') d = c - 'a' + 10;
    if (d < 0 || d >= base.digit_count()) {
      throw DigitError(std::string("invalid digit '") + c + "' for " + base.name());
    }
    word.push_back(static_cast<Digit>(d));
  }
  return word;
}

}  // namespace negabase
