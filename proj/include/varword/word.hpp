// Words and m-dimensional variable words over the alphabet [k] = {1,...,k}:
// validation, substitution, supports, enumeration, ranking.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "varword/error.hpp"

namespace varword {

// A symbol is a letter in [k] (1-based) or one of the variables v_0, v_1, ...
// One-dimensional contexts write the single variable v as v_0.
class Symbol {
 public:
  Symbol() : code_(1) {}

  static Symbol letter(int value) {
    if (value < 1) fail(Errc::letter_out_of_range, "letters are 1-based", value);
    return Symbol(value);
  }
  static Symbol variable(int index) {
    if (index < 0) fail(Errc::index_out_of_range, "variable index must be nonnegative", index);
    return Symbol(-1 - index);
  }

  bool is_letter() const { return code_ > 0; }
  bool is_variable() const { return code_ < 0; }
  int letter_value() const { return code_; }
  int variable_index() const { return -1 - code_; }

  friend bool operator==(Symbol a, Symbol b) { return a.code_ == b.code_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.code_ != b.code_; }

 private:
  explicit Symbol(int code) : code_(code) {}
  int code_;
};

using Symbols = std::vector<Symbol>;

// Mixed-radix digit under the canonical symbol order 1 < ... < k < v_0 < v_1 < ...
inline int symbol_digit(Symbol s, int k) {
  return s.is_letter() ? s.letter_value() - 1 : k + s.variable_index();
}

// Constant word over [k].
struct Word {
  int k = 1;
  Symbols symbols;

  int length() const { return static_cast<int>(symbols.size()); }
  friend bool operator==(const Word&, const Word&) = default;
};

// m-dimensional variable word over [k]: every v_j occurs at least once and the
// variable blocks appear in increasing position order
// (max supp(v_j) < min supp(v_{j+1})).
struct VarWord {
  int k = 1;
  int dim = 1;
  Symbols symbols;

  int length() const { return static_cast<int>(symbols.size()); }
  friend bool operator==(const VarWord&, const VarWord&) = default;
};

inline Word make_word(int k, Symbols symbols) {
  if (k < 1) fail(Errc::letter_out_of_range, "alphabet size must be positive", k);
  if (symbols.empty()) fail(Errc::empty_word, "words must have length >= 1");
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!symbols[i].is_letter() || symbols[i].letter_value() > k)
      fail(Errc::letter_out_of_range, "constant words hold letters in [k] only",
           static_cast<long long>(i));
  }
  return Word{k, std::move(symbols)};
}

// Checks all VarWord invariants and returns the word, or throws
// MissingVariable / BlockViolation / LetterOutOfRange with the offending index.
inline VarWord validate_varword(int k, int m, Symbols symbols) {
  if (k < 1) fail(Errc::letter_out_of_range, "alphabet size must be positive", k);
  if (m < 1) fail(Errc::index_out_of_range, "dimension must be positive", m);
  if (symbols.empty()) fail(Errc::empty_word, "words must have length >= 1");
  std::vector<int> first(m, -1), last(m, -1);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    Symbol s = symbols[i];
    if (s.is_letter()) {
      if (s.letter_value() > k)
        fail(Errc::letter_out_of_range,
             "letter " + std::to_string(s.letter_value()) + " exceeds alphabet size " +
                 std::to_string(k) + " at position " + std::to_string(i),
             static_cast<long long>(i));
    } else {
      int j = s.variable_index();
      if (j >= m)
        fail(Errc::index_out_of_range,
             "variable v" + std::to_string(j) + " outside dimension " + std::to_string(m),
             static_cast<long long>(i));
      if (first[j] < 0) first[j] = static_cast<int>(i);
      last[j] = static_cast<int>(i);
    }
  }
  for (int j = 0; j < m; ++j) {
    if (first[j] < 0)
      fail(Errc::missing_variable, "variable v" + std::to_string(j) + " does not occur", j);
  }
  for (int j = 0; j + 1 < m; ++j) {
    if (last[j] >= first[j + 1])
      fail(Errc::block_violation,
           "variables v" + std::to_string(j) + " and v" + std::to_string(j + 1) +
               " are not in block position",
           j);
  }
  return VarWord{k, m, std::move(symbols)};
}

using SupportSet = std::vector<int>;

// Positions of v_j in w; nonempty by the VarWord invariant.
inline SupportSet support(const VarWord& w, int j) {
  if (j < 0 || j >= w.dim)
    fail(Errc::index_out_of_range, "no variable v" + std::to_string(j), j);
  SupportSet out;
  for (std::size_t i = 0; i < w.symbols.size(); ++i) {
    if (w.symbols[i].is_variable() && w.symbols[i].variable_index() == j)
      out.push_back(static_cast<int>(i));
  }
  return out;
}

// Raw substitution w(x) as a symbol sequence, without classifying the result.
inline Symbols substitute_symbols(const VarWord& w, std::span<const Symbol> x) {
  if (static_cast<int>(x.size()) != w.dim)
    fail(Errc::length_mismatch,
         "substitution needs exactly dim(w) = " + std::to_string(w.dim) + " symbols",
         static_cast<long long>(x.size()));
  Symbols out;
  out.reserve(w.symbols.size());
  for (Symbol s : w.symbols) out.push_back(s.is_letter() ? s : x[s.variable_index()]);
  return out;
}

// w(x): a constant Word when x is all letters, otherwise a VarWord carrying
// exactly the dimension of x.
inline std::variant<Word, VarWord> substitute(const VarWord& w, std::span<const Symbol> x) {
  int xdim = 0;
  for (Symbol s : x) {
    if (s.is_letter()) {
      if (s.letter_value() > w.k)
        fail(Errc::letter_out_of_range, "substituted letter exceeds alphabet size",
             s.letter_value());
    } else {
      xdim = std::max(xdim, s.variable_index() + 1);
    }
  }
  if (xdim > 0) validate_varword(w.k, xdim, Symbols(x.begin(), x.end()));
  Symbols out = substitute_symbols(w, x);
  if (xdim == 0) return Word{w.k, std::move(out)};
  return validate_varword(w.k, xdim, std::move(out));
}

inline std::variant<Word, VarWord> substitute(const VarWord& w, const VarWord& x) {
  return substitute(w, std::span<const Symbol>(x.symbols));
}

struct Reduction {
  std::optional<Symbols> x;    // set iff u is reduced by w
  int conflict_position = -1;  // first conflicting index otherwise

  bool reduced() const { return x.has_value(); }
};

// Inverts u = w(x). The solution is unique when it exists because every
// variable of w has nonempty support.
inline Reduction solve_substitution(const VarWord& w, std::span<const Symbol> u) {
  if (u.size() != w.symbols.size())
    fail(Errc::length_mismatch, "w and u must share their length",
         static_cast<long long>(u.size()));
  Symbols x(w.dim);
  std::vector<bool> assigned(w.dim, false);
  for (std::size_t i = 0; i < u.size(); ++i) {
    Symbol ws = w.symbols[i];
    if (ws.is_letter()) {
      if (ws != u[i]) return Reduction{std::nullopt, static_cast<int>(i)};
    } else {
      int j = ws.variable_index();
      if (!assigned[j]) {
        x[j] = u[i];
        assigned[j] = true;
      } else if (x[j] != u[i]) {
        return Reduction{std::nullopt, static_cast<int>(i)};
      }
    }
  }
  return Reduction{std::move(x), -1};
}

inline Reduction solve_substitution(const VarWord& w, const VarWord& u) {
  return solve_substitution(w, std::span<const Symbol>(u.symbols));
}

inline constexpr std::uint64_t kDefaultEnumBudget = std::uint64_t(1) << 22;

// base^n saturating at limit+1.
inline std::uint64_t checked_pow(std::uint64_t base, int n, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) {
    if (base != 0 && v > limit / base) return limit + 1;
    v *= base;
  }
  return v;
}

// All one-dimensional variable words over [k] of length n, in the canonical
// lexicographic order 1 < ... < k < v. Cardinality (k+1)^n - k^n.
inline std::vector<VarWord> enumerate_variable_words(int k, int n,
                                                     std::uint64_t budget = kDefaultEnumBudget) {
  if (k < 1) fail(Errc::letter_out_of_range, "alphabet size must be positive", k);
  if (n < 1) fail(Errc::empty_word, "enumeration needs n >= 1", n);
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(k) + 1, n, budget);
  if (total > budget)
    fail(Errc::size_guard, "(k+1)^n exceeds the enumeration budget", static_cast<long long>(n));
  std::vector<VarWord> out;
  std::vector<int> digits(n, 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    bool has_v = false;
    for (int d : digits)
      if (d == k) {
        has_v = true;
        break;
      }
    if (has_v) {
      Symbols syms(n);
      for (int i = 0; i < n; ++i)
        syms[i] = digits[i] == k ? Symbol::variable(0) : Symbol::letter(digits[i] + 1);
      out.push_back(VarWord{k, 1, std::move(syms)});
    }
    int pos = n - 1;
    while (pos >= 0 && ++digits[pos] == k + 1) digits[pos--] = 0;
  }
  return out;
}

// All m-dimensional variable words over [k] of length n, ordered
// lexicographically under 1 < ... < k < v_0 < ... < v_{m-1}.
inline std::vector<VarWord> enumerate_varwords_dim(int k, int n, int m,
                                                   std::uint64_t budget = kDefaultEnumBudget) {
  if (k < 1) fail(Errc::letter_out_of_range, "alphabet size must be positive", k);
  if (n < 1) fail(Errc::empty_word, "enumeration needs n >= 1", n);
  if (m < 1) fail(Errc::index_out_of_range, "dimension must be positive", m);
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(k + m), n, budget);
  if (total > budget)
    fail(Errc::size_guard, "(k+m)^n exceeds the enumeration budget", static_cast<long long>(n));
  std::vector<VarWord> out;
  std::vector<int> digits(n, 0);
  std::vector<int> first(m), last(m);
  for (std::uint64_t it = 0; it < total; ++it) {
    std::fill(first.begin(), first.end(), -1);
    std::fill(last.begin(), last.end(), -1);
    for (int i = 0; i < n; ++i) {
      if (digits[i] >= k) {
        int j = digits[i] - k;
        if (first[j] < 0) first[j] = i;
        last[j] = i;
      }
    }
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) ok = first[j] >= 0;
    for (int j = 0; j + 1 < m && ok; ++j) ok = last[j] < first[j + 1];
    if (ok) {
      Symbols syms(n);
      for (int i = 0; i < n; ++i)
        syms[i] = digits[i] < k ? Symbol::letter(digits[i] + 1) : Symbol::variable(digits[i] - k);
      out.push_back(VarWord{k, m, std::move(syms)});
    }
    int pos = n - 1;
    while (pos >= 0 && ++digits[pos] == k + m) digits[pos--] = 0;
  }
  return out;
}

// (k+1)^n - k^n, exactly; 0 when n = 0.
inline BigInt count_variable_words(int k, long long n) {
  if (k < 1) fail(Errc::letter_out_of_range, "alphabet size must be positive", k);
  if (n < 0) fail(Errc::index_out_of_range, "length must be nonnegative", n);
  if (n == 0) return BigInt(0);
  return boost::multiprecision::pow(BigInt(k + 1), static_cast<unsigned>(n)) -
         boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(n));
}

// Mixed-radix rank of a length-n word over [k] with an optional single
// variable v: digit(letter a) = a-1, digit(v) = k, most significant first.
inline BigInt rank_word(int k, std::span<const Symbol> symbols) {
  BigInt acc = 0;
  for (Symbol s : symbols) {
    if (s.is_variable() && s.variable_index() != 0)
      fail(Errc::shape_mismatch, "rank is defined on words over [k] and the single variable v");
    if (s.is_letter() && s.letter_value() > k)
      fail(Errc::letter_out_of_range, "letter exceeds alphabet size", s.letter_value());
    acc = acc * (k + 1) + symbol_digit(s, k);
  }
  return acc;
}

// Same digits folded with wrapping 64-bit arithmetic (seeded oracle input).
inline std::uint64_t rank_word_u64(int k, std::span<const Symbol> symbols) {
  std::uint64_t acc = 0;
  for (Symbol s : symbols)
    acc = acc * static_cast<std::uint64_t>(k + 1) +
          static_cast<std::uint64_t>(symbol_digit(s, k));
  return acc;
}

inline Symbols unrank_word(int k, int n, BigInt index) {
  if (index < 0 || index >= boost::multiprecision::pow(BigInt(k + 1), static_cast<unsigned>(n)))
    fail(Errc::index_out_of_range, "rank outside [0, (k+1)^n)");
  Symbols out(n);
  for (int i = n - 1; i >= 0; --i) {
    int digit = static_cast<int>(index % (k + 1));
    index /= (k + 1);
    out[i] = digit == k ? Symbol::variable(0) : Symbol::letter(digit + 1);
  }
  return out;
}

// --- word text format: space-separated tokens, letters as decimal integers,
// --- the one-dimensional variable as "v", dimensional variables as "v0","v1",...

inline std::string format_symbols(std::span<const Symbol> symbols, int dim) {
  std::ostringstream out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out << ' ';
    Symbol s = symbols[i];
    if (s.is_letter())
      out << s.letter_value();
    else if (dim == 1)
      out << 'v';
    else
      out << 'v' << s.variable_index();
  }
  return out.str();
}

inline std::string to_text(const Word& w) { return format_symbols(w.symbols, 0); }
inline std::string to_text(const VarWord& w) { return format_symbols(w.symbols, w.dim); }

struct ParsedWord {
  Symbols symbols;
  int dim = 0;  // 0 for a constant word
};

inline ParsedWord parse_word_tokens(const std::string& text, long long line_no = -1) {
  std::istringstream in(text);
  std::string token;
  ParsedWord out;
  bool plain_v = false, indexed_v = false;
  int max_index = -1;
  while (in >> token) {
    if (token == "v") {
      plain_v = true;
      out.symbols.push_back(Symbol::variable(0));
      max_index = std::max(max_index, 0);
    } else if (token[0] == 'v') {
      std::size_t pos = 0;
      int j = -1;
      try {
        j = std::stoi(token.substr(1), &pos);
      } catch (const std::exception&) {
        fail(Errc::parse_error, "bad variable token '" + token + "'", line_no);
      }
      if (pos + 1 != token.size() || j < 0)
        fail(Errc::parse_error, "bad variable token '" + token + "'", line_no);
      indexed_v = true;
      out.symbols.push_back(Symbol::variable(j));
      max_index = std::max(max_index, j);
    } else {
      std::size_t pos = 0;
      int a = -1;
      try {
        a = std::stoi(token, &pos);
      } catch (const std::exception&) {
        fail(Errc::parse_error, "bad letter token '" + token + "'", line_no);
      }
      if (pos != token.size() || a < 1)
        fail(Errc::parse_error, "bad letter token '" + token + "'", line_no);
      out.symbols.push_back(Symbol::letter(a));
    }
  }
  if (plain_v && indexed_v)
    fail(Errc::parse_error, "word mixes 'v' with indexed variables", line_no);
  if (plain_v && max_index > 0)
    fail(Errc::parse_error, "word mixes 'v' with indexed variables", line_no);
  out.dim = max_index + 1;
  return out;
}

}  // namespace varword
