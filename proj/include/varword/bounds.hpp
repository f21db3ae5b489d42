// The bound recursions behind the insensitivity lemma and the
// Graham-Rothschild chain, evaluated exactly (symbolically when needed).
//
//   f(k,0,m,r) = 0
//   f(k,j+1,m,r) = f(k,j,m,r) + r^((k+2)^(m-j-1+f(k,j,m,r)))
//   f(k,j,m,r) = 0 whenever one of k, m, r is zero
//
// The tight variant replaces the exponent (k+2)^L by the exact count of
// variable words over k+1 of length L, i.e. (k+2)^L - (k+1)^L.
#pragma once

#include <istream>
#include <map>
#include <optional>
#include <sstream>

#include "varword/error.hpp"
#include "varword/largenat.hpp"

namespace varword {

enum class BoundMode { paper_exact, tight };

inline BoundMode parse_bound_mode(const std::string& token) {
  if (token == "paper") return BoundMode::paper_exact;
  if (token == "tight") return BoundMode::tight;
  fail(Errc::parse_error, "bound mode must be 'paper' or 'tight', got '" + token + "'");
}

inline std::string to_token(BoundMode mode) {
  return mode == BoundMode::paper_exact ? "paper" : "tight";
}

// (k+1)^n - k^n with a possibly symbolic length n.
inline LargeNat count_variable_words_large(long long k, const LargeNat& n) {
  return LargeNat::sub(LargeNat::pow(LargeNat(static_cast<std::uint64_t>(k + 1)), n),
                       LargeNat::pow(LargeNat(static_cast<std::uint64_t>(k)), n));
}

namespace detail {

inline LargeNat f_recursion(long long k, long long j, long long m, long long r, bool tight) {
  if (k < 0 || j < 0 || m < 0 || r < 0)
    fail(Errc::index_out_of_range, "f takes nonnegative arguments");
  if (k == 0 || m == 0 || r == 0) return LargeNat(0);
  if (j > m) fail(Errc::index_out_of_range, "the recursion is used with j <= m", j);
  LargeNat f(0);
  for (long long step = 0; step < j; ++step) {
    LargeNat level = LargeNat::add(LargeNat(static_cast<std::uint64_t>(m - step - 1)), f);
    LargeNat exponent = tight
                            ? count_variable_words_large(k + 1, level)
                            : LargeNat::pow(LargeNat(static_cast<std::uint64_t>(k + 2)), level);
    f = LargeNat::add(f, LargeNat::pow(LargeNat(static_cast<std::uint64_t>(r)), exponent));
  }
  return f;
}

}  // namespace detail

inline LargeNat f_paper(long long k, long long j, long long m, long long r) {
  return detail::f_recursion(k, j, m, r, false);
}

inline LargeNat f_tight(long long k, long long j, long long m, long long r) {
  return detail::f_recursion(k, j, m, r, true);
}

// Upper bound for Sh_v(k,m,r): f(k,m,m,r) in the chosen mode.
inline LargeNat sh_bound(long long k, long long m, long long r, BoundMode mode) {
  return detail::f_recursion(k, m, m, r, mode == BoundMode::tight);
}

// Known exact values of H(m,r). H(1,r) = 1 is built in; further entries come
// from exact-search results or are supplied as explicit assumptions.
class HValues {
 public:
  void set(int m, int r, long long value) { values_[{m, r}] = value; }

  std::optional<long long> get(int m, int r) const {
    if (m == 1) return 1;  // NU of a single set is a singleton
    auto it = values_.find({m, r});
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  // Lines "m r value"; '#' starts a comment.
  static HValues from_stream(std::istream& in) {
    HValues table;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream fields(line);
      int m, r;
      long long value;
      if (!(fields >> m)) continue;  // blank
      if (!(fields >> r >> value) || m < 1 || r < 1 || value < 1)
        fail(Errc::parse_error, "H table lines read 'm r value'", line_no);
      std::string rest;
      if (fields >> rest) fail(Errc::parse_error, "trailing tokens in H table line", line_no);
      table.set(m, r, value);
    }
    return table;
  }

 private:
  std::map<std::pair<int, int>, long long> values_;
};

// GR(1,m,r) = H(m,r); GR(k+1,m,r) <= Sh_v(k, GR(k,m,r), r). Starting from an
// explicit base value for the k = 1 stage.
inline LargeNat gr_bound_chain(long long k, long long base, long long r, BoundMode mode) {
  if (k < 1) fail(Errc::index_out_of_range, "the chain needs k >= 1", k);
  LargeNat bound(static_cast<std::uint64_t>(base));
  for (long long kk = 1; kk < k; ++kk) {
    auto m_dim = bound.to_u64();
    if (!m_dim)
      fail(Errc::too_large,
           "intermediate GR bound at k=" + std::to_string(kk) + " is not machine-sized");
    bound = detail::f_recursion(kk, static_cast<long long>(*m_dim),
                                static_cast<long long>(*m_dim), r, mode == BoundMode::tight);
  }
  return bound;
}

inline LargeNat gr_bound(long long k, long long m, long long r, BoundMode mode,
                         const HValues& h_values) {
  if (m < 1 || r < 1) fail(Errc::index_out_of_range, "gr_bound needs m, r >= 1");
  auto base = h_values.get(static_cast<int>(m), static_cast<int>(r));
  if (!base)
    fail(Errc::missing_h_value,
         "no H(" + std::to_string(m) + "," + std::to_string(r) + ") value available");
  return gr_bound_chain(k, *base, r, mode);
}

}  // namespace varword
