// Block sequences, nonempty-union sets, the correspondence with variable
// words over a one-letter alphabet, and a search-based solver for finite
// Hindman instances.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include "varword/coloring.hpp"
#include "varword/error.hpp"
#include "varword/word.hpp"

namespace varword {

// Finite sequence (s_0,...,s_{m-1}) of nonempty index sets with
// max s_i < min s_{i+1}.
struct BlockSequence {
  std::vector<SupportSet> sets;

  int length() const { return static_cast<int>(sets.size()); }
  friend bool operator==(const BlockSequence&, const BlockSequence&) = default;
};

inline BlockSequence make_block_sequence(std::vector<SupportSet> sets) {
  if (sets.empty()) fail(Errc::empty_word, "block sequences are nonempty");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const SupportSet& s = sets[i];
    if (s.empty()) fail(Errc::empty_word, "block members are nonempty sets",
                        static_cast<long long>(i));
    for (std::size_t l = 0; l < s.size(); ++l) {
      if (s[l] < 0 || (l > 0 && s[l] <= s[l - 1]))
        fail(Errc::block_violation, "set elements must be strictly increasing and >= 0",
             static_cast<long long>(i));
    }
    if (i > 0 && sets[i - 1].back() >= s.front())
      fail(Errc::block_violation, "max s_{i-1} must lie below min s_i",
           static_cast<long long>(i));
  }
  return BlockSequence{std::move(sets)};
}

// Candidate-set order used throughout: by maximum element, then
// lexicographically on the sorted element lists.
inline bool set_order(const SupportSet& a, const SupportSet& b) {
  if (a.back() != b.back()) return a.back() < b.back();
  return a < b;
}

// NU(s): the 2^m - 1 unions over nonempty subfamilies, in canonical order.
// Distinctness holds for every block sequence.
inline std::vector<SupportSet> nu(const BlockSequence& s) {
  int m = s.length();
  std::vector<SupportSet> out;
  out.reserve((std::size_t(1) << m) - 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << m); ++mask) {
    SupportSet u;
    for (int i = 0; i < m; ++i) {
      if (mask & (std::uint64_t(1) << i))
        u.insert(u.end(), s.sets[i].begin(), s.sets[i].end());
    }
    out.push_back(std::move(u));  // already sorted: blocks are increasing
  }
  std::sort(out.begin(), out.end(), set_order);
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] == out[i - 1])
      throw std::logic_error("NU produced a duplicate union for a block sequence");
  }
  return out;
}

// The m-dimensional variable word over [1] of length n with supp(w, j) = s_j
// and letter 1 elsewhere.
inline VarWord blockseq_to_varword(const BlockSequence& s, int n) {
  if (s.sets.back().back() >= n)
    fail(Errc::ground_set_overflow, "ground set exceeds word length",
         s.sets.back().back());
  Symbols syms(n, Symbol::letter(1));
  for (std::size_t j = 0; j < s.sets.size(); ++j) {
    for (int i : s.sets[j]) syms[i] = Symbol::variable(static_cast<int>(j));
  }
  return validate_varword(1, s.length(), std::move(syms));
}

inline BlockSequence varword_to_blockseq(const VarWord& w) {
  std::vector<SupportSet> sets;
  sets.reserve(w.dim);
  for (int j = 0; j < w.dim; ++j) sets.push_back(support(w, j));
  return make_block_sequence(std::move(sets));
}

// The variable word over [1] with v exactly on S; its color under c is the
// color of the set S.
inline VarWord set_to_varword(const SupportSet& s, int n) {
  Symbols syms(n, Symbol::letter(1));
  for (int i : s) {
    if (i < 0 || i >= n) fail(Errc::ground_set_overflow, "set element outside {0..n-1}", i);
    syms[i] = Symbol::variable(0);
  }
  return validate_varword(1, 1, std::move(syms));
}

inline std::string format_set(const SupportSet& s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ',';
    out << s[i];
  }
  out << '}';
  return out.str();
}

inline std::string format_block_sequence(const BlockSequence& s) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < s.sets.size(); ++i) {
    if (i) out << ',';
    out << format_set(s.sets[i]);
  }
  out << ')';
  return out.str();
}

struct UnionsOutcome {
  std::optional<BlockSequence> witness;
  bool budget_exceeded = false;
  std::uint64_t nodes = 0;
};

// Finds a length-m block sequence of nonempty subsets of {0..n-1} whose
// 2^m - 1 unions are monochromatic under c (an oracle over k=1), by
// depth-first search over candidate sets in canonical order with
// monochromaticity pruning. Returns the first witness in that order;
// absence of a witness is definite (the search is exhaustive).
inline UnionsOutcome solve_unions(Oracle& c, int m, std::uint64_t budget = 1u << 22) {
  if (c.alphabet() != 1) fail(Errc::shape_mismatch, "the unions solver works over k = 1");
  if (m < 1) fail(Errc::index_out_of_range, "m must be positive", m);
  int n = c.length();
  if (n > 22) {
    // the candidate space alone dwarfs any sensible node budget
    UnionsOutcome out;
    out.budget_exceeded = true;
    return out;
  }

  std::vector<SupportSet> candidates;
  candidates.reserve((std::size_t(1) << n) - 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    SupportSet s;
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) s.push_back(i);
    candidates.push_back(std::move(s));
  }
  std::sort(candidates.begin(), candidates.end(), set_order);

  auto color_of_set = [&](const SupportSet& s) { return c.color_of(set_to_varword(s, n)); };

  UnionsOutcome out;
  std::vector<SupportSet> chain;
  std::vector<SupportSet> unions;  // all unions over the current chain
  int common = 0;

  auto rec = [&](auto&& self, std::size_t from) -> bool {
    if (static_cast<int>(chain.size()) == m) {
      out.witness = make_block_sequence(chain);
      return true;
    }
    for (std::size_t ci = from; ci < candidates.size(); ++ci) {
      const SupportSet& s = candidates[ci];
      if (!chain.empty() && s.front() <= chain.back().back()) continue;
      if (++out.nodes > budget) {
        out.budget_exceeded = true;
        return false;
      }
      int first_color = common == 0 ? color_of_set(s) : common;
      if (color_of_set(s) != first_color) continue;
      bool ok = true;
      std::size_t added_from = unions.size();
      for (std::size_t ui = 0; ui < added_from && ok; ++ui) {
        SupportSet merged = unions[ui];
        merged.insert(merged.end(), s.begin(), s.end());
        ok = color_of_set(merged) == first_color;
        if (ok) unions.push_back(std::move(merged));
      }
      if (ok) {
        unions.push_back(s);
        chain.push_back(s);
        int saved = common;
        common = first_color;
        if (self(self, ci + 1)) return true;
        common = saved;
        chain.pop_back();
      }
      unions.resize(added_from);
      if (out.budget_exceeded) return false;
    }
    return false;
  };
  rec(rec, 0);
  return out;
}

}  // namespace varword
