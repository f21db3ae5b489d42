// The base-case Graham-Rothschild theorem as an algorithm: find an
// m-dimensional variable word whose reduced variable words are monochromatic,
// either by direct search or by the induction on k
// (insensitivity stage + pullback + recursion), and verify monochromaticity.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "varword/bounds.hpp"
#include "varword/coloring.hpp"
#include "varword/finite_unions.hpp"
#include "varword/insensitivity.hpp"
#include "varword/word.hpp"

namespace varword {

struct MonochromaticClaim {
  int k = 0, m = 0, n = 0, r = 0;
  int color = 1;
  VarWord witness;
};

struct MonoCheck {
  std::optional<int> color;  // the common color when the check passes
  std::optional<std::pair<VarWord, VarWord>> counterexample;

  bool pass() const { return color.has_value(); }
};

// Evaluates c(w(x)) over all (k+1)^m - k^m one-dimensional x in W^k_v(m);
// returns the common color or the first two reduced words that differ.
inline MonoCheck verify_monochromatic(Oracle& c, const VarWord& w) {
  if (c.alphabet() != w.k || c.length() != w.length())
    fail(Errc::shape_mismatch, "oracle shape does not match the witness");
  MonoCheck out;
  std::optional<VarWord> first;
  for (const auto& x : enumerate_variable_words(w.k, w.dim)) {
    VarWord reduced = std::get<VarWord>(substitute(w, x.symbols));
    int color = c.color_of(reduced);
    if (!first) {
      first = reduced;
      out.color = color;
    } else if (color != *out.color) {
      return MonoCheck{std::nullopt, std::make_pair(*first, reduced)};
    }
  }
  return out;
}

enum class StrategyKind { direct_search, inductive };

struct Strategy {
  StrategyKind kind = StrategyKind::direct_search;
  BoundMode mode = BoundMode::tight;
  // Base dimension for the k = 1 stage. Overriding is unsafe: completion is
  // not guaranteed when the value lies below the true H(m,r).
  std::optional<long long> override_base;
  const HValues* h_values = nullptr;
  std::uint64_t budget = std::uint64_t(1) << 24;
  bool strict_length = false;
};

enum class SolveStatus { solved, exhausted, not_guaranteed, budget_exceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::not_guaranteed;
  std::optional<MonochromaticClaim> claim;
  std::vector<std::string> trace;
};

// The length the inductive strategy needs: the chain
// GR(1) = H(m,r) (or the override), GR(k+1) = Sh-bound(k, GR(k), r).
inline LargeNat required_length(int k, int m, int r, const Strategy& strategy) {
  long long base;
  if (strategy.override_base) {
    base = *strategy.override_base;
  } else {
    static const HValues builtin;
    const HValues& table = strategy.h_values ? *strategy.h_values : builtin;
    auto h = table.get(m, r);
    if (!h)
      fail(Errc::missing_h_value,
           "no H(" + std::to_string(m) + "," + std::to_string(r) +
               ") value; provide a table or an override");
    base = *h;
  }
  return gr_bound_chain(k, base, r, strategy.mode);
}

namespace detail {

inline SolveResult solve_gr_inductive(int k, int m, int r, int n, const OraclePtr& c,
                                      const Strategy& strategy) {
  SolveResult result;
  if (k == 1) {
    // GR(1,m,r) = H(m,r): solve through the finite-unions correspondence
    UnionsOutcome unions = solve_unions(*c, m, strategy.budget);
    if (unions.budget_exceeded) {
      result.status = SolveStatus::budget_exceeded;
      result.trace.push_back("k=1 unions search hit the node budget");
      return result;
    }
    if (!unions.witness) {
      result.status = SolveStatus::not_guaranteed;
      result.trace.push_back("k=1 unions search exhausted at n=" + std::to_string(n));
      return result;
    }
    VarWord w = blockseq_to_varword(*unions.witness, n);
    MonoCheck check = verify_monochromatic(*c, w);
    if (!check.pass())
      throw std::logic_error("unions witness failed monochromaticity re-verification");
    result.status = SolveStatus::solved;
    result.claim = MonochromaticClaim{1, m, n, r, *check.color, std::move(w)};
    result.trace.push_back("k=1 witness " + format_block_sequence(*unions.witness));
    return result;
  }

  // inductive step: insensitivity for (a,b) = (k-1, k), pull back, recurse
  long long base;
  if (strategy.override_base) {
    base = *strategy.override_base;
  } else {
    static const HValues builtin;
    const HValues& table = strategy.h_values ? *strategy.h_values : builtin;
    auto h = table.get(m, r);
    if (!h) fail(Errc::missing_h_value, "inductive strategy needs an H value or an override");
    base = *h;
  }
  LargeNat m_chain = gr_bound_chain(k - 1, base, r, strategy.mode);
  auto m_dim = m_chain.to_u64();
  if (!m_dim) fail(Errc::too_large, "inductive base dimension is not machine-sized");
  int M = static_cast<int>(*m_dim);

  StepPlan plan = plan_steps(k - 1, M, r, strategy.mode);
  if (!plan.executable)
    fail(Errc::too_large, "insensitivity plan is not machine-executable for this shape");
  if (n < plan.q_exec[0]) {
    if (strategy.strict_length)
      fail(Errc::length_too_small,
           "n=" + std::to_string(n) + " below the inductive requirement q_0=" +
               std::to_string(plan.q_exec[0]),
           plan.q_exec[0]);
    result.status = SolveStatus::not_guaranteed;
    result.trace.push_back("n=" + std::to_string(n) + " below the inductive requirement q_0=" +
                           std::to_string(plan.q_exec[0]));
    return result;
  }

  ConstructTrace ctrace;
  InsensitivityClaim stage =
      construct_insensitive(k - 1, M, r, k - 1, k, n, *c, strategy.mode, &ctrace, strategy.budget);
  PairCheck stage_ok = verify_insensitive(*c, stage);
  if (!stage_ok.pass)
    throw std::logic_error("constructed insensitivity stage failed verification");
  result.trace.push_back("insensitive stage: M=" + std::to_string(M) + ", queries=" +
                         std::to_string(ctrace.queries));

  OraclePtr pulled = pullback_oracle(c, stage.witness, k - 1);
  SolveResult sub = solve_gr_inductive(k - 1, m, r, M, pulled, strategy);
  for (const auto& line : sub.trace) result.trace.push_back("  " + line);
  if (sub.status != SolveStatus::solved) {
    result.status = sub.status == SolveStatus::budget_exceeded ? SolveStatus::budget_exceeded
                                                               : SolveStatus::not_guaranteed;
    result.trace.push_back("base stage did not produce a witness");
    return result;
  }

  VarWord w = std::get<VarWord>(substitute(stage.witness, sub.claim->witness.symbols));
  MonoCheck check = verify_monochromatic(*c, w);
  if (!check.pass())
    throw std::logic_error("inductive witness failed monochromaticity re-verification");
  result.status = SolveStatus::solved;
  result.claim = MonochromaticClaim{k, m, n, r, *check.color, std::move(w)};
  return result;
}

}  // namespace detail

// DirectSearch scans all m-dimensional variable words of length n in
// canonical order and returns the first monochromatic one; Exhausted is a
// complete-search verdict. The inductive strategy runs the induction on k and
// reports NotGuaranteed when an attempt below the bound fails.
inline SolveResult solve_gr(int k, int m, int r, int n, const OraclePtr& c,
                            const Strategy& strategy) {
  if (c->alphabet() != k || c->length() != n || c->colors() != r)
    fail(Errc::shape_mismatch, "oracle shape does not match (k, n, r)");
  if (m < 1) fail(Errc::index_out_of_range, "m must be positive", m);

  if (strategy.kind == StrategyKind::direct_search) {
    SolveResult result;
    std::vector<VarWord> candidates;
    try {
      candidates = enumerate_varwords_dim(k, n, m);
    } catch (const Error& e) {
      if (e.code() != Errc::size_guard) throw;
      result.status = SolveStatus::budget_exceeded;
      result.trace.push_back("candidate space exceeds the enumeration budget");
      return result;
    }
    std::uint64_t nodes = 0;
    for (const auto& w : candidates) {
      if (++nodes > strategy.budget) {
        result.status = SolveStatus::budget_exceeded;
        return result;
      }
      MonoCheck check = verify_monochromatic(*c, w);
      if (check.pass()) {
        result.status = SolveStatus::solved;
        result.claim = MonochromaticClaim{k, m, n, r, *check.color, w};
        return result;
      }
    }
    result.status = SolveStatus::exhausted;
    result.trace.push_back("direct search exhausted all candidates");
    return result;
  }
  return detail::solve_gr_inductive(k, m, r, n, c, strategy);
}

}  // namespace varword
