// Brute-force layer for the exact minimal numbers H, Sh_v and GR on tiny
// parameters: for each length n it decides whether every r-coloring of the
// relevant domain admits the required witness, and certifies lower bounds
// with explicit counterexample colorings.
//
// Two independent deciders are kept permanently as mutual oracles: a naive
// enumeration over all r^D colorings and a backtracking search over partial
// colorings. Both report the lexicographically least counterexample.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "varword/coloring.hpp"
#include "varword/error.hpp"
#include "varword/finite_unions.hpp"
#include "varword/gr_solver.hpp"
#include "varword/insensitivity.hpp"
#include "varword/word.hpp"

namespace varword {

enum class ExactTarget { hindman, shelah, graham_rothschild };

inline std::string to_token(ExactTarget t) {
  switch (t) {
    case ExactTarget::hindman: return "h";
    case ExactTarget::shelah: return "sh";
    case ExactTarget::graham_rothschild: return "gr";
  }
  return "?";
}

struct ExactParams {
  int k = 1;  // GR alphabet; SH witnesses live over k+1
  int m = 1;
  int r = 1;
  int a = 1, b = 2;  // SH only
};

// One candidate witness, reduced to its constraints on the color vector:
// either a set of domain indices that must be monochromatic, or index pairs
// that must receive equal colors.
struct WitnessCandidate {
  std::vector<int> mono;
  std::vector<std::pair<int, int>> equal_pairs;
  std::string label;
};

struct CandidateSystem {
  int alphabet = 1;
  int n = 1;
  int r = 1;
  std::vector<VarWord> domain;  // canonical enumeration order
  std::vector<WitnessCandidate> candidates;
};

namespace detail {

inline std::vector<SupportSet> sets_in_order(int n) {
  std::vector<SupportSet> out;
  out.reserve((std::size_t(1) << n) - 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    SupportSet s;
    for (int i = 0; i < n; ++i)
      if (mask & (std::uint64_t(1) << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), set_order);
  return out;
}

inline void block_sequences_rec(const std::vector<SupportSet>& sets, int m, std::size_t from,
                                std::vector<SupportSet>& chain,
                                const std::function<void(const BlockSequence&)>& emit) {
  if (static_cast<int>(chain.size()) == m) {
    emit(BlockSequence{chain});
    return;
  }
  for (std::size_t i = from; i < sets.size(); ++i) {
    if (!chain.empty() && sets[i].front() <= chain.back().back()) continue;
    chain.push_back(sets[i]);
    block_sequences_rec(sets, m, i + 1, chain, emit);
    chain.pop_back();
  }
}

inline void for_each_block_sequence(int n, int m,
                                    const std::function<void(const BlockSequence&)>& emit) {
  auto sets = sets_in_order(n);
  std::vector<SupportSet> chain;
  block_sequences_rec(sets, m, 0, chain, emit);
}

}  // namespace detail

inline CandidateSystem build_candidates(ExactTarget target, const ExactParams& params, int n) {
  CandidateSystem cs;
  cs.n = n;
  cs.r = params.r;
  cs.alphabet = target == ExactTarget::hindman
                    ? 1
                    : (target == ExactTarget::shelah ? params.k + 1 : params.k);
  cs.domain = enumerate_variable_words(cs.alphabet, n);
  std::unordered_map<std::uint64_t, int> index_of;
  index_of.reserve(cs.domain.size() * 2);
  for (std::size_t i = 0; i < cs.domain.size(); ++i)
    index_of[rank_word_u64(cs.alphabet, cs.domain[i].symbols)] = static_cast<int>(i);
  auto idx = [&](const VarWord& u) {
    return index_of.at(rank_word_u64(cs.alphabet, u.symbols));
  };

  if (target == ExactTarget::hindman) {
    if (n > 20) fail(Errc::size_guard, "ground set too large for exhaustive block sequences", n);
    detail::for_each_block_sequence(n, params.m, [&](const BlockSequence& s) {
      WitnessCandidate cand;
      for (const auto& u : nu(s)) cand.mono.push_back(idx(set_to_varword(u, n)));
      cand.label = format_block_sequence(s);
      cs.candidates.push_back(std::move(cand));
    });
    return cs;
  }

  if (params.m > n) return cs;  // no m-dimensional words of length n
  auto prototypes = enumerate_variable_words(cs.alphabet, params.m);
  for (const auto& w : enumerate_varwords_dim(cs.alphabet, n, params.m)) {
    WitnessCandidate cand;
    cand.label = to_text(w);
    if (target == ExactTarget::graham_rothschild) {
      for (const auto& x : prototypes)
        cand.mono.push_back(idx(std::get<VarWord>(substitute(w, x.symbols))));
    } else {
      if (params.a == params.b || params.a < 1 || params.b < 1 || params.a > params.k + 1 ||
          params.b > params.k + 1)
        fail(Errc::index_out_of_range, "SH needs distinct a, b in [k+1]");
      // link each word to its (a,b)-equivalence class representative
      for (std::size_t i = 0; i < prototypes.size(); ++i) {
        for (std::size_t l = 0; l < i; ++l) {
          if (ab_equivalent(prototypes[l], prototypes[i], params.a, params.b)) {
            cand.equal_pairs.emplace_back(
                idx(std::get<VarWord>(substitute(w, prototypes[l].symbols))),
                idx(std::get<VarWord>(substitute(w, prototypes[i].symbols))));
            break;
          }
        }
      }
    }
    cs.candidates.push_back(std::move(cand));
  }
  return cs;
}

// colors are 1-based; 0 marks "not yet assigned" in partial vectors.
inline bool candidate_satisfied(const WitnessCandidate& cand, const std::vector<int>& colors) {
  int common = 0;
  for (int i : cand.mono) {
    if (colors[i] == 0) return false;
    if (common == 0)
      common = colors[i];
    else if (colors[i] != common)
      return false;
  }
  for (auto [i, l] : cand.equal_pairs) {
    if (colors[i] == 0 || colors[l] == 0) return false;
    if (colors[i] != colors[l]) return false;
  }
  return true;
}

inline bool candidate_dead(const WitnessCandidate& cand, const std::vector<int>& colors) {
  int common = 0;
  for (int i : cand.mono) {
    if (colors[i] == 0) continue;
    if (common == 0)
      common = colors[i];
    else if (colors[i] != common)
      return true;
  }
  for (auto [i, l] : cand.equal_pairs) {
    if (colors[i] != 0 && colors[l] != 0 && colors[i] != colors[l]) return true;
  }
  return false;
}

inline bool coloring_admits_witness(const CandidateSystem& cs, const std::vector<int>& colors) {
  for (const auto& cand : cs.candidates)
    if (candidate_satisfied(cand, colors)) return true;
  return false;
}

enum class NStatus { all_admit, counterexample, budget_exceeded };

struct Decision {
  NStatus status = NStatus::all_admit;
  std::vector<int> colors;  // lexicographically least counterexample
  std::uint64_t nodes = 0;
};

// Plain odometer over all r^D colorings in lexicographic order.
inline Decision decide_naive(const CandidateSystem& cs, std::uint64_t budget) {
  Decision out;
  std::size_t size = cs.domain.size();
  std::vector<int> colors(size, 1);
  while (true) {
    if (++out.nodes > budget) {
      out.status = NStatus::budget_exceeded;
      return out;
    }
    if (!coloring_admits_witness(cs, colors)) {
      out.status = NStatus::counterexample;
      out.colors = colors;
      return out;
    }
    int pos = static_cast<int>(size) - 1;
    while (pos >= 0 && colors[pos] == cs.r) colors[pos--] = 1;
    if (pos < 0) break;
    ++colors[pos];
  }
  out.status = NStatus::all_admit;
  return out;
}

// Depth-first search over partial colorings in position order, colors tried
// ascending. A branch is cut once some candidate is fully colored and
// satisfied (every completion admits a witness); once every candidate is dead
// the all-ones completion is the least counterexample below this node.
inline Decision decide_backtracking(const CandidateSystem& cs, std::uint64_t budget,
                                    bool symmetry_reduction = false) {
  Decision out;
  std::size_t size = cs.domain.size();
  std::vector<int> colors(size, 0);
  bool budget_hit = false;

  auto rec = [&](auto&& self, std::size_t pos, int max_used) -> bool {
    bool all_dead = true;
    for (const auto& cand : cs.candidates) {
      if (candidate_satisfied(cand, colors)) return false;  // no counterexample below
      if (all_dead && !candidate_dead(cand, colors)) all_dead = false;
    }
    if (all_dead) {
      out.colors = colors;
      for (auto& c : out.colors)
        if (c == 0) c = 1;
      return true;
    }
    if (pos == size)
      throw std::logic_error("full coloring with a candidate neither satisfied nor dead");
    int top = symmetry_reduction ? std::min(cs.r, max_used + 1) : cs.r;
    for (int color = 1; color <= top; ++color) {
      if (++out.nodes > budget) {
        budget_hit = true;
        return false;
      }
      colors[pos] = color;
      if (self(self, pos + 1, std::max(max_used, color))) return true;
      colors[pos] = 0;
      if (budget_hit) return false;
    }
    return false;
  };

  bool found = rec(rec, 0, 0);
  if (budget_hit)
    out.status = NStatus::budget_exceeded;
  else
    out.status = found ? NStatus::counterexample : NStatus::all_admit;
  return out;
}

enum class DeciderKind { naive, backtracking, both };

struct PerLength {
  int n = 0;
  NStatus status = NStatus::all_admit;
  std::vector<int> counterexample;  // by domain index, when status says so
  std::uint64_t nodes_naive = 0, nodes_backtracking = 0;
};

struct ExactResult {
  ExactTarget target = ExactTarget::hindman;
  ExactParams params;
  int n_max = 0;
  DeciderKind decider = DeciderKind::both;
  std::vector<PerLength> per_n;
  std::optional<int> minimal_n;   // least n where every coloring admits a witness
  std::optional<int> lower_bound; // minimal value exceeds n_max: at least this
  bool inconclusive = false;      // a budget ran out before a verdict
};

// Walks n = 1..n_max, stopping at the first all-admit length (the property is
// upward monotone: appending a constant column restricts any larger instance
// to this one).
inline ExactResult exact_minimal(ExactTarget target, const ExactParams& params, int n_max,
                                 std::uint64_t budget, DeciderKind decider = DeciderKind::both) {
  if (params.m < 1 || params.r < 1 || params.k < 1)
    fail(Errc::index_out_of_range, "exact search needs positive parameters");
  ExactResult result;
  result.target = target;
  result.params = params;
  result.n_max = n_max;
  result.decider = decider;
  bool all_counterexampled = true;
  for (int n = 1; n <= n_max; ++n) {
    CandidateSystem cs = build_candidates(target, params, n);
    PerLength row;
    row.n = n;
    std::optional<Decision> naive, back;
    if (decider == DeciderKind::naive || decider == DeciderKind::both) {
      naive = decide_naive(cs, budget);
      row.nodes_naive = naive->nodes;
    }
    if (decider == DeciderKind::backtracking || decider == DeciderKind::both) {
      back = decide_backtracking(cs, budget);
      row.nodes_backtracking = back->nodes;
    }
    if (naive && back && !(naive->status == NStatus::budget_exceeded ||
                           back->status == NStatus::budget_exceeded)) {
      if (naive->status != back->status || naive->colors != back->colors)
        throw std::logic_error("naive and backtracking deciders disagree at n=" +
                               std::to_string(n));
    }
    const Decision& verdict = back ? *back : *naive;
    row.status = verdict.status;
    row.counterexample = verdict.colors;
    result.per_n.push_back(std::move(row));
    if (verdict.status == NStatus::budget_exceeded) {
      result.inconclusive = true;
      all_counterexampled = false;
      continue;
    }
    if (verdict.status == NStatus::all_admit) {
      if (all_counterexampled) result.minimal_n = n;
      else result.inconclusive = true;
      return result;
    }
  }
  if (all_counterexampled) result.lower_bound = n_max + 1;
  return result;
}

struct CounterexampleCheck {
  bool pass = false;
  std::string witness;  // a witness description when the table is not a counterexample
};

// Independent re-check of a claimed counterexample coloring by exhaustive
// witness enumeration through the solver/verifier code paths.
inline CounterexampleCheck verify_counterexample(ExactTarget target, const ExactParams& params,
                                                 int n, const std::vector<int>& colors) {
  int alphabet = target == ExactTarget::hindman
                     ? 1
                     : (target == ExactTarget::shelah ? params.k + 1 : params.k);
  OraclePtr oracle = table_oracle(alphabet, n, params.r, colors);
  if (target == ExactTarget::hindman) {
    UnionsOutcome found = solve_unions(*oracle, params.m, std::uint64_t(1) << 32);
    if (found.budget_exceeded) fail(Errc::budget_exceeded, "counterexample check ran out of budget");
    if (found.witness) return {false, format_block_sequence(*found.witness)};
    return {true, ""};
  }
  if (params.m > n) return {true, ""};
  for (const auto& w : enumerate_varwords_dim(alphabet, n, params.m)) {
    if (target == ExactTarget::graham_rothschild) {
      if (verify_monochromatic(*oracle, w).pass()) return {false, to_text(w)};
    } else {
      InsensitivityClaim claim{params.k, params.m, n, params.r, params.a, params.b,
                               BoundMode::tight, w};
      if (verify_insensitive(*oracle, claim).pass) return {false, to_text(w)};
    }
  }
  return {true, ""};
}

// One line per examined length plus the conclusion; counterexample tables are
// written separately in the coloring table format.
inline void write_exact_report(std::ostream& out, const ExactResult& result,
                               const std::function<std::string(int)>& table_name) {
  out << "# exact " << to_token(result.target) << " m=" << result.params.m
      << " r=" << result.params.r;
  if (result.target != ExactTarget::hindman) out << " k=" << result.params.k;
  if (result.target == ExactTarget::shelah)
    out << " a=" << result.params.a << " b=" << result.params.b;
  out << " n-max=" << result.n_max << "\n";
  for (const auto& row : result.per_n) {
    out << "status " << row.n << ' ';
    switch (row.status) {
      case NStatus::all_admit:
        out << "all-colorings-admit-witness";
        break;
      case NStatus::counterexample:
        out << "counterexample " << table_name(row.n);
        break;
      case NStatus::budget_exceeded:
        out << "budget-exceeded";
        break;
    }
    out << '\n';
  }
  if (result.minimal_n)
    out << "minimal " << *result.minimal_n << '\n';
  else if (result.lower_bound)
    out << "lower-bound " << *result.lower_bound << '\n';
  else
    out << "inconclusive\n";
}

}  // namespace varword
