// Executes the insensitivity lemma as an algorithm: given an r-coloring of
// W^{k+1}_v(n), builds an m-dimensional variable word over k+1 over which the
// coloring is (a,b)-insensitive, by the inductive pigeonhole construction.
//
// Each step j splices the candidate blocks a^t b^(d-t) (t = 0..d) into the
// previous word, evaluates the induced color maps T_t on W^{k+1}_v(q_j - 1),
// and collapses the first repeated pair T_{t1} = T_{t2} into the block
// a^{t1} v^{t2-t1} b^{d-t2}.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "varword/bounds.hpp"
#include "varword/coloring.hpp"
#include "varword/error.hpp"
#include "varword/word.hpp"

namespace varword {

// The step arithmetic of one construction run. q_0 >= q_1 >= ... >= q_m = m
// and q_j + d_j = q_{j-1} + 1 throughout.
struct StepPlan {
  BoundMode mode = BoundMode::tight;
  int k = 0, m = 0, r = 0;
  std::vector<LargeNat> q;  // q[0..m]
  std::vector<LargeNat> d;  // d[j-1] holds d_j for j = 1..m
  bool executable = false;  // all entries machine-sized
  std::vector<long long> q_exec, d_exec;
};

inline StepPlan plan_steps(int k, int m, int r, BoundMode mode) {
  if (k < 1 || m < 1 || r < 1)
    fail(Errc::index_out_of_range, "plan_steps needs k, m, r >= 1");
  StepPlan plan;
  plan.mode = mode;
  plan.k = k;
  plan.m = m;
  plan.r = r;
  plan.q.resize(m + 1);
  plan.d.resize(m);
  LargeNat radix(static_cast<std::uint64_t>(r));
  if (mode == BoundMode::paper_exact) {
    // q_j = f(k, m-j, m, r) + j;  d_j = r^((k+2)^(q_j - 1))
    for (int j = 0; j <= m; ++j)
      plan.q[j] = LargeNat::add(f_paper(k, m - j, m, r), LargeNat(static_cast<std::uint64_t>(j)));
    for (int j = 1; j <= m; ++j)
      plan.d[j - 1] = LargeNat::pow(
          radix, LargeNat::pow(LargeNat(static_cast<std::uint64_t>(k + 2)),
                               plan.q[j].minus_one()));
  } else {
    // backward from q_m = m via q_{j-1} = q_j + d_j - 1,
    // d_j = r^|W^{k+1}_v(q_j - 1)|
    plan.q[m] = LargeNat(static_cast<std::uint64_t>(m));
    for (int j = m; j >= 1; --j) {
      LargeNat level = plan.q[j].minus_one();
      plan.d[j - 1] = LargeNat::pow(radix, count_variable_words_large(k + 1, level));
      plan.q[j - 1] = LargeNat::add(level, plan.d[j - 1]);
    }
  }
  for (int j = 1; j <= m; ++j) {
    Cmp c = compare(LargeNat::add(plan.q[j], plan.d[j - 1]),
                    LargeNat::add(plan.q[j - 1], LargeNat(1)));
    if (c != Cmp::equal)
      throw std::logic_error("step plan violates q_j + d_j = q_{j-1} + 1 at j=" +
                             std::to_string(j));
  }
  plan.executable = true;
  for (const auto& v : plan.q) {
    auto x = v.to_u64();
    plan.executable = plan.executable && x && *x <= (1ull << 40);
    plan.q_exec.push_back(x ? static_cast<long long>(*x) : -1);
  }
  for (const auto& v : plan.d) {
    auto x = v.to_u64();
    plan.executable = plan.executable && x && *x <= (1ull << 40);
    plan.d_exec.push_back(x ? static_cast<long long>(*x) : -1);
  }
  return plan;
}

struct InsensitivityClaim {
  int k = 0;  // the lemma's k; the witness lives over alphabet k+1
  int m = 0;
  int n = 0;
  int r = 0;
  int a = 1, b = 2;
  BoundMode mode = BoundMode::tight;
  VarWord witness;
};

struct ConstructStep {
  int j;
  long long q, d, t1, t2;
};

struct ConstructTrace {
  StepPlan plan;
  std::vector<VarWord> stages;  // w_0 .. w_m
  std::vector<ConstructStep> steps;
  std::uint64_t queries = 0;  // oracle evaluations spent on the construction
};

inline InsensitivityClaim construct_insensitive(int k, int m, int r, int a, int b, int n,
                                                Oracle& c, BoundMode mode,
                                                ConstructTrace* trace_out = nullptr,
                                                std::uint64_t query_budget = UINT64_MAX) {
  if (a == b || a < 1 || b < 1 || a > k + 1 || b > k + 1)
    fail(Errc::index_out_of_range, "need distinct a, b in [k+1]");
  if (c.alphabet() != k + 1 || c.colors() != r)
    fail(Errc::shape_mismatch, "oracle must color W^{k+1}_v(n) with r colors");
  if (c.length() != n) fail(Errc::shape_mismatch, "oracle length differs from n");
  StepPlan plan = plan_steps(k, m, r, mode);
  if (!plan.executable)
    fail(Errc::too_large, "the step plan is not machine-executable at this mode");
  long long q0 = plan.q_exec[0];
  if (n < q0)
    fail(Errc::length_too_small,
         "n=" + std::to_string(n) + " is below the required length q_0=" + std::to_string(q0),
         q0);

  std::uint64_t start_queries = c.queries();
  ConstructTrace trace;
  trace.plan = plan;

  // w_0: the canonical q_0-dimensional word, last variable padded to length n
  Symbols w0(n);
  for (int i = 0; i < n; ++i)
    w0[i] = Symbol::variable(static_cast<int>(std::min<long long>(i, q0 - 1)));
  VarWord w = validate_varword(k + 1, static_cast<int>(q0), std::move(w0));
  trace.stages.push_back(w);

  for (int j = 1; j <= m; ++j) {
    long long qj = plan.q_exec[j];
    long long qprev = plan.q_exec[j - 1];
    long long d = plan.d_exec[j - 1];
    if (qj + d != qprev + 1)
      throw std::logic_error("executable plan violates q_j + d_j = q_{j-1} + 1");

    std::vector<VarWord> domain;
    if (qj >= 2) domain = enumerate_variable_words(k + 1, static_cast<int>(qj) - 1);
    if (static_cast<std::uint64_t>(d + 1) * std::max<std::uint64_t>(domain.size(), 1) >
        (std::uint64_t(1) << 27))
      fail(Errc::budget_exceeded, "step " + std::to_string(j) + " needs too many color maps");

    // T_t(z) = c(w_{j-1}(Q(a_t, z))) as a color vector over the domain
    std::vector<std::vector<int>> maps(static_cast<std::size_t>(d) + 1,
                                       std::vector<int>(domain.size()));
    for (long long t = 0; t <= d; ++t) {
      for (std::size_t zi = 0; zi < domain.size(); ++zi) {
        const Symbols& z = domain[zi].symbols;
        Symbols spliced;
        spliced.reserve(static_cast<std::size_t>(qprev));
        spliced.insert(spliced.end(), z.begin(), z.begin() + (j - 1));
        for (long long i = 0; i < d; ++i)
          spliced.push_back(Symbol::letter(i < t ? a : b));
        spliced.insert(spliced.end(), z.begin() + (j - 1), z.end());
        VarWord u = validate_varword(k + 1, 1, std::move(spliced));
        maps[t][zi] = c.color_of(std::get<VarWord>(substitute(w, u.symbols)));
        if (c.queries() - start_queries > query_budget)
          fail(Errc::budget_exceeded, "query budget exhausted during construction");
      }
    }

    // first repeated pair, t1 ascending then t2 ascending
    long long t1 = -1, t2 = -1;
    for (long long i = 0; i <= d && t1 < 0; ++i) {
      for (long long l = i + 1; l <= d; ++l) {
        if (maps[i] == maps[l]) {
          t1 = i;
          t2 = l;
          break;
        }
      }
    }
    if (t1 < 0)
      throw std::logic_error(
          "pigeonhole failure: no repeated color map among d+1 candidates (internal error)");

    // w' = (v_0..v_{j-2}, a^{t1}, v_{j-1}^{t2-t1}, b^{d-t2}, v_j..v_{q_j-1})
    Symbols wp;
    wp.reserve(static_cast<std::size_t>(qprev));
    for (int i = 0; i + 1 < j; ++i) wp.push_back(Symbol::variable(i));
    for (long long i = 0; i < t1; ++i) wp.push_back(Symbol::letter(a));
    for (long long i = t1; i < t2; ++i) wp.push_back(Symbol::variable(j - 1));
    for (long long i = t2; i < d; ++i) wp.push_back(Symbol::letter(b));
    for (long long i = j; i < qj; ++i) wp.push_back(Symbol::variable(static_cast<int>(i)));
    VarWord wprime = validate_varword(k + 1, static_cast<int>(qj), std::move(wp));

    VarWord wj = std::get<VarWord>(substitute(w, wprime.symbols));
    if (!solve_substitution(w, wj.symbols).reduced())
      throw std::logic_error("constructed w_j is not reduced by w_{j-1}");
    w = std::move(wj);
    trace.steps.push_back(ConstructStep{j, qj, d, t1, t2});
    trace.stages.push_back(w);
  }

  trace.queries = c.queries() - start_queries;
  if (trace_out) *trace_out = std::move(trace);
  return InsensitivityClaim{k, m, n, r, a, b, mode, std::move(w)};
}

struct PairCheck {
  bool pass = false;
  std::optional<std::pair<VarWord, VarWord>> counterexample;
};

// (a,b)-equivalence of variable words: same variable positions, and agreement
// at every position whose letter lies outside {a,b}.
inline bool ab_equivalent(const VarWord& x, const VarWord& y, int a, int b) {
  if (x.length() != y.length()) return false;
  for (int i = 0; i < x.length(); ++i) {
    Symbol sx = x.symbols[i], sy = y.symbols[i];
    if (sx.is_variable() != sy.is_variable()) return false;
    if (sx.is_variable()) continue;
    int lx = sx.letter_value(), ly = sy.letter_value();
    bool x_free = lx == a || lx == b;
    bool y_free = ly == a || ly == b;
    if (x_free != y_free) return false;
    if (!x_free && lx != ly) return false;
  }
  return true;
}

// Checks c(w(x)) = c(w(y)) for every (a,b)-equivalent pair x, y in
// W^{k+1}_v(m); reports the first failing pair in lexicographic order.
inline PairCheck verify_insensitive(Oracle& c, const InsensitivityClaim& claim) {
  const VarWord& w = claim.witness;
  if (c.alphabet() != claim.k + 1 || c.length() != claim.n || c.colors() != claim.r)
    fail(Errc::shape_mismatch, "oracle shape does not match the claim");
  if (w.k != claim.k + 1 || w.dim != claim.m || w.length() != claim.n)
    fail(Errc::shape_mismatch, "witness shape does not match the claim");
  auto domain = enumerate_variable_words(w.k, claim.m);
  for (std::size_t xi = 0; xi < domain.size(); ++xi) {
    for (std::size_t yi = xi + 1; yi < domain.size(); ++yi) {
      if (!ab_equivalent(domain[xi], domain[yi], claim.a, claim.b)) continue;
      int cx = c.color_of(std::get<VarWord>(substitute(w, domain[xi].symbols)));
      int cy = c.color_of(std::get<VarWord>(substitute(w, domain[yi].symbols)));
      if (cx != cy) return PairCheck{false, std::make_pair(domain[xi], domain[yi])};
    }
  }
  return PairCheck{true, std::nullopt};
}

// Condition (iv) of the construction at step j: pairs that differ exactly at
// coordinate j-1, holding a resp. b there, get equal colors through w_j.
inline PairCheck verify_step_condition_iv(Oracle& c, const VarWord& wj, int j, int a, int b) {
  int qj = wj.dim;
  if (j < 1 || j > qj) fail(Errc::index_out_of_range, "step index outside 1..dim", j);
  if (c.alphabet() != wj.k || c.length() != wj.length())
    fail(Errc::shape_mismatch, "oracle shape does not match w_j");
  if (qj == 1) return PairCheck{true, std::nullopt};  // no surrounding coordinates
  for (const auto& z : enumerate_variable_words(wj.k, qj - 1)) {
    Symbols xs = z.symbols, ys = z.symbols;
    xs.insert(xs.begin() + (j - 1), Symbol::letter(a));
    ys.insert(ys.begin() + (j - 1), Symbol::letter(b));
    VarWord x = validate_varword(wj.k, 1, std::move(xs));
    VarWord y = validate_varword(wj.k, 1, std::move(ys));
    int cx = c.color_of(std::get<VarWord>(substitute(wj, x.symbols)));
    int cy = c.color_of(std::get<VarWord>(substitute(wj, y.symbols)));
    if (cx != cy) return PairCheck{false, std::make_pair(x, y)};
  }
  return PairCheck{true, std::nullopt};
}

}  // namespace varword
