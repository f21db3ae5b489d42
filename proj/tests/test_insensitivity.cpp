// Step plans and the inductive insensitivity construction.
#include <catch2/catch_amalgamated.hpp>

#include "varword/insensitivity.hpp"

using namespace varword;

namespace {
Symbol L(int a) { return Symbol::letter(a); }
Symbol V(int j) { return Symbol::variable(j); }

std::vector<long long> exec_q(const StepPlan& p) { return p.q_exec; }
std::vector<long long> exec_d(const StepPlan& p) { return p.d_exec; }
}  // namespace

TEST_CASE("plans match the recursion") {
  StepPlan p1 = plan_steps(1, 1, 2, BoundMode::paper_exact);
  CHECK(exec_q(p1) == std::vector<long long>{2, 1});
  CHECK(exec_d(p1) == std::vector<long long>{2});

  StepPlan p2 = plan_steps(1, 2, 2, BoundMode::tight);
  CHECK(exec_q(p2) == std::vector<long long>{34, 3, 2});
  CHECK(exec_d(p2) == std::vector<long long>{32, 2});

  StepPlan p3 = plan_steps(2, 2, 2, BoundMode::tight);
  CHECK(exec_q(p3) == std::vector<long long>{130, 3, 2});
  CHECK(exec_d(p3) == std::vector<long long>{128, 2});
}

TEST_CASE("plan q0 equals the sh bound in both modes") {
  for (int k = 1; k <= 2; ++k) {
    for (int m = 1; m <= 2; ++m) {
      for (int r = 1; r <= 3; ++r) {
        for (BoundMode mode : {BoundMode::paper_exact, BoundMode::tight}) {
          StepPlan plan = plan_steps(k, m, r, mode);
          CHECK(compare(plan.q[0], sh_bound(k, m, r, mode)) == Cmp::equal);
          CHECK(compare(plan.q[m], LargeNat(static_cast<std::uint64_t>(m))) == Cmp::equal);
        }
      }
    }
  }
}

TEST_CASE("eq (2) holds on paper-mode m=1 plans with f(k,1,1,r) = r") {
  for (int k = 1; k <= 2; ++k) {
    for (int r = 1; r <= 3; ++r) {
      StepPlan plan = plan_steps(k, 1, r, BoundMode::paper_exact);
      REQUIRE(plan.executable);
      CHECK(plan.q_exec == std::vector<long long>{r, 1});
      CHECK(plan.d_exec == std::vector<long long>{r});
      CHECK(plan.q_exec[1] + plan.d_exec[0] == plan.q_exec[0] + 1);
    }
  }
}

TEST_CASE("astronomical plans are reported, not executed") {
  StepPlan plan = plan_steps(1, 2, 2, BoundMode::paper_exact);
  CHECK(!plan.executable);
  CHECK(plan.q[0].is_exact());          // 8 + 2^6561 still fits the threshold
  CHECK(plan.q[0].bit_length() == 6562);
  CHECK(plan.q_exec[0] == -1);

  auto c = seeded_oracle(0, 2, 40, 2);
  CHECK_THROWS_AS(construct_insensitive(1, 2, 2, 1, 2, 40, *c, BoundMode::paper_exact), Error);

  // deeper tight plans go symbolic but still satisfy eq (2) structurally
  StepPlan deep = plan_steps(1, 3, 2, BoundMode::tight);
  CHECK(!deep.executable);
}

TEST_CASE("construction at m=1 needs no queries and is vacuously insensitive") {
  auto c = seeded_oracle(11, 2, 2, 2);
  ConstructTrace trace;
  InsensitivityClaim claim =
      construct_insensitive(1, 1, 2, 1, 2, 2, *c, BoundMode::paper_exact, &trace);
  CHECK(claim.witness.dim == 1);
  CHECK(claim.witness.length() == 2);
  CHECK(trace.queries == 0);  // W^{k+1}_v(0) is empty
  CHECK(verify_insensitive(*c, claim).pass);
}

TEST_CASE("tight construction k=1 m=2 across seeds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = seeded_oracle(seed, 2, 34, 2);
    ConstructTrace trace;
    InsensitivityClaim claim =
        construct_insensitive(1, 2, 2, 1, 2, 34, *c, BoundMode::tight, &trace);
    CHECK(trace.queries <= 168);
    CHECK(claim.witness.dim == 2);
    CHECK(claim.witness.length() == 34);
    CHECK(verify_insensitive(*c, claim).pass);

    // every step satisfies condition (iv) and eq (2)
    REQUIRE(trace.stages.size() == 3);
    for (const auto& step : trace.steps) {
      CHECK(step.q + step.d == trace.plan.q_exec[step.j - 1] + 1);
      CHECK(verify_step_condition_iv(*c, trace.stages[step.j], step.j, 1, 2).pass);
    }
    // w_j reduced by w_{j-1}, and supports of settled variables are stable
    for (std::size_t j = 1; j < trace.stages.size(); ++j) {
      CHECK(solve_substitution(trace.stages[j - 1], trace.stages[j].symbols).reduced());
      for (int i = 0; i < static_cast<int>(j); ++i)
        CHECK(support(trace.stages[j], i) == support(trace.stages.back(), i));
    }
  }
}

TEST_CASE("construction is deterministic") {
  auto c1 = seeded_oracle(4, 2, 34, 2);
  auto c2 = seeded_oracle(4, 2, 34, 2);
  auto a = construct_insensitive(1, 2, 2, 1, 2, 34, *c1, BoundMode::tight);
  auto b = construct_insensitive(1, 2, 2, 1, 2, 34, *c2, BoundMode::tight);
  CHECK(a.witness == b.witness);
}

TEST_CASE("tight construction k=2 m=2") {
  auto c = seeded_oracle(1, 3, 130, 2);
  ConstructTrace trace;
  InsensitivityClaim claim =
      construct_insensitive(2, 2, 2, 2, 3, 130, *c, BoundMode::tight, &trace);
  CHECK(trace.queries <= 906);
  CHECK(verify_insensitive(*c, claim).pass);
  for (const auto& step : trace.steps)
    CHECK(verify_step_condition_iv(*c, trace.stages[step.j], step.j, 2, 3).pass);
}

TEST_CASE("length below q0 is rejected") {
  auto c = seeded_oracle(0, 2, 33, 2);
  try {
    construct_insensitive(1, 2, 2, 1, 2, 33, *c, BoundMode::tight);
    FAIL("expected LengthTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::length_too_small);
    CHECK(e.detail() == 34);
  }
}

TEST_CASE("r=1 constructions always succeed at tiny lengths") {
  auto c = seeded_oracle(123, 2, 2, 1);
  InsensitivityClaim claim = construct_insensitive(1, 2, 1, 1, 2, 2, *c, BoundMode::tight);
  CHECK(claim.witness == validate_varword(2, 2, {V(0), V(1)}));
  CHECK(verify_insensitive(*c, claim).pass);
}

TEST_CASE("verification catches violations") {
  // a table distinguishing w((1,v)) from w((2,v)) for w = (v0, v1)
  std::vector<int> colors;
  auto words = enumerate_variable_words(2, 2);
  for (const auto& u : words) colors.push_back(u.symbols[0] == L(1) ? 1 : 2);
  auto c = table_oracle(2, 2, 2, colors);
  InsensitivityClaim claim{1, 2, 2, 2, 1, 2, BoundMode::tight,
                           validate_varword(2, 2, {V(0), V(1)})};
  PairCheck check = verify_insensitive(*c, claim);
  REQUIRE(!check.pass);
  CHECK(check.counterexample->first == validate_varword(2, 1, {L(1), V(0)}));
  CHECK(check.counterexample->second == validate_varword(2, 1, {L(2), V(0)}));

  PairCheck step = verify_step_condition_iv(*c, claim.witness, 1, 1, 2);
  CHECK(!step.pass);
}

TEST_CASE("condition (iv) is vacuous for one-dimensional stages") {
  auto c = seeded_oracle(5, 2, 3, 2);
  VarWord w = validate_varword(2, 1, {V(0), L(1), V(0)});
  CHECK(verify_step_condition_iv(*c, w, 1, 1, 2).pass);
}

TEST_CASE("equivalence respects the variable and fixed letters") {
  VarWord x = validate_varword(3, 1, {V(0), L(2), L(1)});
  VarWord y = validate_varword(3, 1, {V(0), L(3), L(1)});
  CHECK(ab_equivalent(x, y, 2, 3));
  CHECK(!ab_equivalent(x, y, 1, 2));
  VarWord z = validate_varword(3, 1, {L(2), V(0), L(1)});
  CHECK(!ab_equivalent(x, z, 2, 3));  // different variable support
}
