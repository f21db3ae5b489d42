// varword: construct, verify and count the combinatorial witnesses behind
// colorings of variable words — bound chains, insensitivity constructions,
// monochromatic solvers and exact brute-force minima.
//
// Exit codes: 0 success, 1 failed verification, 2 usage or input error,
// 3 length too small, 4 internal verification failure, 10 exhausted,
// 11 not guaranteed, 12 budget exceeded.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "varword/varword.hpp"

namespace {

using namespace varword;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLengthTooSmall = 3;
constexpr int kExitInternal = 4;
constexpr int kExitExhausted = 10;
constexpr int kExitNotGuaranteed = 11;
constexpr int kExitBudget = 12;

// Coloring sources are URI-like: "seeded:SEED" or "table:PATH".
OraclePtr make_oracle(const std::string& spec, int k, int n, int r) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    fail(Errc::parse_error, "coloring source must be seeded:SEED or table:PATH");
  std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
  if (kind == "seeded") {
    std::uint64_t seed = 0;
    std::size_t pos = 0;
    try {
      seed = std::stoull(rest, &pos);
    } catch (const std::exception&) {
      fail(Errc::parse_error, "bad seed in '" + spec + "'");
    }
    if (pos != rest.size()) fail(Errc::parse_error, "bad seed in '" + spec + "'");
    return seeded_oracle(seed, k, n, r);
  }
  if (kind == "table") {
    OraclePtr oracle = load_table_file(rest);
    if (oracle->alphabet() != k || oracle->length() != n || oracle->colors() != r)
      fail(Errc::shape_mismatch,
           "table shape (" + std::to_string(oracle->alphabet()) + "," +
               std::to_string(oracle->length()) + "," + std::to_string(oracle->colors()) +
               ") does not match the requested (" + std::to_string(k) + "," +
               std::to_string(n) + "," + std::to_string(r) + ")");
    return oracle;
  }
  fail(Errc::parse_error, "unknown coloring source '" + kind + "'");
}

void print_value_lines(const std::string& label, const LargeNat& value) {
  std::cout << label << " = " << value.describe() << "\n";
  if (value.is_exact())
    std::cout << "exact " << value.decimal() << "\n";
  else
    std::cout << "symbolic " << value.expression() << "\n";
}

struct BoundsArgs {
  std::string fn;
  long long k = 1, m = 1, r = 1, j = -1;
  std::string mode = "tight";
  std::string h_table;
};

int run_bounds(const BoundsArgs& args) {
  BoundMode mode = parse_bound_mode(args.mode);
  std::cout << "# bounds fn=" << args.fn << " k=" << args.k << " m=" << args.m
            << " r=" << args.r;
  if (args.j >= 0) std::cout << " j=" << args.j;
  if (args.fn == "sh" || args.fn == "gr") std::cout << " mode=" << args.mode;
  std::cout << "\n";
  if (args.fn == "f" || args.fn == "f-tight") {
    long long j = args.j >= 0 ? args.j : args.m;
    LargeNat v = args.fn == "f" ? f_paper(args.k, j, args.m, args.r)
                                : f_tight(args.k, j, args.m, args.r);
    std::ostringstream label;
    label << (args.fn == "f" ? "f(" : "f_tight(") << args.k << ',' << j << ',' << args.m << ','
          << args.r << ')';
    print_value_lines(label.str(), v);
    return 0;
  }
  if (args.fn == "sh") {
    print_value_lines("sh_bound", sh_bound(args.k, args.m, args.r, mode));
    return 0;
  }
  if (args.fn == "gr") {
    HValues table;
    if (!args.h_table.empty()) {
      std::ifstream in(args.h_table);
      if (!in) fail(Errc::parse_error, "cannot open H table: " + args.h_table);
      table = HValues::from_stream(in);
    }
    print_value_lines("gr_bound", gr_bound(args.k, args.m, args.r, mode, table));
    return 0;
  }
  fail(Errc::parse_error, "--fn must be one of f, f-tight, sh, gr");
}

struct ConstructArgs {
  int k = 1, m = 1, r = 1, a = 1, b = 2, n = 1;
  std::string mode = "tight";
  std::string coloring;
  std::string out;
  std::uint64_t budget = std::uint64_t(1) << 24;
};

int run_construct(const ConstructArgs& args) {
  BoundMode mode = parse_bound_mode(args.mode);
  OraclePtr oracle = make_oracle(args.coloring, args.k + 1, args.n, args.r);
  std::cout << "# construct insensitive k=" << args.k << " m=" << args.m << " r=" << args.r
            << " a=" << args.a << " b=" << args.b << " n=" << args.n << " mode=" << args.mode
            << "\n";
  ConstructTrace trace;
  InsensitivityClaim claim = construct_insensitive(args.k, args.m, args.r, args.a, args.b,
                                                   args.n, *oracle, mode, &trace, args.budget);
  std::cout << "plan q =";
  for (long long q : trace.plan.q_exec) std::cout << ' ' << q;
  std::cout << "\nplan d =";
  for (long long d : trace.plan.d_exec) std::cout << ' ' << d;
  std::cout << "\n";
  for (const auto& step : trace.steps)
    std::cout << "step j=" << step.j << " d=" << step.d << " t1=" << step.t1
              << " t2=" << step.t2 << "\n";
  std::cout << "queries " << trace.queries << "\n";
  std::cout << "witness " << to_text(claim.witness) << "\n";
  PairCheck check = verify_insensitive(*oracle, claim);
  if (!check.pass) {
    std::cout << "VERIFICATION FAILED: " << to_text(check.counterexample->first) << " vs "
              << to_text(check.counterexample->second) << "\n";
    return kExitInternal;
  }
  std::cout << "verified insensitive\n";
  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) fail(Errc::parse_error, "cannot write certificate: " + args.out);
    write_certificate(out, claim);
    std::cout << "certificate " << args.out << "\n";
  }
  return 0;
}

struct SolveGrArgs {
  int k = 1, m = 1, r = 1, n = 1;
  std::string strategy = "direct";
  std::string mode = "tight";
  std::optional<long long> override_base;
  std::string h_table;
  std::string coloring;
  std::string out;
  std::uint64_t budget = std::uint64_t(1) << 24;
  bool strict = false;
};

int run_solve_gr(const SolveGrArgs& args) {
  OraclePtr oracle = make_oracle(args.coloring, args.k, args.n, args.r);
  Strategy strategy;
  strategy.kind =
      args.strategy == "direct" ? StrategyKind::direct_search : StrategyKind::inductive;
  strategy.mode = parse_bound_mode(args.mode);
  strategy.budget = args.budget;
  strategy.strict_length = args.strict;
  if (args.override_base) strategy.override_base = *args.override_base;
  HValues table;
  if (!args.h_table.empty()) {
    std::ifstream in(args.h_table);
    if (!in) fail(Errc::parse_error, "cannot open H table: " + args.h_table);
    table = HValues::from_stream(in);
    strategy.h_values = &table;
  }
  std::cout << "# solve gr k=" << args.k << " m=" << args.m << " r=" << args.r
            << " n=" << args.n << " strategy=" << args.strategy << "\n";
  SolveResult result = solve_gr(args.k, args.m, args.r, args.n, oracle, strategy);
  for (const auto& line : result.trace) std::cout << "# " << line << "\n";
  switch (result.status) {
    case SolveStatus::solved:
      break;
    case SolveStatus::exhausted:
      std::cout << "status exhausted\n";
      return kExitExhausted;
    case SolveStatus::not_guaranteed:
      std::cout << "status not-guaranteed\n";
      return kExitNotGuaranteed;
    case SolveStatus::budget_exceeded:
      std::cout << "status budget-exceeded\n";
      return kExitBudget;
  }
  std::cout << "status solved\ncolor " << result.claim->color << "\nwitness "
            << to_text(result.claim->witness) << "\n";
  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) fail(Errc::parse_error, "cannot write certificate: " + args.out);
    write_certificate(out, *result.claim);
    std::cout << "certificate " << args.out << "\n";
  }
  return 0;
}

struct SolveUnionsArgs {
  int m = 1, r = 1, n = 1;
  std::string coloring;
  std::uint64_t budget = std::uint64_t(1) << 22;
};

int run_solve_unions(const SolveUnionsArgs& args) {
  OraclePtr oracle = make_oracle(args.coloring, 1, args.n, args.r);
  std::cout << "# solve unions m=" << args.m << " r=" << args.r << " n=" << args.n << "\n";
  UnionsOutcome outcome = solve_unions(*oracle, args.m, args.budget);
  if (outcome.budget_exceeded) {
    std::cout << "status budget-exceeded\n";
    return kExitBudget;
  }
  if (!outcome.witness) {
    std::cout << "status exhausted\n";
    return kExitExhausted;
  }
  std::cout << "status solved\nwitness " << format_block_sequence(*outcome.witness) << "\n";
  return 0;
}

struct VerifyArgs {
  std::string cert;
  std::string coloring;
};

int run_verify(const VerifyArgs& args) {
  std::ifstream in(args.cert);
  if (!in) fail(Errc::parse_error, "cannot open certificate: " + args.cert);
  Certificate cert = read_certificate(in);
  if (const auto* claim = std::get_if<InsensitivityClaim>(&cert)) {
    OraclePtr oracle = make_oracle(args.coloring, claim->k + 1, claim->n, claim->r);
    std::cout << "# verify insensitive k=" << claim->k << " m=" << claim->m
              << " n=" << claim->n << " a=" << claim->a << " b=" << claim->b << "\n";
    PairCheck check = verify_insensitive(*oracle, *claim);
    if (!check.pass) {
      std::cout << "FAILED pair " << to_text(check.counterexample->first) << " vs "
                << to_text(check.counterexample->second) << "\n";
      return kExitVerifyFailed;
    }
    std::cout << "verified\n";
    return 0;
  }
  const auto& claim = std::get<MonochromaticClaim>(cert);
  OraclePtr oracle = make_oracle(args.coloring, claim.k, claim.n, claim.r);
  std::cout << "# verify monochromatic k=" << claim.k << " m=" << claim.m << " n=" << claim.n
            << " color=" << claim.color << "\n";
  MonoCheck check = verify_monochromatic(*oracle, claim.witness);
  if (!check.pass()) {
    std::cout << "FAILED pair " << to_text(check.counterexample->first) << " vs "
              << to_text(check.counterexample->second) << "\n";
    return kExitVerifyFailed;
  }
  if (*check.color != claim.color) {
    std::cout << "FAILED color: common color is " << *check.color << ", certificate says "
              << claim.color << "\n";
    return kExitVerifyFailed;
  }
  std::cout << "verified\n";
  return 0;
}

struct ExactArgs {
  std::string target;
  int k = 1, m = 1, r = 1, a = 1, b = 2;
  int n_max = 1;
  std::uint64_t budget = std::uint64_t(1) << 26;
  std::string decider = "both";
  std::string out;
  std::string report;
};

int run_exact(const ExactArgs& args) {
  ExactTarget target;
  if (args.target == "h")
    target = ExactTarget::hindman;
  else if (args.target == "sh")
    target = ExactTarget::shelah;
  else if (args.target == "gr")
    target = ExactTarget::graham_rothschild;
  else
    fail(Errc::parse_error, "--target must be one of h, sh, gr");
  DeciderKind decider;
  if (args.decider == "naive")
    decider = DeciderKind::naive;
  else if (args.decider == "backtrack")
    decider = DeciderKind::backtracking;
  else if (args.decider == "both")
    decider = DeciderKind::both;
  else
    fail(Errc::parse_error, "--decider must be one of naive, backtrack, both");

  ExactParams params{args.k, args.m, args.r, args.a, args.b};
  ExactResult result = exact_minimal(target, params, args.n_max, args.budget, decider);

  std::string prefix = args.out.empty()
                           ? "exact-" + args.target + "-m" + std::to_string(args.m) + "-r" +
                                 std::to_string(args.r)
                           : args.out;
  auto table_name = [&](int n) { return prefix + "-n" + std::to_string(n) + ".coloring"; };
  int alphabet = target == ExactTarget::hindman ? 1
                 : target == ExactTarget::shelah ? args.k + 1
                                                 : args.k;
  for (const auto& row : result.per_n) {
    if (row.status != NStatus::counterexample) continue;
    auto check = verify_counterexample(target, params, row.n, row.counterexample);
    if (!check.pass) {
      std::cout << "INTERNAL: counterexample at n=" << row.n
                << " admits witness " << check.witness << "\n";
      return kExitInternal;
    }
    std::ofstream out(table_name(row.n));
    if (!out) fail(Errc::parse_error, "cannot write " + table_name(row.n));
    OraclePtr oracle = table_oracle(alphabet, row.n, args.r, row.counterexample);
    write_table(out, *oracle);
  }
  write_exact_report(std::cout, result, table_name);
  if (!args.report.empty()) {
    std::ofstream out(args.report);
    if (!out) fail(Errc::parse_error, "cannot write report: " + args.report);
    write_exact_report(out, result, table_name);
  }
  if (result.inconclusive) return kExitBudget;
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{
      "Witness toolkit for colorings of variable words: exact bound chains,\n"
      "insensitivity constructions, monochromatic solvers, certificate\n"
      "verification and exhaustive minimal numbers on tiny instances."};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads (the engine is deterministic; 1 reproduces any run)")
      ->check(CLI::PositiveNumber);

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "evaluate the bound functions exactly");
  bounds->add_option("--fn", bounds_args.fn, "f | f-tight | sh | gr")->required();
  bounds->add_option("--k", bounds_args.k)->required();
  bounds->add_option("--m", bounds_args.m)->required();
  bounds->add_option("--r", bounds_args.r)->required();
  bounds->add_option("--j", bounds_args.j, "recursion depth for f / f-tight");
  bounds->add_option("--mode", bounds_args.mode, "paper | tight (for sh, gr)");
  bounds->add_option("--h-table", bounds_args.h_table, "file of exact H(m,r) values: 'm r value'");

  auto* construct = app.add_subcommand("construct", "construct witnesses");
  ConstructArgs construct_args;
  auto* insensitive = construct->add_subcommand("insensitive", "build an insensitivity witness");
  insensitive->add_option("--k", construct_args.k)->required();
  insensitive->add_option("--m", construct_args.m)->required();
  insensitive->add_option("--r", construct_args.r)->required();
  insensitive->add_option("--a", construct_args.a)->required();
  insensitive->add_option("--b", construct_args.b)->required();
  insensitive->add_option("--n", construct_args.n)->required();
  insensitive->add_option("--mode", construct_args.mode, "paper | tight");
  insensitive->add_option("--coloring", construct_args.coloring, "seeded:SEED | table:PATH")
      ->required();
  insensitive->add_option("--out", construct_args.out, "certificate output path");
  insensitive->add_option("--budget", construct_args.budget, "oracle query budget");
  construct->require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve instances");
  SolveGrArgs gr_args;
  auto* solve_gr_cmd = solve->add_subcommand("gr", "find a monochromatic m-dimensional word");
  solve_gr_cmd->add_option("--k", gr_args.k)->required();
  solve_gr_cmd->add_option("--m", gr_args.m)->required();
  solve_gr_cmd->add_option("--r", gr_args.r)->required();
  solve_gr_cmd->add_option("--n", gr_args.n)->required();
  solve_gr_cmd->add_option("--strategy", gr_args.strategy, "direct | inductive");
  solve_gr_cmd->add_option("--mode", gr_args.mode, "paper | tight");
  long long override_value = -1;
  solve_gr_cmd->add_option("--override-base", override_value,
                           "unsafe: assume this base dimension instead of H(m,r)");
  solve_gr_cmd->add_option("--h-table", gr_args.h_table);
  solve_gr_cmd->add_option("--coloring", gr_args.coloring)->required();
  solve_gr_cmd->add_option("--out", gr_args.out, "certificate output path");
  solve_gr_cmd->add_option("--budget", gr_args.budget);
  solve_gr_cmd->add_flag("--strict", gr_args.strict, "error out below the required length");
  SolveUnionsArgs unions_args;
  auto* solve_unions_cmd = solve->add_subcommand("unions", "find a monochromatic NU block sequence");
  solve_unions_cmd->add_option("--m", unions_args.m)->required();
  solve_unions_cmd->add_option("--r", unions_args.r)->required();
  solve_unions_cmd->add_option("--n", unions_args.n)->required();
  solve_unions_cmd->add_option("--coloring", unions_args.coloring)->required();
  solve_unions_cmd->add_option("--budget", unions_args.budget);
  solve->require_subcommand(1);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "re-check a certificate against a coloring");
  verify->add_option("--cert", verify_args.cert)->required();
  verify->add_option("--coloring", verify_args.coloring)->required();

  ExactArgs exact_args;
  auto* exact = app.add_subcommand("exact", "exact minimal numbers by brute force");
  exact->add_option("--target", exact_args.target, "h | sh | gr")->required();
  exact->add_option("--k", exact_args.k);
  exact->add_option("--m", exact_args.m)->required();
  exact->add_option("--r", exact_args.r)->required();
  exact->add_option("--a", exact_args.a);
  exact->add_option("--b", exact_args.b);
  exact->add_option("--n-max", exact_args.n_max)->required();
  exact->add_option("--budget", exact_args.budget, "search-node budget per length");
  exact->add_option("--decider", exact_args.decider, "naive | backtrack | both");
  exact->add_option("--out", exact_args.out, "prefix for counterexample tables");
  exact->add_option("--report", exact_args.report, "also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (bounds->parsed()) return run_bounds(bounds_args);
  if (construct->parsed()) return run_construct(construct_args);
  if (solve->parsed()) {
    if (solve_gr_cmd->parsed()) {
      if (override_value >= 0) gr_args.override_base = override_value;
      return run_solve_gr(gr_args);
    }
    return run_solve_unions(unions_args);
  }
  if (verify->parsed()) return run_verify(verify_args);
  if (exact->parsed()) return run_exact(exact_args);
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const varword::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case varword::Errc::length_too_small:
        return kExitLengthTooSmall;
      case varword::Errc::budget_exceeded:
        return kExitBudget;
      default:
        return kExitUsage;
    }
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
