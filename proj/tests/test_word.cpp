// Word core: validation, substitution, supports, enumeration, ranking.
#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "varword/word.hpp"

using namespace varword;

namespace {

Symbol L(int a) { return Symbol::letter(a); }
Symbol V(int j) { return Symbol::variable(j); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::parse_error;
}

}  // namespace

TEST_CASE("validate accepts block-positioned words") {
  VarWord w = validate_varword(2, 2, {V(0), L(1), V(1)});
  CHECK(w.dim == 2);
  CHECK(w.length() == 3);
  // non-contiguous support of a single variable is fine
  CHECK_NOTHROW(validate_varword(1, 1, {V(0), L(1), V(0)}));
  // ... and of the last variable in a multi-dimensional word
  CHECK_NOTHROW(validate_varword(2, 2, {V(0), L(2), V(1), L(1), V(1)}));
}

TEST_CASE("validate rejects out-of-order and missing variables") {
  CHECK(code_of([] { validate_varword(2, 2, {V(1), L(1), V(0)}); }) == Errc::block_violation);
  CHECK(code_of([] { validate_varword(2, 2, {V(0), L(1), L(1)}); }) == Errc::missing_variable);
  CHECK(code_of([] { validate_varword(2, 2, {V(0), L(3), V(1)}); }) == Errc::letter_out_of_range);
  CHECK(code_of([] { validate_varword(2, 2, {V(0), V(0), V(1), V(0)}); }) ==
        Errc::block_violation);
  CHECK(code_of([] { validate_varword(2, 1, {}); }) == Errc::empty_word);
}

TEST_CASE("substitution follows the positionwise definition") {
  VarWord w = validate_varword(2, 2, {V(0), L(1), V(1)});

  auto one_dim = substitute(w, Symbols{L(2), V(0)});
  REQUIRE(std::holds_alternative<VarWord>(one_dim));
  CHECK(std::get<VarWord>(one_dim) == validate_varword(2, 1, {L(2), L(1), V(0)}));

  auto diag = substitute(w, Symbols{V(0), V(0)});
  REQUIRE(std::holds_alternative<VarWord>(diag));
  CHECK(std::get<VarWord>(diag) == validate_varword(2, 1, {V(0), L(1), V(0)}));

  auto constant = substitute(w, Symbols{L(2), L(2)});
  REQUIRE(std::holds_alternative<Word>(constant));
  CHECK(std::get<Word>(constant) == make_word(2, {L(2), L(1), L(2)}));

  CHECK(code_of([&] { substitute(w, Symbols{L(2)}); }) == Errc::length_mismatch);
}

TEST_CASE("result is a variable word iff the substituted sequence is") {
  // exhaustively over k <= 2, n <= 4, all dimensions and substituents
  for (int k = 1; k <= 2; ++k) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = 1; m <= n; ++m) {
        for (const auto& w : enumerate_varwords_dim(k, n, m)) {
          for (int mx = 1; mx <= m; ++mx) {
            for (const auto& x : enumerate_varwords_dim(k, m, mx)) {
              auto result = substitute(w, x.symbols);
              REQUIRE(std::holds_alternative<VarWord>(result));
              CHECK(std::get<VarWord>(result).dim == mx);
            }
          }
        }
      }
    }
  }
  // constant substituents give constant words
  VarWord w = validate_varword(1, 2, {V(0), V(1)});
  CHECK(std::holds_alternative<Word>(substitute(w, Symbols{L(1), L(1)})));
}

TEST_CASE("substitution composes") {
  // w(w'(x)) = (w(w'))(x) for all shapes with k <= 2, n <= 4
  for (int k = 1; k <= 2; ++k) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = 1; m <= n; ++m) {
        for (const auto& w : enumerate_varwords_dim(k, n, m)) {
          for (int mp = 1; mp <= m; ++mp) {
            for (const auto& wp : enumerate_varwords_dim(k, m, mp)) {
              VarWord inner = std::get<VarWord>(substitute(w, wp.symbols));
              for (int mx = 1; mx <= mp; ++mx) {
                for (const auto& x : enumerate_varwords_dim(k, mp, mx)) {
                  Symbols via_seq = substitute_symbols(wp, x.symbols);
                  auto lhs = substitute(w, via_seq);
                  auto rhs = substitute(inner, x.symbols);
                  CHECK(std::get<VarWord>(lhs) == std::get<VarWord>(rhs));
                }
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("support reads off variable positions") {
  VarWord w = validate_varword(2, 2, {V(0), L(1), V(1), V(1)});
  CHECK(support(w, 1) == SupportSet{2, 3});
  CHECK(support(w, 0) == SupportSet{0});
  CHECK(code_of([&] { support(w, 2); }) == Errc::index_out_of_range);
}

TEST_CASE("supports are disjoint and increase with the variable index") {
  for (int k = 1; k <= 2; ++k) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = 1; m <= n; ++m) {
        for (const auto& w : enumerate_varwords_dim(k, n, m)) {
          int prev_max = -1;
          for (int j = 0; j < m; ++j) {
            SupportSet s = support(w, j);
            REQUIRE(!s.empty());
            CHECK(s.front() > prev_max);
            prev_max = s.back();
          }
        }
      }
    }
  }
}

TEST_CASE("enumeration is lexicographic and counted by (k+1)^n - k^n") {
  auto words = enumerate_variable_words(1, 2);
  REQUIRE(words.size() == 3);
  CHECK(words[0] == validate_varword(1, 1, {L(1), V(0)}));
  CHECK(words[1] == validate_varword(1, 1, {V(0), L(1)}));
  CHECK(words[2] == validate_varword(1, 1, {V(0), V(0)}));

  CHECK(enumerate_variable_words(2, 2).size() == 5);
  CHECK(enumerate_variable_words(1, 1).size() == 1);

  CHECK(count_variable_words(1, 2) == 3);
  CHECK(count_variable_words(2, 2) == 5);
  CHECK(count_variable_words(3, 0) == 0);

  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 6; ++n) {
      CHECK(BigInt(enumerate_variable_words(k, n).size()) == count_variable_words(k, n));
    }
  }

  CHECK(code_of([] { enumerate_variable_words(2, 30); }) == Errc::size_guard);
  CHECK(code_of([] { enumerate_variable_words(2, 0); }) == Errc::empty_word);
}

TEST_CASE("rank is the canonical mixed-radix value") {
  CHECK(rank_word(1, Symbols{L(1), L(1)}) == 0);
  CHECK(rank_word(1, Symbols{V(0), V(0)}) == 3);
  CHECK(rank_word(2, Symbols{V(0)}) == 2);

  // unrank(rank(u)) = u for every word over [k] + v, exhaustively
  for (int k = 1; k <= 2; ++k) {
    for (int n = 1; n <= 6; ++n) {
      BigInt total = boost::multiprecision::pow(BigInt(k + 1), unsigned(n));
      for (BigInt i = 0; i < total; ++i) {
        Symbols u = unrank_word(k, n, i);
        CHECK(rank_word(k, u) == i);
      }
    }
  }
  CHECK(code_of([] { unrank_word(1, 2, BigInt(4)); }) == Errc::index_out_of_range);
}

TEST_CASE("solve_substitution inverts substitute") {
  VarWord w = validate_varword(2, 2, {V(0), L(1), V(1)});
  Reduction r = solve_substitution(w, Symbols{L(2), L(1), V(0)});
  REQUIRE(r.reduced());
  CHECK(*r.x == Symbols{L(2), V(0)});

  Reduction bad = solve_substitution(w, Symbols{L(2), L(2), V(0)});
  CHECK(!bad.reduced());
  CHECK(bad.conflict_position == 1);

  VarWord w2 = validate_varword(2, 2, {V(0), V(0), V(1)});
  Reduction bad2 = solve_substitution(w2, Symbols{L(1), L(2), V(0)});
  CHECK(!bad2.reduced());
  CHECK(bad2.conflict_position == 1);
}

TEST_CASE("solve_substitution round-trips over small shapes") {
  for (int k = 1; k <= 2; ++k) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = 1; m <= n; ++m) {
        for (const auto& w : enumerate_varwords_dim(k, n, m)) {
          for (const auto& x : enumerate_variable_words(k, m)) {
            VarWord u = std::get<VarWord>(substitute(w, x.symbols));
            Reduction r = solve_substitution(w, u.symbols);
            REQUIRE(r.reduced());
            CHECK(*r.x == x.symbols);
          }
        }
      }
    }
  }
}

TEST_CASE("word text format round-trips") {
  VarWord w = validate_varword(2, 2, {V(0), L(1), V(1), V(1)});
  CHECK(to_text(w) == "v0 1 v1 v1");
  ParsedWord p = parse_word_tokens("v0 1 v1 v1");
  CHECK(p.dim == 2);
  CHECK(p.symbols == w.symbols);

  VarWord u = validate_varword(2, 1, {L(2), V(0)});
  CHECK(to_text(u) == "2 v");
  ParsedWord q = parse_word_tokens("2 v");
  CHECK(q.dim == 1);
  CHECK(q.symbols == u.symbols);

  CHECK(parse_word_tokens("1 2").dim == 0);
  CHECK_THROWS_AS(parse_word_tokens("v v1"), Error);
  CHECK_THROWS_AS(parse_word_tokens("x"), Error);
  CHECK_THROWS_AS(parse_word_tokens("0"), Error);
}
