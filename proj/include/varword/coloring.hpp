// Total, deterministic r-colorings of the variable words of one shape (k, n),
// with seeded, table and pullback sources, caching and query instrumentation.
#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <vector>

#include "varword/error.hpp"
#include "varword/word.hpp"

namespace varword {

// splitmix64 in its hashing form (golden-ratio increment followed by the
// standard finalizer); matches the published test vectors, e.g.
// splitmix64(0) = 0xE220A8397B1DCDAF.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline int seeded_color_at_rank(std::uint64_t seed, std::uint64_t rank, int r) {
  return static_cast<int>(splitmix64(seed + rank * 0x9E3779B97F4A7C15ull) %
                          static_cast<std::uint64_t>(r)) +
         1;
}

// An r-coloring of W^k_v(n). Deterministic and total; evaluations are cached
// by rank, and queries() counts the distinct words evaluated so far.
class Oracle {
 public:
  virtual ~Oracle() = default;

  int alphabet() const { return k_; }
  int length() const { return n_; }
  int colors() const { return r_; }

  int color_of(const VarWord& u) {
    if (u.k != k_ || u.length() != n_ || u.dim != 1)
      fail(Errc::shape_mismatch, "oracle colors 1-dimensional variable words over (k=" +
                                     std::to_string(k_) + ", n=" + std::to_string(n_) + ")");
    BigInt rank = rank_word(k_, u.symbols);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(rank);
    if (it != cache_.end()) return it->second;
    int color = evaluate(u);
    cache_.emplace(std::move(rank), color);
    ++queries_;
    return color;
  }

  std::uint64_t queries() const {
    std::lock_guard<std::mutex> lock(mu_);
    return queries_;
  }

 protected:
  Oracle(int k, int n, int r) : k_(k), n_(n), r_(r) {
    if (k < 1 || n < 1 || r < 1)
      fail(Errc::shape_mismatch, "oracle shape needs k, n, r >= 1");
  }
  virtual int evaluate(const VarWord& u) = 0;

 private:
  int k_, n_, r_;
  mutable std::mutex mu_;
  std::map<BigInt, int> cache_;
  std::uint64_t queries_ = 0;
};

using OraclePtr = std::shared_ptr<Oracle>;

namespace detail {

class SeededOracle final : public Oracle {
 public:
  SeededOracle(std::uint64_t seed, int k, int n, int r) : Oracle(k, n, r), seed_(seed) {}

 private:
  int evaluate(const VarWord& u) override {
    return seeded_color_at_rank(seed_, rank_word_u64(alphabet(), u.symbols), colors());
  }
  std::uint64_t seed_;
};

class TableOracle final : public Oracle {
 public:
  TableOracle(int k, int n, int r, std::vector<int> by_rank)
      : Oracle(k, n, r), by_rank_(std::move(by_rank)) {}

 private:
  int evaluate(const VarWord& u) override {
    return by_rank_[static_cast<std::size_t>(rank_word_u64(alphabet(), u.symbols))];
  }
  std::vector<int> by_rank_;
};

class PullbackOracle final : public Oracle {
 public:
  PullbackOracle(OraclePtr base, VarWord w, int k)
      : Oracle(k, w.dim, base->colors()), base_(std::move(base)), w_(std::move(w)) {}

 private:
  int evaluate(const VarWord& u) override {
    auto reduced = substitute(w_, u.symbols);
    return base_->color_of(std::get<VarWord>(reduced));
  }
  OraclePtr base_;
  VarWord w_;
};

}  // namespace detail

// color(u) = splitmix64(seed + rank(u) * 0x9E3779B97F4A7C15) mod r, plus one;
// bit-exact across implementations.
inline OraclePtr seeded_oracle(std::uint64_t seed, int k, int n, int r) {
  return std::make_shared<detail::SeededOracle>(seed, k, n, r);
}

inline constexpr std::uint64_t kTableBudget = std::uint64_t(1) << 22;

// colors_by_rank: vector of size (k+1)^n with a color at every variable-word
// rank (entries at constant-word ranks are ignored).
inline OraclePtr table_oracle_from_ranks(int k, int n, int r, std::vector<int> colors_by_rank) {
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(k) + 1, n, kTableBudget);
  if (total > kTableBudget) fail(Errc::size_guard, "table shape exceeds the table budget");
  if (colors_by_rank.size() != total)
    fail(Errc::shape_mismatch, "rank table must have (k+1)^n entries");
  return std::make_shared<detail::TableOracle>(k, n, r, std::move(colors_by_rank));
}

// colors_by_index: one color per variable word, in canonical enumeration order.
inline OraclePtr table_oracle(int k, int n, int r, const std::vector<int>& colors_by_index) {
  auto words = enumerate_variable_words(k, n, kTableBudget);
  if (colors_by_index.size() != words.size())
    fail(Errc::shape_mismatch, "need one color per variable word");
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(k) + 1, n, kTableBudget);
  std::vector<int> by_rank(total, 0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (colors_by_index[i] < 1 || colors_by_index[i] > r)
      fail(Errc::color_out_of_range, "color outside {1..r}", static_cast<long long>(i));
    by_rank[static_cast<std::size_t>(rank_word_u64(k, words[i].symbols))] = colors_by_index[i];
  }
  return table_oracle_from_ranks(k, n, r, std::move(by_rank));
}

// c'(x) = c(w(x)) on W^k_v(dim w); queries pass through to the base oracle.
inline OraclePtr pullback_oracle(OraclePtr base, VarWord w, int k) {
  if (w.k != base->alphabet() || w.length() != base->length())
    fail(Errc::shape_mismatch, "pullback word must live in the base oracle's shape");
  if (k < 1 || k > base->alphabet())
    fail(Errc::shape_mismatch, "pullback restricts to a sub-alphabet", k);
  return std::make_shared<detail::PullbackOracle>(std::move(base), std::move(w), k);
}

// --- coloring table files -------------------------------------------------
// Line 1: "k n r". Each further non-empty line: "<word tokens> -> <color>".
// '#' starts a comment. Every variable word of W^k_v(n) appears exactly once.

inline OraclePtr load_table(std::istream& in) {
  std::string line;
  long long line_no = 0;
  int k = 0, n = 0, r = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream header(line);
    if (header >> k >> n >> r) {
      std::string rest;
      if (header >> rest) fail(Errc::parse_error, "header line reads 'k n r'", line_no);
      break;
    }
    std::string stray;
    std::istringstream check(line);
    if (check >> stray) fail(Errc::parse_error, "header line reads 'k n r'", line_no);
  }
  if (k < 1 || n < 1 || r < 1) fail(Errc::parse_error, "missing or bad 'k n r' header", line_no);
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(k) + 1, n, kTableBudget);
  if (total > kTableBudget) fail(Errc::size_guard, "table shape exceeds the table budget");
  std::vector<int> by_rank(total, 0);
  std::vector<bool> seen(total, false);
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto arrow = line.find("->");
    if (arrow == std::string::npos) {
      std::string stray;
      std::istringstream check(line);
      if (check >> stray) fail(Errc::parse_error, "expected '<word> -> <color>'", line_no);
      continue;
    }
    ParsedWord word = parse_word_tokens(line.substr(0, arrow), line_no);
    if (word.dim != 1)
      fail(Errc::parse_error, "table rows must be 1-dimensional variable words", line_no);
    VarWord u;
    try {
      u = validate_varword(k, 1, word.symbols);
    } catch (const Error& e) {
      fail(Errc::parse_error, std::string("bad word: ") + e.what(), line_no);
    }
    if (u.length() != n) fail(Errc::parse_error, "word length differs from header n", line_no);
    std::istringstream rhs(line.substr(arrow + 2));
    int color = 0;
    std::string rest;
    if (!(rhs >> color)) fail(Errc::parse_error, "missing color after '->'", line_no);
    if (rhs >> rest) fail(Errc::parse_error, "trailing tokens after color", line_no);
    if (color < 1 || color > r) fail(Errc::color_out_of_range, "color outside {1..r}", line_no);
    auto rank = static_cast<std::size_t>(rank_word_u64(k, u.symbols));
    if (seen[rank]) fail(Errc::duplicate_word, "word listed twice: " + to_text(u), line_no);
    seen[rank] = true;
    by_rank[rank] = color;
  }
  for (const auto& u : enumerate_variable_words(k, n, kTableBudget)) {
    auto rank = static_cast<std::size_t>(rank_word_u64(k, u.symbols));
    if (!seen[rank]) fail(Errc::incomplete_cover, "table misses word: " + to_text(u));
  }
  return table_oracle_from_ranks(k, n, r, std::move(by_rank));
}

inline OraclePtr load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open coloring table: " + path);
  return load_table(in);
}

// Writes a complete table for the oracle's shape in enumeration order.
inline void write_table(std::ostream& out, Oracle& oracle) {
  out << oracle.alphabet() << ' ' << oracle.length() << ' ' << oracle.colors() << '\n';
  for (const auto& u : enumerate_variable_words(oracle.alphabet(), oracle.length(), kTableBudget))
    out << to_text(u) << " -> " << oracle.color_of(u) << '\n';
}

}  // namespace varword
