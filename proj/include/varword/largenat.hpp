// Exact natural numbers with a lazy symbolic form for values too large to
// materialize: an expression DAG over addition, multiplication, powers and
// (for tight counting) differences. Values whose bit length stays below the
// threshold are carried exactly alongside their structure.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "varword/error.hpp"

namespace varword {

inline constexpr std::size_t kExactBitThreshold = std::size_t(1) << 20;
// Materialized values at most this wide forget their structure and print as
// plain decimals.
inline constexpr std::size_t kCollapseBits = 64;

enum class Cmp { less, equal, greater, unknown };

class LargeNat {
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    enum class Op { value, add, mul, pow, sub };
    Op op = Op::value;
    std::optional<BigInt> exact;  // materialized value, when within threshold
    std::vector<NodePtr> kids;    // add/mul: flattened, value head first; pow/sub: {lhs, rhs}
    std::size_t hash = 0;
  };

 public:
  LargeNat() : node_(value_node(BigInt(0))) {}
  LargeNat(std::uint64_t v) : node_(value_node(BigInt(v))) {}
  explicit LargeNat(const BigInt& v) : node_(value_node(v)) {}

  bool is_exact() const { return node_->exact.has_value(); }
  const BigInt& exact_value() const {
    if (!is_exact()) fail(Errc::too_large, "value is symbolic, no exact form available");
    return *node_->exact;
  }
  std::size_t bit_length() const {
    const BigInt& v = exact_value();
    return v == 0 ? 0 : boost::multiprecision::msb(v) + 1;
  }
  std::optional<std::uint64_t> to_u64() const {
    if (!is_exact()) return std::nullopt;
    const BigInt& v = exact_value();
    if (v < 0 || v > BigInt(UINT64_MAX)) return std::nullopt;
    return v.convert_to<std::uint64_t>();
  }

  static LargeNat add(const LargeNat& a, const LargeNat& b) {
    return LargeNat(make_add({a.node_, b.node_}));
  }
  static LargeNat mul(const LargeNat& a, const LargeNat& b) {
    return LargeNat(make_mul({a.node_, b.node_}));
  }
  static LargeNat pow(const LargeNat& base, const LargeNat& exp) {
    return LargeNat(make_pow(base.node_, exp.node_));
  }
  // a - b; both sides exact or b provably <= a by construction.
  static LargeNat sub(const LargeNat& a, const LargeNat& b) {
    return LargeNat(make_sub(a.node_, b.node_));
  }

  // Decrement; defined for exact values >= 1 and for sums with an exact head.
  LargeNat minus_one() const {
    const Node& n = *node_;
    if (n.op == Node::Op::value) {
      if (*n.exact < 1) fail(Errc::arithmetic, "cannot decrement zero");
      return LargeNat(value_node(*n.exact - 1));
    }
    if (n.op == Node::Op::add && n.kids[0]->op == Node::Op::value && *n.kids[0]->exact >= 1) {
      std::vector<NodePtr> kids = n.kids;
      kids[0] = value_node(*kids[0]->exact - 1);
      return LargeNat(make_add(std::move(kids)));
    }
    fail(Errc::arithmetic, "cannot decrement this symbolic value");
  }

  // Structural rendering: decimals for small values, tower notation otherwise.
  std::string expression() const { return render(node_, 0); }

  // Expression plus the decimal value when it has at most 10^4 digits, or a
  // digit count when the value is exact but longer.
  std::string describe() const {
    std::string expr = expression();
    if (!is_exact()) return expr;
    if (node_->op == Node::Op::value) return expr;
    std::string digits = node_->exact->str();
    if (digits.size() <= 10000) return expr + " = " + digits;
    return expr + " (" + std::to_string(digits.size()) + " decimal digits)";
  }

  // Full decimal; only for exact values.
  std::string decimal() const { return exact_value().str(); }

  friend bool structurally_equal(const LargeNat& a, const LargeNat& b) {
    return deep_equal(a.node_, b.node_);
  }

  friend Cmp compare(const LargeNat& a, const LargeNat& b) {
    return compare_nodes(a.node_, b.node_, 0);
  }

 private:
  explicit LargeNat(NodePtr node) : node_(std::move(node)) {}

  static std::size_t mix_hash(std::size_t h, std::size_t v) {
    return h * 1099511628211ull ^ (v + 0x9e3779b9u + (h << 6) + (h >> 2));
  }

  static std::size_t value_hash(const BigInt& v) {
    std::size_t bits = v == 0 ? 0 : boost::multiprecision::msb(v) + 1;
    BigInt low = v & BigInt(UINT64_MAX);
    return mix_hash(bits, low.convert_to<std::uint64_t>());
  }

  static NodePtr value_node(const BigInt& v) {
    if (v < 0) fail(Errc::arithmetic, "naturals only");
    std::size_t bits = v == 0 ? 0 : boost::multiprecision::msb(v) + 1;
    if (bits > kExactBitThreshold)
      fail(Errc::too_large, "value exceeds the exact bit threshold");
    auto n = std::make_shared<Node>();
    n->op = Node::Op::value;
    n->exact = v;
    n->hash = mix_hash(1, value_hash(v));
    return n;
  }

  static bool deep_equal(const NodePtr& a, const NodePtr& b) {
    if (a == b) return true;
    if (a->op != b->op || a->hash != b->hash) return false;
    if (a->op == Node::Op::value) return *a->exact == *b->exact;
    if (a->kids.size() != b->kids.size()) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
      if (!deep_equal(a->kids[i], b->kids[i])) return false;
    return true;
  }

  // Total order used only to canonicalize add/mul child lists.
  static int deep_cmp(const NodePtr& a, const NodePtr& b) {
    if (a == b) return 0;
    if (a->op != b->op) return a->op < b->op ? -1 : 1;
    if (a->op == Node::Op::value) {
      if (*a->exact == *b->exact) return 0;
      return *a->exact < *b->exact ? -1 : 1;
    }
    if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
    for (std::size_t i = 0; i < a->kids.size(); ++i) {
      int c = deep_cmp(a->kids[i], b->kids[i]);
      if (c != 0) return c;
    }
    return 0;
  }

  static std::size_t bits_of(const BigInt& v) {
    return v == 0 ? 0 : boost::multiprecision::msb(v) + 1;
  }

  static NodePtr finish_nary(Node::Op op, BigInt head, std::vector<NodePtr> sym,
                             std::optional<BigInt> exact) {
    bool drop_head = (op == Node::Op::add && head == 0) || (op == Node::Op::mul && head == 1);
    if (sym.empty() || (op == Node::Op::mul && head == 0)) {
      // fully numeric, or multiplication by zero
      return value_node(exact ? *exact : head);
    }
    if (drop_head && sym.size() == 1) return sym[0];
    if (exact && bits_of(*exact) <= kCollapseBits) return value_node(*exact);
    std::stable_sort(sym.begin(), sym.end(),
                     [](const NodePtr& a, const NodePtr& b) { return deep_cmp(a, b) < 0; });
    auto n = std::make_shared<Node>();
    n->op = op;
    n->exact = std::move(exact);
    if (!drop_head) n->kids.push_back(value_node(head));
    for (auto& s : sym) n->kids.push_back(std::move(s));
    std::size_t h = op == Node::Op::add ? 3 : 5;
    for (const auto& kid : n->kids) h = mix_hash(h, kid->hash);
    n->hash = h;
    return n;
  }

  static void flatten(Node::Op op, const NodePtr& p, std::vector<NodePtr>& values,
                      std::vector<NodePtr>& sym) {
    if (p->op == op) {
      for (const auto& kid : p->kids) flatten(op, kid, values, sym);
    } else if (p->op == Node::Op::value) {
      values.push_back(p);
    } else {
      sym.push_back(p);
    }
  }

  static NodePtr make_add(std::vector<NodePtr> parts) {
    std::vector<NodePtr> values, sym;
    for (const auto& p : parts) flatten(Node::Op::add, p, values, sym);
    BigInt head = 0;
    for (const auto& v : values) head += *v->exact;
    if (bits_of(head) > kExactBitThreshold) {
      // keep the addends unfolded rather than materializing past the threshold
      for (auto& v : values) sym.push_back(std::move(v));
      return finish_nary(Node::Op::add, BigInt(0), std::move(sym), std::nullopt);
    }
    if (sym.empty()) return value_node(head);
    std::optional<BigInt> exact;
    bool all_exact = true;
    BigInt total = head;
    for (const auto& s : sym) {
      if (!s->exact) {
        all_exact = false;
        break;
      }
      total += *s->exact;
    }
    if (all_exact && bits_of(total) <= kExactBitThreshold) exact = std::move(total);
    return finish_nary(Node::Op::add, std::move(head), std::move(sym), std::move(exact));
  }

  static NodePtr make_mul(std::vector<NodePtr> parts) {
    std::vector<NodePtr> values, sym;
    for (const auto& p : parts) flatten(Node::Op::mul, p, values, sym);
    BigInt head = 1;
    for (const auto& v : values) {
      if (*v->exact == 0) return value_node(BigInt(0));
      if (bits_of(head) + bits_of(*v->exact) > kExactBitThreshold) {
        sym.push_back(v);
      } else {
        head *= *v->exact;
      }
    }
    if (sym.empty()) return value_node(head);
    std::optional<BigInt> exact;
    bool all_exact = true;
    std::size_t bit_budget = bits_of(head);
    for (const auto& s : sym) {
      if (!s->exact) {
        all_exact = false;
        break;
      }
      bit_budget += bits_of(*s->exact);
    }
    if (all_exact && bit_budget <= kExactBitThreshold) {
      BigInt total = head;
      for (const auto& s : sym) total *= *s->exact;
      if (bits_of(total) <= kExactBitThreshold) exact = std::move(total);
    }
    return finish_nary(Node::Op::mul, std::move(head), std::move(sym), std::move(exact));
  }

  static NodePtr make_pow(const NodePtr& base, const NodePtr& exp) {
    if (exp->op == Node::Op::value) {
      if (*exp->exact == 0) return value_node(BigInt(1));
      if (*exp->exact == 1) return base;
    }
    if (base->op == Node::Op::value && (*base->exact == 0 || *base->exact == 1)) return base;
    std::optional<BigInt> exact;
    if (base->exact && exp->exact && *exp->exact <= kExactBitThreshold) {
      unsigned e = exp->exact->convert_to<unsigned>();
      if (bits_of(*base->exact) * e <= kExactBitThreshold) {
        BigInt v = boost::multiprecision::pow(*base->exact, e);
        if (bits_of(v) <= kCollapseBits) return value_node(v);
        if (bits_of(v) <= kExactBitThreshold) exact = std::move(v);
      }
    }
    auto n = std::make_shared<Node>();
    n->op = Node::Op::pow;
    n->exact = std::move(exact);
    n->kids = {base, exp};
    n->hash = mix_hash(mix_hash(7, base->hash), exp->hash);
    return n;
  }

  static NodePtr make_sub(const NodePtr& a, const NodePtr& b) {
    if (b->op == Node::Op::value && *b->exact == 0) return a;
    if (deep_equal(a, b)) return value_node(BigInt(0));
    if (a->exact && b->exact) {
      if (*a->exact < *b->exact) fail(Errc::arithmetic, "subtraction would be negative");
      return value_node(*a->exact - *b->exact);
    }
    auto n = std::make_shared<Node>();
    n->op = Node::Op::sub;
    n->kids = {a, b};
    n->hash = mix_hash(mix_hash(11, a->hash), b->hash);
    return n;
  }

  // precedence: 0 sum context, 1 product context, 2 power context
  static std::string render(const NodePtr& n, int prec) {
    switch (n->op) {
      case Node::Op::value: {
        std::string digits = n->exact->str();
        if (digits.size() <= 40) return digits;
        return "[" + std::to_string(digits.size()) + "-digit value]";
      }
      case Node::Op::add: {
        std::string out;
        for (std::size_t i = 0; i < n->kids.size(); ++i) {
          if (i) out += " + ";
          out += render(n->kids[i], 1);
        }
        return prec >= 1 ? "(" + out + ")" : out;
      }
      case Node::Op::sub: {
        std::string out = render(n->kids[0], 1) + " - " + render(n->kids[1], 1);
        return prec >= 1 ? "(" + out + ")" : out;
      }
      case Node::Op::mul: {
        std::string out;
        for (std::size_t i = 0; i < n->kids.size(); ++i) {
          if (i) out += "*";
          out += render(n->kids[i], 2);
        }
        return prec >= 2 ? "(" + out + ")" : out;
      }
      case Node::Op::pow: {
        auto atom = [](const NodePtr& kid) {
          std::string s = render(kid, 0);
          return kid->op == Node::Op::value ? s : "(" + s + ")";
        };
        return atom(n->kids[0]) + "^" + atom(n->kids[1]);
      }
    }
    return "?";
  }

  // Bounds on log2: 2^lo <= value (when lo is available) and value < 2^hi.
  static std::optional<NodePtr> log2_lo(const NodePtr& n) {
    switch (n->op) {
      case Node::Op::value:
        if (*n->exact < 1) return std::nullopt;
        return value_node(BigInt(boost::multiprecision::msb(*n->exact)));
      case Node::Op::add: {
        // a sum dominates each addend; prefer an exact bound when present
        std::optional<NodePtr> best;
        BigInt best_val = -1;
        for (const auto& kid : n->kids) {
          auto lo = log2_lo(kid);
          if (!lo) continue;
          if ((*lo)->exact) {
            if (*(*lo)->exact > best_val) {
              best_val = *(*lo)->exact;
              best = lo;
            }
          } else if (best_val < 0 && !best) {
            best = lo;
          }
        }
        return best;
      }
      case Node::Op::mul: {
        std::vector<NodePtr> parts;
        for (const auto& kid : n->kids) {
          auto lo = log2_lo(kid);
          if (!lo) return std::nullopt;
          parts.push_back(*lo);
        }
        return make_add(std::move(parts));
      }
      case Node::Op::pow: {
        auto lo = log2_lo(n->kids[0]);
        if (!lo) return std::nullopt;
        return make_mul({n->kids[1], *lo});
      }
      case Node::Op::sub:
        return std::nullopt;  // difference may vanish
    }
    return std::nullopt;
  }

  static std::optional<NodePtr> log2_hi(const NodePtr& n) {
    switch (n->op) {
      case Node::Op::value:
        return value_node(BigInt(*n->exact == 0 ? 0 : boost::multiprecision::msb(*n->exact) + 1));
      case Node::Op::add: {
        // sum < count * max < 2^(sum of his + ceil_log2(count))
        std::vector<NodePtr> parts;
        for (const auto& kid : n->kids) {
          auto hi = log2_hi(kid);
          if (!hi) return std::nullopt;
          parts.push_back(*hi);
        }
        std::size_t extra = 0;
        while ((std::size_t(1) << extra) < n->kids.size()) ++extra;
        parts.push_back(value_node(BigInt(extra)));
        return make_add(std::move(parts));
      }
      case Node::Op::mul: {
        std::vector<NodePtr> parts;
        for (const auto& kid : n->kids) {
          auto hi = log2_hi(kid);
          if (!hi) return std::nullopt;
          parts.push_back(*hi);
        }
        return make_add(std::move(parts));
      }
      case Node::Op::pow: {
        auto hi = log2_hi(n->kids[0]);
        if (!hi) return std::nullopt;
        return make_mul({n->kids[1], *hi});
      }
      case Node::Op::sub:
        return log2_hi(n->kids[0]);
    }
    return std::nullopt;
  }

  static Cmp compare_nodes(const NodePtr& a, const NodePtr& b, int depth) {
    if (a->exact && b->exact) {
      if (*a->exact == *b->exact) return Cmp::equal;
      return *a->exact < *b->exact ? Cmp::less : Cmp::greater;
    }
    if (deep_equal(a, b)) return Cmp::equal;
    if (depth > 64) return Cmp::unknown;
    // a < 2^hiA <= 2^loB <= b  implies  a < b, and symmetrically
    auto hi_a = log2_hi(a);
    auto lo_b = log2_lo(b);
    if (hi_a && lo_b) {
      Cmp c = compare_nodes(*hi_a, *lo_b, depth + 1);
      if (c == Cmp::less || c == Cmp::equal) return Cmp::less;
    }
    auto hi_b = log2_hi(b);
    auto lo_a = log2_lo(a);
    if (hi_b && lo_a) {
      Cmp c = compare_nodes(*hi_b, *lo_a, depth + 1);
      if (c == Cmp::less || c == Cmp::equal) return Cmp::greater;
    }
    return Cmp::unknown;
  }

  NodePtr node_;
};

}  // namespace varword
