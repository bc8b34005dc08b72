#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "fps/series.hpp"

namespace fps {

// Ambient space and field for parsing, printing, and evaluating expressions.
struct ExprContext {
  IndexSpace space;
  FieldKind field;
};

class SeriesExpr;
using ExprPtr = std::shared_ptr<const SeriesExpr>;

// Series expressions:
//
//   expr   := term { "+" term }
//   term   := factor { "." factor }
//   factor := atom [ "*" ]
//   atom   := scalar | letter | generator | "(" expr ")"
//
// Star binds tightest, then product, then sum; sums and products associate
// to the left. Adjacency is not multiplication: "a b" is a syntax error.
// Scalars may carry a leading minus ("-2", "-3/4"); "letter:<sym>" is
// sugar for the letter atom. Generators: zero, one, ones, geometric.
class SeriesExpr {
 public:
  enum class Kind { Scalar, Letter, Named, Sum, Product, Star };

  Kind kind;
  FieldValue scalar;          // Scalar
  std::uint32_t letter = 0;   // Letter
  std::string name;           // Named
  ExprPtr lhs, rhs;           // Sum, Product; Star uses lhs only

  static ExprPtr make_scalar(FieldValue v);
  static ExprPtr make_letter(std::uint32_t id);
  static ExprPtr make_named(std::string name);
  static ExprPtr make_sum(ExprPtr l, ExprPtr r);
  static ExprPtr make_product(ExprPtr l, ExprPtr r);
  static ExprPtr make_star(ExprPtr e);
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// InputError with a 1-based column on any syntax problem.
ExprPtr parse_expr(std::string_view text, const ExprContext& ctx);

// Canonical rendering; parsing it back yields normalize(e).
std::string pretty(const ExprPtr& e, const ExprContext& ctx);

// Left-associated sums and products, recursively.
ExprPtr normalize(const ExprPtr& e);

Series eval_expr(const ExprPtr& e, const ExprContext& ctx);

}  // namespace fps
