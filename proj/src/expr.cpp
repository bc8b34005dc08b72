#include "fps/expr.hpp"

#include <cctype>
#include <vector>

namespace fps {

ExprPtr SeriesExpr::make_scalar(FieldValue v) {
  auto e = std::make_shared<SeriesExpr>();
  e->kind = Kind::Scalar;
  e->scalar = std::move(v);
  return e;
}

ExprPtr SeriesExpr::make_letter(std::uint32_t id) {
  auto e = std::make_shared<SeriesExpr>();
  e->kind = Kind::Letter;
  e->letter = id;
  return e;
}

ExprPtr SeriesExpr::make_named(std::string name) {
  auto e = std::make_shared<SeriesExpr>();
  e->kind = Kind::Named;
  e->name = std::move(name);
  return e;
}

ExprPtr SeriesExpr::make_sum(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<SeriesExpr>();
  e->kind = Kind::Sum;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ExprPtr SeriesExpr::make_product(ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<SeriesExpr>();
  e->kind = Kind::Product;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ExprPtr SeriesExpr::make_star(ExprPtr x) {
  auto e = std::make_shared<SeriesExpr>();
  e->kind = Kind::Star;
  e->lhs = std::move(x);
  return e;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case SeriesExpr::Kind::Scalar: return a->scalar == b->scalar;
    case SeriesExpr::Kind::Letter: return a->letter == b->letter;
    case SeriesExpr::Kind::Named: return a->name == b->name;
    case SeriesExpr::Kind::Star: return expr_equal(a->lhs, b->lhs);
    case SeriesExpr::Kind::Sum:
    case SeriesExpr::Kind::Product:
      return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
  return false;
}

namespace {

[[noreturn]] void syntax_error(std::size_t col, const std::string& what) {
  throw InputError("syntax error at column " + std::to_string(col) + ": " + what);
}

struct Token {
  enum class Kind { Plus, Dot, Star, LParen, RParen, Number, Ident, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t col = 0;  // 1-based
};

class Lexer {
 public:
  Lexer(std::string_view text, FieldKind field) : text_(text), field_(field) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tok_ = Token{};
    tok_.col = pos_ + 1;
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    switch (c) {
      case '+': tok_.kind = Token::Kind::Plus; ++pos_; return;
      case '.': tok_.kind = Token::Kind::Dot; ++pos_; return;
      case '*': tok_.kind = Token::Kind::Star; ++pos_; return;
      case '(': tok_.kind = Token::Kind::LParen; ++pos_; return;
      case ')': tok_.kind = Token::Kind::RParen; ++pos_; return;
      default: break;
    }
    std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      if (c == '-') ++pos_;
      auto digits = [&] {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      };
      digits();
      if (field_.tag == FieldTag::R64) {
        if (pos_ < text_.size() && text_[pos_] == '.') {
          ++pos_;
          digits();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
          ++pos_;
          if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
          digits();
        }
      } else if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        digits();
      }
      tok_.kind = Token::Kind::Number;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (ident_char(c) && !std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == ':') {
        ++pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      }
      tok_.kind = Token::Kind::Ident;
      tok_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    syntax_error(pos_ + 1, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  FieldKind field_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  Parser(std::string_view text, const ExprContext& ctx) : lex_(text, ctx.field), ctx_(ctx) {}

  ExprPtr run() {
    ExprPtr e = expr();
    const Token& t = lex_.peek();
    if (t.kind != Token::Kind::End) syntax_error(t.col, "unexpected " + describe(t));
    return e;
  }

 private:
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::Plus: return "'+'";
      case Token::Kind::Dot: return "'.'";
      case Token::Kind::Star: return "'*'";
      case Token::Kind::LParen: return "'('";
      case Token::Kind::RParen: return "')'";
      case Token::Kind::Number:
      case Token::Kind::Ident: return "'" + t.text + "'";
      case Token::Kind::End: return "end of input";
    }
    return "token";
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (lex_.peek().kind == Token::Kind::Plus) {
      lex_.take();
      e = SeriesExpr::make_sum(std::move(e), term());
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (lex_.peek().kind == Token::Kind::Dot) {
      lex_.take();
      e = SeriesExpr::make_product(std::move(e), factor());
    }
    return e;
  }

  ExprPtr factor() {
    ExprPtr e = atom();
    if (lex_.peek().kind == Token::Kind::Star) {
      lex_.take();
      e = SeriesExpr::make_star(std::move(e));
    }
    return e;
  }

  ExprPtr atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::LParen: {
        ExprPtr e = expr();
        const Token& close = lex_.peek();
        if (close.kind != Token::Kind::RParen)
          syntax_error(close.col, "expected ')', found " + describe(close));
        lex_.take();
        return e;
      }
      case Token::Kind::Number:
        try {
          return SeriesExpr::make_scalar(parse_scalar(t.text, ctx_.field));
        } catch (const InputError& e) {
          syntax_error(t.col, e.what());
        }
      case Token::Kind::Ident:
        return ident_atom(t);
      default:
        syntax_error(t.col, "expected an atom, found " + describe(t));
    }
  }

  ExprPtr ident_atom(const Token& t) {
    if (auto id = ctx_.space.letter_id(t.text)) return SeriesExpr::make_letter(*id);
    if (t.text.rfind("letter:", 0) == 0) {
      std::string sym = t.text.substr(7);
      if (auto id = ctx_.space.letter_id(sym)) return SeriesExpr::make_letter(*id);
      syntax_error(t.col, "unknown letter '" + sym + "'");
    }
    if (t.text == "zero" || t.text == "one" || t.text == "ones" || t.text == "geometric")
      return SeriesExpr::make_named(t.text);
    syntax_error(t.col, "unknown letter or generator '" + t.text + "'");
  }

  Lexer lex_;
  ExprContext ctx_;
};

int prec(const SeriesExpr& e) {
  switch (e.kind) {
    case SeriesExpr::Kind::Sum: return 1;
    case SeriesExpr::Kind::Product: return 2;
    case SeriesExpr::Kind::Star: return 3;
    default: return 4;
  }
}

void chain_leaves(const ExprPtr& e, SeriesExpr::Kind kind, std::vector<ExprPtr>& out) {
  if (e->kind == kind) {
    chain_leaves(e->lhs, kind, out);
    chain_leaves(e->rhs, kind, out);
  } else {
    out.push_back(e);
  }
}

std::string render(const ExprPtr& e, const ExprContext& ctx, int need) {
  std::string out;
  switch (e->kind) {
    case SeriesExpr::Kind::Scalar:
      out = scalar_text(e->scalar);
      break;
    case SeriesExpr::Kind::Letter:
      out = ctx.space.alphabet().at(e->letter);
      break;
    case SeriesExpr::Kind::Named:
      out = e->name;
      break;
    case SeriesExpr::Kind::Star:
      out = render(e->lhs, ctx, 4) + "*";
      break;
    case SeriesExpr::Kind::Sum:
    case SeriesExpr::Kind::Product: {
      const bool sum = e->kind == SeriesExpr::Kind::Sum;
      std::vector<ExprPtr> leaves;
      chain_leaves(e, e->kind, leaves);
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (i) out += sum ? " + " : " . ";
        out += render(leaves[i], ctx, sum ? 2 : 3);
      }
      break;
    }
  }
  if (prec(*e) < need) return "(" + out + ")";
  return out;
}

}  // namespace

ExprPtr parse_expr(std::string_view text, const ExprContext& ctx) {
  return Parser(text, ctx).run();
}

std::string pretty(const ExprPtr& e, const ExprContext& ctx) { return render(e, ctx, 0); }

ExprPtr normalize(const ExprPtr& e) {
  switch (e->kind) {
    case SeriesExpr::Kind::Scalar:
    case SeriesExpr::Kind::Letter:
    case SeriesExpr::Kind::Named:
      return e;
    case SeriesExpr::Kind::Star:
      return SeriesExpr::make_star(normalize(e->lhs));
    case SeriesExpr::Kind::Sum:
    case SeriesExpr::Kind::Product: {
      std::vector<ExprPtr> leaves;
      chain_leaves(e, e->kind, leaves);
      ExprPtr acc = normalize(leaves[0]);
      for (std::size_t i = 1; i < leaves.size(); ++i) {
        ExprPtr next = normalize(leaves[i]);
        acc = e->kind == SeriesExpr::Kind::Sum
                  ? SeriesExpr::make_sum(std::move(acc), std::move(next))
                  : SeriesExpr::make_product(std::move(acc), std::move(next));
      }
      return acc;
    }
  }
  throw EvalError("unreachable expression kind");
}

Series eval_expr(const ExprPtr& e, const ExprContext& ctx) {
  switch (e->kind) {
    case SeriesExpr::Kind::Scalar:
      if (e->scalar.kind() != ctx.field) throw EvalError("scalar outside the ambient field");
      return scale(e->scalar, Series::unit(ctx.space, ctx.field));
    case SeriesExpr::Kind::Letter:
      return Series::letter(ctx.space, e->letter, ctx.field);
    case SeriesExpr::Kind::Named: {
      if (e->name == "zero") return Series::zero(ctx.space, ctx.field);
      if (e->name == "one") return Series::unit(ctx.space, ctx.field);
      if (e->name == "ones") return Series::all_ones(ctx.space, ctx.field);
      if (e->name == "geometric") {
        if (!ctx.space.is_monoid() || ctx.space.alphabet().empty())
          throw EvalError("geometric needs a letter to iterate");
        return star(Series::letter(ctx.space, 0, ctx.field));
      }
      throw EvalError("unknown generator: " + e->name);
    }
    case SeriesExpr::Kind::Sum:
      return add(eval_expr(e->lhs, ctx), eval_expr(e->rhs, ctx));
    case SeriesExpr::Kind::Product:
      return cauchy(eval_expr(e->lhs, ctx), eval_expr(e->rhs, ctx));
    case SeriesExpr::Kind::Star:
      return star(eval_expr(e->lhs, ctx));
  }
  throw EvalError("unreachable expression kind");
}

}  // namespace fps
