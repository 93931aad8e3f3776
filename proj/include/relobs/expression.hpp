#pragma once

#include <array>
#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relobs/operator_poly.hpp"
#include "relobs/particle_system.hpp"

namespace relobs {

/// Grammar (whitespace insensitive):
///   expr   := ["-"] term (("+"|"-") term)*
///   term   := factor ("*" factor)*
///   factor := base ("^" INT)?
///   base   := NUMBER | "i" | vecatom "." AXIS | "dot(" vexpr "," vexpr ")"
///           | "normfn(" IDENT "," vexpr ")" | "(" expr ")"
///   vecatom:= ("z"|"p") "[" INT "]"
///   vexpr  := ["-"] vterm (("+"|"-") vterm)*
///   vterm  := (NUMBER "*")? (vecatom | "cross(" vexpr "," vexpr ")") | "(" vexpr ")"
/// NUMBER is a nonnegative rational INT("/"INT)?; the leading "-" in expr and
/// vexpr is a tolerance so printed polynomials re-parse.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Tag {
    Number, ImaginaryUnit, Component, Sum, Diff, Product, Power, Dot, Normfn, Negate,
    VecAtom, VecSum, VecDiff, VecScale, VecNegate, Cross
  };
  Tag tag;
  int line = 1, col = 1;
  Rational number;        // Number literal or VecScale factor
  Kind vecKind = Kind::Position;  // VecAtom
  int particle = 0;       // VecAtom
  int axis = -1;          // Component
  int exponent = 1;       // Power
  std::string name;       // Normfn
  std::vector<ExprPtr> kids;
};

inline bool isVectorNode(const ExprNode& n) {
  using T = ExprNode::Tag;
  switch (n.tag) {
    case T::VecAtom: case T::VecSum: case T::VecDiff: case T::VecScale:
    case T::VecNegate: case T::Cross:
      return true;
    default:
      return false;
  }
}

namespace detail {

struct Token {
  enum class Type {
    Number, Ident, LParen, RParen, LBracket, RBracket,
    Plus, Minus, Star, Caret, Period, Comma, End
  };
  Type type;
  Rational number;
  std::string text;
  int line = 1, col = 1;
};

inline std::string tokenName(const Token& t) {
  using T = Token::Type;
  switch (t.type) {
    case T::Number: return "number " + toString(t.number);
    case T::Ident: return "'" + t.text + "'";
    case T::LParen: return "'('";
    case T::RParen: return "')'";
    case T::LBracket: return "'['";
    case T::RBracket: return "']'";
    case T::Plus: return "'+'";
    case T::Minus: return "'-'";
    case T::Star: return "'*'";
    case T::Caret: return "'^'";
    case T::Period: return "'.'";
    case T::Comma: return "','";
    case T::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Type type, int l, int c) {
    Token t;
    t.type = type;
    t.line = l;
    t.col = c;
    out.push_back(std::move(t));
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '\n') { ++i; ++line; col = 1; continue; }
    if (ch == ' ' || ch == '\t' || ch == '\r') { ++i; ++col; continue; }
    int tl = line, tc = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i + 1 < text.size() && text[i] == '/' &&
          std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      }
      Token t;
      t.type = Token::Type::Number;
      t.number = parseRational(std::string(text.substr(start, i - start)));
      t.line = tl;
      t.col = tc;
      out.push_back(std::move(t));
      col += static_cast<int>(i - start);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
      Token t;
      t.type = Token::Type::Ident;
      t.text = std::string(text.substr(start, i - start));
      t.line = tl;
      t.col = tc;
      out.push_back(std::move(t));
      col += static_cast<int>(i - start);
      continue;
    }
    ++i;
    ++col;
    switch (ch) {
      case '(': push(Token::Type::LParen, tl, tc); break;
      case ')': push(Token::Type::RParen, tl, tc); break;
      case '[': push(Token::Type::LBracket, tl, tc); break;
      case ']': push(Token::Type::RBracket, tl, tc); break;
      case '+': push(Token::Type::Plus, tl, tc); break;
      case '-': push(Token::Type::Minus, tl, tc); break;
      case '*': push(Token::Type::Star, tl, tc); break;
      case '^': push(Token::Type::Caret, tl, tc); break;
      case '.': push(Token::Type::Period, tl, tc); break;
      case ',': push(Token::Type::Comma, tl, tc); break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", tl, tc);
    }
  }
  Token end;
  end.type = Token::Type::End;
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : m_toks(std::move(toks)) {}

  ExprPtr parseTop() {
    ExprPtr e = expr();
    if (peek().type != Token::Type::End) fail(peek(), "'+', '-', '*', '^', or end of input");
    return e;
  }

 private:
  const Token& peek() const { return m_toks[m_pos]; }
  Token take() { return m_toks[m_pos++]; }
  bool accept(Token::Type t) {
    if (peek().type != t) return false;
    ++m_pos;
    return true;
  }
  Token expect(Token::Type t, const std::string& what) {
    if (peek().type != t) fail(peek(), what);
    return take();
  }
  [[noreturn]] void fail(const Token& at, const std::string& expected) const {
    throw ParseError("expected " + expected + ", found " + tokenName(at), at.line, at.col);
  }

  static ExprPtr node(ExprNode::Tag tag, const Token& at) {
    auto n = std::make_shared<ExprNode>();
    n->tag = tag;
    n->line = at.line;
    n->col = at.col;
    return n;
  }
  static ExprPtr wrap(ExprNode::Tag tag, const Token& at, std::vector<ExprPtr> kids) {
    auto n = std::make_shared<ExprNode>();
    n->tag = tag;
    n->line = at.line;
    n->col = at.col;
    n->kids = std::move(kids);
    return n;
  }

  int expectInt(const std::string& what, int minimum) {
    Token t = expect(Token::Type::Number, what);
    if (denominator(t.number) != 1 || t.number < minimum)
      throw ParseError(what + " must be an integer >= " + std::to_string(minimum), t.line, t.col);
    return static_cast<int>(numerator(t.number));
  }

  ExprPtr expr() {
    Token head = peek();
    ExprPtr left;
    if (accept(Token::Type::Minus))
      left = wrap(ExprNode::Tag::Negate, head, {term()});
    else
      left = term();
    while (peek().type == Token::Type::Plus || peek().type == Token::Type::Minus) {
      Token op = take();
      ExprPtr right = term();
      left = wrap(op.type == Token::Type::Plus ? ExprNode::Tag::Sum : ExprNode::Tag::Diff, op,
                  {left, right});
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = factor();
    while (accept(Token::Type::Star)) {
      Token at = m_toks[m_pos - 1];
      left = wrap(ExprNode::Tag::Product, at, {left, factor()});
    }
    return left;
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (accept(Token::Type::Caret)) {
      Token at = m_toks[m_pos - 1];
      auto n = std::make_shared<ExprNode>();
      n->tag = ExprNode::Tag::Power;
      n->line = at.line;
      n->col = at.col;
      n->exponent = expectInt("power exponent", 1);
      n->kids = {std::move(b)};
      return n;
    }
    return b;
  }

  ExprPtr base() {
    const Token& t = peek();
    if (t.type == Token::Type::Number) {
      Token num = take();
      auto n = node(ExprNode::Tag::Number, num);
      const_cast<ExprNode&>(*n).number = num.number;
      return n;
    }
    if (t.type == Token::Type::LParen) {
      take();
      ExprPtr inner = expr();
      expect(Token::Type::RParen, "')'");
      return inner;
    }
    if (t.type == Token::Type::Ident) {
      if (t.text == "i") return node(ExprNode::Tag::ImaginaryUnit, take());
      if (t.text == "z" || t.text == "p") {
        ExprPtr v = vecatom();
        Token dot = expect(Token::Type::Period, "'.' and a component axis");
        auto n = std::make_shared<ExprNode>();
        n->tag = ExprNode::Tag::Component;
        n->line = dot.line;
        n->col = dot.col;
        n->axis = axisName();
        n->kids = {std::move(v)};
        return n;
      }
      if (t.text == "dot") {
        Token head = take();
        expect(Token::Type::LParen, "'('");
        ExprPtr a = vexpr();
        expect(Token::Type::Comma, "','");
        ExprPtr b = vexpr();
        expect(Token::Type::RParen, "')'");
        return wrap(ExprNode::Tag::Dot, head, {a, b});
      }
      if (t.text == "normfn") {
        Token head = take();
        expect(Token::Type::LParen, "'('");
        Token name = expect(Token::Type::Ident, "potential name");
        expect(Token::Type::Comma, "','");
        ExprPtr arg = vexpr();
        expect(Token::Type::RParen, "')'");
        auto n = node(ExprNode::Tag::Normfn, head);
        const_cast<ExprNode&>(*n).name = name.text;
        const_cast<ExprNode&>(*n).kids = {std::move(arg)};
        return n;
      }
      fail(t, "a number, 'i', 'z', 'p', 'dot', 'normfn', or '('");
    }
    fail(t, "a number, 'i', 'z', 'p', 'dot', 'normfn', or '('");
  }

  int axisName() {
    Token ax = expect(Token::Type::Ident, "axis x, y, or z");
    if (ax.text == "x") return 0;
    if (ax.text == "y") return 1;
    if (ax.text == "z") return 2;
    throw ParseError("expected axis x, y, or z, found '" + ax.text + "'", ax.line, ax.col);
  }

  ExprPtr vecatom() {
    Token head = expect(Token::Type::Ident, "'z' or 'p'");
    if (head.text != "z" && head.text != "p") fail(head, "'z' or 'p'");
    expect(Token::Type::LBracket, "'['");
    int particle = expectInt("particle index", 1);
    expect(Token::Type::RBracket, "']'");
    auto n = node(ExprNode::Tag::VecAtom, head);
    auto& mut = const_cast<ExprNode&>(*n);
    mut.vecKind = head.text == "z" ? Kind::Position : Kind::Momentum;
    mut.particle = particle;
    return n;
  }

  ExprPtr vexpr() {
    Token head = peek();
    ExprPtr left;
    if (accept(Token::Type::Minus))
      left = wrap(ExprNode::Tag::VecNegate, head, {vterm()});
    else
      left = vterm();
    while (peek().type == Token::Type::Plus || peek().type == Token::Type::Minus) {
      Token op = take();
      ExprPtr right = vterm();
      left = wrap(op.type == Token::Type::Plus ? ExprNode::Tag::VecSum : ExprNode::Tag::VecDiff,
                  op, {left, right});
    }
    return left;
  }

  ExprPtr vterm() {
    const Token& t = peek();
    if (t.type == Token::Type::Number) {
      Token num = take();
      expect(Token::Type::Star, "'*' after a vector scale factor");
      auto n = node(ExprNode::Tag::VecScale, num);
      auto& mut = const_cast<ExprNode&>(*n);
      mut.number = num.number;
      mut.kids = {vprimary()};
      return n;
    }
    if (t.type == Token::Type::LParen) {
      take();
      ExprPtr inner = vexpr();
      expect(Token::Type::RParen, "')'");
      return inner;
    }
    return vprimary();
  }

  ExprPtr vprimary() {
    const Token& t = peek();
    if (t.type == Token::Type::Ident && (t.text == "z" || t.text == "p")) return vecatom();
    if (t.type == Token::Type::Ident && t.text == "cross") {
      Token head = take();
      expect(Token::Type::LParen, "'('");
      ExprPtr a = vexpr();
      expect(Token::Type::Comma, "','");
      ExprPtr b = vexpr();
      expect(Token::Type::RParen, "')'");
      return wrap(ExprNode::Tag::Cross, head, {a, b});
    }
    fail(t, "'z', 'p', 'cross', or '(' in a vector expression");
  }

  std::vector<Token> m_toks;
  std::size_t m_pos = 0;
};

}  // namespace detail

inline ExprPtr parseExpression(std::string_view text) {
  if (text.size() > 64 * 1024) throw ParseError("expression exceeds 64 KiB", 1, 1);
  return detail::Parser(detail::tokenize(text)).parseTop();
}

namespace detail {

using VecComponents = std::array<OperatorPoly, 3>;

inline VecComponents lowerVector(const ExprPtr& n, const ParticleSystem& sys);

inline OperatorPoly lowerScalar(const ExprPtr& n, const ParticleSystem& sys) {
  using T = ExprNode::Tag;
  switch (n->tag) {
    case T::Number:
      return constantOp(GaussianRational(n->number));
    case T::ImaginaryUnit:
      return constantOp(GaussianRational::i());
    case T::Negate:
      return scale(lowerScalar(n->kids[0], sys), GaussianRational(-1));
    case T::Sum:
      return lowerScalar(n->kids[0], sys) + lowerScalar(n->kids[1], sys);
    case T::Diff:
      return lowerScalar(n->kids[0], sys) - lowerScalar(n->kids[1], sys);
    case T::Product:
      return mul(lowerScalar(n->kids[0], sys), lowerScalar(n->kids[1], sys));
    case T::Power:
      return polyPow(lowerScalar(n->kids[0], sys), n->exponent);
    case T::Component: {
      const ExprNode& atom = *n->kids[0];
      if (atom.particle > sys.count())
        throw ParseError("particle index " + std::to_string(atom.particle) +
                             " out of range for a system of " + std::to_string(sys.count()),
                         atom.line, atom.col);
      if (n->axis >= sys.dim)
        throw ParseError("axis exceeds system dimension " + std::to_string(sys.dim), n->line,
                         n->col);
      return canonicalOp({atom.vecKind, atom.particle, n->axis});
    }
    case T::Dot: {
      VecComponents a = lowerVector(n->kids[0], sys);
      VecComponents b = lowerVector(n->kids[1], sys);
      OperatorPoly out;
      for (int ax = 0; ax < sys.dim; ++ax) out += mul(a[ax], b[ax]);
      return out;
    }
    case T::Normfn: {
      VecComponents arg = lowerVector(n->kids[0], sys);
      PotentialAtom atom;
      atom.name = n->name;
      bool sawMomentum = false;
      auto extractAxis = [&](int ax, std::map<int, Rational>& coeffs) {
        for (const auto& [m, c] : arg[ax].terms) {
          if (!m.ps.empty()) { sawMomentum = true; return false; }
          if (!c.im.is_zero() || m.zs.size() != 1 || m.zs[0].second != 1 ||
              m.zs[0].first.axis != ax || !m.atoms.empty() || !m.syms.empty())
            return false;
          coeffs[m.zs[0].first.particle] = c.re;
        }
        return true;
      };
      std::map<int, Rational> first;
      bool ok = extractAxis(0, first);
      for (int ax = 1; ok && ax < sys.dim; ++ax) {
        std::map<int, Rational> other;
        ok = extractAxis(ax, other) && other == first;
      }
      if (sawMomentum)
        throw ParseError("normfn over momenta is not defined", n->line, n->col);
      if (!ok)
        throw ParseError("normfn argument must be a rational combination of position vectors",
                         n->line, n->col);
      atom.coeffs = std::move(first);
      atom.canonicalize();
      return atomOp(atom);
    }
    default:
      throw ParseError("vector expression used where a scalar is required", n->line, n->col);
  }
}

inline VecComponents lowerVector(const ExprPtr& n, const ParticleSystem& sys) {
  using T = ExprNode::Tag;
  VecComponents out;
  switch (n->tag) {
    case T::VecAtom: {
      if (n->particle > sys.count())
        throw ParseError("particle index " + std::to_string(n->particle) +
                             " out of range for a system of " + std::to_string(sys.count()),
                         n->line, n->col);
      for (int ax = 0; ax < sys.dim; ++ax) out[ax] = canonicalOp({n->vecKind, n->particle, ax});
      return out;
    }
    case T::VecNegate: {
      VecComponents a = lowerVector(n->kids[0], sys);
      for (int ax = 0; ax < 3; ++ax) out[ax] = scale(a[ax], GaussianRational(-1));
      return out;
    }
    case T::VecSum:
    case T::VecDiff: {
      VecComponents a = lowerVector(n->kids[0], sys);
      VecComponents b = lowerVector(n->kids[1], sys);
      for (int ax = 0; ax < 3; ++ax)
        out[ax] = n->tag == T::VecSum ? a[ax] + b[ax] : a[ax] - b[ax];
      return out;
    }
    case T::VecScale: {
      VecComponents a = lowerVector(n->kids[0], sys);
      for (int ax = 0; ax < 3; ++ax) out[ax] = scale(a[ax], GaussianRational(n->number));
      return out;
    }
    case T::Cross: {
      if (sys.dim != 3)
        throw ParseError("cross product needs a three-dimensional system", n->line, n->col);
      VecComponents a = lowerVector(n->kids[0], sys);
      VecComponents b = lowerVector(n->kids[1], sys);
      static constexpr int eps[3][3][3] = {
          {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
          {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
          {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          for (int w = 0; w < 3; ++w)
            if (eps[x][y][w] != 0)
              out[x] += scale(mul(a[y], b[w]), GaussianRational(eps[x][y][w]));
      return out;
    }
    default:
      throw ParseError("scalar expression used where a vector is required", n->line, n->col);
  }
}

}  // namespace detail

/// Expands vector constructs into components and normal-orders the result.
inline OperatorPoly lower(const ExprPtr& ast, const ParticleSystem& sys) {
  if (isVectorNode(*ast))
    throw ParseError("expression is a vector; take a component or form dot/normfn", ast->line,
                     ast->col);
  return detail::lowerScalar(ast, sys);
}

inline OperatorPoly parseAndLower(std::string_view text, const ParticleSystem& sys) {
  return lower(parseExpression(text), sys);
}

}  // namespace relobs
