#pragma once

#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"

namespace atlaskit {

/// Expression tree over named coordinates. Grouping is the tree shape itself:
/// nothing is ever reassociated or commuted.
struct Expr {
  enum class Op { variable, literal, neg, inv, add, sub, mul, tuple };

  Op op = Op::literal;
  std::string name;        // variable
  long long value = 0;     // literal, non-negative
  std::vector<Expr> args;  // children, left to right

  static Expr variable(std::string n) { return Expr{Op::variable, std::move(n), 0, {}}; }
  static Expr literal(long long v) { return Expr{Op::literal, {}, v, {}}; }
  static Expr negate(Expr a) { return Expr{Op::neg, {}, 0, {std::move(a)}}; }
  static Expr inverse(Expr a) { return Expr{Op::inv, {}, 0, {std::move(a)}}; }
  static Expr binary(Op op, Expr a, Expr b) { return Expr{op, {}, 0, {std::move(a), std::move(b)}}; }
  static Expr tuple(std::vector<Expr> items) { return Expr{Op::tuple, {}, 0, std::move(items)}; }

  bool operator==(const Expr&) const = default;
};

/// Conjunction of atoms; the empty conjunction is never produced by the parser.
struct Predicate {
  struct Atom {
    enum class Kind { always, never, invertible, nonzero, eq };
    Kind kind = Kind::always;
    std::vector<Expr> args;
    bool operator==(const Atom&) const = default;
  };
  std::vector<Atom> atoms;

  static Predicate always() { return Predicate{{Atom{Atom::Kind::always, {}}}}; }
  static Predicate never() { return Predicate{{Atom{Atom::Kind::never, {}}}}; }

  bool operator==(const Predicate&) const = default;
};

/// A tuple of n expressions over the coordinates x0..x{n-1}.
struct MapSpec {
  std::vector<Expr> components;

  std::size_t arity() const { return components.size(); }
  bool operator==(const MapSpec&) const = default;
};

/// Coordinate number of a variable name: `x<k>` is k, and `u`, `v` alias
/// x0, x1. Returns nullopt for any other identifier.
inline std::optional<std::size_t> coordinate_index(std::string_view name) {
  if (name == "u") return 0;
  if (name == "v") return 1;
  if (name.size() >= 2 && name[0] == 'x' && name.find_first_not_of("0123456789", 1) == std::string_view::npos &&
      name.size() <= 4)
    return static_cast<std::size_t>(std::stoul(std::string(name.substr(1))));
  return std::nullopt;
}

namespace detail {

struct Token {
  enum class Kind { integer, ident, plus, minus, star, lparen, rparen, comma, amp, end };
  Kind kind;
  std::string text;
  std::size_t line, col;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line, std::size_t col) : text_(text), line_(line), col_(col) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (true) {
      while (i < text_.size() && (text_[i] == ' ' || text_[i] == '\t' || text_[i] == '\r')) ++i;
      const std::size_t col = col_ + i;
      if (i >= text_.size()) {
        out.push_back({Token::Kind::end, "", line_, col});
        return out;
      }
      const char ch = text_[i];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        out.push_back({Token::Kind::integer, std::string(text_.substr(i, j - i)), line_, col});
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        out.push_back({Token::Kind::ident, std::string(text_.substr(i, j - i)), line_, col});
        i = j;
      } else if (ch == '&' && i + 1 < text_.size() && text_[i + 1] == '&') {
        out.push_back({Token::Kind::amp, "&&", line_, col});
        i += 2;
      } else {
        Token::Kind k;
        switch (ch) {
          case '+': k = Token::Kind::plus; break;
          case '-': k = Token::Kind::minus; break;
          case '*': k = Token::Kind::star; break;
          case '(': k = Token::Kind::lparen; break;
          case ')': k = Token::Kind::rparen; break;
          case ',': k = Token::Kind::comma; break;
          default: throw SyntaxError(line_, col, std::string("unexpected character '") + ch + "'");
        }
        out.push_back({k, std::string(1, ch), line_, col});
        ++i;
      }
    }
  }

 private:
  std::string_view text_;
  std::size_t line_, col_;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t line, std::size_t col) : toks_(Lexer(text, line, col).run()) {}

  Expr whole_expr() {
    Expr e = expr();
    expect_end();
    return e;
  }

  Predicate whole_predicate() {
    Predicate p;
    p.atoms.push_back(atom());
    while (peek().kind == Token::Kind::amp) {
      next();
      p.atoms.push_back(atom());
    }
    expect_end();
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void error(const Token& t, const std::string& msg) const {
    const std::string found = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.col, msg + ", found " + found);
  }

  void expect(Token::Kind k, const char* what) {
    if (peek().kind != k) error(peek(), std::string("expected ") + what);
    next();
  }

  void expect_end() {
    if (peek().kind != Token::Kind::end) error(peek(), "expected end of input");
  }

  Expr expr() {
    Expr left = term();
    while (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::minus) {
      const auto op = next().kind == Token::Kind::plus ? Expr::Op::add : Expr::Op::sub;
      left = Expr::binary(op, std::move(left), term());
    }
    return left;
  }

  Expr term() {
    Expr left = factor();
    while (peek().kind == Token::Kind::star) {
      next();
      left = Expr::binary(Expr::Op::mul, std::move(left), factor());
    }
    return left;
  }

  Expr factor() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::integer: {
        next();
        if (t.text.size() > 18) error(t, "integer literal too large");
        return Expr::literal(std::stoll(t.text));
      }
      case Token::Kind::ident: {
        next();
        if (t.text == "inv") {
          expect(Token::Kind::lparen, "'(' after inv");
          Expr inner = expr();
          expect(Token::Kind::rparen, "')'");
          return Expr::inverse(std::move(inner));
        }
        return Expr::variable(t.text);
      }
      case Token::Kind::minus: {
        next();
        return Expr::negate(factor());
      }
      case Token::Kind::lparen: {
        next();
        Expr first = expr();
        if (peek().kind == Token::Kind::comma) {
          std::vector<Expr> items{std::move(first)};
          while (peek().kind == Token::Kind::comma) {
            next();
            items.push_back(expr());
          }
          expect(Token::Kind::rparen, "')'");
          return Expr::tuple(std::move(items));
        }
        expect(Token::Kind::rparen, "')'");
        return first;
      }
      default: error(t, "expected factor");
    }
  }

  Predicate::Atom atom() {
    const Token& t = peek();
    if (t.kind != Token::Kind::ident) error(t, "expected predicate atom");
    next();
    using K = Predicate::Atom::Kind;
    if (t.text == "true") return {K::always, {}};
    if (t.text == "false") return {K::never, {}};
    K kind;
    std::size_t argc = 1;
    if (t.text == "invertible") {
      kind = K::invertible;
    } else if (t.text == "nonzero") {
      kind = K::nonzero;
    } else if (t.text == "eq") {
      kind = K::eq;
      argc = 2;
    } else {
      error(t, "unknown predicate atom");
    }
    expect(Token::Kind::lparen, "'('");
    std::vector<Expr> args{expr()};
    for (std::size_t k = 1; k < argc; ++k) {
      expect(Token::Kind::comma, "','");
      args.push_back(expr());
    }
    expect(Token::Kind::rparen, "')'");
    return {kind, std::move(args)};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline int precedence(const Expr& e) {
  switch (e.op) {
    case Expr::Op::add:
    case Expr::Op::sub: return 1;
    case Expr::Op::mul: return 2;
    case Expr::Op::neg: return 3;
    default: return 4;
  }
}

inline void write(const Expr& e, std::string& out) {
  auto wrapped = [&](const Expr& child, bool parens) {
    if (parens) out += "(";
    write(child, out);
    if (parens) out += ")";
  };
  switch (e.op) {
    case Expr::Op::variable: out += e.name; return;
    case Expr::Op::literal: out += std::to_string(e.value); return;
    case Expr::Op::neg:
      out += "-";
      wrapped(e.args[0], precedence(e.args[0]) < 3);
      return;
    case Expr::Op::inv:
      out += "inv(";
      write(e.args[0], out);
      out += ")";
      return;
    case Expr::Op::add:
    case Expr::Op::sub:
    case Expr::Op::mul: {
      const int p = precedence(e);
      wrapped(e.args[0], precedence(e.args[0]) < p);
      out += e.op == Expr::Op::add ? "+" : e.op == Expr::Op::sub ? "-" : "*";
      wrapped(e.args[1], precedence(e.args[1]) <= p);
      return;
    }
    case Expr::Op::tuple:
      out += "(";
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        if (k) out += ", ";
        write(e.args[k], out);
      }
      out += ")";
      return;
  }
}

}  // namespace detail

/// Parses one expression. `*` and `+`/`-` associate to the left, so
/// `a*b*c` is (a*b)*c. Line/column offsets locate the text inside a file.
inline Expr parse_expr(std::string_view text, std::size_t line = 1, std::size_t col = 1) {
  return detail::Parser(text, line, col).whole_expr();
}

inline Predicate parse_predicate(std::string_view text, std::size_t line = 1, std::size_t col = 1) {
  return detail::Parser(text, line, col).whole_predicate();
}

/// A parenthesized tuple gives one component per item; anything else is a
/// one-component map.
inline MapSpec parse_map(std::string_view text, std::size_t line = 1, std::size_t col = 1) {
  Expr e = parse_expr(text, line, col);
  if (e.op == Expr::Op::tuple) return MapSpec{std::move(e.args)};
  return MapSpec{{std::move(e)}};
}

/// Minimal-parenthesis text that parses back to the same tree.
inline std::string to_string(const Expr& e) {
  std::string out;
  detail::write(e, out);
  return out;
}

inline std::string to_string(const MapSpec& m) {
  if (m.arity() == 1) return to_string(m.components[0]);
  return to_string(Expr::tuple(m.components));
}

inline std::string to_string(const Predicate& p) {
  std::string out;
  for (std::size_t k = 0; k < p.atoms.size(); ++k) {
    if (k) out += " && ";
    const auto& a = p.atoms[k];
    using K = Predicate::Atom::Kind;
    switch (a.kind) {
      case K::always: out += "true"; break;
      case K::never: out += "false"; break;
      case K::invertible: out += "invertible(" + to_string(a.args[0]) + ")"; break;
      case K::nonzero: out += "nonzero(" + to_string(a.args[0]) + ")"; break;
      case K::eq: out += "eq(" + to_string(a.args[0]) + ", " + to_string(a.args[1]) + ")"; break;
    }
  }
  return out;
}

/// Every variable name referenced, in order of first appearance.
inline void collect_variables(const Expr& e, std::vector<std::string>& out) {
  if (e.op == Expr::Op::variable) {
    if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
    return;
  }
  for (const auto& a : e.args) collect_variables(a, out);
}

/// Throws InputError unless every variable names a coordinate below `dim`.
inline void check_variables(const Expr& e, std::size_t dim) {
  std::vector<std::string> vars;
  collect_variables(e, vars);
  for (const auto& v : vars) {
    auto k = coordinate_index(v);
    if (!k || *k >= dim)
      throw InputError("variable '" + v + "' is not a coordinate of a " + std::to_string(dim) + "-dimensional chart");
  }
}

/// Evaluates exactly as the tree is shaped. Division by a non-invertible
/// value raises EvalError naming the offending sub-expression.
inline Element eval_expr(const Expr& e, std::span<const Element> coords, const Algebra& A) {
  switch (e.op) {
    case Expr::Op::variable: {
      auto k = coordinate_index(e.name);
      if (!k || *k >= coords.size()) throw InputError("unbound variable '" + e.name + "'");
      return coords[*k];
    }
    case Expr::Op::literal: return A.from_integer(e.value);
    case Expr::Op::neg: return A.neg(eval_expr(e.args[0], coords, A));
    case Expr::Op::inv: {
      Element x = eval_expr(e.args[0], coords, A);
      if (!A.is_invertible(x)) throw EvalError("inverse of a non-invertible value", to_string(e));
      return A.inv(x);
    }
    case Expr::Op::add: return A.add(eval_expr(e.args[0], coords, A), eval_expr(e.args[1], coords, A));
    case Expr::Op::sub: return A.sub(eval_expr(e.args[0], coords, A), eval_expr(e.args[1], coords, A));
    case Expr::Op::mul: return A.mul(eval_expr(e.args[0], coords, A), eval_expr(e.args[1], coords, A));
    case Expr::Op::tuple: throw EvalError("tuple in scalar position", to_string(e));
  }
  throw InputError("corrupt expression");
}

inline Point eval_map(const MapSpec& m, std::span<const Element> coords, const Algebra& A) {
  Point out;
  out.reserve(m.arity());
  for (const auto& c : m.components) out.push_back(eval_expr(c, coords, A));
  return out;
}

/// Pointwise truth of a predicate. An atom whose expression cannot be
/// evaluated at the point counts as false.
inline bool holds(const Predicate& p, std::span<const Element> coords, const Algebra& A) {
  using K = Predicate::Atom::Kind;
  for (const auto& a : p.atoms) {
    try {
      switch (a.kind) {
        case K::always: break;
        case K::never: return false;
        case K::invertible:
          if (!A.is_invertible(eval_expr(a.args[0], coords, A))) return false;
          break;
        case K::nonzero:
          if (A.is_zero(eval_expr(a.args[0], coords, A))) return false;
          break;
        case K::eq:
          if (eval_expr(a.args[0], coords, A) != eval_expr(a.args[1], coords, A)) return false;
          break;
      }
    } catch (const EvalError&) {
      return false;
    }
  }
  return true;
}

inline void check_variables(const Predicate& p, std::size_t dim) {
  for (const auto& a : p.atoms)
    for (const auto& e : a.args) check_variables(e, dim);
}

/// Identity map on n coordinates, spelled with the u/v aliases when n ≤ 2.
inline MapSpec identity_map(std::size_t n) {
  MapSpec m;
  for (std::size_t k = 0; k < n; ++k) {
    std::string name = n <= 2 ? (k == 0 ? "u" : "v") : "x" + std::to_string(k);
    m.components.push_back(Expr::variable(name));
  }
  return m;
}

}  // namespace atlaskit
