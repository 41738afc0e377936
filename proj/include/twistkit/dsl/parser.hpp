#pragma once

// Recursive-descent parser for .twk files.
//
//   liealgebra NAME { GEN... [: [A,B] = expr, ...] }
//   model NAME = torus(n) | affine(n)
//   action NAME : LIE on MODEL { GEN -> op, ... }
//   twist NAME [: LIE] = expr
//   twist NAME [: LIE] orders [ expr, ... ]
//   star NAME = TWIST via ACTION [poisson standard|zero|none]
//   module NAME = trivial over ACTION [sections { GEN -> op, ... }] with TWIST
//   bundle NAME = degree d [with connection { A_x = expr, A_y = expr }]
//   bundle NAME = action { d/dx -> op, d/dy -> op }
//
// Expressions, loosest first: + -, * /, ⊗, unary -, ^, then atoms
// (integers, i, h, names, d/dx, exp/log/sin/cos(expr), parentheses).

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twistkit/dsl/ast.hpp"
#include "twistkit/dsl/lexer.hpp"

namespace twistkit::dsl {

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  SpecDocument document() {
    SpecDocument doc;
    while (!at_end()) doc.declarations.push_back(declaration());
    return doc;
  }

  Expr expression_only() {
    Expr e = expression();
    if (!at_end()) fail({"end of input"});
    return e;
  }

private:
  const Token& peek() const { return tokens_[index_]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }
  const Token& take() { return tokens_[index_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    const std::string found = t.kind == Token::Kind::end ? "end of input" : "'" + describe(t) + "'";
    throw SpecError(ErrorCode::syntax, t.pos, "unexpected " + found, std::move(expected));
  }

  static std::string describe(const Token& t) { return t.kind == Token::Kind::derivative ? "d/d" + t.text : t.text; }

  bool is_symbol(std::string_view s) const { return peek().kind == Token::Kind::symbol && peek().text == s; }
  bool is_word(std::string_view s) const { return peek().kind == Token::Kind::identifier && peek().text == s; }

  const Token& symbol(std::string_view s) {
    if (!is_symbol(s)) fail({"'" + std::string(s) + "'"});
    return take();
  }
  const Token& word(std::string_view s) {
    if (!is_word(s)) fail({"'" + std::string(s) + "'"});
    return take();
  }
  const Token& identifier(const char* what) {
    if (peek().kind != Token::Kind::identifier) fail({what});
    return take();
  }
  void reference(Declaration& d, const char* role, const char* what) {
    const Token& t = identifier(what);
    d.refs.emplace_back(role, t.text);
    d.ref_positions.push_back(t.pos);
  }
  long integer(bool allow_sign) {
    bool negative = false;
    if (allow_sign && is_symbol("-")) {
      take();
      negative = true;
    }
    if (peek().kind != Token::Kind::integer) fail({"integer"});
    const Token& t = take();
    long v = 0;
    try {
      v = std::stol(t.text);
    } catch (const std::exception&) {
      throw SpecError(ErrorCode::lexical, t.pos, "integer literal out of range");
    }
    return negative ? -v : v;
  }

  Declaration declaration() {
    static const std::vector<std::string> kinds = {"liealgebra", "model", "action", "twist", "star", "module", "bundle"};
    if (peek().kind != Token::Kind::identifier) fail(kinds);
    const Token& kw = peek();
    Declaration d;
    d.kind = kw.text;
    d.pos = kw.pos;
    if (d.kind == "liealgebra") return lie_algebra(d);
    if (d.kind == "model") return model(d);
    if (d.kind == "action") return action(d);
    if (d.kind == "twist") return twist(d);
    if (d.kind == "star") return star(d);
    if (d.kind == "module") return module(d);
    if (d.kind == "bundle") return bundle(d);
    fail(kinds);
  }

  void header(Declaration& d) {
    take();
    d.name = identifier("declaration name").text;
  }

  Declaration lie_algebra(Declaration& d) {
    header(d);
    symbol("{");
    while (peek().kind == Token::Kind::identifier) d.generators.push_back(take().text);
    if (is_symbol(":")) {
      take();
      do {
        BracketRule r;
        r.pos = symbol("[").pos;
        r.left = identifier("generator").text;
        symbol(",");
        r.right = identifier("generator").text;
        symbol("]");
        symbol("=");
        r.value = expression();
        d.rules.push_back(std::move(r));
      } while (is_symbol(",") && (take(), true));
    }
    if (!is_symbol("}")) fail(d.rules.empty() ? std::vector<std::string>{"generator", "':'", "'}'"} : std::vector<std::string>{"','", "'}'"});
    take();
    return d;
  }

  Declaration model(Declaration& d) {
    header(d);
    symbol("=");
    if (!is_word("torus") && !is_word("affine")) fail({"'torus'", "'affine'"});
    d.form = take().text;
    symbol("(");
    d.number = integer(false);
    symbol(")");
    return d;
  }

  std::vector<Assignment> assignments(bool derivative_targets, const char* arrow) {
    std::vector<Assignment> out;
    symbol("{");
    do {
      Assignment a;
      a.pos = peek().pos;
      if (derivative_targets) {
        if (peek().kind != Token::Kind::derivative) fail({"derivative such as d/dx"});
        a.target = "d/d" + take().text;
      } else {
        a.target = identifier("name").text;
      }
      symbol(arrow);
      a.value = expression();
      out.push_back(std::move(a));
    } while (is_symbol(",") && (take(), true));
    symbol("}");
    return out;
  }

  Declaration action(Declaration& d) {
    header(d);
    symbol(":");
    reference(d, "lie", "Lie algebra name");
    word("on");
    reference(d, "model", "model name");
    d.assignments = assignments(false, "->");
    return d;
  }

  Declaration twist(Declaration& d) {
    header(d);
    if (is_symbol(":")) {
      take();
      reference(d, "lie", "Lie algebra name");
    }
    if (is_symbol("=")) {
      take();
      d.form = "expr";
      d.body = expression();
      return d;
    }
    if (!is_word("orders")) fail({"'='", "'orders'"});
    take();
    d.form = "orders";
    symbol("[");
    do d.orders.push_back(expression());
    while (is_symbol(",") && (take(), true));
    symbol("]");
    return d;
  }

  Declaration star(Declaration& d) {
    header(d);
    symbol("=");
    reference(d, "twist", "twist name");
    word("via");
    reference(d, "action", "action name");
    if (is_word("poisson")) {
      take();
      if (!is_word("standard") && !is_word("zero") && !is_word("none")) fail({"'standard'", "'zero'", "'none'"});
      d.form = take().text;
    }
    return d;
  }

  Declaration module(Declaration& d) {
    header(d);
    symbol("=");
    word("trivial");
    word("over");
    reference(d, "action", "action name");
    if (is_word("sections")) {
      take();
      d.sections = assignments(false, "->");
    }
    word("with");
    reference(d, "twist", "twist name");
    return d;
  }

  Declaration bundle(Declaration& d) {
    header(d);
    symbol("=");
    if (is_word("action")) {
      take();
      d.form = "action";
      d.assignments = assignments(true, "->");
      return d;
    }
    if (!is_word("degree")) fail({"'degree'", "'action'"});
    take();
    d.form = "degree";
    d.number = integer(true);
    if (is_word("with")) {
      take();
      word("connection");
      d.assignments = assignments(false, "=");
    }
    return d;
  }

  // ------------------------------------------------------------ expressions

  Expr expression() {
    Expr left = product();
    while (is_symbol("+") || is_symbol("-")) {
      const Token& op = take();
      left = make_node(Node::Kind::binary, op.text, {left, product()}, op.pos);
    }
    return left;
  }

  Expr product() {
    Expr left = tensor();
    while (is_symbol("*") || is_symbol("/")) {
      const Token& op = take();
      left = make_node(Node::Kind::binary, op.text, {left, tensor()}, op.pos);
    }
    return left;
  }

  Expr tensor() {
    Expr left = unary();
    while (is_symbol("⊗")) {
      const Token& op = take();
      left = make_node(Node::Kind::binary, op.text, {left, unary()}, op.pos);
    }
    return left;
  }

  Expr unary() {
    if (is_symbol("-")) {
      const Token& op = take();
      return make_node(Node::Kind::negate, "-", {unary()}, op.pos);
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (is_symbol("^")) {
      const Token& op = take();
      return make_node(Node::Kind::binary, "^", {base, power()}, op.pos);
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::integer: take(); return make_node(Node::Kind::number, t.text, {}, t.pos);
      case Token::Kind::derivative: take(); return make_node(Node::Kind::derivative, t.text, {}, t.pos);
      case Token::Kind::identifier: {
        take();
        if (t.text == "i") return make_node(Node::Kind::imaginary, "i", {}, t.pos);
        if (t.text == "h") return make_node(Node::Kind::hbar, "h", {}, t.pos);
        if (is_function_name(t.text)) {
          symbol("(");
          Expr arg = expression();
          symbol(")");
          return make_node(Node::Kind::call, t.text, {arg}, t.pos);
        }
        return make_node(Node::Kind::name, t.text, {}, t.pos);
      }
      case Token::Kind::symbol:
        if (t.text == "(") {
          take();
          Expr e = expression();
          symbol(")");
          return e;
        }
        break;
      case Token::Kind::end: break;
    }
    fail({"integer", "name", "'i'", "'h'", "'('", "function call"});
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

inline SpecDocument parse_spec(std::string_view text) { return Parser(text).document(); }
inline Expr parse_expression(std::string_view text) { return Parser(text).expression_only(); }

}  // namespace twistkit::dsl
