#pragma once

// Syntax tree of .twk specification files, error type, and pretty printer.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistkit::dsl {

struct Pos {
  int line = 1;
  int col = 1;
};

inline std::string to_string(Pos p) { return std::to_string(p.line) + ":" + std::to_string(p.col); }

enum class ErrorCode { lexical, syntax, unresolved_name, arity_mismatch, type_mismatch, duplicate_name, invalid_declaration };

inline const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::lexical: return "E1-lexical";
    case ErrorCode::syntax: return "E2-syntax";
    case ErrorCode::unresolved_name: return "E3-unresolved-name";
    case ErrorCode::arity_mismatch: return "E4-arity-mismatch";
    case ErrorCode::type_mismatch: return "E5-type-mismatch";
    case ErrorCode::duplicate_name: return "E6-duplicate-name";
    case ErrorCode::invalid_declaration: return "E7-invalid-declaration";
  }
  return "E?";
}

class SpecError : public std::runtime_error {
public:
  SpecError(ErrorCode code, Pos pos, const std::string& message, std::vector<std::string> expected = {})
      : std::runtime_error(format(code, pos, message, expected)), code_(code), pos_(pos), expected_(std::move(expected)) {}

  ErrorCode code() const { return code_; }
  Pos pos() const { return pos_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  static std::string format(ErrorCode code, Pos pos, const std::string& message, const std::vector<std::string>& expected) {
    std::string out = to_string(pos) + ": " + code_name(code) + ": " + message;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t k = 0; k < expected.size(); ++k) out += (k ? ", " : "") + expected[k];
      out += ")";
    }
    return out;
  }

  ErrorCode code_;
  Pos pos_;
  std::vector<std::string> expected_;
};

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { number, imaginary, hbar, name, derivative, negate, binary, call };
  Kind kind;
  std::string text;  // digits, identifier, derivative variable, operator or function name
  std::vector<Expr> args;
  Pos pos;
};

inline Expr make_node(Node::Kind k, std::string text, std::vector<Expr> args, Pos pos) {
  return std::make_shared<const Node>(Node{k, std::move(text), std::move(args), pos});
}

/// Structural equality, ignoring source positions.
inline bool same_tree(const Expr& a, const Expr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->text != b->text || a->args.size() != b->args.size()) return false;
  for (std::size_t k = 0; k < a->args.size(); ++k)
    if (!same_tree(a->args[k], b->args[k])) return false;
  return true;
}

struct Assignment {
  std::string target;  // generator name, derivative token such as d/dx, or A_x / A_y
  Expr value;
  Pos pos;
};

struct BracketRule {
  std::string left, right;
  Expr value;
  Pos pos;
};

struct Declaration {
  std::string kind;  // liealgebra, model, action, twist, star, module, bundle
  std::string name;
  Pos pos;
  std::string form;  // model: torus|affine; twist: expr|orders; bundle: degree|action; star: Poisson structure
  std::vector<std::pair<std::string, std::string>> refs;  // role -> referenced declaration
  std::vector<Pos> ref_positions;                          // parallel to refs
  std::vector<std::string> generators;
  std::vector<BracketRule> rules;
  std::vector<Assignment> assignments;
  std::vector<Assignment> sections;
  std::optional<Expr> body;
  std::vector<Expr> orders;
  long number = 0;

  std::optional<std::string> ref(const std::string& role) const {
    for (const auto& [r, n] : refs)
      if (r == role) return n;
    return std::nullopt;
  }

  Pos ref_pos(const std::string& role) const {
    for (std::size_t k = 0; k < refs.size() && k < ref_positions.size(); ++k)
      if (refs[k].first == role) return ref_positions[k];
    return pos;
  }
};

struct SpecDocument {
  std::vector<Declaration> declarations;
};

// ---------------------------------------------------------------- printing

inline int precedence(const std::string& op) {
  if (op == "+" || op == "-") return 1;
  if (op == "*" || op == "/") return 2;
  if (op == "⊗") return 3;
  if (op == "^") return 5;
  return 6;
}

inline int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::binary: return precedence(n.text);
    case Node::Kind::negate: return 4;
    default: return 6;
  }
}

inline std::string print(const Expr& e);

inline std::string print_wrapped(const Expr& e, bool wrap) { return wrap ? "(" + print(e) + ")" : print(e); }

inline std::string print(const Expr& e) {
  const Node& n = *e;
  switch (n.kind) {
    case Node::Kind::number:
    case Node::Kind::name: return n.text;
    case Node::Kind::imaginary: return "i";
    case Node::Kind::hbar: return "h";
    case Node::Kind::derivative: return "d/d" + n.text;
    case Node::Kind::call: return n.text + "(" + print(n.args[0]) + ")";
    case Node::Kind::negate: return "-" + print_wrapped(n.args[0], precedence(*n.args[0]) < 4);
    case Node::Kind::binary: {
      const int p = precedence(n.text);
      const int lp = precedence(*n.args[0]), rp = precedence(*n.args[1]);
      if (n.text == "^") return print_wrapped(n.args[0], lp <= p) + "^" + print_wrapped(n.args[1], rp < p);
      const std::string op = n.text == "⊗" ? " ⊗ " : " " + n.text + " ";
      return print_wrapped(n.args[0], lp < p) + op + print_wrapped(n.args[1], rp <= p);
    }
  }
  return "?";
}

inline std::string print_assignments(const std::vector<Assignment>& as, const char* arrow) {
  std::string out = "{ ";
  for (std::size_t k = 0; k < as.size(); ++k) out += (k ? ", " : "") + as[k].target + " " + arrow + " " + print(as[k].value);
  return out + " }";
}

inline std::string print(const Declaration& d) {
  std::string out = d.kind + " " + d.name;
  if (d.kind == "liealgebra") {
    out += " { ";
    for (const auto& g : d.generators) out += g + " ";
    if (!d.rules.empty()) {
      out += ":";
      for (std::size_t k = 0; k < d.rules.size(); ++k)
        out += std::string(k ? ", " : " ") + "[" + d.rules[k].left + "," + d.rules[k].right + "] = " + print(d.rules[k].value);
      out += " ";
    }
    return out + "}";
  }
  if (d.kind == "model") return out + " = " + d.form + "(" + std::to_string(d.number) + ")";
  if (d.kind == "action") return out + " : " + *d.ref("lie") + " on " + *d.ref("model") + " " + print_assignments(d.assignments, "->");
  if (d.kind == "twist") {
    if (auto lie = d.ref("lie")) out += " : " + *lie;
    if (d.form == "expr") return out + " = " + print(*d.body);
    out += " orders [ ";
    for (std::size_t k = 0; k < d.orders.size(); ++k) out += (k ? ", " : "") + print(d.orders[k]);
    return out + " ]";
  }
  if (d.kind == "star") {
    out += " = " + *d.ref("twist") + " via " + *d.ref("action");
    if (!d.form.empty()) out += " poisson " + d.form;
    return out;
  }
  if (d.kind == "module") {
    out += " = trivial over " + *d.ref("action");
    if (!d.sections.empty()) out += " sections " + print_assignments(d.sections, "->");
    return out + " with " + *d.ref("twist");
  }
  if (d.kind == "bundle") {
    if (d.form == "action") return out + " = action " + print_assignments(d.assignments, "->");
    out += " = degree " + std::to_string(d.number);
    if (!d.assignments.empty()) out += " with connection " + print_assignments(d.assignments, "=");
    return out;
  }
  return out;
}

inline std::string print(const SpecDocument& doc) {
  std::string out;
  for (const auto& d : doc.declarations) out += print(d) + "\n";
  return out;
}

inline bool same_assignments(const std::vector<Assignment>& a, const std::vector<Assignment>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].target != b[k].target || !same_tree(a[k].value, b[k].value)) return false;
  return true;
}

/// Equality of documents, ignoring source positions.
inline bool same_document(const SpecDocument& a, const SpecDocument& b) {
  if (a.declarations.size() != b.declarations.size()) return false;
  for (std::size_t k = 0; k < a.declarations.size(); ++k) {
    const auto& x = a.declarations[k];
    const auto& y = b.declarations[k];
    if (x.kind != y.kind || x.name != y.name || x.form != y.form || x.refs != y.refs || x.generators != y.generators ||
        x.number != y.number || x.rules.size() != y.rules.size() || x.orders.size() != y.orders.size() ||
        x.body.has_value() != y.body.has_value())
      return false;
    for (std::size_t r = 0; r < x.rules.size(); ++r)
      if (x.rules[r].left != y.rules[r].left || x.rules[r].right != y.rules[r].right ||
          !same_tree(x.rules[r].value, y.rules[r].value))
        return false;
    for (std::size_t r = 0; r < x.orders.size(); ++r)
      if (!same_tree(x.orders[r], y.orders[r])) return false;
    if (x.body && !same_tree(*x.body, *y.body)) return false;
    if (!same_assignments(x.assignments, y.assignments) || !same_assignments(x.sections, y.sections)) return false;
  }
  return true;
}

}  // namespace twistkit::dsl
