#include "quatfhe/circuit.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "quatfhe/errors.hpp"

namespace quatfhe::circuit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse_all() {
    ExprPtr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail({"'+'", "'*'", "end of input"});
    return e;
  }

 private:
  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    while (peek() == '+') {
      ++pos_;
      lhs = count(add(std::move(lhs), parse_term()));
    }
    return lhs;
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_factor();
    while (peek() == '*') {
      ++pos_;
      lhs = count(mul(std::move(lhs), parse_factor()));
    }
    return lhs;
  }

  ExprPtr parse_factor() {
    const char c = peek();
    if (c == '(') {
      if (++depth_ > kMaxNodes) {
        throw ExpressionTooLarge("expression nests more than " +
                                 std::to_string(kMaxNodes) + " levels");
      }
      ++pos_;
      ExprPtr inner = parse_expr();
      if (peek() != ')') fail({"'+'", "'*'", "')'"});
      ++pos_;
      --depth_;
      return inner;
    }
    if (is_digit(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      return count(
          constant(BigInt(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (is_alpha(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (is_alpha(text_[pos_]) || is_digit(text_[pos_]) ||
              text_[pos_] == '_')) {
        ++pos_;
      }
      return count(variable(std::string(text_.substr(start, pos_ - start))));
    }
    fail({"NUMBER", "IDENT", "'('"});
  }

  // Skips whitespace and returns the next character, or '\0' at the end.
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  ExprPtr count(ExprPtr e) {
    if (++nodes_ > kMaxNodes) {
      throw ExpressionTooLarge("expression exceeds " +
                               std::to_string(kMaxNodes) + " nodes");
    }
    return e;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string found = pos_ < text_.size()
                            ? "'" + std::string(1, text_[pos_]) + "'"
                            : std::string("end of input");
    throw ParseError(pos_, std::move(expected), found);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t nodes_ = 0;
  std::size_t depth_ = 0;
};

bool is_add(const ExprPtr& e) { return std::holds_alternative<Add>(e->node); }
bool is_mul(const ExprPtr& e) { return std::holds_alternative<Mul>(e->node); }

void render(const Expr& e, std::string& out);

void render_wrapped(const ExprPtr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  render(*e, out);
  if (wrap) out += ')';
}

void render(const Expr& e, std::string& out) {
  std::visit(Overloaded{
                 [&](const Variable& v) { out += v.name; },
                 [&](const Constant& c) { out += c.value.get_str(); },
                 [&](const Add& a) {
                   render_wrapped(a.lhs, false, out);
                   out += " + ";
                   render_wrapped(a.rhs, is_add(a.rhs), out);
                 },
                 [&](const Mul& m) {
                   render_wrapped(m.lhs, is_add(m.lhs), out);
                   out += " * ";
                   render_wrapped(m.rhs, is_add(m.rhs) || is_mul(m.rhs), out);
                 },
             },
             e.node);
}

// Post-order walk shared by compile and bind_encrypted.
using LeafEncoder = std::function<Ciphertext(const Expr&)>;

ProgramNodePtr build(const Expr& e, const LeafEncoder& leaf) {
  return std::visit(
      Overloaded{
          [&](const Add& a) -> ProgramNodePtr {
            auto lhs = build(*a.lhs, leaf);
            auto rhs = build(*a.rhs, leaf);
            return std::make_shared<const ProgramNode>(
                ProgramNode{ProgramNode::Sum{std::move(lhs), std::move(rhs)}});
          },
          [&](const Mul& m) -> ProgramNodePtr {
            auto lhs = build(*m.lhs, leaf);
            auto rhs = build(*m.rhs, leaf);
            return std::make_shared<const ProgramNode>(ProgramNode{
                ProgramNode::Product{std::move(lhs), std::move(rhs)}});
          },
          [&](const auto&) -> ProgramNodePtr {
            return std::make_shared<const ProgramNode>(ProgramNode{leaf(e)});
          },
      },
      e.node);
}

Ciphertext evaluate(const ProgramNode& n) {
  return std::visit(
      Overloaded{
          [](const Ciphertext& c) { return c; },
          [](const ProgramNode::Sum& s) {
            return he_add(evaluate(*s.lhs), evaluate(*s.rhs));
          },
          [](const ProgramNode::Product& p) {
            return he_mul(evaluate(*p.lhs), evaluate(*p.rhs));
          },
      },
      n.node);
}

}  // namespace

ExprPtr variable(std::string name) {
  return std::make_shared<const Expr>(Expr{Variable{std::move(name)}});
}
ExprPtr constant(BigInt value) {
  return std::make_shared<const Expr>(Expr{Constant{std::move(value)}});
}
ExprPtr add(ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{Add{std::move(lhs), std::move(rhs)}});
}
ExprPtr mul(ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const Expr>(Expr{Mul{std::move(lhs), std::move(rhs)}});
}

ExprPtr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Expr& expr) {
  std::string out;
  render(expr, out);
  return out;
}

bool structurally_equal(const Expr& lhs, const Expr& rhs) {
  if (lhs.node.index() != rhs.node.index()) return false;
  return std::visit(
      Overloaded{
          [&](const Variable& v) {
            return v.name == std::get<Variable>(rhs.node).name;
          },
          [&](const Constant& c) {
            return c.value == std::get<Constant>(rhs.node).value;
          },
          [&](const Add& a) {
            const Add& b = std::get<Add>(rhs.node);
            return structurally_equal(*a.lhs, *b.lhs) &&
                   structurally_equal(*a.rhs, *b.rhs);
          },
          [&](const Mul& a) {
            const Mul& b = std::get<Mul>(rhs.node);
            return structurally_equal(*a.lhs, *b.lhs) &&
                   structurally_equal(*a.rhs, *b.rhs);
          },
      },
      lhs.node);
}

BigInt eval_plain(const Expr& expr, const Environment& env,
                  const BigInt& modulus) {
  return std::visit(
      Overloaded{
          [&](const Variable& v) {
            const auto it = env.find(v.name);
            if (it == env.end()) throw UnboundVariable(v.name);
            return reduce(it->second, modulus);
          },
          [&](const Constant& c) { return reduce(c.value, modulus); },
          [&](const Add& a) {
            return reduce(eval_plain(*a.lhs, env, modulus) +
                              eval_plain(*a.rhs, env, modulus),
                          modulus);
          },
          [&](const Mul& m) {
            return reduce(eval_plain(*m.lhs, env, modulus) *
                              eval_plain(*m.rhs, env, modulus),
                          modulus);
          },
      },
      expr.node);
}

ExprStats stats(const Expr& expr) {
  return std::visit(
      Overloaded{
          [](const Variable&) { return ExprStats{1, 0}; },
          [](const Constant&) { return ExprStats{1, 0}; },
          [](const Add& a) {
            const ExprStats l = stats(*a.lhs);
            const ExprStats r = stats(*a.rhs);
            return ExprStats{l.node_count + r.node_count + 1,
                             std::max(l.mul_depth, r.mul_depth)};
          },
          [](const Mul& m) {
            const ExprStats l = stats(*m.lhs);
            const ExprStats r = stats(*m.rhs);
            return ExprStats{l.node_count + r.node_count + 1,
                             std::max(l.mul_depth, r.mul_depth) + 1};
          },
      },
      expr.node);
}

EncryptedProgram compile(const Expr& expr, const SecretKey& sk,
                         const Environment& env, RandomSource& rng) {
  const BigInt& n2 = sk.params().n_squared().value();
  LeafEncoder leaf = [&](const Expr& e) {
    if (const auto* v = std::get_if<Variable>(&e.node)) {
      const auto it = env.find(v->name);
      if (it == env.end()) throw UnboundVariable(v->name);
      return encrypt(sk, it->second, rng);
    }
    return encrypt(sk, reduce(std::get<Constant>(e.node).value, n2), rng);
  };
  return EncryptedProgram{sk.params(), build(expr, leaf)};
}

EncryptedProgram bind_encrypted(const Expr& expr,
                                const CiphertextEnvironment& inputs) {
  std::optional<SchemeParams> params;
  LeafEncoder leaf = [&](const Expr& e) {
    const auto* v = std::get_if<Variable>(&e.node);
    if (v == nullptr) {
      throw Error("constant " + std::get<Constant>(e.node).value.get_str() +
                  " needs the secret key to be encrypted");
    }
    const auto it = inputs.find(v->name);
    if (it == inputs.end()) throw UnboundVariable(v->name);
    if (!params) {
      params = it->second.params();
    } else if (!(*params == it->second.params())) {
      throw ModulusMismatch("input '" + v->name + "' uses a different N");
    }
    return it->second;
  };
  ProgramNodePtr root = build(expr, leaf);
  return EncryptedProgram{*params, std::move(root)};
}

Ciphertext eval_encrypted(const EncryptedProgram& program) {
  return evaluate(*program.root);
}

}  // namespace quatfhe::circuit
