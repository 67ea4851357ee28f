#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "quatfhe/random.hpp"
#include "quatfhe/scheme.hpp"

namespace quatfhe::circuit {

/// Parsed expressions larger than this are rejected with ExpressionTooLarge.
inline constexpr std::size_t kMaxNodes = 10'000;

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Variable {
  std::string name;
};
struct Constant {
  BigInt value;  // non-negative, unreduced
};
struct Add {
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Mul {
  ExprPtr lhs;
  ExprPtr rhs;
};

/// Immutable expression tree over + and *.
struct Expr {
  std::variant<Variable, Constant, Add, Mul> node;
};

ExprPtr variable(std::string name);
ExprPtr constant(BigInt value);
ExprPtr add(ExprPtr lhs, ExprPtr rhs);
ExprPtr mul(ExprPtr lhs, ExprPtr rhs);

/// Grammar, both operators left-associative, '*' binding tighter:
///
///   expr   := term ('+' term)*
///   term   := factor ('*' factor)*
///   factor := NUMBER | IDENT | '(' expr ')'
///
/// NUMBER is decimal; IDENT is [a-zA-Z][a-zA-Z0-9_]*. Throws ParseError with
/// the byte offset of the offending token.
ExprPtr parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(to_string(e)) rebuilds e exactly.
std::string to_string(const Expr& expr);

bool structurally_equal(const Expr& lhs, const Expr& rhs);

using Environment = std::map<std::string, BigInt, std::less<>>;
using CiphertextEnvironment = std::map<std::string, Ciphertext, std::less<>>;

/// Plaintext evaluation mod `modulus`. Throws UnboundVariable.
BigInt eval_plain(const Expr& expr, const Environment& env,
                  const BigInt& modulus);

struct ExprStats {
  std::size_t node_count;
  std::size_t mul_depth;  // most Mul nodes on any root-to-leaf path
};

ExprStats stats(const Expr& expr);

struct ProgramNode;
using ProgramNodePtr = std::shared_ptr<const ProgramNode>;

/// The expression with a ciphertext in place of every leaf.
struct ProgramNode {
  struct Sum {
    ProgramNodePtr lhs;
    ProgramNodePtr rhs;
  };
  struct Product {
    ProgramNodePtr lhs;
    ProgramNodePtr rhs;
  };
  std::variant<Ciphertext, Sum, Product> node;
};

struct EncryptedProgram {
  SchemeParams params;
  ProgramNodePtr root;
};

/// Encrypts every variable's value and every constant (reduced mod N^2) as
/// a fresh ciphertext. Key holder only.
EncryptedProgram compile(const Expr& expr, const SecretKey& sk,
                         const Environment& env, RandomSource& rng);

/// Builds a program from ciphertexts the evaluator already holds. Needs no
/// key, so constants are rejected: the evaluator cannot encrypt.
EncryptedProgram bind_encrypted(const Expr& expr,
                                const CiphertextEnvironment& inputs);

/// Bottom-up he_add / he_mul over the tree. Uses no secret material.
Ciphertext eval_encrypted(const EncryptedProgram& program);

}  // namespace quatfhe::circuit
