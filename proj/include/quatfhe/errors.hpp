#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace quatfhe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// An element has no inverse in the ring it lives in.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// Block inversion could not proceed because the leading block has no
/// inverse. Says nothing about whether the whole matrix is invertible.
class PivotNotInvertible : public NotInvertible {
 public:
  using NotInvertible::NotInvertible;
};

/// The leading block was inverted but its Schur complement is singular,
/// which proves the whole matrix singular.
class SchurNotInvertible : public NotInvertible {
 public:
  using NotInvertible::NotInvertible;
};

class RandomnessExhausted : public Error {
 public:
  using Error::Error;
};

class PlaintextOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Decryption ran but the two plaintext encodings disagree: the ciphertext
/// was modified.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class KeyConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ExpressionTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace quatfhe
