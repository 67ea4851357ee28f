#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "quatfhe/numtheory.hpp"
#include "quatfhe/quaternion.hpp"
#include "quatfhe/random.hpp"

namespace quatfhe {

/// Number of redraws allowed in each rejection-sampling loop.
inline constexpr int kMaxRedraws = 64;

/// Square matrix of quaternions (dimension 2 or 4) over one modulus.
/// Products use the Hamiltonian rule: every entry product keeps the left
/// factor on the left.
class QMatrix {
 public:
  /// Zero matrix. dim must be 2 or 4.
  QMatrix(std::size_t dim, Modulus modulus);

  /// Row-major entries; all must share `modulus`.
  QMatrix(std::size_t dim, Modulus modulus, std::vector<Quaternion> entries);

  static QMatrix identity(std::size_t dim, const Modulus& modulus);
  static QMatrix random(std::size_t dim, RandomSource& rng,
                        const Modulus& modulus);

  std::size_t dim() const noexcept { return dim_; }
  const Modulus& modulus() const noexcept { return modulus_; }
  const std::vector<Quaternion>& entries() const noexcept { return entries_; }

  const Quaternion& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  void set(std::size_t row, std::size_t col, Quaternion value);

  friend QMatrix operator+(const QMatrix& lhs, const QMatrix& rhs);
  friend QMatrix operator-(const QMatrix& lhs, const QMatrix& rhs);
  friend QMatrix operator-(const QMatrix& m);
  friend QMatrix operator*(const QMatrix& lhs, const QMatrix& rhs);
  friend bool operator==(const QMatrix& lhs, const QMatrix& rhs);

 private:
  std::size_t dim_;
  Modulus modulus_;
  std::vector<Quaternion> entries_;
};

/// Quadrants of a block matrix (A B; C D). Blocks of a 4x4 matrix are 2x2
/// matrices; blocks of a 2x2 matrix are single quaternions.
template <class Block>
struct Blocks {
  Block a;
  Block b;
  Block c;
  Block d;
};

Blocks<QMatrix> split_blocks(const QMatrix& m);      // dim 4
Blocks<Quaternion> split_entries(const QMatrix& m);  // dim 2
QMatrix assemble(const Blocks<QMatrix>& blocks);
QMatrix assemble(const Blocks<Quaternion>& blocks);

/// Inverse via the Schur complement of the leading block A:
///
///   M^-1 = ( A^-1 + A^-1 B S^-1 C A^-1   -A^-1 B S^-1 )
///          ( -S^-1 C A^-1                 S^-1        ),  S = D - C A^-1 B.
///
/// A 4x4 matrix recurses on its 2x2 blocks. Throws PivotNotInvertible when
/// some leading block at any level cannot be inverted (inconclusive), and
/// SchurNotInvertible when a quaternion-level Schur complement is a zero
/// divisor behind invertible pivots (proves M singular).
QMatrix schur_invert(const QMatrix& m);

/// Random (M, M^-1) built by pivot-first rejection sampling. For dim 4 the
/// leading 2x2 block is invertible by construction. Throws
/// RandomnessExhausted after kMaxRedraws failed draws in any loop.
std::pair<QMatrix, QMatrix> random_invertible(std::size_t dim,
                                              RandomSource& rng,
                                              const Modulus& modulus);

/// Dense square matrix of residues mod n.
struct ResidueMatrix {
  std::size_t size;
  std::vector<BigInt> entries;  // row-major, each in [0, n)
  Modulus modulus;

  const BigInt& operator()(std::size_t row, std::size_t col) const {
    return entries[row * size + col];
  }
};

/// 4x4 matrix of left multiplication by q: columns are q*1, q*i, q*j, q*k.
ResidueMatrix left_multiplication_matrix(const Quaternion& q);

/// Each quaternion entry replaced by its left-multiplication matrix, giving
/// a ring homomorphism into (4 dim) x (4 dim) matrices over Z/nZ.
ResidueMatrix regular_representation(const QMatrix& m);

ResidueMatrix operator*(const ResidueMatrix& lhs, const ResidueMatrix& rhs);
bool operator==(const ResidueMatrix& lhs, const ResidueMatrix& rhs);

/// Exact determinant of an integer matrix by fraction-free (Bareiss)
/// elimination with row pivoting.
BigInt bareiss_determinant(std::vector<BigInt> entries, std::size_t size);

/// True iff det(regular_representation(m)), computed over the integers,
/// is a unit mod n.
bool is_invertible(const QMatrix& m);

}  // namespace quatfhe
