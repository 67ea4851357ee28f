#include "quatfhe/qmatrix.hpp"

#include <string>

#include "quatfhe/errors.hpp"

namespace quatfhe {

namespace {

void require_dim(std::size_t dim) {
  if (dim != 2 && dim != 4) {
    throw ShapeMismatch("quaternion matrices must be 2x2 or 4x4, got " +
                        std::to_string(dim));
  }
}

void require_same_shape(const QMatrix& lhs, const QMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw ShapeMismatch("matrix dimensions differ: " +
                        std::to_string(lhs.dim()) + " vs " +
                        std::to_string(rhs.dim()));
  }
  require_same_modulus(lhs.modulus(), rhs.modulus());
}

// A^-1 + A^-1 B S^-1 C A^-1, -A^-1 B S^-1, -S^-1 C A^-1, S^-1.
template <class Block>
Blocks<Block> block_inverse(const Blocks<Block>& m, const Block& a_inv,
                            const Block& s_inv) {
  const Block a_inv_b = a_inv * m.b;
  const Block c_a_inv = m.c * a_inv;
  const Block a_inv_b_s_inv = a_inv_b * s_inv;
  return Blocks<Block>{a_inv + a_inv_b_s_inv * c_a_inv, -a_inv_b_s_inv,
                       -(s_inv * c_a_inv), s_inv};
}

QMatrix invert_2x2(const QMatrix& m) {
  const Blocks<Quaternion> q = split_entries(m);
  if (!is_invertible(q.a)) {
    throw PivotNotInvertible("leading quaternion is not invertible");
  }
  const Quaternion a_inv = inverse(q.a);
  const Quaternion s = q.d - q.c * a_inv * q.b;
  if (!is_invertible(s)) {
    throw SchurNotInvertible("Schur complement is not invertible");
  }
  return assemble(block_inverse(q, a_inv, inverse(s)));
}

QMatrix invert_4x4(const QMatrix& m) {
  const Blocks<QMatrix> q = split_blocks(m);
  QMatrix a_inv(2, m.modulus());
  try {
    a_inv = invert_2x2(q.a);
  } catch (const NotInvertible& e) {
    throw PivotNotInvertible(std::string("leading 2x2 block: ") + e.what());
  }
  const QMatrix s = q.d - q.c * a_inv * q.b;
  // Inner failures keep their meaning: a singular quaternion-level
  // complement behind invertible pivots proves S, hence M, singular.
  QMatrix s_inv = invert_2x2(s);
  return assemble(block_inverse(q, a_inv, s_inv));
}

}  // namespace

QMatrix::QMatrix(std::size_t dim, Modulus modulus)
    : dim_(dim), modulus_(std::move(modulus)) {
  require_dim(dim_);
  entries_.assign(dim_ * dim_, Quaternion::zero(modulus_));
}

QMatrix::QMatrix(std::size_t dim, Modulus modulus,
                 std::vector<Quaternion> entries)
    : dim_(dim), modulus_(std::move(modulus)), entries_(std::move(entries)) {
  require_dim(dim_);
  if (entries_.size() != dim_ * dim_) {
    throw ShapeMismatch("expected " + std::to_string(dim_ * dim_) +
                        " entries, got " + std::to_string(entries_.size()));
  }
  for (const auto& q : entries_) require_same_modulus(q.modulus(), modulus_);
}

QMatrix QMatrix::identity(std::size_t dim, const Modulus& modulus) {
  QMatrix m(dim, modulus);
  for (std::size_t t = 0; t < dim; ++t) m.set(t, t, Quaternion::one(modulus));
  return m;
}

QMatrix QMatrix::random(std::size_t dim, RandomSource& rng,
                        const Modulus& modulus) {
  require_dim(dim);
  std::vector<Quaternion> entries;
  entries.reserve(dim * dim);
  for (std::size_t t = 0; t < dim * dim; ++t) {
    entries.push_back(Quaternion::random(rng, modulus));
  }
  return QMatrix(dim, modulus, std::move(entries));
}

void QMatrix::set(std::size_t row, std::size_t col, Quaternion value) {
  require_same_modulus(value.modulus(), modulus_);
  entries_.at(row * dim_ + col) = std::move(value);
}

QMatrix operator+(const QMatrix& lhs, const QMatrix& rhs) {
  require_same_shape(lhs, rhs);
  QMatrix out = lhs;
  for (std::size_t t = 0; t < out.entries_.size(); ++t) {
    out.entries_[t] += rhs.entries_[t];
  }
  return out;
}

QMatrix operator-(const QMatrix& lhs, const QMatrix& rhs) {
  require_same_shape(lhs, rhs);
  QMatrix out = lhs;
  for (std::size_t t = 0; t < out.entries_.size(); ++t) {
    out.entries_[t] -= rhs.entries_[t];
  }
  return out;
}

QMatrix operator-(const QMatrix& m) { return QMatrix(m.dim_, m.modulus_) - m; }

QMatrix operator*(const QMatrix& lhs, const QMatrix& rhs) {
  require_same_shape(lhs, rhs);
  const std::size_t n = lhs.dim_;
  QMatrix out(n, lhs.modulus_);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Quaternion acc = lhs(r, 0) * rhs(0, c);
      for (std::size_t t = 1; t < n; ++t) acc += lhs(r, t) * rhs(t, c);
      out.entries_[r * n + c] = std::move(acc);
    }
  }
  return out;
}

bool operator==(const QMatrix& lhs, const QMatrix& rhs) {
  return lhs.dim_ == rhs.dim_ && lhs.modulus_ == rhs.modulus_ &&
         lhs.entries_ == rhs.entries_;
}

Blocks<QMatrix> split_blocks(const QMatrix& m) {
  if (m.dim() != 4) throw ShapeMismatch("split_blocks needs a 4x4 matrix");
  auto quadrant = [&](std::size_t r0, std::size_t c0) {
    return QMatrix(2, m.modulus(),
                   {m(r0, c0), m(r0, c0 + 1), m(r0 + 1, c0),
                    m(r0 + 1, c0 + 1)});
  };
  return {quadrant(0, 0), quadrant(0, 2), quadrant(2, 0), quadrant(2, 2)};
}

Blocks<Quaternion> split_entries(const QMatrix& m) {
  if (m.dim() != 2) throw ShapeMismatch("split_entries needs a 2x2 matrix");
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

QMatrix assemble(const Blocks<QMatrix>& blocks) {
  for (const QMatrix* b : {&blocks.a, &blocks.b, &blocks.c, &blocks.d}) {
    if (b->dim() != 2) throw ShapeMismatch("assemble needs 2x2 blocks");
    require_same_modulus(b->modulus(), blocks.a.modulus());
  }
  QMatrix out(4, blocks.a.modulus());
  auto place = [&](const QMatrix& b, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) out.set(r0 + r, c0 + c, b(r, c));
    }
  };
  place(blocks.a, 0, 0);
  place(blocks.b, 0, 2);
  place(blocks.c, 2, 0);
  place(blocks.d, 2, 2);
  return out;
}

QMatrix assemble(const Blocks<Quaternion>& blocks) {
  return QMatrix(2, blocks.a.modulus(),
                 {blocks.a, blocks.b, blocks.c, blocks.d});
}

QMatrix schur_invert(const QMatrix& m) {
  return m.dim() == 2 ? invert_2x2(m) : invert_4x4(m);
}

std::pair<QMatrix, QMatrix> random_invertible(std::size_t dim,
                                              RandomSource& rng,
                                              const Modulus& modulus) {
  require_dim(dim);
  if (dim == 2) {
    std::optional<Quaternion> a;
    for (int t = 0; t < kMaxRedraws && !a; ++t) {
      Quaternion draw = Quaternion::random(rng, modulus);
      if (is_invertible(draw)) a = std::move(draw);
    }
    if (!a) throw RandomnessExhausted("no invertible pivot quaternion drawn");
    const Quaternion a_inv = inverse(*a);
    const Quaternion b = Quaternion::random(rng, modulus);
    const Quaternion c = Quaternion::random(rng, modulus);
    const Quaternion c_a_inv_b = c * a_inv * b;
    for (int t = 0; t < kMaxRedraws; ++t) {
      Quaternion d = Quaternion::random(rng, modulus);
      const Quaternion s = d - c_a_inv_b;
      if (!is_invertible(s)) continue;
      Blocks<Quaternion> m{*a, b, c, std::move(d)};
      QMatrix inv = assemble(block_inverse(m, a_inv, inverse(s)));
      return {assemble(m), std::move(inv)};
    }
    throw RandomnessExhausted("no invertible Schur complement drawn");
  }

  auto [a, a_inv] = random_invertible(2, rng, modulus);
  const QMatrix b = QMatrix::random(2, rng, modulus);
  const QMatrix c = QMatrix::random(2, rng, modulus);
  const QMatrix c_a_inv_b = c * a_inv * b;
  for (int t = 0; t < kMaxRedraws; ++t) {
    QMatrix d = QMatrix::random(2, rng, modulus);
    const QMatrix s = d - c_a_inv_b;
    QMatrix s_inv(2, modulus);
    try {
      s_inv = schur_invert(s);
    } catch (const NotInvertible&) {
      continue;
    }
    Blocks<QMatrix> m{a, b, c, std::move(d)};
    QMatrix inv = assemble(block_inverse(m, a_inv, s_inv));
    return {assemble(m), std::move(inv)};
  }
  throw RandomnessExhausted("no invertible Schur complement block drawn");
}

ResidueMatrix left_multiplication_matrix(const Quaternion& q) {
  const auto& [a, b, c, d] = q.coefficients();
  const BigInt& n = q.modulus().value();
  std::vector<BigInt> e = {a, -b, -c, -d,  //
                           b, a,  -d, c,   //
                           c, d,  a,  -b,  //
                           d, -c, b,  a};
  for (auto& x : e) x = reduce(x, n);
  return ResidueMatrix{4, std::move(e), q.modulus()};
}

ResidueMatrix regular_representation(const QMatrix& m) {
  const std::size_t size = 4 * m.dim();
  ResidueMatrix out{size, std::vector<BigInt>(size * size), m.modulus()};
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const ResidueMatrix block = left_multiplication_matrix(m(r, c));
      for (std::size_t br = 0; br < 4; ++br) {
        for (std::size_t bc = 0; bc < 4; ++bc) {
          out.entries[(4 * r + br) * size + 4 * c + bc] = block(br, bc);
        }
      }
    }
  }
  return out;
}

ResidueMatrix operator*(const ResidueMatrix& lhs, const ResidueMatrix& rhs) {
  if (lhs.size != rhs.size) throw ShapeMismatch("residue matrix sizes differ");
  require_same_modulus(lhs.modulus, rhs.modulus);
  const std::size_t n = lhs.size;
  const BigInt& mod = lhs.modulus.value();
  ResidueMatrix out{n, std::vector<BigInt>(n * n), lhs.modulus};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      BigInt acc = 0;
      for (std::size_t t = 0; t < n; ++t) acc += lhs(r, t) * rhs(t, c);
      out.entries[r * n + c] = reduce(acc, mod);
    }
  }
  return out;
}

bool operator==(const ResidueMatrix& lhs, const ResidueMatrix& rhs) {
  return lhs.size == rhs.size && lhs.modulus == rhs.modulus &&
         lhs.entries == rhs.entries;
}

BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t n) {
  if (m.size() != n * n) throw ShapeMismatch("determinant needs n*n entries");
  if (n == 0) return 1;
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& {
    return m[r * n + c];
  };
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = k; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
      sign = -sign;
    }
    const BigInt& pivot = at(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      for (std::size_t c = k + 1; c < n; ++c) {
        BigInt v = at(r, c) * pivot - at(r, k) * at(k, c);
        mpz_divexact(at(r, c).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
  }
  BigInt det = at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

bool is_invertible(const QMatrix& m) {
  const ResidueMatrix rep = regular_representation(m);
  const BigInt det = bareiss_determinant(rep.entries, rep.size);
  BigInt g;
  const BigInt reduced = reduce(det, m.modulus().value());
  mpz_gcd(g.get_mpz_t(), reduced.get_mpz_t(), m.modulus().value().get_mpz_t());
  return g == 1;
}

}  // namespace quatfhe
