#pragma once

#include <cstddef>
#include <vector>

#include "memsig/matrix.hpp"
#include "memsig/rational.hpp"

namespace memsig {

/// Exact rank over Q (rows cleared of denominators, then fraction-free
/// Bareiss elimination over Z).
std::size_t rank(const Matrix& m);

/// Exact determinant via Bareiss elimination.
Rational det(const Matrix& m);

/// Exact inverse via Gauss-Jordan; throws DomainError if singular.
Matrix inverse(const Matrix& m);

/// Pfaffian of an even-sized skew-symmetric matrix, using pivoted
/// 2x2-block eliminations (congruences that preserve the Pfaffian up to
/// the tracked sign).
Rational pfaffian(const Matrix& m);

/// M^{-T} M.
Matrix cosquare(const Matrix& m);

struct JordanBlock {
  int eigenvalue;  // +1 or -1
  std::size_t size;

  friend auto operator<=>(const JordanBlock&, const JordanBlock&) = default;
};

struct JordanStructure {
  /// Sorted by eigenvalue (descending) and size (descending).
  std::vector<JordanBlock> blocks;
  /// rank((M - I)^j) and rank((M + I)^j) for j = 0..(index where they stabilize).
  std::vector<std::size_t> ranks_plus;
  std::vector<std::size_t> ranks_minus;
};

/// Jordan blocks of M, read off the rank sequences rank((M -+ I)^j).
/// Throws DomainError if M has an eigenvalue other than +1 and -1.
JordanStructure pm1_jordan_structure(const Matrix& m);

/// Rank sequence rank((J - lambda I)^j), j = 0..max_power, implied by a block
/// multiset for eigenvalue lambda in {+1,-1} and dimension n.
std::vector<std::size_t> ranks_from_blocks(const std::vector<JordanBlock>& blocks, int eigenvalue,
                                           std::size_t n, std::size_t max_power);

}  // namespace memsig
