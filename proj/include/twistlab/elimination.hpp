#pragma once

#include <cstddef>
#include <vector>

#include "twistlab/scalar.hpp"

namespace twl {

/// Reduced row-echelon form: nonzero rows only, pivot entries equal to 1,
/// every other entry of a pivot column zero. Unique for a given row space.
struct Echelon {
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
};

/// Integer arithmetic used by fraction-free elimination over Q.
/// kAuto runs on checked 64-bit integers and restarts on GMP integers the
/// first time an entry would leave +-2^62.
enum class IntPath { kAuto, kInt64Only, kBigOnly };

/// Raised by IntPath::kInt64Only when an entry outgrows 64 bits.
struct Int64Overflow {};

/// RREF of the row space of `rows`, every row of length `ncols`.
///
/// Over Q rows are scaled to primitive integer rows and eliminated without
/// fractions (pairwise gcd combination plus content removal); rationals are
/// formed once at the end. Over F_p rows are eliminated with the mod-p
/// kernels.
Echelon row_reduce(const Field& field, const std::vector<Vec>& rows, std::size_t ncols,
                   IntPath path = IntPath::kAuto);

std::size_t matrix_rank(const Field& field, const std::vector<Vec>& rows, std::size_t ncols,
                        IntPath path = IntPath::kAuto);

/// Basis of {x : M x = 0} where M has the given rows, one vector per free
/// column of the RREF of M.
std::vector<Vec> nullspace(const Field& field, const std::vector<Vec>& rows, std::size_t ncols);

}  // namespace twl
