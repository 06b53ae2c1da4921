#pragma once

// Exact integer linear algebra on small dense matrices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "plumb/numeric.hpp"

namespace plumb {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& other) const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Leading principal minors D_1..D_k of a square matrix via Bareiss
/// elimination without pivoting. Stops after the first zero minor, so the
/// result is shorter than n exactly when some minor vanishes.
std::vector<Int> leading_minors(const IntMatrix& a);

/// Determinant by Bareiss elimination with row pivoting.
Int bareiss_determinant(IntMatrix a);

/// Same value as bareiss_determinant, using checked 64-bit arithmetic and
/// falling back to big integers on overflow.
Int fast_determinant(const std::vector<std::vector<std::int64_t>>& rows);

struct Adjugate {
  Int det;
  IntMatrix adj;  // adj = det * A^{-1}; undefined entries when det == 0
};

/// Fraction-free Gauss-Jordan on [A | I].
Adjugate adjugate(const IntMatrix& a);

/// Exact solution of A x = b when det != 0.
std::optional<std::vector<Rational>> solve(const Adjugate& a, const std::vector<Int>& b);

}  // namespace plumb
