#include "plumb/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace plumb {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += (*this)(i, k) * other(k, j);
    }
  return out;
}

std::vector<Int> leading_minors(const IntMatrix& input) {
  const std::size_t n = input.rows();
  IntMatrix a = input;
  std::vector<Int> minors;
  Int prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    // After eliminating columns < k, a(k,k) is the (k+1)-th leading minor.
    minors.push_back(a(k, k));
    if (a(k, k) == 0) break;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return minors;
}

Int bareiss_determinant(IntMatrix a) {
  const std::size_t n = a.rows();
  if (n == 0) return Int(1);
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Int(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

struct Overflow {};

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

}  // namespace

Int fast_determinant(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return Int(1);
  try {
    std::vector<std::vector<std::int64_t>> a = rows;
    std::int64_t sign = 1;
    std::int64_t prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a[k][k] == 0) {
        std::size_t p = k + 1;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return Int(0);
        std::swap(a[k], a[p]);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) a[i][j] = sub(mul(a[i][j], a[k][k]), mul(a[i][k], a[k][j])) / prev;
      prev = a[k][k];
    }
    return Int(sign) * Int(a[n - 1][n - 1]);
  } catch (const Overflow&) {
    return bareiss_determinant(IntMatrix::from_rows(rows));
  }
}

Adjugate adjugate(const IntMatrix& input) {
  const std::size_t n = input.rows();
  if (n != input.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
  if (n == 0) return {Int(1), IntMatrix(0, 0)};
  // Fraction-free Gauss-Jordan on [A | I]. With a pivot swap the final
  // diagonal is +-det; each row of the right block is then det * A^{-1}.
  IntMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = input(i, j);
    aug(i, n + i) = 1;
  }
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (aug(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && aug(p, k) == 0) ++p;
      if (p == n) return {Int(0), IntMatrix(n, n)};
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(k, j), aug(p, j));
      sign = -sign;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        aug(i, j) = (aug(i, j) * aug(k, k) - aug(i, k) * aug(k, j)) / prev;
      }
      aug(i, k) = 0;
    }
    prev = aug(k, k);
  }
  // Every diagonal entry now equals the last pivot, which is sign * det.
  Int det = sign * prev;
  IntMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj(i, j) = sign * aug(i, n + j);
  return {det, adj};
}

std::optional<std::vector<Rational>> solve(const Adjugate& a, const std::vector<Int>& b) {
  if (a.det == 0) return std::nullopt;
  const std::size_t n = a.adj.rows();
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) s += a.adj(i, j) * b[j];
    x[i] = ratio(s, a.det);
  }
  return x;
}

}  // namespace plumb
