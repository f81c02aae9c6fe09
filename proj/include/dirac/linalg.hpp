#pragma once

// Exact scalars, vectors and small dense matrices.
//
// Everything in the library is exact: rationals are GMP mpq_class values and
// integer data that is provably bounded is stored as int64_t.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dirac {

using Rational = mpq_class;
using QVec = std::vector<Rational>;
using IntVec = std::vector<std::int64_t>;

/// Raised for malformed input and violated preconditions.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const { return data_; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using QMatrix = Matrix<Rational>;

// --- vector arithmetic -----------------------------------------------------

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator-(const QVec& a);
QVec operator*(const Rational& c, const QVec& a);

QVec to_q(const IntVec& v);
bool is_integral(const QVec& v);
/// Requires is_integral(v).
IntVec to_int(const QVec& v);
/// Least common multiple of the denominators (1 for an empty vector).
mpz_class common_denominator(const QVec& v);

Rational dot(const QVec& a, const QVec& b);
Rational dot(const QVec& a, const IntVec& b);

// --- matrix arithmetic -----------------------------------------------------

QMatrix to_q(const IntMatrix& m);
QVec operator*(const QMatrix& m, const QVec& v);
QVec operator*(const IntMatrix& m, const QVec& v);
IntVec operator*(const IntMatrix& m, const IntVec& v);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Gauss-Jordan inverse; throws DomainError when singular.
QMatrix inverse(const QMatrix& m);

/// Solves x^T * rows = target for x, where the rows are linearly independent.
/// Throws DomainError when target is not in the row span.
QVec solve_in_row_span(const QMatrix& rows, const QVec& target);

// --- text ------------------------------------------------------------------

/// Parses "3", "-7/2", "+1/4". Throws DomainError on malformed input.
Rational parse_rational(std::string_view text);
/// Parses a comma separated list of rationals, optionally wrapped in [].
QVec parse_qvec(std::string_view text);
IntVec parse_intvec(std::string_view text);

std::string format(const Rational& q);
/// "1,-2,7/2" (no brackets, no spaces).
std::string format(const QVec& v);
std::string format(const IntVec& v);
/// "[1,-2,7/2]"
std::string bracketed(const QVec& v);
std::string bracketed(const IntVec& v);

}  // namespace dirac
