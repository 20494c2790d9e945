#pragma once

// Exact integer linear algebra over GMP integers.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace shiftconj {

using IntVector = std::vector<mpz_class>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntMatrix operator*(const IntMatrix& other) const;
  IntVector operator*(const IntVector& x) const;
  bool operator==(const IntMatrix& other) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row a += k * row b
  void add_row(std::size_t a, std::size_t b, const mpz_class& k);
  // col a += k * col b
  void add_col(std::size_t a, std::size_t b, const mpz_class& k);
  void negate_row(std::size_t a);

  bool is_zero() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  std::size_t rank = 0;
};

// U * M * V = S, with U and V unimodular and S diagonal, d_1 | d_2 | ...,
// all diagonal entries nonnegative.
SmithForm smith_normal_form(const IntMatrix& M);

struct IntegerSolution {
  std::optional<IntVector> x;
  // When x is empty: coordinate `row` of U*d equals `value`, which is not a
  // multiple of `divisor` (divisor 0 outside the rank).
  std::size_t row = 0;
  mpz_class value;
  mpz_class divisor;
};

IntegerSolution solve_integer(const IntMatrix& M, const IntVector& d);

// Fraction-free Bareiss elimination.
mpz_class determinant(const IntMatrix& M);

}  // namespace shiftconj
