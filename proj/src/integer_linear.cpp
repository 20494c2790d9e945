#include "shiftconj/integer_linear.hpp"

#include <sstream>

#include "shiftconj/errors.hpp"

namespace shiftconj {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidInput("matrix dimensions do not match");
  IntMatrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
    }
  }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& x) const {
  if (cols_ != x.size()) throw InvalidInput("matrix and vector sizes do not match");
  IntVector out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * x[j];
  }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t a, std::size_t b, const mpz_class& k) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += k * (*this)(b, j);
}

void IntMatrix::add_col(std::size_t a, std::size_t b, const mpz_class& k) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += k * (*this)(i, b);
}

void IntMatrix::negate_row(std::size_t a) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
}

bool IntMatrix::is_zero() const {
  for (const auto& v : data_) {
    if (v != 0) return false;
  }
  return true;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  SmithForm f{IntMatrix::identity(m), M, IntMatrix::identity(n), 0};
  IntMatrix& A = f.S;

  auto row_op = [&](std::size_t a, std::size_t b, const mpz_class& k) {
    A.add_row(a, b, k);
    f.U.add_row(a, b, k);
  };
  auto col_op = [&](std::size_t a, std::size_t b, const mpz_class& k) {
    A.add_col(a, b, k);
    f.V.add_col(a, b, k);
  };
  auto swap_r = [&](std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    f.U.swap_rows(a, b);
  };
  auto swap_c = [&](std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    f.V.swap_cols(a, b);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Pivot: nonzero entry of least absolute value in the trailing block.
      std::size_t pr = m, pc = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (A(i, j) != 0 && (pr == m || abs(A(i, j)) < abs(A(pr, pc)))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == m) return f;
      swap_r(t, pr);
      swap_c(t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        row_op(i, t, -q);
        dirty = dirty || A(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        col_op(j, t, -q);
        dirty = dirty || A(t, j) != 0;
      }
      if (dirty) continue;

      // Divisibility: fold an offending row into the pivot row and redo.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (A(i, j) % A(t, t) != 0) {
            row_op(t, i, 1);
            fixed = true;
            break;
          }
        }
      }
      if (fixed) continue;
      if (A(t, t) < 0) {
        A.negate_row(t);
        f.U.negate_row(t);
      }
      f.rank = t + 1;
      break;
    }
  }
  return f;
}

IntegerSolution solve_integer(const IntMatrix& M, const IntVector& d) {
  if (d.size() != M.rows()) throw InvalidInput("right-hand side has the wrong length");
  const auto f = smith_normal_form(M);
  const IntVector c = f.U * d;
  IntVector y(M.cols(), 0);
  IntegerSolution out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < f.rank) {
      const auto& s = f.S(i, i);
      if (c[i] % s != 0) {
        out.row = i;
        out.value = c[i];
        out.divisor = s;
        return out;
      }
      y[i] = c[i] / s;
    } else if (c[i] != 0) {
      out.row = i;
      out.value = c[i];
      out.divisor = 0;
      return out;
    }
  }
  out.x = f.V * y;
  return out;
}

mpz_class determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IntMatrix A = M;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && A(r, k) == 0) ++r;
      if (r == n) return 0;
      A.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
      }
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

}  // namespace shiftconj
