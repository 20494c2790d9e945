#include <catch_amalgamated.hpp>

#include <random>

#include "shiftconj/integer_linear.hpp"

using namespace shiftconj;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> entry(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
  return m;
}

// Laplace expansion along the first row.
mpz_class cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  mpz_class total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    const mpz_class term = m(0, j) * cofactor_det(minor);
    total += (j % 2 == 0) ? term : mpz_class(-term);
  }
  return total;
}

void check_smith(const IntMatrix& m) {
  const auto s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.S);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < s.S.rows(); ++i) {
    for (std::size_t j = 0; j < s.S.cols(); ++j) {
      if (i != j) CHECK(s.S(i, j) == 0);
    }
  }
  const std::size_t diag = std::min(s.S.rows(), s.S.cols());
  for (std::size_t i = 0; i < diag; ++i) {
    CHECK(s.S(i, i) >= 0);
    if (s.S(i, i) != 0) ++nonzero;
    if (i + 1 < diag && s.S(i, i) != 0) CHECK(s.S(i + 1, i + 1) % s.S(i, i) == 0);
    if (s.S(i, i) == 0 && i + 1 < diag) CHECK(s.S(i + 1, i + 1) == 0);
  }
  CHECK(nonzero == s.rank);
}

}  // namespace

TEST_CASE("smith form of a textbook matrix") {
  const IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  const auto s = smith_normal_form(m);
  CHECK(s.S(0, 0) == 2);
  CHECK(s.S(1, 1) == 6);
  CHECK(s.S(2, 2) == 12);
  CHECK(s.rank == 3);
  check_smith(m);
}

TEST_CASE("smith form properties on random matrices") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int i = 0; i < 200; ++i) {
    check_smith(random_matrix(rng, dim(rng), dim(rng), -6, 6));
  }
  // Incidence-like matrices with entries in {-1, 0, 1}.
  for (int i = 0; i < 100; ++i) check_smith(random_matrix(rng, dim(rng), dim(rng), -1, 1));
  check_smith(IntMatrix(3, 2));
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(42);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int i = 0; i < 20; ++i) {
      const auto m = random_matrix(rng, n, n, -9, 9);
      CHECK(determinant(m) == cofactor_det(m));
    }
  }
  CHECK(determinant(IntMatrix::identity(4)) == 1);
}

TEST_CASE("integer solutions") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  std::uniform_int_distribution<long> entry(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(rng, dim(rng), dim(rng), -4, 4);
    IntVector x(m.cols());
    for (auto& v : x) v = entry(rng);
    const IntVector d = m * x;
    const auto sol = solve_integer(m, d);
    REQUIRE(sol.x.has_value());
    CHECK(m * *sol.x == d);
  }
  // 2x = 1 has no integer solution.
  const auto none = solve_integer(IntMatrix{{2}}, IntVector{1});
  CHECK_FALSE(none.x.has_value());
  CHECK(none.divisor == 2);
  // x - y = 1 and y - x = 1 is inconsistent outside the rank.
  const auto rank_def = solve_integer(IntMatrix{{1, -1}, {-1, 1}}, IntVector{1, 1});
  CHECK_FALSE(rank_def.x.has_value());
  CHECK(rank_def.divisor == 0);
}
