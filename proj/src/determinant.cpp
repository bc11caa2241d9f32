#include "pfforge/determinant.hpp"

#include <utility>

#include "pfforge/error.hpp"

namespace pfforge {

Integer bareiss_determinant(std::span<Integer> a, std::size_t n) {
  if (a.size() != n * n) throw Error(ErrorCode::parameter_out_of_range, "matrix size mismatch");
  if (n == 0) return 1;
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[3] - a[1] * a[2];

  bool negate = false;
  Integer prev_pivot = 1;
  Integer tmp;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row * n + k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[swap_row * n + j]);
      negate = !negate;
    }
    const Integer& pivot = a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Integer& lead = a[i * n + k];
      for (std::size_t j = k + 1; j < n; ++j) {
        // a_ij <- (a_ij * a_kk - a_ik * a_kj) / prev_pivot
        mpz_mul(tmp.get_mpz_t(), a[i * n + j].get_mpz_t(), pivot.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), lead.get_mpz_t(), a[k * n + j].get_mpz_t());
        mpz_divexact(a[i * n + j].get_mpz_t(), tmp.get_mpz_t(), prev_pivot.get_mpz_t());
      }
    }
    prev_pivot = pivot;
  }
  Integer det = a[n * n - 1];
  return negate ? Integer(-det) : det;
}

Rational determinant(std::span<const Rational> matrix, std::size_t n) {
  if (matrix.size() != n * n) {
    throw Error(ErrorCode::parameter_out_of_range, "matrix size mismatch");
  }
  std::vector<Integer> ints(n * n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer row_den = 1;
    for (std::size_t j = 0; j < n; ++j) row_den = lcm(row_den, matrix[i * n + j].get_den());
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = matrix[i * n + j];
      ints[i * n + j] = q.get_num() * (row_den / q.get_den());
    }
    scale *= row_den;
  }
  return make_rational(bareiss_determinant(ints, n), scale);
}

}  // namespace pfforge
