#pragma once

#include <Eigen/Core>

#include "mapg1/rational.hpp"

namespace Eigen {
template <>
struct NumTraits<mapg1::RationalFn> {
  using Real = double;
  using NonInteger = mapg1::RationalFn;
  using Nested = mapg1::RationalFn;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64
  };
  static inline Real epsilon() { return NumTraits<double>::epsilon(); }
  static inline Real dummy_precision() { return 1e-12; }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};
}  // namespace Eigen

namespace mapg1 {

using RationalMatrix = Eigen::Matrix<RationalFn, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

/// Determinant of the submatrix of M with rows `rows` (ascending) and the
/// columns selected by `colmask`, by Laplace expansion along the first row.
template <typename MatrixLike>
auto minor_det(const MatrixLike& M, int row, unsigned colmask)
    -> std::decay_t<decltype(M(0, 0))> {
  using Entry = std::decay_t<decltype(M(0, 0))>;
  const int n = static_cast<int>(M.rows());
  if (row == n) return Entry();  // never reached for nonempty selections
  int remaining = 0;
  for (int c = 0; c < n; ++c)
    if (colmask & (1u << c)) ++remaining;
  if (remaining == 1) {
    for (int c = 0; c < n; ++c)
      if (colmask & (1u << c)) return M(row, c);
  }
  Entry acc;
  bool first = true;
  int parity = 0;
  for (int c = 0; c < n; ++c) {
    if (!(colmask & (1u << c))) continue;
    Entry term = M(row, c) * minor_det(M, row + 1, colmask & ~(1u << c));
    if (parity % 2 == 1) term = -term;
    if (first) {
      acc = term;
      first = false;
    } else {
      acc += term;
    }
    ++parity;
  }
  return acc;
}

}  // namespace detail

inline CMat evaluate_point(const RationalMatrix& M, cplx s) {
  CMat out(M.rows(), M.cols());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) out(i, j) = M(i, j)(s);
  return out;
}

/// det(M) for a square matrix over any ring with +, *, unary -; N <= 8.
template <typename Entry>
Entry generic_det(const Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic>& M,
                  const Entry& one) {
  const int n = static_cast<int>(M.rows());
  if (n != M.cols()) throw Error("generic_det: matrix not square");
  if (n > 8) throw Error("generic_det: size > 8 unsupported");
  if (n == 0) return one;
  return detail::minor_det(M, 0, (1u << n) - 1u);
}

/// Adjugate: adj(M)(i,j) = (-1)^{i+j} * minor(M with row j, col i removed),
/// so that M * adj(M) = det(M) * I.
template <typename Entry>
Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic> generic_adjugate(
    const Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic>& M, const Entry& one) {
  using MatT = Eigen::Matrix<Entry, Eigen::Dynamic, Eigen::Dynamic>;
  const int n = static_cast<int>(M.rows());
  if (n != M.cols()) throw Error("generic_adjugate: matrix not square");
  MatT adj(n, n);
  if (n == 1) {
    adj(0, 0) = one;
    return adj;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      MatT sub(n - 1, n - 1);
      int rr = 0;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;  // delete row j
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == i) continue;  // delete column i
          sub(rr, cc) = M(r, c);
          ++cc;
        }
        ++rr;
      }
      Entry cof = generic_det(sub, one);
      adj(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return adj;
}

inline RationalFn rational_det(const RationalMatrix& M) {
  return generic_det(M, RationalFn::constant(1.0));
}

inline RationalMatrix rational_adjugate(const RationalMatrix& M) {
  return generic_adjugate(M, RationalFn::constant(1.0));
}

}  // namespace mapg1
