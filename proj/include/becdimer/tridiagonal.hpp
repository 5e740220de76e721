#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "becdimer/types.hpp"

namespace becdimer {

/// Real symmetric tridiagonal matrix: diagonal d_0..d_{n-1}, off-diagonal
/// e_i coupling rows i and i+1.
template <typename Scalar>
struct SymmetricTridiagonal {
  typename Types<Scalar>::Vector diagonal;
  typename Types<Scalar>::Vector off_diagonal;

  Eigen::Index size() const { return diagonal.size(); }

  typename Types<Scalar>::Matrix dense() const {
    const Eigen::Index n = size();
    typename Types<Scalar>::Matrix m = Types<Scalar>::Matrix::Zero(n, n);
    m.diagonal() = diagonal;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      m(i, i + 1) = off_diagonal(i);
      m(i + 1, i) = off_diagonal(i);
    }
    return m;
  }
};

template <typename Scalar>
struct TridiagonalEigensystem {
  /// Ascending.
  typename Types<Scalar>::Vector eigenvalues;
  /// Orthonormal columns, column k belongs to eigenvalues(k).
  typename Types<Scalar>::Matrix eigenvectors;
};

struct QlOptions {
  double relative_tolerance = 1e-14;
  int max_iterations_per_eigenvalue = 50;
};

/// Flips each column so that its largest-magnitude entry is positive.
/// Entries within a relative 1e-12 of the maximum count as ties and the
/// lowest index wins.
template <typename Derived>
void normalize_column_signs(Eigen::MatrixBase<Derived>& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const auto col = vectors.col(k);
    const auto peak = col.cwiseAbs().maxCoeff();
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) >= peak * (1 - 1e-12)) {
        pivot = i;
        break;
      }
    }
    if (col(pivot) < 0) vectors.col(k) = -vectors.col(k);
  }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix with accumulation of
/// the Givens rotations (Bowdler/Martin/Reinsch/Wilkinson tql2).
template <typename Scalar>
TridiagonalEigensystem<Scalar> symmetric_tridiagonal_eigen(const SymmetricTridiagonal<Scalar>& t,
                                                           const QlOptions& options = {}) {
  using Vector = typename Types<Scalar>::Vector;
  using Matrix = typename Types<Scalar>::Matrix;
  using std::abs;
  using std::hypot;

  const Eigen::Index n = t.size();
  if (t.off_diagonal.size() != std::max<Eigen::Index>(n - 1, 0)) {
    throw DimensionMismatch("tridiagonal: off-diagonal length must be n-1");
  }

  Vector d = t.diagonal;
  Vector e = Vector::Zero(n);
  if (n > 1) e.head(n - 1) = t.off_diagonal;
  Matrix v = Matrix::Identity(n, n);

  const Scalar tol = static_cast<Scalar>(options.relative_tolerance);
  Scalar shift_total = 0;
  Scalar scale = 0;

  for (Eigen::Index l = 0; l < n; ++l) {
    scale = std::max(scale, abs(d(l)) + abs(e(l)));
    Eigen::Index m = l;
    while (m < n) {
      if (abs(e(m)) <= tol * scale) break;
      ++m;
    }
    if (m > l) {
      int iterations = 0;
      do {
        if (++iterations > options.max_iterations_per_eigenvalue) {
          throw ConvergenceError("tridiagonal QL: no convergence for eigenvalue " +
                                 std::to_string(l) + " within " +
                                 std::to_string(options.max_iterations_per_eigenvalue) +
                                 " iterations");
        }
        // Wilkinson-type shift from the leading 2x2 block.
        Scalar g = d(l);
        Scalar p = (d(l + 1) - g) / (2 * e(l));
        Scalar r = hypot(p, Scalar(1));
        if (p < 0) r = -r;
        d(l) = e(l) / (p + r);
        d(l + 1) = e(l) * (p + r);
        const Scalar dl1 = d(l + 1);
        Scalar h = g - d(l);
        for (Eigen::Index i = l + 2; i < n; ++i) d(i) -= h;
        shift_total += h;

        p = d(m);
        Scalar c = 1, c2 = 1, c3 = 1;
        const Scalar el1 = e(l + 1);
        Scalar s = 0, s2 = 0;
        for (Eigen::Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e(i);
          h = c * p;
          r = hypot(p, e(i));
          e(i + 1) = s * r;
          s = e(i) / r;
          c = p / r;
          p = c * d(i) - s * g;
          d(i + 1) = h + s * (c * g + s * d(i));
          for (Eigen::Index k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e(l) / dl1;
        e(l) = s * p;
        d(l) = c * p;
      } while (abs(e(l)) > tol * scale);
    }
    d(l) += shift_total;
    e(l) = 0;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return d(a) < d(b); });

  TridiagonalEigensystem<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = d(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  normalize_column_signs(out.eigenvectors);
  return out;
}

/// True if the matrix commutes with the index reversal i -> n-1-i, i.e.
/// d_i = d_{n-1-i} and e_i = e_{n-2-i} exactly.
template <typename Scalar>
bool is_mirror_symmetric(const SymmetricTridiagonal<Scalar>& t) {
  const Eigen::Index n = t.size();
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    if (t.diagonal(i) != t.diagonal(n - 1 - i)) return false;
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (t.off_diagonal(i) != t.off_diagonal(n - 2 - i)) return false;
  }
  return true;
}

/// Eigensystem of a mirror-symmetric tridiagonal matrix, solved separately
/// on the even and odd sectors. Each returned eigenvector satisfies
/// v_{n-1-i} = +-v_i exactly, which keeps mirror-image states mirror images
/// under propagation even when doublets are degenerate to machine precision.
template <typename Scalar>
TridiagonalEigensystem<Scalar> mirror_symmetric_eigen(const SymmetricTridiagonal<Scalar>& t,
                                                      const QlOptions& options = {}) {
  using Vector = typename Types<Scalar>::Vector;
  const Eigen::Index n = t.size();
  if (n < 2) return symmetric_tridiagonal_eigen(t, options);
  const Eigen::Index half = n / 2;
  const bool has_center = n % 2 == 1;
  const Scalar root2 = std::sqrt(Scalar(2));
  const Scalar inv_root2 = 1 / root2;

  // Folded basis (|i> +- |n-1-i>)/sqrt2 for i < half, plus the centre row in the even sector.
  auto sector = [&](int parity) {
    const Eigen::Index dim = half + (has_center && parity > 0 ? 1 : 0);
    SymmetricTridiagonal<Scalar> b;
    b.diagonal = t.diagonal.head(dim);
    b.off_diagonal = dim > 1 ? Vector(t.off_diagonal.head(dim - 1)) : Vector();
    if (has_center) {
      if (parity > 0) b.off_diagonal(half - 1) = root2 * t.off_diagonal(half - 1);
    } else {
      b.diagonal(half - 1) += parity * t.off_diagonal(half - 1);
    }
    return symmetric_tridiagonal_eigen(b, options);
  };
  const auto even = sector(+1);
  const auto odd = sector(-1);

  auto unfold = [&](const auto& sys, int parity, Eigen::Index k) {
    Vector v = Vector::Zero(n);
    for (Eigen::Index i = 0; i < half; ++i) {
      v(i) = sys.eigenvectors(i, k) * inv_root2;
      v(n - 1 - i) = parity * v(i);
    }
    if (has_center && parity > 0) v(half) = sys.eigenvectors(half, k);
    return v;
  };

  struct Entry {
    Scalar value;
    int parity;
    Eigen::Index index;
  };
  std::vector<Entry> entries;
  for (Eigen::Index k = 0; k < even.eigenvalues.size(); ++k) entries.push_back({even.eigenvalues(k), +1, k});
  for (Eigen::Index k = 0; k < odd.eigenvalues.size(); ++k) entries.push_back({odd.eigenvalues(k), -1, k});
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });

  TridiagonalEigensystem<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Entry& e = entries[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = e.value;
    out.eigenvectors.col(k) = e.parity > 0 ? unfold(even, +1, e.index) : unfold(odd, -1, e.index);
  }
  normalize_column_signs(out.eigenvectors);
  return out;
}

}  // namespace becdimer
