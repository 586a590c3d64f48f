#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "peb/constants.hpp"

namespace peb {

/// Dense row-major N×N matrix of doubles. Deliberately tiny: everything in
/// this library is 2×2 or 5×5, so a fixed array beats a general matrix type.
template <int N>
struct Mat {
  std::array<double, static_cast<std::size_t>(N) * N> a{};

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * N + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * N + j]; }

  static Mat identity() {
    Mat m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  Mat transposed() const {
    Mat t;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }

  /// Maximum absolute column sum (induced 1-norm).
  double norm1() const {
    double m = 0.0;
    for (int j = 0; j < N; ++j) {
      double s = 0.0;
      for (int i = 0; i < N; ++i) s += std::abs((*this)(i, j));
      m = std::max(m, s);
    }
    return m;
  }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += (*this)(i, i);
    return s;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    Mat r;
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
  }

  friend Mat operator-(const Mat& x, const Mat& y) {
    Mat r;
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
  }

  friend Mat operator*(double s, const Mat& x) {
    Mat r;
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = s * x.a[i];
    return r;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += x(i, k) * y(k, j);
        r(i, j) = s;
      }
    return r;
  }
};

template <int N>
struct InverseResult {
  Mat<N> inverse;
  double condition = std::numeric_limits<double>::infinity();
  bool singular = true;
};

/// Gauss-Jordan inverse with partial pivoting. The condition estimate is the
/// exact 1-norm product ‖A‖₁·‖A⁻¹‖₁; anything above kConditionLimit (or a
/// vanishing pivot) is reported singular rather than silently inverted.
template <int N>
InverseResult<N> invert(const Mat<N>& m) {
  InverseResult<N> out;
  Mat<N> w = m;
  Mat<N> inv = Mat<N>::identity();
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
    if (w(piv, col) == 0.0 || !std::isfinite(w(piv, col))) return out;  // singular
    if (piv != col) {
      for (int j = 0; j < N; ++j) {
        std::swap(w(piv, j), w(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const double d = w(col, col);
    for (int j = 0; j < N; ++j) {
      w(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const double f = w(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < N; ++j) {
        w(r, j) -= f * w(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  out.inverse = inv;
  out.condition = m.norm1() * inv.norm1();
  out.singular = !(out.condition < kConditionLimit);
  return out;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Used by the property tests to assert positive semidefiniteness.
template <int N>
std::array<double, N> sym_eigenvalues(Mat<N> m) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) off += m(i, j) * m(i, j);
    if (off <= 1e-300 || off <= 1e-30 * m.max_abs() * m.max_abs()) break;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) {
        if (m(p, q) == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < N; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < N; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
  }
  std::array<double, N> ev{};
  for (int i = 0; i < N; ++i) ev[static_cast<std::size_t>(i)] = m(i, i);
  for (int i = 1; i < N; ++i)
    for (int j = i; j > 0 && ev[j - 1] > ev[j]; --j) std::swap(ev[j - 1], ev[j]);
  return ev;
}

}  // namespace peb
