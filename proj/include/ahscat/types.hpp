#pragma once
#include <array>
#include <cmath>
#include <complex>

namespace ahscat {

using cplx = std::complex<double>;

enum class Side { left, right };

// energy lambda and (possibly complex) angular momentum z
struct SpectralPoint {
  double lambda = 0.0;
  cplx z{0.0, 0.0};
};

// 2x2 complex matrix, row major [[a,b],[c,d]]
struct Mat2c {
  cplx a{0}, b{0}, c{0}, d{0};

  static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }

  cplx det() const { return a * d - b * c; }
  Mat2c adjugate() const { return {d, -b, -c, a}; }

  double max_abs() const {
    return std::max(std::max(std::abs(a), std::abs(b)),
                    std::max(std::abs(c), std::abs(d)));
  }

  Mat2c& operator*=(const cplx& s) {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }
  Mat2c& operator+=(const Mat2c& o) {
    a += o.a; b += o.b; c += o.c; d += o.d;
    return *this;
  }
  friend Mat2c operator*(const Mat2c& m, const cplx& s) {
    Mat2c r = m; r *= s; return r;
  }
  friend Mat2c operator*(const cplx& s, const Mat2c& m) { return m * s; }
  friend Mat2c operator+(Mat2c lhs, const Mat2c& rhs) { lhs += rhs; return lhs; }
  friend Mat2c operator-(const Mat2c& l, const Mat2c& r) {
    return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d};
  }
  friend Mat2c operator*(const Mat2c& l, const Mat2c& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }

  std::array<cplx, 4> flat() const { return {a, b, c, d}; }
};

}  // namespace ahscat
