#pragma once

#include "obata/rational.hpp"

namespace obata {

/// Complex number with rational parts.
struct Gaussian {
  Rational re, im;

  Gaussian() : re(0), im(0) {}
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian unit_i() { return {Rational(0), Rational(1)}; }

  Gaussian operator+(const Gaussian& o) const { return {re + o.re, im + o.im}; }
  Gaussian operator-(const Gaussian& o) const { return {re - o.re, im - o.im}; }
  Gaussian operator-() const { return {-re, -im}; }
  Gaussian operator*(const Gaussian& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  bool operator==(const Gaussian& o) const { return re == o.re && im == o.im; }
  bool operator!=(const Gaussian& o) const { return !(*this == o); }

  Gaussian conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
};

/// Quaternion with rational coefficients, a + b i + c j + d k, with the
/// Hamilton products i j = k, j k = i, k i = j.
struct Quat {
  Rational a, b, c, d;

  Quat() : a(0), b(0), c(0), d(0) {}
  Quat(Rational a_, Rational b_, Rational c_, Rational d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static Quat unit_i() { return {Rational(0), Rational(1), Rational(0), Rational(0)}; }
  static Quat unit_j() { return {Rational(0), Rational(0), Rational(1), Rational(0)}; }
  static Quat unit_k() { return {Rational(0), Rational(0), Rational(0), Rational(1)}; }

  Quat operator+(const Quat& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  Quat operator-(const Quat& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }
  Quat operator-() const { return {-a, -b, -c, -d}; }
  Quat operator*(const Quat& o) const {
    return {a * o.a - b * o.b - c * o.c - d * o.d,
            a * o.b + b * o.a + c * o.d - d * o.c,
            a * o.c - b * o.d + c * o.a + d * o.b,
            a * o.d + b * o.c - c * o.b + d * o.a};
  }
  bool operator==(const Quat& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const Quat& o) const { return !(*this == o); }

  Quat conj() const { return {a, -b, -c, -d}; }
  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  Rational real() const { return a; }
};

}  // namespace obata
