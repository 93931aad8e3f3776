#pragma once

#include <compare>
#include <string>

#include "relobs/rational.hpp"

namespace relobs {

/// Exact complex scalar re + im*i with rational parts. hbar = 1 throughout,
/// so every commutator coefficient stays in this field.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational real) : re(std::move(real)) {}
  GaussianRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  GaussianRational(int real) : re(real) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool isZero() const { return re.is_zero() && im.is_zero(); }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  GaussianRational conj() const { return {re, -im}; }
};

/// i^k for the CCR expansion, k >= 0.
inline GaussianRational unitPower(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return GaussianRational(1);
    case 1: return GaussianRational::i();
    case 2: return GaussianRational(-1);
    default: return -GaussianRational::i();
  }
}

inline std::string toString(const GaussianRational& c) {
  if (c.im.is_zero()) return toString(c.re);
  std::string imag = (c.im == 1) ? "i" : (c.im == -1) ? "-i" : toString(c.im) + "*i";
  if (c.re.is_zero()) return imag;
  std::string s = "(" + toString(c.re);
  s += (c.im.sign() < 0) ? "-" : "+";
  Rational mag = abs(c.im);
  s += (mag == 1) ? "i" : toString(mag) + "*i";
  return s + ")";
}

}  // namespace relobs
