#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tycat {

using Int = long long;

// Element of Q/Z kept as a reduced fraction num/den with 0 <= num < den.
// Equivalently the exponent t of a root of unity e^{2*pi*i*t}.
struct QZ {
  Int num = 0;
  Int den = 1;

  QZ() = default;
  QZ(Int n, Int d) {
    if (d == 0) throw std::domain_error("QZ: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    n %= d;
    if (n < 0) n += d;
    Int g = std::gcd(n, d);
    num = n / g;
    den = d / g;
  }

  bool is_zero() const { return num == 0; }
  // additive order in Q/Z
  Int order() const { return den; }

  friend QZ operator+(QZ a, QZ b) {
    Int g = std::gcd(a.den, b.den);
    Int d = a.den / g * b.den;
    return QZ(a.num * (d / a.den) + b.num * (d / b.den), d);
  }
  friend QZ operator-(QZ a, QZ b) { return a + (-b); }
  QZ operator-() const { return QZ(den - num, den); }
  // integer scalar multiple k*t
  friend QZ operator*(Int k, QZ t) {
    Int kk = k % t.den;
    if (kk < 0) kk += t.den;
    return QZ(kk * t.num, t.den);
  }
  QZ& operator+=(QZ o) { *this = *this + o; return *this; }

  friend bool operator==(QZ a, QZ b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(QZ a, QZ b) { return !(a == b); }
  // total order for canonical sorting, numeric by value in [0,1)
  friend bool operator<(QZ a, QZ b) { return a.num * b.den < b.num * a.den; }

  std::string str() const {
    if (num == 0) return "0";
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

inline QZ qz_parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return QZ(std::stoll(s), 1);
    return QZ(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

}  // namespace tycat
