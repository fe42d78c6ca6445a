#pragma once

#include <initializer_list>
#include <vector>

#include "hambound/interval.hpp"

namespace hambound {

// Dense univariate polynomial with exact rational coefficients.
// Invariant: coeffs is empty (zero polynomial) or coeffs.back() != 0.
struct Poly {
  std::vector<Rat> coeffs;  // coeffs[i] multiplies t^i

  Poly() = default;
  explicit Poly(const Rat& c0) {
    if (c0 != 0) coeffs.push_back(c0);
  }
  Poly(std::initializer_list<Rat> cs) : coeffs(cs) { normalize(); }

  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(Rat(1)); }
  static Poly t() { return Poly({Rat(0), Rat(1)}); }
  static Poly from_coeffs(std::vector<Rat> cs) {
    Poly p;
    p.coeffs = std::move(cs);
    p.normalize();
    return p;
  }

  void normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  Rat coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return Rat(0);
    return coeffs[i];
  }
  const Rat& leading() const { return coeffs.back(); }

  Rat operator()(const Rat& x) const;
  IV operator()(const IV& x) const;  // Horner hull, not necessarily tight

  bool operator==(const Poly& o) const { return coeffs == o.coeffs; }
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Rat& c);
inline Poly operator*(const Rat& c, const Poly& a) { return a * c; }
Poly operator/(const Poly& a, const Rat& c);

Poly derivative(const Poly& p);

// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);

// Monic gcd.
Poly poly_gcd(Poly a, Poly b);

// p / gcd(p, p'), monic.
Poly squarefree_part(const Poly& p);

// Monic product of (t - r) over the given roots.
Poly from_roots(const std::vector<Rat>& roots);

// Polynomial with interval coefficients; arithmetic is hull arithmetic.
struct IPoly {
  std::vector<IV> coeffs;

  IPoly() = default;
  static IPoly of(const Poly& p);
  static IPoly from_coeffs(std::vector<IV> cs) {
    IPoly p;
    p.coeffs = std::move(cs);
    return p;
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  IV coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return IV(Rat(0));
    return coeffs[i];
  }
  IV operator()(const IV& x) const;
  IV operator()(const Rat& x) const { return (*this)(IV(x)); }
  Rat max_width() const;

  // Midpoint polynomial (for diagnostics/printing only).
  Poly midpoint() const;
};

IPoly operator+(const IPoly& a, const IPoly& b);
IPoly operator-(const IPoly& a, const IPoly& b);
IPoly operator*(const IPoly& a, const IPoly& b);
IPoly operator*(const IPoly& a, const IV& c);
inline IPoly operator*(const IV& c, const IPoly& a) { return a * c; }

}  // namespace hambound
