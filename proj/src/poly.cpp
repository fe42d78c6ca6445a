#include "hambound/poly.hpp"

namespace hambound {

Rat Poly::operator()(const Rat& x) const {
  Rat acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IV Poly::operator()(const IV& x) const {
  IV acc{Rat(0)};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + IV(*it);
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.coeffs.size(), b.coeffs.size()), Rat(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
  return Poly::from_coeffs(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Rat> c(std::max(a.coeffs.size(), b.coeffs.size()), Rat(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
  return Poly::from_coeffs(std::move(c));
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& c : r.coeffs) c = -c;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero();
  std::vector<Rat> c(a.coeffs.size() + b.coeffs.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] += a.coeffs[i] * b.coeffs[j];
  return Poly::from_coeffs(std::move(c));
}

Poly operator*(const Poly& a, const Rat& c) {
  if (c == 0) return Poly::zero();
  Poly r = a;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

Poly operator/(const Poly& a, const Rat& c) {
  if (c == 0) throw InternalError("polynomial division by zero scalar");
  return a * (Rat(1) / c);
}

Poly derivative(const Poly& p) {
  if (p.degree() <= 0) return Poly::zero();
  std::vector<Rat> c(p.coeffs.size() - 1);
  for (std::size_t i = 1; i < p.coeffs.size(); ++i)
    c[i - 1] = p.coeffs[i] * Rat(static_cast<long>(i));
  return Poly::from_coeffs(std::move(c));
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InternalError("polynomial division by zero");
  Poly r = a;
  std::vector<Rat> q(a.coeffs.size(), Rat(0));
  const int db = b.degree();
  const Rat& lead = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    int shift = r.degree() - db;
    Rat factor = r.leading() / lead;
    q[shift] = factor;
    // r -= factor * t^shift * b
    for (int i = 0; i <= db; ++i)
      r.coeffs[static_cast<std::size_t>(i + shift)] -= factor * b.coeffs[static_cast<std::size_t>(i)];
    r.normalize();
  }
  return {Poly::from_coeffs(std::move(q)), std::move(r)};
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a / a.leading();
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 1) return p.is_zero() ? p : p / p.leading();
  Poly g = poly_gcd(p, derivative(p));
  Poly q = divrem(p, g).first;
  return q / q.leading();
}

Poly from_roots(const std::vector<Rat>& roots) {
  Poly p = Poly::one();
  for (const auto& r : roots) p = p * Poly({-r, Rat(1)});
  return p;
}

IPoly IPoly::of(const Poly& p) {
  IPoly q;
  q.coeffs.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs) q.coeffs.emplace_back(c);
  return q;
}

IV IPoly::operator()(const IV& x) const {
  IV acc{Rat(0)};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rat IPoly::max_width() const {
  Rat w(0);
  for (const auto& c : coeffs) w = std::max(w, c.width());
  return w;
}

Poly IPoly::midpoint() const {
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (const auto& x : coeffs) c.push_back(x.mid());
  return Poly::from_coeffs(std::move(c));
}

IPoly operator+(const IPoly& a, const IPoly& b) {
  std::vector<IV> c(std::max(a.coeffs.size(), b.coeffs.size()), IV(Rat(0)));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
  return IPoly::from_coeffs(std::move(c));
}

IPoly operator-(const IPoly& a, const IPoly& b) {
  std::vector<IV> c(std::max(a.coeffs.size(), b.coeffs.size()), IV(Rat(0)));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
  return IPoly::from_coeffs(std::move(c));
}

IPoly operator*(const IPoly& a, const IPoly& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return IPoly();
  std::vector<IV> c(a.coeffs.size() + b.coeffs.size() - 1, IV(Rat(0)));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] += a.coeffs[i] * b.coeffs[j];
  return IPoly::from_coeffs(std::move(c));
}

IPoly operator*(const IPoly& a, const IV& c) {
  IPoly r = a;
  for (auto& x : r.coeffs) x *= c;
  return r;
}

}  // namespace hambound
