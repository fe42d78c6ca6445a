#include "hambound/measure.hpp"

namespace hambound {

Rat integrate(const Poly& p, const DiscreteMeasure& mu) {
  Rat s(0);
  for (const auto& [t, w] : mu.atoms) s += w * p(t);
  return s;
}

IV integrate(const IPoly& p, const DiscreteMeasure& mu) {
  IV s{Rat(0)};
  for (const auto& [t, w] : mu.atoms) s += p(IV(t)) * w;
  return s;
}

Rat moment(const DiscreteMeasure& mu, unsigned u) {
  Rat s(0);
  for (const auto& [t, w] : mu.atoms) s += w * pow_rat(t, static_cast<long>(u));
  return s;
}

PDResult check_positive_definite(const DiscreteMeasure& mu, int degree) {
  PDResult res;
  if (degree < 0) {
    res.positive_definite = true;
    return res;
  }
  const int m = degree + 1;
  std::vector<Rat> mom(static_cast<std::size_t>(2 * degree + 1));
  for (int u = 0; u <= 2 * degree; ++u) mom[static_cast<std::size_t>(u)] = moment(mu, static_cast<unsigned>(u));

  auto leading_minor = [&](int order) {
    // Exact determinant of the order x order moment matrix, Gaussian
    // elimination with row pivoting.
    std::vector<std::vector<Rat>> a(static_cast<std::size_t>(order),
                                    std::vector<Rat>(static_cast<std::size_t>(order)));
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mom[static_cast<std::size_t>(i + j)];
    Rat det(1);
    for (int k = 0; k < order; ++k) {
      int piv = -1;
      for (int i = k; i < order; ++i)
        if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return Rat(0);
      if (piv != k) {
        std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(k)]);
        det = -det;
      }
      det *= a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
      for (int i = k + 1; i < order; ++i) {
        Rat f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] /
                a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        for (int j = k; j < order; ++j)
          a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
              f * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      }
    }
    return det;
  };

  res.positive_definite = true;
  for (int order = 1; order <= m; ++order) {
    Rat d = leading_minor(order);
    res.minors.push_back(d);
    if (d <= 0 && res.first_failure < 0) {
      res.positive_definite = false;
      res.first_failure = order;
    }
  }
  return res;
}

}  // namespace hambound
