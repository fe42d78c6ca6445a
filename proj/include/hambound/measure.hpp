#pragma once

#include <utility>
#include <vector>

#include "hambound/poly.hpp"

namespace hambound {

// Finitely supported signed measure with exact rational atoms.
struct DiscreteMeasure {
  std::vector<std::pair<Rat, Rat>> atoms;  // (location, mass)

  Rat total_mass() const {
    Rat s(0);
    for (const auto& [t, w] : atoms) s += w;
    return s;
  }
};

Rat integrate(const Poly& p, const DiscreteMeasure& mu);
IV integrate(const IPoly& p, const DiscreteMeasure& mu);

// u-th moment: integral of t^u.
Rat moment(const DiscreteMeasure& mu, unsigned u);

// Positive definiteness up to the given degree: the moment Gram matrix
// (integral of t^{i+j})_{i,j=0..degree} must have positive leading principal
// minors.  Minors are returned as the certificate (exact determinants).
struct PDResult {
  bool positive_definite = false;
  std::vector<Rat> minors;
  int first_failure = -1;  // order of first non-positive minor, -1 if none
};

PDResult check_positive_definite(const DiscreteMeasure& mu, int degree);

}  // namespace hambound
