#pragma once

#include "hambound/hamming.hpp"
#include "hambound/measure.hpp"
#include "hambound/sturm.hpp"

namespace hambound {

// Measures on the inner-product grid.  The non-base kinds multiply the base
// counting measure by degree-one factors and renormalize to total mass 1;
// for kinds involving ell or s the result is in general a signed measure.
enum class MeasureKind { base, one_zero, one_one, one_ell, one_s, one_ell_s };

DiscreteMeasure base_measure(const HammingSpace& space);
DiscreteMeasure signed_measure(const HammingSpace& space, MeasureKind kind,
                               const Rat& ell = Rat(0), const Rat& s = Rat(0));

// An orthogonal (or candidate-orthogonal) family on [-1,1], every member
// normalized to value 1 at t = 1.
struct OrthoFamily {
  HammingSpace space;
  DiscreteMeasure mu;      // orthogonality measure (total mass 1)
  std::vector<Poly> Q;     // Q[i] has degree i, Q[i](1) == 1
  std::vector<Rat> norm;   // 1 / integral of Q_i^2 dmu; 0 marks "undefined"
  bool cross_checked = false;
};

// Plain Krawtchouk family up to degree max_deg (<= n), via the three-term
// recurrence; norms are (q-1)^i C(n,i).
OrthoFamily krawtchouk_family(const HammingSpace& space, int max_deg);

// K_i^{(n,q)} as a polynomial in the distance variable z (for cross-checks).
Poly krawtchouk_in_z(const HammingSpace& space, int i);

Rat r_plain(const HammingSpace& space, int i);    // (q-1)^i C(n,i)
Rat S_partial(const HammingSpace& space, int j);  // sum of r_plain over 0..j

// Norms of the first- and second-adjacent families in closed form.
Rat r10_norm(const HammingSpace& space, int j);
Rat r11_norm(const HammingSpace& space, int j);

OrthoFamily adjacent_10(const HammingSpace& space, int max_deg);
OrthoFamily adjacent_11(const HammingSpace& space, int max_deg);

// Adjacent family with the extra parameter ell (degrees 0..k), built as
// kernel ratios over the 1,0-family and cross-checked against Gram-Schmidt
// whenever the signed measure admits it.
OrthoFamily adjacent_1ell(const HammingSpace& space, const Rat& ell, int k);

// Family with both endpoint parameters (degrees 0..k-1), kernel ratios over
// the 1,ell-family.
OrthoFamily adjacent_1ells(const HammingSpace& space, const Rat& ell,
                           const Rat& s, int k);

// Kernel sum_{j<=i} norm_j Q_j(t) Q_j(y) as a polynomial in t.
Poly kernel_poly(const OrthoFamily& fam, int i, const Rat& y);

// Radau-type quadrature for the base measure with fixed node t = 1: the free
// nodes are the roots of Q_k^{1,0}.  Exact for degrees <= 2k.
struct RadauRule10 {
  int k = 0;
  std::vector<RootBracket> nodes;  // increasing, inside (-1, 1)
  std::vector<IV> weights;         // certified positive
  Rat weight_at_one;               // exact
};

RadauRule10 radau_rule_10(const HammingSpace& space, int k, long prec);

// Krawtchouk expansion coefficients f_i with f = sum f_i Q_i (deg f <= n).
std::vector<Rat> to_krawtchouk(const HammingSpace& space, const Poly& f);
Poly from_krawtchouk(const HammingSpace& space, const std::vector<Rat>& coeffs);

}  // namespace hambound
