#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hambound/levenshtein.hpp"
#include "hambound/potential.hpp"

namespace hambound {

struct HermiteNode {
  NodeVal z;
  int mult = 1;
};

// Newton divided-difference Hermite interpolant to h at the given nodes
// (counted with multiplicity), as a polynomial with certified coefficients.
// Coefficients are exact points when the nodes are rational and h evaluates
// exactly.  Repeated nodes need h derivatives (ParamError for tables).
IPoly hermite_interpolant(const std::vector<HermiteNode>& nodes,
                          const Potential& h, long prec);

// Enclosure of h^(j) over the enclosure of a node.  Endpoint evaluation is
// enough: every derivative of an absolutely monotone h is nondecreasing.
IV potential_on(const Potential& h, const NodeVal& z, int j, long prec);

struct EnergyReport {
  HammingSpace space{1, 2};
  Rat ell;
  std::optional<Rat> s;  // the s at which dual polynomials were built
  Rat M;
  int k = 0;
  std::string potential;
  std::optional<IV> lower;     // certified: every admissible code has E >= lower
  std::optional<IV> upper;     // certified: every admissible code has E <= upper
  std::optional<IV> lambda;    // UUB mixing parameter
  std::optional<IV> s_solved;  // enclosure of the s solving L_{2k}(n,ell,s) = M
  bool s_exact = false;        // L_{2k}(n,ell,s) = M holds exactly at *s
  std::optional<QuadratureRule> rule;
  std::vector<std::string> notes;
};

// Universal lower bound on the h-energy of codes with |C| = M and maximum
// distance D = n(1-ell)/2: M(M g_0 - g(1)) for g = H((t-s) f_2k; h) with s
// solving L_2k(n,ell,s) = M (certified bisection; exact when the solution is
// rational).  k_max <= 0 scans k up to n/2.  Throws ParamError when M lies
// outside the attainable range of the bound, naming the range.
EnergyReport energy_lower_bound(const HammingSpace& space, const Rat& ell,
                                const Rat& M, const Potential& h, int k_max,
                                long prec);

// Universal upper bound on the h-energy of codes with |C| = M, minimum
// distance d = n(1-s)/2, and maximum distance D = n(1-ell)/2.  Requires
// M <= L_2k(n,ell,s).  With cross_check_ell_double, also builds the variant
// interpolant with ell as a double node and records agreement in notes.
EnergyReport energy_upper_bound(const HammingSpace& space, const Rat& M,
                                const Rat& ell, const Rat& s, int k,
                                const Potential& h, long prec,
                                bool cross_check_ell_double = false);

// Both bounds: lower at cardinality M, upper at (ell, s, k).
EnergyReport energy_strip(const HammingSpace& space, const Rat& M,
                          const Rat& ell, const Rat& s, int k,
                          const Potential& h, long prec);

// Solve L_2k(n, ell, s) = M for s inside the k-window.  Returns the exact
// rational solution when one exists, otherwise a valid rational probe with
// the certified enclosure of the solution.  Throws ParamError when M is not
// attainable at this k.
struct SSolve {
  Rat s;
  bool exact = false;
  IV enclosure{Rat(0)};
};
SSolve solve_cardinality_for_s(const HammingSpace& space, const Rat& ell,
                               int k, const Rat& M, long prec);

}  // namespace hambound
