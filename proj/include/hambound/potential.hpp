#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hambound/hamming.hpp"
#include "hambound/interval.hpp"

namespace hambound {

enum class PotentialKind { inverse_power, exponential, monomial, table };

// Absolutely monotone potential h on [-1, 1): h and all derivatives >= 0.
// Built-in families evaluate to certified enclosures (exact points where the
// value is rational).  Table potentials carry values on the grid T_n only and
// rely on a caller attestation for absolute monotonicity; they provide no
// derivatives.
struct Potential {
  PotentialKind kind = PotentialKind::monomial;
  HammingSpace space{1, 2};  // distance scaling (inverse_power) / grid (table)
  Rat sigma;                 // inverse_power: h(t) = (n(1-t)/2)^{-sigma}, sigma > 0
  Rat c;                     // exponential: h(t) = exp(c t), c > 0
  long m = 1;                // monomial: h(t) = ((1+t)/2)^m, m >= 1
  std::map<Rat, Rat> table_values;  // table: grid point -> value
  bool monotone_attested = false;   // table only

  std::string descriptor() const;
  bool exact() const;            // value() returns points at rational t
  bool has_derivatives() const;  // false for table potentials
  // Enclosure of h(t), width <= 2^-prec (point if exactly representable).
  // t must lie in [-1, 1); table potentials accept grid points only.
  IV value(const Rat& t, long prec) const;
  // Enclosure of h^(j)(t); j = 0 gives value().
  IV derivative(const Rat& t, int j, long prec) const;
};

Potential inverse_power_potential(const HammingSpace& space, const Rat& sigma);
Potential exponential_potential(const Rat& c);
Potential monomial_potential(long m);
Potential table_potential(const HammingSpace& space,
                          const std::vector<std::pair<Rat, Rat>>& values,
                          bool monotone_attested);

// Descriptor grammar: "invpow:sigma=<rat>", "exp:c=<rat>", "monomial:m=<int>".
// (Table potentials are constructed from explicit data, not a descriptor.)
Potential parse_potential(const HammingSpace& space, const std::string& descriptor);

// Enclosure of x^{1/p} for x >= 0, p >= 1; exact point when x is a perfect
// p-th power of a rational.
IV root_enclosure(const Rat& x, unsigned long p, long prec);
// Enclosure of x^e for x > 0 and rational e.
IV power_enclosure(const Rat& x, const Rat& e, long prec);
// Enclosure of exp(x), width <= 2^-prec.
IV exp_enclosure(const Rat& x, long prec);

}  // namespace hambound
