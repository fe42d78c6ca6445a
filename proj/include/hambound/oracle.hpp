#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hambound/potential.hpp"

namespace hambound {

// Explicit code over {0..q-1}^n, words packed base-q (digit i = w / q^i % q).
struct Code {
  HammingSpace space{1, 2};
  std::vector<std::uint32_t> words;
};

int word_distance(const HammingSpace& space, std::uint32_t a, std::uint32_t b);
std::string code_to_text(const Code& c);  // one word per line, digits 0..q-1

struct OracleBudget {
  long max_points = 4096;  // cap on q^n
  int max_M = 16;          // cap on |C| for energy enumeration
};

struct MaxCodeResult {
  int size = 0;
  Code witness;  // deterministic: first maximum clique in ascending search
  long long nodes_visited = 0;
};

// Exact maximum size of a code with all pairwise distances in [d, D].
// Translation-reduced clique search rooted at the zero word.
MaxCodeResult exhaustive_max_code(const HammingSpace& space, int d, int D,
                                  const OracleBudget& budget = {});

struct EnergyExtrema {
  bool feasible = false;
  std::optional<IV> min_energy, max_energy;
  std::optional<Rat> min_exact, max_exact;  // set when h evaluates exactly
  Code argmin, argmax;
  long long codes_enumerated = 0;
};

// Exact h-energy extrema (ordered-pair convention) over all size-M codes
// with pairwise distances in [d, D], up to translation (and, for q = 2,
// coordinate permutation of the minimum-weight word).
EnergyExtrema exhaustive_energy_extrema(const HammingSpace& space, int M, int d,
                                        int D, const Potential& h, long prec,
                                        const OracleBudget& budget = {});

// Average distance distribution B_0..B_n (B_0 = 1, sum = |C|).
std::vector<Rat> average_distance_distribution(const Code& c);

// Dual distribution B'_j = (1/|C|) sum_i B_i r_j Q_j(t_{n-i}); B'_0 = 1 in
// this normalization, B'_j >= 0 always, and B'_1 = ... = B'_tau = 0 exactly
// when the code has strength tau.
std::vector<Rat> macwilliams(const Code& c);

// Largest tau such that sum_{y in C} f(<x,y>) = f_0 |C| for all monomials of
// degree <= tau and all x in the ambient space; cross-checked against the
// vanishing pattern of macwilliams().
int design_strength(const Code& c);

// Energy over ordered pairs: sum_{x != y} h(<x,y>).
Rat code_energy_exact(const Code& c, const Potential& h);  // needs exact h
IV code_energy(const Code& c, const Potential& h, long prec);

Code even_weight_code(int n);  // q = 2, all words of even weight
Code whole_space(const HammingSpace& space);

}  // namespace hambound
