#pragma once

#include "hambound/hamming.hpp"

namespace hambound {

// k = 1 cardinality bound in closed form (valid whenever the k = 1
// admissibility conditions hold).
Rat hkl_bound(const HammingSpace& space, const Rat& ell, const Rat& s);

// Binary system with ell = (2-n)/n: closed forms and validity windows for
// the k = 1 and k = 2 bounds.  Window tests are exact (no radicals).
Rat l2_closed_binary(int n, const Rat& s);
Rat l4_closed_binary(int n, const Rat& s);
bool in_l2_window_binary(int n, const Rat& s);
bool in_l4_window_binary(int n, const Rat& s);

// Companion pure-Levenshtein bounds in the same system.
Rat lev_first_bound(const Rat& s);                  // (s-1)/s on [ell, -1/n]
Rat lev_second_bound(int n, const Rat& s);          // on (0, (sqrt(n-1)-1)/n]

// Distance distribution of a code attaining the k = 1 bound with |C| = M:
// (A_ell, A_s) solving 1 + A_ell + A_s = M and the first-moment equation.
std::pair<Rat, Rat> k1_distance_distribution(const HammingSpace& space,
                                             const Rat& ell, const Rat& s,
                                             const Rat& M);

// Parameters of named attaining families (used as test vectors only).
struct OvoidParams {
  int q = 0;
  HammingSpace space;  // n = q^2 + 1
  long d = 0, D = 0;
  Rat ell, s;
  Int M;  // q^4
  Rat A_ell, A_s;
};
OvoidParams ovoid_params(int q);

struct DhzParams {
  int q = 0, m = 0, N = 0;
  HammingSpace space;  // n = N (q^m - 1)/(q - 1)
  long d = 0, D = 0;
  Rat ell, s;
  Int M;  // q^{2m}
  Rat A_ell, A_s;
  bool admissible = false;  // N >= 1 + (q^m - q)/2
};
DhzParams dhz_params(int q, int m, int N);

struct EvenWeightParams {
  HammingSpace space;  // q = 2, n odd
  int k = 0;           // (n - 3) / 2, the degree parameter of the attained bound
  Rat ell, s;          // ell = (2-n)/n, s = (n-4)/n
  Int M;               // 2^{n-1}
};
EvenWeightParams even_weight_params(int n);

}  // namespace hambound
