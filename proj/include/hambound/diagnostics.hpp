#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hambound/energy.hpp"

namespace hambound {

// Distance distribution a code attaining L_2k must have: A_{alpha_i} =
// rho_i |C|.  Re-derived independently by solving the moment system
// 1 + sum_i A_i alpha_i^u = b_u |C|, u = 0..k; both paths must agree.
struct DistanceDistribution {
  BoundReport rep;
  Rat M;  // |C| = L_2k
  std::vector<IV> counts;
  std::vector<std::optional<Rat>> counts_exact;
  std::vector<bool> integral;  // entry is an exact nonnegative integer
  std::vector<bool> on_grid;   // alpha_i lies in T_n
  bool attainable_profile = false;
  std::vector<std::string> notes;
};
DistanceDistribution distance_distribution(const HammingSpace& space,
                                           const Rat& ell, const Rat& s, int k,
                                           long prec);

// b_0..b_{u_max}: power moments of the base measure (exact).
std::vector<Rat> moments(const HammingSpace& space, int u_max);

// R_j / S_j optimality tests.  Negative value at some j > 2k certifies that
// the degree-2k bound can be improved at degree j.
struct TestFunctionValue {
  int j = 0;
  IV value;      // intersection of the two computations
  IV direct;     // 1/L + sum rho_i Q_j(alpha_i)
  IV power_sum;  // sum_{u=2k+1..j} a_{j,u} (S_u - b_u)
};
TestFunctionValue test_function_R(const HammingSpace& space, const Rat& ell,
                                  const Rat& s, int k, int j, long prec);
TestFunctionValue test_function_S(const HammingSpace& space, const Rat& ell,
                                  int k, const Rat& M, int j, long prec);

struct TestFunctionReport {
  HammingSpace space{1, 2};
  Rat ell, s;
  int k = 0;
  int j_max = 0;  // effective scan ceiling (capped at n)
  std::vector<TestFunctionValue> values;  // j = 1..j_max
  std::optional<int> first_negative;
  std::vector<int> indeterminate;  // sign undecided at max precision
  std::vector<std::string> notes;
};
TestFunctionReport scan_test_functions(const HammingSpace& space,
                                       const Rat& ell, const Rat& s, int k,
                                       int j_max, long prec);

// Degree-j polynomial v = (a + c) f_2k with Q_j = a f_2k + b improving the
// cardinality bound when R_j < 0.  Everything is exact; c is rounded up.
struct ImprovingPolynomial {
  int j = 0;
  Poly v;
  std::vector<Rat> v_kraw;
  Rat c;
  Rat v0, v1;
  Rat improved;  // v(1)/v_0
  Rat original;  // L_2k
};
ImprovingPolynomial improving_polynomial(const HammingSpace& space,
                                         const Rat& ell, const Rat& s, int k,
                                         int j, long prec);

// T_n-grid refinement: interior double nodes snapped to neighbouring grid
// points; f_ref = prod (t - gamma_i), g_ref = H(f_ref (t - t*); h) with t*
// the grid point just below s.  Feasibility of the snapped polynomials is
// checked coefficientwise and on the grid.
struct RefineReport {
  BoundReport rep;
  bool refined = false;  // false for k = 1 (identity)
  Poly f_ref;
  std::vector<Rat> f_kraw;
  bool f_feasible = false;
  std::optional<int> f_violation;  // first negative coefficient index
  bool f_grid_ok = false;          // f_ref <= 0 on T_n cap [ell, s]
  std::optional<Rat> L_ref;        // f_ref(1)/(f_ref)_0
  bool g_built = false;
  bool g_feasible = false;
  std::optional<int> g_violation;
  bool g_grid_ok = false;  // g_ref <= h on T_n cap [ell, 1)
  std::optional<IV> energy_ref;  // M(M g_0 - g(1)) at M = L_2k
  bool alt_nodes_used = false;   // some alpha_i sat exactly on the grid
  std::vector<std::string> notes;
};
RefineReport refine_polynomials(const HammingSpace& space, const Rat& ell,
                                const Rat& s, int k, const Potential& h,
                                long prec);

}  // namespace hambound
