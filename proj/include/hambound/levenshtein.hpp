#pragma once

#include <optional>
#include <string>

#include "hambound/krawtchouk.hpp"

namespace hambound {

// A real number that is either exactly rational or certified by a root
// bracket.  Quadrature nodes of low degree come out exact.
struct NodeVal {
  std::optional<Rat> exact_value;
  std::optional<RootBracket> bracket;

  static NodeVal of(const Rat& x) {
    NodeVal v;
    v.exact_value = x;
    return v;
  }
  static NodeVal of(RootBracket rb) {
    NodeVal v;
    if (rb.is_exact())
      v.exact_value = rb.lo;
    else
      v.bracket = std::move(rb);
    return v;
  }

  bool is_exact() const { return exact_value.has_value(); }
  IV iv() const { return is_exact() ? IV(*exact_value) : bracket->iv(); }
  void refine(const Rat& width) {
    if (!is_exact()) {
      refine_bracket(*bracket, width);
      if (bracket->is_exact()) {
        exact_value = bracket->lo;
        bracket.reset();
      }
    }
  }
  // -1 value < x, 0 equal, +1 value > x; always exact.
  int cmp(const Rat& x) const {
    if (is_exact()) return *exact_value < x ? -1 : (*exact_value > x ? 1 : 0);
    return cmp_root_rat(*bracket, x);
  }
};

// Admissibility of (n, q, k, ell, s).  The right end of the s window is
// closed: s may equal the largest root of Q_k^{1,ell}.
//
// l_s_range and s_location gate the bound (NoValidK on failure).  krein is
// a sufficient condition for positive-definiteness; when it fails, the
// exact Krawtchouk expansion of f_2k decides membership in F_>= directly
// (several attaining instances have a vanishing coefficient, which breaks
// the strict product condition but not the bound).  The remaining flags are
// reported diagnostics only: the attaining families sit exactly on the
// ell-location boundary (and the fixed-ell piecewise system uses ell far
// below it), and the quadrature construction certifies node placement and
// weight positivity directly for each instance.
struct Conditions {
  bool l_s_range = false;
  bool ell_condition = false;
  bool ell_location = false;
  bool s_location = false;
  bool s_condition = false;
  bool krein = false;

  bool admissible() const { return l_s_range && s_location && krein; }
  std::string first_gate_failure() const;

  bool all() const {
    return l_s_range && ell_condition && ell_location && s_location &&
           s_condition && krein;
  }
  std::string first_failure() const;
};

struct KreinResult {
  bool ok = false;
  std::vector<std::pair<int, int>> failures;  // (i, j) pairs that break F_>
};

// Strengthened Krein condition: (t-ell) Q_i^{1,ell} Q_j^{1,ell} has all
// Krawtchouk coefficients positive for 0 <= i <= j <= k, (i,j) != (k,k).
KreinResult krein_check(const HammingSpace& space, const Rat& ell, int k);

Conditions check_conditions(const HammingSpace& space, const Rat& ell,
                            const Rat& s, int k);

// Roots of p inside [lo, hi], ascending; degree <= 2 yields exact rational
// roots when the discriminant is a rational square, otherwise certified
// brackets.
std::vector<NodeVal> root_nodes_in(const Poly& p, const Rat& lo, const Rat& hi);

// (t-ell)(t-s) (Q_{k-1}^{1,ell,s})^2, exact rational coefficients.
Poly levenshtein_polynomial(const HammingSpace& space, const Rat& ell,
                            const Rat& s, int k);

// Quadrature with nodes ell = alpha_0 < ... < alpha_k = s plus t = 1,
// exact for degrees <= 2k.  alpha_1..alpha_{k-1} are the roots of
// Q_{k-1}^{1,ell,s}; weights are integrals of the Lagrange basis.
struct QuadratureRule {
  HammingSpace space;
  Rat ell, s;
  int k = 0;
  std::vector<NodeVal> nodes;                   // alpha_0..alpha_k
  std::vector<IV> weights;                      // rho_0..rho_k, certified > 0
  std::vector<std::optional<Rat>> weights_exact;  // exact values where nodes allow
  Rat weight_at_one;                            // rho_{k+1}, always exact
};

QuadratureRule quadrature(const HammingSpace& space, const Rat& ell,
                          const Rat& s, int k, long prec);

struct BoundReport {
  HammingSpace space;
  Rat ell, s;
  int k = 0;
  Rat L;                      // exact cardinality bound
  Int L_floor;
  Rat L_explicit;             // closed-display evaluation
  bool explicit_agrees = false;
  Conditions cond;
  KreinResult krein;
  // "krein": the product condition holds, so f is strictly positive-definite
  // by the general theorem.  "direct": the condition fails but the exact
  // expansion of this f has f_0 > 0 and f_i >= 0, which is all the linear
  // program needs.
  std::string positivity_certificate;
  Poly f;
  std::vector<Rat> f_kraw;
  QuadratureRule rule;
};

// Throws NoValidK when the admissibility conditions fail for this k,
// ParamError for out-of-domain input.
BoundReport cardinality_bound(const HammingSpace& space, const Rat& ell,
                              const Rat& s, int k, long prec);

struct KSelection {
  std::vector<int> valid;
  std::vector<std::pair<int, std::string>> rejected;  // (k, reason)
  std::optional<int> best;
  std::optional<BoundReport> report;  // report at best k
};

// Scans k = 1..k_max, keeps admissible ones, picks the smallest bound
// (ties to smaller k).  Does not throw on individual failures.
KSelection select_k(const HammingSpace& space, const Rat& ell, const Rat& s,
                    int k_max, long prec);

// Exact translation between distance windows and inner-product windows:
// s = 1 - 2d/n, ell = 1 - 2D/n.
std::pair<Rat, Rat> ls_of_dD(const HammingSpace& space, long d, long D);
std::pair<long, long> dD_of_ls(const HammingSpace& space, const Rat& ell,
                               const Rat& s);

}  // namespace hambound
