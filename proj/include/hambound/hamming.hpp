#pragma once

#include <vector>

#include "hambound/rational.hpp"

namespace hambound {

// The inner product scale on F_q^n: words at Hamming distance d have
// t = 1 - 2d/n.  Distinct words live on the grid t_i = -1 + 2i/n, i = 0..n-1;
// t_n = 1 is the self-product.
struct HammingSpace {
  int n = 0;
  int q = 0;

  HammingSpace() = default;
  HammingSpace(int n_, int q_) : n(n_), q(q_) {
    if (n < 1) throw ParamError("n must be >= 1");
    if (q < 2) throw ParamError("q must be >= 2");
  }

  Rat grid_point(int i) const { return rat(-1) + rat(2 * i, n); }

  // T_n: inner products of distinct words, increasing (excludes 1).
  std::vector<Rat> grid() const {
    std::vector<Rat> g;
    g.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g.push_back(grid_point(i));
    return g;
  }

  // Grid index i with t = -1 + 2i/n, or -1 when t is off-grid.
  // Accepts i = n (t = 1) as well.
  int grid_index(const Rat& t) const {
    Rat i = (t + 1) * rat(n, 2);
    if (!is_integer(i)) return -1;
    long v = i.get_num().get_si();
    if (v < 0 || v > n) return -1;
    return static_cast<int>(v);
  }

  bool on_grid(const Rat& t) const {
    int i = grid_index(t);
    return i >= 0 && i < n;
  }

  Rat t_of_distance(long d) const {
    if (d < 0 || d > n) throw ParamError("distance out of range");
    return rat(1) - rat(2 * d, n);
  }

  // d = n(1-t)/2; exact, not necessarily an integer for off-grid t.
  Rat distance_of_t(const Rat& t) const { return rat(n, 2) * (rat(1) - t); }

  Int cardinality() const {  // q^n
    Int c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
    return c;
  }
};

}  // namespace hambound
