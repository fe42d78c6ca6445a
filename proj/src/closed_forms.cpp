#include "hambound/closed_forms.hpp"

#include "hambound/base.hpp"

namespace hambound {

Rat hkl_bound(const HammingSpace& space, const Rat& ell, const Rat& s) {
  const long n = space.n;
  const long q = space.q;
  Rat L = rat(n) * rat(q) * rat(q) * (1 - s) * (1 - ell);
  Rat den = L + rat(4 * (q - 1) * (1 - n)) + rat(2 * n * q * (q - 1)) * (s + ell);
  if (sgn(den) <= 0) throw ParamError("k=1 closed-form bound: nonpositive denominator");
  return L / den;
}

Rat l2_closed_binary(int n, const Rat& s) {
  Rat den = 1 - rat(n - 2) * s;
  if (sgn(den) <= 0) throw ParamError("binary k=1 closed form: nonpositive denominator");
  return 2 * (1 - s) * rat(n - 1) / den;
}

Rat l4_closed_binary(int n, const Rat& s) {
  const long N = n;
  Rat num = 2 * (1 - s) * (rat(N * (N * N - 3 * N - 2)) * s + rat(N * N - 7 * N + 2));
  Rat den = rat(N - 6) + rat(2 * (N - 2)) * s - rat(N * (N - 4)) * s * s;
  if (sgn(den) <= 0) throw ParamError("binary k=2 closed form: nonpositive denominator");
  return num / den;
}

bool in_l2_window_binary(int n, const Rat& s) {
  if (n < 4) throw ParamError("binary k=1 window needs n >= 4");
  // -1/n < s <= 2/(n(n-3))
  Rat lo = rat(-1, n);
  Rat hi = rat(2, static_cast<long>(n) * (n - 3));
  return s > lo && s <= hi;
}

bool in_l4_window_binary(int n, const Rat& s) {
  if (n < 6) throw ParamError("binary k=2 window needs n >= 6");
  const long N = n;
  // s > (sqrt(n-1) - 1)/n  <=>  ns + 1 > 0 and (ns + 1)^2 > n - 1
  Rat u = rat(N) * s + 1;
  if (sgn(u) <= 0) return false;
  if (u * u <= rat(N - 1)) return false;
  // s <= (2 + sqrt(n^3 - 12n^2 + 41n - 26))/(n(n-5))
  // <=> n(n-5)s - 2 <= 0, or (n(n-5)s - 2)^2 <= disc
  Int disc = Int(N) * N * N - 12 * Int(N) * N + 41 * Int(N) - 26;
  if (sgn(disc) < 0) throw InternalError("binary k=2 window: negative discriminant");
  Rat v = rat(N * (N - 5)) * s - 2;
  if (sgn(v) <= 0) return true;
  return v * v <= Rat(disc);
}

Rat lev_first_bound(const Rat& s) {
  if (sgn(s) >= 0) throw ParamError("first bound needs s < 0");
  return (s - 1) / s;
}

Rat lev_second_bound(int n, const Rat& s) {
  Rat den = 1 - rat(n) * s * s;
  if (sgn(den) <= 0) throw ParamError("second bound: nonpositive denominator");
  return (1 - s) * rat(n) * (2 + rat(n + 1) * s) / den;
}

std::pair<Rat, Rat> k1_distance_distribution(const HammingSpace& space,
                                             const Rat& ell, const Rat& s,
                                             const Rat& M) {
  if (s <= ell) throw ParamError("distance distribution needs ell < s");
  const Rat q = rat(space.q);
  Rat den = q * (s - ell);
  Rat A_ell = ((q * (1 + s) - 2) * M + q * (1 - s)) / den;
  Rat A_s = ((2 - q * (1 + ell)) * M - q * (1 - ell)) / den;
  return {A_ell, A_s};
}

OvoidParams ovoid_params(int q) {
  if (q < 2) throw ParamError("ovoid parameters need q >= 2");
  OvoidParams p;
  p.q = q;
  const long Q = q;
  p.space = HammingSpace(static_cast<int>(Q * Q + 1), q);
  p.d = Q * Q - Q;
  p.D = Q * Q;
  p.ell = rat(1 - Q * Q, 1 + Q * Q);
  p.s = rat(1 + 2 * Q - Q * Q, 1 + Q * Q);
  p.M = Int(Q) * Q * Q * Q;
  p.A_ell = rat(p.space.n * (Q - 1));
  p.A_s = rat(p.space.n * Q * (Q - 1));
  return p;
}

DhzParams dhz_params(int q, int m, int N) {
  if (q < 2 || m < 1 || N < 2) throw ParamError("partition-family parameters need q >= 2, m >= 1, N >= 2");
  DhzParams p;
  p.q = q;
  p.m = m;
  p.N = N;
  Int qm = 1;
  for (int i = 0; i < m; ++i) qm *= q;
  Int n_big = Int(N) * (qm - 1) / (q - 1);
  if (!n_big.fits_sint_p()) throw ParamError("partition-family parameters out of range");
  if (N > qm + 1) throw ParamError("partition-family parameters need N <= q^m + 1");
  p.space = HammingSpace(static_cast<int>(n_big.get_si()), q);
  Int qm1 = qm / q;
  p.d = mpz_class((N - 1) * qm1).get_si();
  p.D = mpz_class(Int(N) * qm1).get_si();
  p.ell = -Rat(qm - 2 * qm1 + 1) / Rat(qm - 1);
  p.s = -Rat(Int(N - 2) * qm - 2 * Int(N - 1) * qm1 + N) / Rat(N * (qm - 1));
  p.M = qm * qm;
  p.A_s = Rat(Int(Int(p.space.n) * (q - 1)));
  p.A_ell = Rat(Int((qm - 1) * (qm - N + 1)));
  p.admissible = Rat(N) >= 1 + Rat(qm - q) / 2;
  return p;
}

EvenWeightParams even_weight_params(int n) {
  if (n < 5 || n % 2 == 0) throw ParamError("even-weight family needs odd n >= 5");
  EvenWeightParams p;
  p.space = HammingSpace(n, 2);
  p.k = (n - 3) / 2;
  p.ell = rat(2 - n, n);
  p.s = rat(n - 4, n);
  p.M = pow2(n - 1).get_num();
  return p;
}

}  // namespace hambound
