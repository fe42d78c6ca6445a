#include "hambound/potential.hpp"

#include <utility>

#include "hambound/base.hpp"

namespace hambound {

namespace {

// Bits needed to absorb a factor |c| into an interval width budget.
long magnitude_bits(const Rat& c) {
  if (sgn(c) == 0) return 0;
  Rat a = abs(c);
  if (a <= 1) return 0;
  Int up = ceil_rat(a);
  return static_cast<long>(mpz_sizeinbase(up.get_mpz_t(), 2));
}

}  // namespace

IV root_enclosure(const Rat& x, unsigned long p, long prec) {
  if (sgn(x) < 0) throw ParamError("root of a negative number");
  if (p == 0) throw ParamError("zeroth root");
  if (prec < 1) prec = 1;
  if (p == 1 || sgn(x) == 0) return IV::point(x);
  Int num = x.get_num(), den = x.get_den();
  Int rn, rd;
  bool en = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), p) != 0;
  bool ed = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), p) != 0;
  if (en && ed) return IV::point(rat(rn, rd));
  // floor(x * 2^{p * prec}) has integer p-th root r; then
  // r / 2^prec <= x^{1/p} < (r + 1) / 2^prec.
  Int shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), num.get_mpz_t(),
               static_cast<mp_bitcnt_t>(p) * static_cast<mp_bitcnt_t>(prec));
  Int N;
  mpz_fdiv_q(N.get_mpz_t(), shifted.get_mpz_t(), den.get_mpz_t());
  Int r;
  mpz_root(r.get_mpz_t(), N.get_mpz_t(), p);
  Int scale = pow2(prec).get_num();
  return IV(rat(r, scale), rat(r + 1, scale));
}

IV power_enclosure(const Rat& x, const Rat& e, long prec) {
  if (sgn(x) <= 0) throw ParamError("power of a nonpositive base");
  if (is_integer(e)) {
    if (!e.get_num().fits_slong_p()) throw ParamError("power exponent out of range");
    return IV::point(pow_rat(x, e.get_num().get_si()));
  }
  Int a = e.get_num(), b = e.get_den();
  if (!a.fits_slong_p() || !b.fits_ulong_p()) throw ParamError("power exponent out of range");
  Rat base = pow_rat(x, a.get_si());
  return root_enclosure(base, b.get_ui(), prec);
}

IV exp_enclosure(const Rat& x, long prec) {
  if (prec < 1) prec = 1;
  if (sgn(x) == 0) return IV::point(rat(1));
  const Rat target = pow2(-prec - 1);
  const Rat ax = abs(x);
  Rat sum = 1, term = 1;
  for (long i = 1; i <= 100000; ++i) {
    term *= x;
    term /= i;
    sum += term;
    if (rat(i + 2) > ax) {
      // Tail after term i is bounded by the geometric-ratio estimate.
      Rat tail = abs(term) * ax / rat(i + 1) / (1 - ax / rat(i + 2));
      if (tail <= target) return IV(sum - tail, sum + tail);
    }
  }
  throw InternalError("exponential enclosure did not converge");
}

std::string Potential::descriptor() const {
  switch (kind) {
    case PotentialKind::inverse_power:
      return "invpow:sigma=" + rat_to_string(sigma);
    case PotentialKind::exponential:
      return "exp:c=" + rat_to_string(c);
    case PotentialKind::monomial:
      return "monomial:m=" + std::to_string(m);
    case PotentialKind::table:
      return "table:n=" + std::to_string(space.n) +
             (monotone_attested ? ",attested" : ",unattested");
  }
  throw InternalError("unknown potential kind");
}

bool Potential::exact() const {
  switch (kind) {
    case PotentialKind::inverse_power:
      return is_integer(sigma);
    case PotentialKind::exponential:
      return false;
    case PotentialKind::monomial:
    case PotentialKind::table:
      return true;
  }
  throw InternalError("unknown potential kind");
}

bool Potential::has_derivatives() const { return kind != PotentialKind::table; }

IV Potential::value(const Rat& t, long prec) const { return derivative(t, 0, prec); }

IV Potential::derivative(const Rat& t, int j, long prec) const {
  if (j < 0) throw InternalError("negative derivative order");
  if (t < -1 || t > 1) throw ParamError("potential evaluated outside [-1, 1]");
  switch (kind) {
    case PotentialKind::inverse_power: {
      if (t >= 1) throw ParamError("inverse-power potential undefined at t = 1");
      Rat z = rat(space.n) * (1 - t) / 2;
      Rat coeff = 1;
      for (int i = 0; i < j; ++i) coeff *= rat(space.n, 2) * (sigma + i);
      IV zp = power_enclosure(z, -(sigma + j), prec + magnitude_bits(coeff) + 2);
      return zp * coeff;
    }
    case PotentialKind::exponential: {
      Rat coeff = pow_rat(c, j);
      IV e = exp_enclosure(c * t, prec + magnitude_bits(coeff) + 2);
      return e * coeff;
    }
    case PotentialKind::monomial: {
      if (j > m) return IV::point(rat(0));
      Rat coeff = pow_rat(rat(1, 2), j);
      for (long i = m - j + 1; i <= m; ++i) coeff *= i;
      return IV::point(coeff * pow_rat((1 + t) / 2, m - j));
    }
    case PotentialKind::table: {
      if (j > 0) throw ParamError("table potential provides no derivatives");
      auto it = table_values.find(t);
      if (it == table_values.end())
        throw ParamError("table potential evaluated off its grid");
      return IV::point(it->second);
    }
  }
  throw InternalError("unknown potential kind");
}

Potential inverse_power_potential(const HammingSpace& space, const Rat& sigma) {
  if (sgn(sigma) <= 0) throw ParamError("inverse-power potential needs sigma > 0");
  Potential h;
  h.kind = PotentialKind::inverse_power;
  h.space = space;
  h.sigma = sigma;
  return h;
}

Potential exponential_potential(const Rat& c) {
  if (sgn(c) <= 0) throw ParamError("exponential potential needs c > 0");
  Potential h;
  h.kind = PotentialKind::exponential;
  h.c = c;
  return h;
}

Potential monomial_potential(long m) {
  if (m < 1) throw ParamError("monomial potential needs m >= 1");
  Potential h;
  h.kind = PotentialKind::monomial;
  h.m = m;
  return h;
}

Potential table_potential(const HammingSpace& space,
                          const std::vector<std::pair<Rat, Rat>>& values,
                          bool monotone_attested) {
  Potential h;
  h.kind = PotentialKind::table;
  h.space = space;
  h.monotone_attested = monotone_attested;
  for (const auto& [t, v] : values) {
    if (!space.on_grid(t)) throw ParamError("table potential point off the grid");
    if (!h.table_values.emplace(t, v).second)
      throw ParamError("table potential has a duplicate point");
  }
  if (h.table_values.size() != static_cast<size_t>(space.n))
    throw ParamError("table potential must cover the whole grid");
  // Nonnegative and nondecreasing are sample-checkable consequences of
  // absolute monotonicity; anything else is certainly invalid.
  const Rat* prev = nullptr;
  for (const auto& [t, v] : h.table_values) {
    if (sgn(v) < 0) throw ParamError("table potential has a negative value");
    if (prev && v < *prev) throw ParamError("table potential is decreasing");
    prev = &v;
  }
  return h;
}

Potential parse_potential(const HammingSpace& space, const std::string& descriptor) {
  auto fail = [&]() -> Potential {
    throw ParamError("cannot parse potential descriptor '" + descriptor + "'");
  };
  auto colon = descriptor.find(':');
  if (colon == std::string::npos) return fail();
  std::string head = descriptor.substr(0, colon);
  std::string rest = descriptor.substr(colon + 1);
  auto eq = rest.find('=');
  if (eq == std::string::npos) return fail();
  std::string key = rest.substr(0, eq);
  std::string val = rest.substr(eq + 1);
  if (val.empty()) return fail();
  if (head == "invpow" && key == "sigma")
    return inverse_power_potential(space, rat_from_string(val));
  if (head == "exp" && key == "c") return exponential_potential(rat_from_string(val));
  if (head == "monomial" && key == "m") {
    Rat m = rat_from_string(val);
    if (!is_integer(m) || !m.get_num().fits_slong_p()) return fail();
    return monomial_potential(m.get_num().get_si());
  }
  return fail();
}

}  // namespace hambound
