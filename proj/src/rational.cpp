#include "hambound/rational.hpp"

#include <cctype>

namespace hambound {

Rat rat_from_string(const std::string& s) {
  auto is_int = [](const std::string& x) {
    if (x.empty()) return false;
    std::size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(x[i]))) return false;
    return true;
  };
  std::string num = s, den = "1";
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!is_int(num) || !is_int(den))
    throw ParamError("bad rational literal: '" + s + "'");
  Int n(num), d(den);
  if (d == 0) throw ParamError("bad rational literal (zero denominator): '" + s + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Int ceil_rat(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) throw ParamError("zero to negative power");
    return Rat(0);
  }
  bool neg = e < 0;
  unsigned long a = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), a);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), a);
  Rat r = neg ? rat(den, num) : rat(num, den);
  return r;
}

Rat pow2(long e) { return pow_rat(Rat(2), e); }

Int binomial(long n, long k) {
  if (k < 0 || k > n) return Int(0);
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

Int factorial(long n) {
  if (n < 0) throw ParamError("factorial of negative");
  Int f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

}  // namespace hambound
