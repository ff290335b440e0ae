#include "skewsep/zmod.hpp"

namespace skewsep {

Int ZMod::normalizing_unit(Int a) const {
  a = reduce(a);
  if (a == 0) return 1;
  const Int g = std::gcd(a, c_);
  const Int cofactor = c_ / g;
  if (cofactor == 1) return 1;
  // a/g is a unit modulo c/g; lift its inverse to a unit modulo c.
  const Int base = ZMod(cofactor).inverse(a / g);
  for (Int u = base; u < c_; u += cofactor)
    if (std::gcd(u, c_) == 1) return u;
  throw std::logic_error("no unit lift found");
}

Gcdex gcdex(Int a, Int b) {
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const Int q = r0 / r1;
    Int tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

std::vector<Vec> binomial_table(const ZMod& zm, std::size_t n) {
  std::vector<Vec> rows(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    rows[i].assign(i + 1, 1 % zm.modulus());
    for (std::size_t j = 1; j < i; ++j) rows[i][j] = zm.add(rows[i - 1][j - 1], rows[i - 1][j]);
  }
  return rows;
}

}  // namespace skewsep
