#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace skewsep {

using Int = std::int64_t;
using Vec = std::vector<Int>;

// Arithmetic in Z/c. Values are kept in [0, c).
class ZMod {
 public:
  static constexpr Int kMaxModulus = Int{1} << 31;

  explicit ZMod(Int modulus) : c_(modulus) {
    if (modulus < 2 || modulus > kMaxModulus)
      throw std::invalid_argument("modulus must lie in [2, 2^31]");
  }

  Int modulus() const { return c_; }

  Int reduce(Int a) const {
    Int r = a % c_;
    return r < 0 ? r + c_ : r;
  }
  Int add(Int a, Int b) const { return reduce(a + b); }
  Int sub(Int a, Int b) const { return reduce(a - b); }
  Int mul(Int a, Int b) const { return reduce(a * b); }
  Int neg(Int a) const { return a == 0 ? 0 : c_ - a; }

  bool is_unit(Int a) const { return std::gcd(reduce(a), c_) == 1; }

  // Inverse of a unit; throws for zero divisors.
  Int inverse(Int a) const {
    Int r0 = c_, r1 = reduce(a), s0 = 0, s1 = 1;
    while (r1 != 0) {
      Int q = r0 / r1;
      Int t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    if (r0 != 1) throw std::domain_error("element is not a unit");
    return reduce(s0);
  }

  // The divisor gcd(a, c) of c that generates the same ideal as a.
  Int ideal_generator(Int a) const {
    a = reduce(a);
    return a == 0 ? c_ : std::gcd(a, c_);
  }

  // A unit u with u * a = gcd(a, c) (mod c).
  Int normalizing_unit(Int a) const;

  Vec reduce(Vec v) const {
    for (auto& x : v) x = reduce(x);
    return v;
  }

  bool operator==(const ZMod& o) const { return c_ == o.c_; }

 private:
  Int c_;
};

// Extended gcd over Z: returns g = gcd(a,b) with s*a + t*b = g.
struct Gcdex {
  Int g, s, t;
};
Gcdex gcdex(Int a, Int b);

// Pascal triangle rows 0..n, entries reduced mod c.
std::vector<Vec> binomial_table(const ZMod& zm, std::size_t n);

}  // namespace skewsep
