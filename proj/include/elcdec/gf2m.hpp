#pragma once

// GF(2^m) arithmetic with a fixed irreducible modulus per degree, table-free
// carryless multiply. Only used while constructing cyclic codes; degrees up
// to 63 are supported (quadratic residue lengths here need m <= 51).

#include <cstdint>

#include "elcdec/errors.hpp"

namespace elcdec {

namespace detail {

// Degree of a nonzero binary polynomial packed in a 128-bit word.
inline int poly_degree(unsigned __int128 p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

inline unsigned __int128 poly_mod(unsigned __int128 a, unsigned __int128 f) {
  const int df = poly_degree(f);
  int da = poly_degree(a);
  while (da >= df) {
    a ^= f << (da - df);
    da = poly_degree(a);
  }
  return a;
}

inline unsigned __int128 poly_mulmod(unsigned __int128 a, unsigned __int128 b,
                                     unsigned __int128 f) {
  unsigned __int128 acc = 0;
  while (b) {
    if (b & 1) acc ^= a;
    a <<= 1;
    b >>= 1;
  }
  return poly_mod(acc, f);
}

inline unsigned __int128 poly_gcd(unsigned __int128 a, unsigned __int128 b) {
  while (b) {
    a = poly_mod(a, b);
    auto t = a;
    a = b;
    b = t;
  }
  return a;
}

// Rabin irreducibility test for a degree-m binary polynomial f:
// x^(2^m) == x (mod f), and gcd(x^(2^(m/q)) - x, f) = 1 for each prime q | m.
inline bool poly_irreducible(std::uint64_t f64, unsigned m) {
  const unsigned __int128 f = f64;
  const unsigned __int128 x = 2;

  auto frobenius = [&](unsigned times) {
    unsigned __int128 t = x;
    for (unsigned i = 0; i < times; ++i) t = poly_mulmod(t, t, f);
    return t;
  };

  if (frobenius(m) != x) return false;
  for (unsigned q = 2; q <= m; ++q) {
    if (m % q != 0) continue;
    bool prime = true;
    for (unsigned d = 2; d * d <= q; ++d)
      if (q % d == 0) prime = false;
    if (!prime) continue;
    if (poly_gcd(frobenius(m / q) ^ x, f) != 1) return false;
  }
  return true;
}

}  // namespace detail

class GF2m {
 public:
  explicit GF2m(unsigned m) : m_(m) {
    if (m < 1 || m > 63) throw Error("GF2m: unsupported degree");
    modulus_ = find_modulus(m);
  }

  unsigned degree() const { return m_; }
  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t order() const { return (std::uint64_t{1} << m_) - 1; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    unsigned __int128 acc = 0, aa = a;
    while (b) {
      if (b & 1) acc ^= aa;
      aa <<= 1;
      b >>= 1;
    }
    return reduce(acc);
  }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

 private:
  std::uint64_t reduce(unsigned __int128 acc) const {
    const unsigned __int128 f = modulus_;
    int d = detail::poly_degree(acc);
    while (d >= static_cast<int>(m_)) {
      acc ^= f << (d - m_);
      d = detail::poly_degree(acc);
    }
    return static_cast<std::uint64_t>(acc);
  }

  // First irreducible trinomial x^m + x^t + 1, falling back to pentanomials.
  // Deterministic, so every run of a given degree uses the same field.
  static std::uint64_t find_modulus(unsigned m) {
    const std::uint64_t top = (std::uint64_t{1} << m) | 1;
    for (unsigned t = 1; t < m; ++t) {
      std::uint64_t f = top | (std::uint64_t{1} << t);
      if (detail::poly_irreducible(f, m)) return f;
    }
    for (unsigned a = 1; a < m; ++a)
      for (unsigned b = a + 1; b < m; ++b)
        for (unsigned c = b + 1; c < m; ++c) {
          std::uint64_t f = top | (std::uint64_t{1} << a) | (std::uint64_t{1} << b) |
                            (std::uint64_t{1} << c);
          if (detail::poly_irreducible(f, m)) return f;
        }
    throw Error("GF2m: no sparse irreducible modulus found");
  }

  unsigned m_;
  std::uint64_t modulus_;
};

}  // namespace elcdec
