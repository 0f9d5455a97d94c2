#pragma once

#include <cstdint>
#include <vector>

#include "elcdec/errors.hpp"

namespace elcdec::detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::vector<char> quadratic_residues(std::uint32_t p) {
  std::vector<char> qr(p, 0);
  for (std::uint64_t r = 1; r < p; ++r) qr[(r * r) % p] = 1;
  return qr;
}

inline unsigned multiplicative_order(std::uint64_t a, std::uint64_t p) {
  std::uint64_t x = a % p;
  unsigned ord = 1;
  while (x != 1) {
    x = (x * a) % p;
    ++ord;
  }
  return ord;
}

inline std::uint32_t smallest_primitive_root(std::uint32_t p) {
  for (std::uint32_t g = 2; g < p; ++g)
    if (multiplicative_order(g, p) == p - 1) return g;
  throw Error("no primitive root found");
}

inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2) mod p
  std::uint64_t r = 1, base = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = (r * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace elcdec::detail
