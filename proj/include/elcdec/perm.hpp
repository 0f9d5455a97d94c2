#pragma once

// Permutations on code coordinates, built-in PSL(2,p) generators for
// extended quadratic residue codes, and a product-replacement sampler for
// drawing random group elements.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "elcdec/errors.hpp"
#include "elcdec/gf2.hpp"
#include "elcdec/numtheory.hpp"

namespace elcdec {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (auto v : img_) {
      if (v >= img_.size() || seen[v]) throw Error("Permutation: images are not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::uint32_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint32_t>(i);
    return Permutation(std::move(img));
  }

  std::size_t size() const { return img_.size(); }
  std::uint32_t operator()(std::uint32_t i) const { return img_[i]; }
  const std::vector<std::uint32_t>& images() const { return img_; }

  // (a.compose(b))(x) = a(b(x))
  Permutation compose(const Permutation& b) const {
    std::vector<std::uint32_t> img(size());
    for (std::size_t i = 0; i < size(); ++i) img[i] = img_[b.img_[i]];
    Permutation out;
    out.img_ = std::move(img);
    return out;
  }

  Permutation inverse() const {
    std::vector<std::uint32_t> img(size());
    for (std::size_t i = 0; i < size(); ++i) img[img_[i]] = static_cast<std::uint32_t>(i);
    Permutation out;
    out.img_ = std::move(img);
    return out;
  }

  // out[pi(i)] = v[i]
  template <typename T>
  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[img_[i]] = v[i];
    return out;
  }

  BitVec apply(const BitVec& v) const {
    BitVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v.get(i)) out.set(img_[i], true);
    return out;
  }

  std::size_t order() const {
    Permutation p = *this;
    Permutation id = identity(size());
    std::size_t ord = 1;
    while (!(p == id)) {
      p = p.compose(*this);
      ++ord;
    }
    return ord;
  }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> img_;
};

struct GeneratorSet {
  std::size_t n = 0;
  std::vector<Permutation> gens;
  std::string source;
};

// True iff pi maps every row of G into the null space of H.
inline bool preserves_code(const Permutation& pi, const BinMatrix& g, const BinMatrix& h) {
  for (std::size_t r = 0; r < g.rows(); ++r) {
    BitVec permuted = pi.apply(g.row_as_vec(r));
    if (!syndrome_is_zero(permuted, h)) return false;
  }
  return true;
}

// Three generators of PSL(2,p) acting on the p+1 coordinates of an extended
// QR code: residues 0..p-1 plus position p as the point at infinity.
//   S: y -> y + 1        (infinity fixed)
//   V: y -> rho^2 y      (0 and infinity fixed; rho the smallest primitive root)
//   T: y -> -1/y         (0 and infinity swapped)
inline GeneratorSet psl2_generators(std::uint32_t p) {
  if (!detail::is_prime(p) || p == 2)
    throw NotQrPrime(std::to_string(p) + " is not an odd prime");
  {
    auto qr = detail::quadratic_residues(p);
    if (!qr[2 % p]) throw NotQrPrime("2 is not a quadratic residue mod " + std::to_string(p));
  }
  const std::uint32_t inf = p;
  const std::size_t n = p + 1;

  std::vector<std::uint32_t> s(n), v(n), t(n);
  const std::uint64_t rho = detail::smallest_primitive_root(p);
  const std::uint64_t rho2 = (rho * rho) % p;
  for (std::uint32_t y = 0; y < p; ++y) {
    s[y] = (y + 1) % p;
    v[y] = static_cast<std::uint32_t>((rho2 * y) % p);
    t[y] = y == 0 ? inf : static_cast<std::uint32_t>((p - detail::mod_inverse(y, p)) % p);
  }
  s[inf] = inf;
  v[inf] = inf;
  t[inf] = 0;

  GeneratorSet out;
  out.n = n;
  out.gens = {Permutation(std::move(s)), Permutation(std::move(v)), Permutation(std::move(t))};
  out.source = "psl2(" + std::to_string(p) + ")";
  return out;
}

struct SamplerOptions {
  std::size_t slots = 10;
  std::size_t burn_in = 60;
  std::size_t steps_per_sample = 20;
};

// Product-replacement walk over the generated group. Every emitted element
// is a product of generators, so code preservation is exact by construction.
class AutSampler {
 public:
  AutSampler(const GeneratorSet& gens, std::uint64_t seed, SamplerOptions opt = {})
      : opt_(opt), rng_(seed) {
    if (gens.n == 0) throw Error("AutSampler: empty generator set");
    slots_.reserve(opt_.slots);
    for (std::size_t i = 0; i < opt_.slots; ++i) {
      if (gens.gens.empty())
        slots_.push_back(Permutation::identity(gens.n));
      else
        slots_.push_back(gens.gens[i % gens.gens.size()]);
    }
    last_ = 0;
    for (std::size_t i = 0; i < opt_.burn_in; ++i) step();
  }

  Permutation sample() {
    for (std::size_t i = 0; i < opt_.steps_per_sample; ++i) step();
    return slots_[last_];
  }

 private:
  void step() {
    if (slots_.size() < 2) return;
    std::size_t i = rng_() % slots_.size();
    std::size_t j = rng_() % (slots_.size() - 1);
    if (j >= i) ++j;
    if (rng_() & 1)
      slots_[i] = slots_[i].compose(slots_[j]);
    else
      slots_[i] = slots_[i].compose(slots_[j].inverse());
    last_ = i;
  }

  SamplerOptions opt_;
  std::mt19937_64 rng_;
  std::vector<Permutation> slots_;
  std::size_t last_ = 0;
};

}  // namespace elcdec
