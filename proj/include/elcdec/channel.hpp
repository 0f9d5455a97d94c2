#pragma once

// BPSK over AWGN with Eb/N0 bookkeeping: 0 -> +1, 1 -> -1, unit symbol
// energy, N0 = 2 sigma^2. Positive LLR favors bit 0.

#include <cmath>
#include <span>
#include <vector>

#include "elcdec/errors.hpp"
#include "elcdec/gf2.hpp"
#include "elcdec/rng.hpp"

namespace elcdec {

inline double sigma_from_ebn0(double ebn0_db, double rate) {
  if (rate <= 0.0 || rate > 1.0) throw Error("sigma_from_ebn0: rate outside (0,1]");
  return 1.0 / std::sqrt(2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

struct ChannelConfig {
  double ebn0_db = 0.0;
  double rate = 0.5;
  double sigma = 1.0;

  static ChannelConfig make(double ebn0_db, double rate) {
    return {ebn0_db, rate, sigma_from_ebn0(ebn0_db, rate)};
  }
};

inline std::vector<double> transmit(const BitVec& c, double sigma, FrameRng& rng) {
  std::vector<double> y(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    y[i] = (c.get(i) ? -1.0 : 1.0) + sigma * rng.gaussian();
  return y;
}

inline std::vector<double> llr(std::span<const double> y, double sigma) {
  if (sigma <= 0.0) throw Error("llr: sigma must be positive");
  const double scale = 2.0 / (sigma * sigma);
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = scale * y[i];
  return out;
}

inline BitVec encode(const BinMatrix& g, const BitVec& u) {
  if (u.size() != g.rows()) throw Error("encode: info length != k");
  BitVec c(g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    if (u.get(i)) c.xor_with(g.row(i));
  return c;
}

// x < 0 -> 1, ties decode to 0.
inline BitVec hard_decision(std::span<const double> x) {
  BitVec c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0.0) c.set(i, true);
  return c;
}

}  // namespace elcdec
