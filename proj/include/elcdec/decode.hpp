#pragma once

// The three decoders. Plain SPA floods a static graph. SPA-PD interleaves
// damped restarts with random code-coordinate permutations, so the channel
// vector keeps its graph while the code "moves underneath" it. SPA-ELC keeps
// coordinates fixed and instead applies random ELC operations to the graph,
// initializing the incidences each ELC creates with damped APPs and dropping
// those it deletes.
//
// Message accounting: spa_messages counts both directions, 2E per flooding
// on a graph with E edges; checkmsg_only counts E per flooding.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "elcdec/channel.hpp"
#include "elcdec/errors.hpp"
#include "elcdec/gf2.hpp"
#include "elcdec/perm.hpp"
#include "elcdec/rng.hpp"
#include "elcdec/tanner.hpp"

namespace elcdec {

enum class ElcInitScope {
  all_new,          // damped-APP rule on every incidence an ELC creates
  complement_only,  // only the complemented region; rewired pivot-column
                    // incidences start neutral (LLR 0)
};

struct DecodeParams {
  unsigned i1 = 1;
  unsigned i2 = 1;
  unsigned i3 = 1;
  double alpha0 = 1.0;  // damping coefficient in (0, 1]
  unsigned p = 1;       // ELC operations per inner step (SPA-ELC)
  double clamp = 25.0;
  bool syndrome_stop = true;
  ElcInitScope elc_init_scope = ElcInitScope::all_new;

  std::uint64_t total_iterations() const {
    return std::uint64_t{i1} * i2 * i3;
  }
};

struct DecodeResult {
  BitVec word;
  bool converged = false;
  std::uint64_t iterations = 0;    // flooding iterations executed
  std::uint64_t spa_messages = 0;  // 2E per flooding
  std::uint64_t checkmsg_only = 0;
  std::uint64_t elc_ops = 0;
};

// alpha ramps linearly from alpha0 at t=0 to exactly 1 at t=I3-1; constant
// alpha0 when I3 = 1.
inline double damping_alpha(double alpha0, unsigned i3, unsigned t) {
  if (i3 <= 1) return alpha0;
  return alpha0 + (1.0 - alpha0) * static_cast<double>(t) / static_cast<double>(i3 - 1);
}

class DecoderState {
 public:
  DecoderState(std::size_t check_count, std::size_t bit_count)
      : m_(check_count), n_(bit_count), L(bit_count, 0.0), app(bit_count, 0.0),
        mu_b2c_(check_count * bit_count, 0.0), mu_c2b_(check_count * bit_count, 0.0) {}

  std::vector<double> L;
  std::vector<double> app;

  std::uint64_t spa_messages = 0;
  std::uint64_t checkmsg_only = 0;
  std::uint64_t flood_iterations = 0;
  std::uint64_t elc_ops = 0;

  double& b2c(std::size_t check, std::size_t bit) { return mu_b2c_[check * n_ + bit]; }
  double& c2b(std::size_t check, std::size_t bit) { return mu_c2b_[check * n_ + bit]; }
  double b2c(std::size_t check, std::size_t bit) const { return mu_b2c_[check * n_ + bit]; }
  double c2b(std::size_t check, std::size_t bit) const { return mu_c2b_[check * n_ + bit]; }

  // bit->check messages start at the bit's channel LLR; check->bit at 0.
  void init_messages(const TannerGraph& tg) {
    std::fill(mu_b2c_.begin(), mu_b2c_.end(), 0.0);
    std::fill(mu_c2b_.begin(), mu_c2b_.end(), 0.0);
    for (std::size_t j = 0; j < m_; ++j)
      tg.for_each_bit_of_check(j, [&](std::size_t i) { b2c(j, i) = L[i]; });
  }

  // One flooding: all check nodes (tanh rule), then all bit nodes plus APPs.
  void flood_iteration(const TannerGraph& tg, double clamp) {
    nb_.clear();
    for (std::size_t j = 0; j < m_; ++j) {
      nb_.clear();
      tg.for_each_bit_of_check(j, [&](std::size_t i) { nb_.push_back(i); });
      const std::size_t d = nb_.size();
      if (d == 1) {
        // empty product: the check is certain of even parity on its one bit
        c2b(j, nb_[0]) = clamp;
        continue;
      }
      th_.resize(d);
      for (std::size_t t = 0; t < d; ++t) th_[t] = std::tanh(0.5 * b2c(j, nb_[t]));
      pre_.resize(d + 1);
      suf_.resize(d + 1);
      pre_[0] = 1.0;
      for (std::size_t t = 0; t < d; ++t) pre_[t + 1] = pre_[t] * th_[t];
      suf_[d] = 1.0;
      for (std::size_t t = d; t-- > 0;) suf_[t] = suf_[t + 1] * th_[t];
      for (std::size_t t = 0; t < d; ++t) {
        double prod = pre_[t] * suf_[t + 1];
        // keep atanh away from +-1
        if (prod > kAtanhLimit) prod = kAtanhLimit;
        if (prod < -kAtanhLimit) prod = -kAtanhLimit;
        double v = 2.0 * std::atanh(prod);
        c2b(j, nb_[t]) = std::clamp(v, -clamp, clamp);
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      double sum = L[i];
      tg.for_each_check_of_bit(i, [&](std::size_t j) { sum += c2b(j, i); });
      app[i] = sum;
      tg.for_each_check_of_bit(i, [&](std::size_t j) {
        b2c(j, i) = std::clamp(sum - c2b(j, i), -clamp, clamp);
      });
    }
    spa_messages += 2 * tg.edge_count();
    checkmsg_only += tg.edge_count();
    ++flood_iterations;
  }

  BitVec hard() const { return hard_decision(app); }

  // Storage/incidence synchronization: entries at dead incidences must be
  // exactly zero. Checked in debug builds after every graph change.
  bool messages_match_incidence(const TannerGraph& tg) const {
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t i = 0; i < n_; ++i)
        if (!tg.incidence(j, i) && (b2c(j, i) != 0.0 || c2b(j, i) != 0.0)) return false;
    return true;
  }

 private:
  static constexpr double kAtanhLimit = 1.0 - 1e-15;

  std::size_t m_, n_;
  std::vector<double> mu_b2c_, mu_c2b_;
  std::vector<std::size_t> nb_;
  std::vector<double> th_, pre_, suf_;
};

namespace detail {

inline DecodeResult finish(const DecoderState& st, BitVec word, bool converged) {
  DecodeResult res;
  res.word = std::move(word);
  res.converged = converged;
  res.iterations = st.flood_iterations;
  res.spa_messages = st.spa_messages;
  res.checkmsg_only = st.checkmsg_only;
  res.elc_ops = st.elc_ops;
  return res;
}

}  // namespace detail

// Plain SPA with a flooding schedule: hard-decide and check the syndrome
// after every iteration; no initial syndrome check.
inline DecodeResult spa(std::span<const double> y, const TannerGraph& tg, unsigned T,
                        double sigma, const DecodeParams& params = {}) {
  DecoderState st(tg.check_count(), tg.bit_count());
  st.L = llr(y, sigma);
  st.init_messages(tg);
  for (unsigned t = 0; t < T; ++t) {
    st.flood_iteration(tg, params.clamp);
    BitVec c = st.hard();
    if (params.syndrome_stop && tg.syndrome_zero(c))
      return detail::finish(st, std::move(c), true);
  }
  return detail::finish(st, T > 0 ? st.hard() : hard_decision(st.L), false);
}

// Permutation decoding: I2 damped restarts per outer loop, each preceded by
// a fresh message initialization from the (permuted) channel vector; a
// random automorphism is applied to L after every restart, with theta
// accumulating the composition so the output can be mapped back.
inline DecodeResult spa_pd(std::span<const double> y, const TannerGraph& tg,
                           const DecodeParams& params, AutSampler& sampler, double sigma) {
  const std::size_t n = tg.bit_count();
  DecoderState st(tg.check_count(), n);
  const std::vector<double> base_l = llr(y, sigma);
  Permutation theta = Permutation::identity(n);
  BitVec last(n);
  Permutation last_theta = theta;  // theta in effect when `last` was taken

  for (unsigned t3 = 0; t3 < params.i3; ++t3) {
    const double alpha = damping_alpha(params.alpha0, params.i3, t3);
    st.L = base_l;
    theta = Permutation::identity(n);
    for (unsigned t2 = 0; t2 < params.i2; ++t2) {
      st.init_messages(tg);
      for (unsigned t1 = 0; t1 < params.i1; ++t1) st.flood_iteration(tg, params.clamp);
      BitVec c = st.hard();
      if (params.syndrome_stop && tg.syndrome_zero(c))
        return detail::finish(st, theta.inverse().apply(c), true);
      last = std::move(c);
      last_theta = theta;
      for (std::size_t i = 0; i < n; ++i) st.L[i] = (st.app[i] - st.L[i]) * alpha + st.L[i];
      Permutation pi = sampler.sample();
      st.L = pi.apply(st.L);
      theta = pi.compose(theta);
    }
  }
  return detail::finish(st, last_theta.inverse().apply(last), false);
}

// SPA interleaved with p random ELC operations per inner step. The graph is
// mutated in place; on return it is the graph in effect at stop time, so the
// caller can re-verify the syndrome of a converged word against it.
inline DecodeResult spa_elc(std::span<const double> y, TannerGraph& tg,
                            const DecodeParams& params, double sigma, FrameRng& rng) {
  const std::size_t n = tg.bit_count();
  DecoderState st(tg.check_count(), n);
  const std::vector<double> base_l = llr(y, sigma);
  BitVec last(n);

  for (unsigned t3 = 0; t3 < params.i3; ++t3) {
    const double alpha = damping_alpha(params.alpha0, params.i3, t3);
    st.L = base_l;
    st.init_messages(tg);
    for (unsigned t2 = 0; t2 < params.i2; ++t2) {
      for (unsigned t1 = 0; t1 < params.i1; ++t1) st.flood_iteration(tg, params.clamp);
      BitVec c = st.hard();
      if (params.syndrome_stop && tg.syndrome_zero(c))
        return detail::finish(st, std::move(c), true);
      last = std::move(c);
      for (unsigned q = 0; q < params.p; ++q) {
        const std::size_t ne = tg.eligible_edge_count();
        if (ne == 0) break;
        EdgeRef e = tg.eligible_edge(rng.below(ne));
        ElcDelta delta = tg.apply_elc(e.check, e.bit);
        ++st.elc_ops;
        for (const EdgeRef& ce : delta.created) {
          const bool damped = params.elc_init_scope == ElcInitScope::all_new ||
                              ce.bit != delta.old_pivot;
          st.b2c(ce.check, ce.bit) =
              damped ? (st.app[ce.bit] - st.L[ce.bit]) * alpha + st.L[ce.bit] : 0.0;
          st.c2b(ce.check, ce.bit) = 0.0;
        }
        for (const EdgeRef& re : delta.removed) {
          st.b2c(re.check, re.bit) = 0.0;
          st.c2b(re.check, re.bit) = 0.0;
        }
        assert(st.messages_match_incidence(tg));
      }
    }
  }
  return detail::finish(st, std::move(last), false);
}

// The undamped variant SPA-ELC(p, I1, T): alpha0 = 1, I2 = T/I1, I3 = 1.
inline DecodeParams undamped_elc_params(const DecodeParams& params) {
  DecodeParams out = params;
  out.alpha0 = 1.0;
  out.i2 = static_cast<unsigned>(params.total_iterations() / std::max(1u, params.i1));
  out.i3 = 1;
  return out;
}

}  // namespace elcdec
