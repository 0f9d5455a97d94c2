#pragma once

// Monte Carlo FER/complexity harness: run (code, decoder, Eb/N0) points
// until enough frame errors accumulate, with frame-indexed seeding so the
// result is byte-identical for any worker count.

#include <cassert>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "elcdec/channel.hpp"
#include "elcdec/codes.hpp"
#include "elcdec/decode.hpp"
#include "elcdec/perm.hpp"
#include "elcdec/tanner.hpp"

namespace elcdec {

enum class DecoderKind { spa, spa_pd, spa_elc, spa_elc_undamped };

inline const char* to_string(DecoderKind k) {
  switch (k) {
    case DecoderKind::spa: return "spa";
    case DecoderKind::spa_pd: return "spa-pd";
    case DecoderKind::spa_elc: return "spa-elc";
    case DecoderKind::spa_elc_undamped: return "spa-elc-undamped";
  }
  return "?";
}

inline DecoderKind parse_decoder_kind(const std::string& s) {
  if (s == "spa") return DecoderKind::spa;
  if (s == "spa-pd" || s == "spa_pd") return DecoderKind::spa_pd;
  if (s == "spa-elc" || s == "spa_elc") return DecoderKind::spa_elc;
  if (s == "spa-elc-undamped" || s == "spa_elc_undamped")
    return DecoderKind::spa_elc_undamped;
  throw Error("unknown decoder '" + s + "'");
}

struct SimConfig {
  CodeSpec code;
  DecoderKind decoder = DecoderKind::spa;
  DecodeParams params;
  std::vector<double> ebn0_db;
  std::uint64_t min_frame_errors = 100;
  std::uint64_t max_frames = 100'000'000;
  std::uint64_t master_seed = 1;
  unsigned threads = 1;
  bool random_codewords = false;
  std::optional<GeneratorSet> generators;  // required for spa-pd
};

struct FerPoint {
  double ebn0_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t undetected = 0;
  double fer = 0.0;
  double avg_spa_messages = 0.0;
  double avg_checkmsg_only = 0.0;
  double avg_iterations = 0.0;
  double avg_elc_ops = 0.0;
  double wallclock_s = 0.0;
  bool budget_exhausted = false;  // max_frames hit before min_frame_errors
};

namespace detail {

struct FrameOutcome {
  bool error = false;
  bool undetected = false;
  std::uint64_t spa_messages = 0;
  std::uint64_t checkmsg_only = 0;
  std::uint64_t iterations = 0;
  std::uint64_t elc_ops = 0;
};

struct PointContext {
  const SimConfig* cfg;
  TannerGraph base_graph;  // standard form
  BinMatrix original_h;
  BinMatrix generator;
  double sigma = 0.0;
};

inline FrameOutcome run_frame(const PointContext& ctx, std::uint64_t frame_idx) {
  const SimConfig& cfg = *ctx.cfg;
  FrameRng rng(cfg.master_seed, frame_idx);

  BitVec sent(ctx.base_graph.bit_count());
  if (cfg.random_codewords) {
    BitVec u(ctx.generator.rows());
    for (std::size_t i = 0; i < u.size(); ++i)
      if (rng.next_u64() & 1) u.set(i, true);
    sent = encode(ctx.generator, u);
  }
  std::vector<double> y = transmit(sent, ctx.sigma, rng);

  DecodeResult res;
  switch (cfg.decoder) {
    case DecoderKind::spa: {
      res = spa(y, ctx.base_graph, static_cast<unsigned>(cfg.params.total_iterations()),
                ctx.sigma, cfg.params);
      break;
    }
    case DecoderKind::spa_pd: {
      AutSampler sampler(*cfg.generators, rng.next_u64());
      res = spa_pd(y, ctx.base_graph, cfg.params, sampler, ctx.sigma);
      break;
    }
    case DecoderKind::spa_elc: {
      TannerGraph tg = ctx.base_graph;
      res = spa_elc(y, tg, cfg.params, ctx.sigma, rng);
      break;
    }
    case DecoderKind::spa_elc_undamped: {
      TannerGraph tg = ctx.base_graph;
      DecodeParams up = undamped_elc_params(cfg.params);
      res = spa_elc(y, tg, up, ctx.sigma, rng);
      break;
    }
  }

  FrameOutcome out;
  out.spa_messages = res.spa_messages;
  out.checkmsg_only = res.checkmsg_only;
  out.iterations = res.iterations;
  out.elc_ops = res.elc_ops;
  if (res.converged) {
    // converged words are codewords of the original code as well
    assert(syndrome_is_zero(res.word, ctx.original_h));
    out.error = !(res.word == sent);
    out.undetected = out.error;
  } else {
    out.error = true;
  }
  return out;
}

}  // namespace detail

inline detail::PointContext make_point_context(const SimConfig& cfg, double ebn0_db) {
  detail::PointContext ctx;
  ctx.cfg = &cfg;
  ctx.original_h = cfg.code.H;
  BinMatrix h = cfg.code.H;
  bool already_standard = true;
  try {
    ctx.base_graph = TannerGraph::from_matrix(h);
  } catch (const Error&) {
    already_standard = false;
  }
  if (!already_standard) {
    auto [hs, info] = standard_form(h);
    ctx.base_graph = TannerGraph::from_matrix(hs, info);
  }
  ctx.generator = generator_from_h(cfg.code.H);
  ctx.sigma = sigma_from_ebn0(ebn0_db, cfg.code.rate());
  if (cfg.decoder == DecoderKind::spa_pd && !cfg.generators)
    throw Error("spa-pd requires an automorphism generator set");
  return ctx;
}

// Frames are processed in fixed-size chunks; workers split a chunk by static
// stride and results are reduced in frame order, so stopping decisions and
// all aggregates are independent of the worker count.
inline FerPoint run_point(const SimConfig& cfg, double ebn0_db) {
  const auto t_start = std::chrono::steady_clock::now();
  detail::PointContext ctx = make_point_context(cfg, ebn0_db);

  constexpr std::uint64_t kChunk = 1024;
  const unsigned workers = std::max(1u, cfg.threads);

  FerPoint pt;
  pt.ebn0_db = ebn0_db;
  std::uint64_t sum_msgs = 0, sum_checkmsgs = 0, sum_iters = 0, sum_elcs = 0;

  std::vector<detail::FrameOutcome> chunk(kChunk);
  std::uint64_t base = 0;
  bool done = false;
  while (!done) {
    const std::uint64_t count = std::min<std::uint64_t>(kChunk, cfg.max_frames - base);
    if (count == 0) {
      pt.budget_exhausted = true;
      break;
    }
    if (workers == 1) {
      for (std::uint64_t i = 0; i < count; ++i)
        chunk[i] = detail::run_frame(ctx, base + i);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          for (std::uint64_t i = w; i < count; i += workers)
            chunk[i] = detail::run_frame(ctx, base + i);
        });
      for (auto& th : pool) th.join();
    }
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto& fo = chunk[i];
      ++pt.frames;
      pt.frame_errors += fo.error ? 1 : 0;
      pt.undetected += fo.undetected ? 1 : 0;
      sum_msgs += fo.spa_messages;
      sum_checkmsgs += fo.checkmsg_only;
      sum_iters += fo.iterations;
      sum_elcs += fo.elc_ops;
      if (pt.frame_errors >= cfg.min_frame_errors) {
        done = true;
        break;
      }
    }
    base += count;
    if (!done && base >= cfg.max_frames) {
      pt.budget_exhausted = pt.frame_errors < cfg.min_frame_errors;
      done = true;
    }
  }

  if (pt.frames > 0) {
    const double f = static_cast<double>(pt.frames);
    pt.fer = static_cast<double>(pt.frame_errors) / f;
    pt.avg_spa_messages = static_cast<double>(sum_msgs) / f;
    pt.avg_checkmsg_only = static_cast<double>(sum_checkmsgs) / f;
    pt.avg_iterations = static_cast<double>(sum_iters) / f;
    pt.avg_elc_ops = static_cast<double>(sum_elcs) / f;
  }
  pt.wallclock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return pt;
}

inline std::vector<FerPoint> run_curve(const SimConfig& cfg) {
  std::vector<FerPoint> out;
  out.reserve(cfg.ebn0_db.size());
  for (double e : cfg.ebn0_db) out.push_back(run_point(cfg, e));
  return out;
}

inline constexpr const char* kCsvHeader =
    "code,decoder,p,I1,I2,I3,alpha0,ebn0_db,frames,frame_errors,undetected,fer,"
    "avg_spa_messages,avg_checkmsg_only,avg_iterations,avg_elc_ops,seed";

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

inline std::string csv_row(const SimConfig& cfg, const FerPoint& pt) {
  std::ostringstream os;
  os << cfg.code.name << ',' << to_string(cfg.decoder) << ',' << cfg.params.p << ','
     << cfg.params.i1 << ',' << cfg.params.i2 << ',' << cfg.params.i3 << ','
     << detail::fmt_double(cfg.params.alpha0) << ',' << detail::fmt_double(pt.ebn0_db)
     << ',' << pt.frames << ',' << pt.frame_errors << ',' << pt.undetected << ','
     << detail::fmt_double(pt.fer) << ',' << detail::fmt_double(pt.avg_spa_messages)
     << ',' << detail::fmt_double(pt.avg_checkmsg_only) << ','
     << detail::fmt_double(pt.avg_iterations) << ','
     << detail::fmt_double(pt.avg_elc_ops) << ',' << cfg.master_seed;
  return os.str();
}

inline std::string to_csv(const SimConfig& cfg, const std::vector<FerPoint>& points) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& pt : points) out += csv_row(cfg, pt) + "\n";
  return out;
}

// gnuplot-ready two-column data, one file per subfigure
inline std::string to_gnuplot_fer(const std::vector<FerPoint>& points) {
  std::string out;
  for (const auto& pt : points)
    out += detail::fmt_double(pt.ebn0_db) + " " + detail::fmt_double(pt.fer) + "\n";
  return out;
}

inline std::string to_gnuplot_messages(const std::vector<FerPoint>& points) {
  std::string out;
  for (const auto& pt : points)
    out += detail::fmt_double(pt.ebn0_db) + " " + detail::fmt_double(pt.avg_spa_messages) +
           "\n";
  return out;
}

struct SweepEntry {
  unsigned p = 0;
  std::vector<FerPoint> points;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  // per Eb/N0 point: p minimizing (fer, avg_spa_messages)
  std::vector<std::pair<double, unsigned>> best_p;
};

inline SweepResult sweep_p(const SimConfig& cfg, const std::vector<unsigned>& p_values) {
  if (cfg.decoder != DecoderKind::spa_elc && cfg.decoder != DecoderKind::spa_elc_undamped)
    throw Error("sweep_p: decoder must be spa-elc");
  for (std::size_t a = 0; a < p_values.size(); ++a)
    for (std::size_t b = a + 1; b < p_values.size(); ++b)
      if (p_values[a] == p_values[b])
        throw Error("sweep_p: duplicate p value " + std::to_string(p_values[a]));

  SweepResult out;
  for (unsigned p : p_values) {
    SimConfig c = cfg;
    c.params.p = p;
    out.entries.push_back({p, run_curve(c)});
  }
  for (std::size_t e = 0; e < cfg.ebn0_db.size(); ++e) {
    unsigned best = p_values.empty() ? 0 : p_values[0];
    const FerPoint* bp = nullptr;
    for (const auto& entry : out.entries) {
      const FerPoint& pt = entry.points[e];
      if (!bp || pt.fer < bp->fer ||
          (pt.fer == bp->fer && pt.avg_spa_messages < bp->avg_spa_messages)) {
        bp = &pt;
        best = entry.p;
      }
    }
    out.best_p.emplace_back(cfg.ebn0_db[e], best);
  }
  return out;
}

}  // namespace elcdec
