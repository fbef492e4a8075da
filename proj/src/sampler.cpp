#include "martinlab/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "martinlab/errors.hpp"

namespace martinlab {

namespace {

std::atomic<int> g_threads{0};

constexpr std::uint64_t kPilotTag = 0x70696c6f74ULL;  // substream tag for pilot runs

}  // namespace

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int threads() { return g_threads.load(); }

namespace detail {

int resolved_threads() {
  const int t = g_threads.load();
  return t > 0 ? t : omp_get_max_threads();
}

}  // namespace detail

Estimate summarize(const std::vector<double>& values, std::uint64_t seed,
                   double max_discard_fraction, const char* op_name) {
  std::uint64_t used = 0;
  double sum = 0.0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    ++used;
    sum += v;
  }
  const std::uint64_t discarded = values.size() - used;
  if (static_cast<double>(discarded) > max_discard_fraction * static_cast<double>(values.size()))
    throw reliability_error(std::string(op_name) + ": " + std::to_string(discarded) + " of " +
                            std::to_string(values.size()) + " walks hit the step budget");
  Estimate e;
  e.seed = seed;
  e.n = used;
  if (used == 0) return e;
  e.mean = sum / static_cast<double>(used);
  double ss = 0.0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    const double d = v - e.mean;
    ss += d * d;
  }
  if (used > 1)
    e.se = std::sqrt(ss / (static_cast<double>(used) - 1.0)) /
           std::sqrt(static_cast<double>(used));
  return e;
}

WalkResult walk_exit(const ProcessSpec& spec, const Domain& dom, const Vec& x, Rng& rng,
                     const WalkParams& params) {
  if (!dom.contains(x)) throw std::domain_error("walk_exit: x is not in the domain");
  if (params.max_steps < 1) throw std::invalid_argument("walk_exit: max_steps must be >= 1");
  const auto& punctures = dom.punctures();

  WalkResult result;
  Vec pos = x;
  for (int step = 0; step < params.max_steps; ++step) {
    for (const Vec& p : punctures) {
      if (dist(pos, p) < params.absorb_radius) {
        result.exit_point = p;
        result.steps = std::max(result.steps, 1);
        return result;
      }
    }
    const double rho = params.shrink * dom.inscribed_radius(pos);
    if (!(rho > 0.0)) {
      // Numerically on the boundary; can no longer take an exact step.
      result.exit_point = pos;
      result.steps = std::max(result.steps, 1);
      result.capped = true;
      return result;
    }
    result.time_weight += ball_exit_time_center(spec, rho);
    ++result.steps;
    pos += sample_ball_exit(spec, rho, rng);
    if (!dom.contains(pos)) {
      result.exit_point = pos;
      return result;
    }
  }
  result.exit_point = pos;
  result.capped = true;
  return result;
}

Estimate estimate_harmonic(const ProcessSpec& spec, const Domain& dom, const ExteriorFn& h,
                           const Vec& x, std::uint64_t n, StreamId stream,
                           const WalkParams& params) {
  if (!dom.contains(x)) throw std::domain_error("estimate_harmonic: x is not in the domain");
  std::vector<double> vals(n);
  parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t i) {
    Rng rng = stream.child(static_cast<std::uint64_t>(i)).rng();
    const WalkResult w = walk_exit(spec, dom, x, rng, params);
    vals[static_cast<std::size_t>(i)] =
        w.capped ? std::numeric_limits<double>::quiet_NaN() : h(w.exit_point);
  });
  return summarize(vals, stream.seed, params.max_capped_fraction, "estimate_harmonic");
}

Estimate estimate_exit_time(const ProcessSpec& spec, const Domain& dom, const Vec& x,
                            std::uint64_t n, StreamId stream, const WalkParams& params) {
  if (!dom.contains(x)) throw std::domain_error("estimate_exit_time: x is not in the domain");
  std::vector<double> vals(n);
  parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t i) {
    Rng rng = stream.child(static_cast<std::uint64_t>(i)).rng();
    const WalkResult w = walk_exit(spec, dom, x, rng, params);
    vals[static_cast<std::size_t>(i)] =
        w.capped ? std::numeric_limits<double>::quiet_NaN() : w.time_weight;
  });
  return summarize(vals, stream.seed, params.max_capped_fraction, "estimate_exit_time");
}

namespace {

// Green payoff of a single walk: sum of clipped step-ball Green terms, plus
// the clipped-off excess for the bias report.
struct GreenPayoff {
  double value = 0.0;
  double excess = 0.0;
  bool capped = false;
};

GreenPayoff green_walk(const ProcessSpec& spec, const Domain& dom, const Vec& x, const Vec& y,
                       double cap, Rng& rng, const WalkParams& params) {
  GreenPayoff out;
  const auto& punctures = dom.punctures();
  Vec pos = x;
  for (int step = 0; step < params.max_steps; ++step) {
    for (const Vec& p : punctures) {
      if (dist(pos, p) < params.absorb_radius) return out;
    }
    const double rho = params.shrink * dom.inscribed_radius(pos);
    if (!(rho > 0.0)) {
      out.capped = true;
      return out;
    }
    const double dy = dist(pos, y);
    if (dy < rho) {
      double g;
      if (dy == 0.0) {
        g = std::numeric_limits<double>::infinity();
      } else {
        g = ball_green(spec, rho, Vec::zero(spec.d), y - pos);
      }
      const double clipped = std::min(g, cap);
      out.value += clipped;
      out.excess += g - clipped;
    }
    pos += sample_ball_exit(spec, rho, rng);
    if (!dom.contains(pos)) return out;
  }
  out.capped = true;
  return out;
}

}  // namespace

GreenEstimate estimate_green(const ProcessSpec& spec, const Domain& dom, const Vec& x,
                             const Vec& y, std::uint64_t n, StreamId stream, double cap,
                             const WalkParams& params) {
  if (!spec.supports_ball_green())
    throw capability_error("estimate_green: requires alpha < d");
  if (!dom.contains(x)) throw std::domain_error("estimate_green: x is not in the domain");
  if (!dom.contains(y)) throw std::domain_error("estimate_green: y is not in the domain");
  if (x == y) throw std::domain_error("estimate_green: x == y");

  if (std::isnan(cap)) {
    // Calibrate the clip level as the 99.9th percentile of the raw Green
    // terms along a deterministic pilot substream.
    const std::uint64_t pilot_n = std::min<std::uint64_t>(n, 1024);
    const StreamId pilot = stream.child(kPilotTag);
    std::vector<double> terms;
    for (std::uint64_t i = 0; i < pilot_n; ++i) {
      Rng rng = pilot.child(i).rng();
      Vec pos = x;
      for (int step = 0; step < params.max_steps; ++step) {
        bool absorbed = false;
        for (const Vec& p : dom.punctures())
          if (dist(pos, p) < params.absorb_radius) absorbed = true;
        if (absorbed) break;
        const double rho = params.shrink * dom.inscribed_radius(pos);
        if (!(rho > 0.0)) break;
        const double dy = dist(pos, y);
        if (dy < rho && dy > 0.0) terms.push_back(ball_green(spec, rho, Vec::zero(spec.d), y - pos));
        pos += sample_ball_exit(spec, rho, rng);
        if (!dom.contains(pos)) break;
      }
    }
    if (terms.empty()) {
      cap = std::numeric_limits<double>::infinity();
    } else {
      std::sort(terms.begin(), terms.end());
      const std::size_t k =
          std::min(terms.size() - 1, static_cast<std::size_t>(0.999 * terms.size()));
      cap = terms[k];
    }
  }

  std::vector<double> vals(n);
  std::vector<double> excess(n);
  parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t i) {
    Rng rng = stream.child(static_cast<std::uint64_t>(i)).rng();
    const GreenPayoff p = green_walk(spec, dom, x, y, cap, rng, params);
    const std::size_t k = static_cast<std::size_t>(i);
    if (p.capped) {
      vals[k] = std::numeric_limits<double>::quiet_NaN();
      excess[k] = std::numeric_limits<double>::quiet_NaN();
    } else {
      vals[k] = p.value;
      excess[k] = p.excess;
    }
  });
  GreenEstimate g;
  g.est = summarize(vals, stream.seed, params.max_capped_fraction, "estimate_green");
  g.cap = cap;
  g.clipped_mass = summarize(excess, stream.seed, 1.0, "estimate_green").mean;
  return g;
}

}  // namespace martinlab
