#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sumfree/counting.hpp"
#include "sumfree/errors.hpp"
#include "sumfree/parallel.hpp"

// Maximization of the exponent
//   h/l = (x H(1/x) - 2x/(1+delta)) + (y H(1/y) - 2y/(1+delta) + c delta) q + 2 y q (H(z) - z)
// over x >= 1, 0 <= q <= 2x, y >= 1, 0 <= z <= 1, where q = p/l.

namespace sumfree::opt {

struct Point {
  double x = 1.0;
  double q = 0.0;  // p / l
  double y = 1.0;
  double z = 0.0;
};

inline constexpr double kDomainSlack = 1e-12;

inline bool in_domain(const Point& p) {
  return p.x >= 1.0 - kDomainSlack && p.y >= 1.0 - kDomainSlack && p.z >= -kDomainSlack &&
         p.z <= 1.0 + kDomainSlack && p.q >= -kDomainSlack && p.q <= 2.0 * p.x + kDomainSlack;
}

// x H(1/x) - rho x, the building block of every axis.
inline double g_value(double t, double rho) { return t * entropy(1.0 / t) - rho * t; }

inline double f_value(double z) { return entropy(z) - z; }

/// h / l at `p`. `c` is the coefficient of the delta-order slack term.
inline double evaluate_h(const Point& p, double delta, double c = 0.0) {
  require(in_domain(p), "point outside the domain x >= 1, 0 <= q <= 2x, y >= 1, 0 <= z <= 1");
  require(delta >= 0.0, "delta must be >= 0");
  const double x = std::max(p.x, 1.0), y = std::max(p.y, 1.0);
  const double z = std::min(std::max(p.z, 0.0), 1.0);
  const double k = 2.0 / (1.0 + delta);
  return (x * entropy(1.0 / x) - k * x) + (y * entropy(1.0 / y) - k * y + c * delta) * p.q +
         2.0 * y * p.q * f_value(z);
}

// ---------------------------------------------------------------------------
// One-dimensional maximizations

struct LineOptimum {
  double argmax = 0.0;
  double value = 0.0;
  double argmax_numeric = 0.0;  // independent line search
  double value_numeric = 0.0;
};

/// g(t) = t H(1/t) - rho t on t >= 1; maximal where log2(t/(t-1)) = rho.
inline LineOptimum maximize_g(double rho) {
  require(rho > 0.0, "rho must be > 0");
  LineOptimum out;
  const double two = std::exp2(rho);
  out.argmax = two / (two - 1.0);
  out.value = g_value(out.argmax, rho);
  // g'(t) = log2(t/(t-1)) - rho decreases from +inf at 1+ to -rho as t grows
  double lo = 1.0, hi = 2.0;
  while (std::log2(hi / (hi - 1.0)) - rho > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (std::log2(mid / (mid - 1.0)) - rho > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.argmax_numeric = 0.5 * (lo + hi);
  out.value_numeric = g_value(out.argmax_numeric, rho);
  return out;
}

/// f(z) = H(z) - z on [0, 1]; f'(z) = log2((1-z)/z) - 1 vanishes at 1/3.
inline LineOptimum maximize_f() {
  LineOptimum out;
  out.argmax = 1.0 / 3.0;
  out.value = std::log2(3.0) - 1.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (std::log2((1.0 - mid) / mid) - 1.0 > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.argmax_numeric = 0.5 * (lo + hi);
  out.value_numeric = f_value(out.argmax_numeric);
  return out;
}

// ---------------------------------------------------------------------------
// Full maximization

struct OptimumReport {
  Point argmax;
  double max_value_per_ell = 0.0;
  double delta = 0.0;
  double slack_coefficient = 0.0;
  std::string method;
  double tolerance = 0.0;
  bool p_on_upper_boundary = false;  // q = 2x
};

/**
 * Backward decomposition: z* = 1/3 maximizes H(z) - z; the q-coefficient is
 * then g(y) with rho_y = 2/(1+delta) - 2 f(1/3), maximized at y*; a positive
 * maximum pushes q to 2x, leaving g(x) with rho_x = 2/(1+delta) - 2 (g_y* + c delta).
 */
inline OptimumReport maximize_h_closed_form(double delta, double c = 0.0) {
  require(delta >= 0.0 && delta <= 0.01, "delta must be in [0, 0.01]");
  OptimumReport rep;
  rep.delta = delta;
  rep.slack_coefficient = c;
  rep.method = "closed-form";
  rep.tolerance = 1e-12;
  const LineOptimum f = maximize_f();
  const double k = 2.0 / (1.0 + delta);
  const LineOptimum gy = maximize_g(k - 2.0 * f.value);
  const double coefficient = gy.value + c * delta;
  rep.argmax.z = f.argmax;
  rep.argmax.y = gy.argmax;
  const double rho_x = coefficient > 0.0 ? k - 2.0 * coefficient : k;
  require(rho_x > 0.0, "exponent is unbounded in x for this delta and slack coefficient");
  const LineOptimum gx = maximize_g(rho_x);
  rep.argmax.x = gx.argmax;
  rep.argmax.q = coefficient > 0.0 ? 2.0 * gx.argmax : 0.0;
  rep.p_on_upper_boundary = coefficient > 0.0;
  rep.max_value_per_ell = evaluate_h(rep.argmax, delta, c);
  return rep;
}

struct GridConfig {
  int points = 400;  // per axis
  int rounds = 5;    // local refinements, each 10x finer
  int local_half_width = 10;
  double x_lo = 1.0, x_hi = 8.0;
  double y_lo = 1.0, y_hi = 8.0;
};

namespace detail {

struct GridBest {
  double value = -INFINITY;
  Point at;
  bool found = false;
};

// h = a(x) + q (b(y) + 2 y f(z)), affine in q, so q is taken at 0 or 2x.
// Slabs over the x axis, merged in index order; ties keep the earlier slab.
inline GridBest grid_pass(const std::vector<double>& xs, const std::vector<double>& ys, const std::vector<double>& zs,
                          double delta, double c, unsigned threads) {
  const double k = 2.0 / (1.0 + delta);
  std::vector<double> a(xs.size()), b(ys.size()), twoy(ys.size()), f(zs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) a[i] = xs[i] * entropy(1.0 / xs[i]) - k * xs[i];
  for (std::size_t j = 0; j < ys.size(); ++j) {
    b[j] = ys[j] * entropy(1.0 / ys[j]) - k * ys[j] + c * delta;
    twoy[j] = 2.0 * ys[j];
  }
  for (std::size_t l = 0; l < zs.size(); ++l) f[l] = f_value(zs[l]);
  std::vector<GridBest> slabs(xs.size());
  run_shards(xs.size(), threads, [&](std::size_t i) {
    GridBest best;
    for (int qi = 0; qi < 2; ++qi) {
      const double q = qi == 0 ? 0.0 : 2.0 * xs[i];
      for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t l = 0; l < zs.size(); ++l) {
          const double v = a[i] + q * (b[j] + twoy[j] * f[l]);
          if (!best.found || v > best.value) {
            best = {v, {xs[i], q, ys[j], zs[l]}, true};
          }
        }
    }
    slabs[i] = best;
  });
  GridBest best;
  for (const GridBest& s : slabs)
    if (s.found && (!best.found || s.value > best.value)) best = s;
  return best;
}

inline std::vector<double> axis(double lo, double hi, int points) {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return out;
}

inline std::vector<double> local_axis(double centre, double step, int half, double lo, double hi) {
  std::vector<double> out;
  for (int i = -half; i <= half; ++i) {
    const double v = centre + step * i;
    if (v >= lo - kDomainSlack && v <= hi + kDomainSlack) out.push_back(std::min(std::max(v, lo), hi));
  }
  return out;
}

}  // namespace detail

inline OptimumReport maximize_h_grid(double delta, double c = 0.0, unsigned threads = 1, const GridConfig& cfg = {}) {
  require(delta >= 0.0 && delta <= 0.01, "delta must be in [0, 0.01]");
  require(cfg.points >= 2 && cfg.rounds >= 0, "grid needs >= 2 points per axis");
  auto xs = detail::axis(cfg.x_lo, cfg.x_hi, cfg.points);
  auto ys = detail::axis(cfg.y_lo, cfg.y_hi, cfg.points);
  auto zs = detail::axis(0.0, 1.0, cfg.points);
  double sx = (cfg.x_hi - cfg.x_lo) / (cfg.points - 1);
  double sy = (cfg.y_hi - cfg.y_lo) / (cfg.points - 1);
  double sz = 1.0 / (cfg.points - 1);
  detail::GridBest best = detail::grid_pass(xs, ys, zs, delta, c, threads);
  for (int round = 0; round < cfg.rounds; ++round) {
    sx /= 10.0;
    sy /= 10.0;
    sz /= 10.0;
    xs = detail::local_axis(best.at.x, sx, cfg.local_half_width, cfg.x_lo, cfg.x_hi);
    ys = detail::local_axis(best.at.y, sy, cfg.local_half_width, cfg.y_lo, cfg.y_hi);
    zs = detail::local_axis(best.at.z, sz, cfg.local_half_width, 0.0, 1.0);
    const detail::GridBest next = detail::grid_pass(xs, ys, zs, delta, c, threads);
    if (next.value >= best.value) best = next;
  }
  OptimumReport rep;
  rep.argmax = best.at;
  rep.max_value_per_ell = best.value;
  rep.delta = delta;
  rep.slack_coefficient = c;
  rep.method = "grid+refine";
  rep.tolerance = std::max({sx, sy, sz});
  rep.p_on_upper_boundary = best.at.q > 0.0 && std::fabs(best.at.q - 2.0 * best.at.x) <= 1e-12;
  return rep;
}

// ---------------------------------------------------------------------------
// Gradient check at an optimum with q = 2x

struct GradientCheck {
  double step = 1e-6;
  double d_x = 0.0;  // total derivative along the boundary q = 2x
  double d_y = 0.0;
  double d_z = 0.0;
  double d_q_inward = 0.0;  // derivative in the direction of decreasing q
  bool passes = false;
};

inline GradientCheck gradient_check(const Point& p, double delta, double c = 0.0, double step = 1e-6,
                                    double limit = 1e-4) {
  GradientCheck g;
  g.step = step;
  auto h = [&](Point q) { return evaluate_h(q, delta, c); };
  auto moved = [&](auto mutate) {
    Point up = p, down = p;
    mutate(up, step);
    mutate(down, -step);
    return (h(up) - h(down)) / (2.0 * step);
  };
  g.d_x = moved([](Point& q, double s) {
    q.x += s;
    q.q = 2.0 * q.x;
  });
  g.d_y = moved([](Point& q, double s) { q.y += s; });
  g.d_z = moved([](Point& q, double s) { q.z += s; });
  Point in = p;
  in.q -= step;
  g.d_q_inward = (h(in) - h(p)) / step;
  g.passes = std::fabs(g.d_x) < limit && std::fabs(g.d_y) < limit && std::fabs(g.d_z) < limit &&
             g.d_q_inward <= limit;
  return g;
}

/// Both methods and their agreement, as run by the `opt` verb.
struct OptimizationRun {
  OptimumReport closed_form;
  OptimumReport grid;
  GradientCheck gradient;
  double argmax_gap = 0.0;  // max coordinate difference over x, y, z
  double value_gap = 0.0;
  bool agree = false;
};

inline OptimizationRun maximize_h(double delta, double c = 0.0, unsigned threads = 1, double value_tol = 1e-6,
                                  double argmax_tol = 1e-4) {
  OptimizationRun run;
  run.closed_form = maximize_h_closed_form(delta, c);
  run.grid = maximize_h_grid(delta, c, threads);
  run.gradient = gradient_check(run.closed_form.argmax, delta, c);
  const Point& a = run.closed_form.argmax;
  const Point& b = run.grid.argmax;
  run.argmax_gap = std::max({std::fabs(a.x - b.x), std::fabs(a.y - b.y), std::fabs(a.z - b.z)});
  run.value_gap = std::fabs(run.closed_form.max_value_per_ell - run.grid.max_value_per_ell);
  run.agree = run.argmax_gap <= argmax_tol && run.value_gap <= value_tol;
  return run;
}

}  // namespace sumfree::opt
