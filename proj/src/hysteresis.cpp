#include "meminductor/hysteresis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "meminductor/error.hpp"
#include "rk4.hpp"

namespace meminductor {

namespace {

// Keep |di * h / sw| per RK4 substep below this so the loop shape is
// resolved far beyond plotting accuracy.
constexpr double kSubstepCharge = 0.01;

}  // namespace

std::vector<LoopSample> simulate_mh_loop(const Waveform& drive, const CoilCoreParams& params,
                                         const LoopOptions& options) {
  if (options.cycles < 1) throw Error(ErrorCode::Configuration, "mh loop: cycles must be >= 1");
  if (options.samples_per_cycle < 16) {
    throw Error(ErrorCode::Configuration, "mh loop: samples_per_cycle must be >= 16");
  }
  if (!drive.is_periodic() && options.cycles > 1) {
    throw Error(ErrorCode::Configuration, "mh loop: a non-periodic drive allows only one cycle");
  }
  double span = 0.0;
  if (options.cycle_span) {
    span = *options.cycle_span;
  } else if (auto p = drive.period()) {
    span = *p;
  } else {
    throw Error(ErrorCode::Configuration, "mh loop: cycle_span is required for a non-periodic drive");
  }
  if (!(std::isfinite(span) && span > 0.0)) {
    throw Error(ErrorCode::Configuration, "mh loop: cycle span must be > 0");
  }

  const double sample_dt = span / options.samples_per_cycle;
  const double sw = params.sw_eff();
  const double sub =
      std::max(1.0, std::ceil(drive.peak_magnitude() * sample_dt / (sw * kSubstepCharge)));
  const double total = sub * options.samples_per_cycle * options.cycles;
  if (total > detail::kMaxSteps) {
    throw Error(ErrorCode::StepOverflow, "mh loop: " + std::to_string(total) + " steps exceeds limit");
  }
  const auto substeps = static_cast<long>(sub);
  const double h = sample_dt / static_cast<double>(substeps);

  auto rhs = [&](double t, const detail::Vec<1>& x) -> detail::Vec<1> {
    return {magnetization_rate(x[0], drive.value(t), sw)};
  };

  const long n_samples = static_cast<long>(options.samples_per_cycle) * options.cycles;
  const long keep_from = n_samples - options.samples_per_cycle;
  std::vector<LoopSample> loop;
  loop.reserve(static_cast<std::size_t>(options.samples_per_cycle) + 1);

  detail::Vec<1> x{params.m0()};
  for (long s = 0; s <= n_samples; ++s) {
    const double t_sample = static_cast<double>(s) * sample_dt;
    if (s >= keep_from) loop.push_back({drive.value(t_sample), x[0]});
    if (s == n_samples) break;
    for (long k = 0; k < substeps; ++k) {
      const double t = t_sample + static_cast<double>(k) * h;
      x = detail::rk4_step<1>(rhs, t, x, h);
    }
    if (!detail::all_finite(x)) {
      throw Error(ErrorCode::Divergence, "mh loop: non-finite magnetization");
    }
  }
  return loop;
}

double tanh_branch_model(double h, double a, double hc, Branch branch) {
  return branch == Branch::Ascending ? std::tanh(a * (h - hc)) : std::tanh(a * (h + hc));
}

LoopMetrics loop_metrics(const std::vector<LoopSample>& loop, double closure_tolerance) {
  if (loop.size() < 8) throw Error(ErrorCode::Shape, "loop metrics: need at least 8 samples");
  double h_min = loop.front().h;
  double h_max = loop.front().h;
  for (const auto& s : loop) {
    h_min = std::min(h_min, s.h);
    h_max = std::max(h_max, s.h);
  }
  const double h_scale = std::max(h_max - h_min, std::numeric_limits<double>::min());
  const auto& first = loop.front();
  const auto& last = loop.back();
  if (std::abs(first.m - last.m) > closure_tolerance ||
      std::abs(first.h - last.h) > closure_tolerance * h_scale) {
    throw Error(ErrorCode::Shape, "loop metrics: curve is not closed");
  }

  LoopMetrics metrics;
  double twice_area = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k) {
    const auto& p = loop[k];
    const auto& q = loop[(k + 1) % loop.size()];
    twice_area += p.h * q.m - q.h * p.m;
  }
  metrics.area = 0.5 * std::abs(twice_area);

  for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
    const auto& p = loop[k];
    const auto& q = loop[k + 1];
    if (p.m == q.m) continue;
    const bool up = p.m < 0.0 && q.m >= 0.0;
    const bool down = p.m > 0.0 && q.m <= 0.0;
    if (!up && !down) continue;
    const double s = p.m / (p.m - q.m);
    const double hc = p.h + s * (q.h - p.h);
    if (up && !metrics.hc_up) metrics.hc_up = hc;
    if (down && !metrics.hc_down) metrics.hc_down = hc;
  }
  return metrics;
}

namespace {

struct BranchPoint {
  double h;
  double m;
  Branch branch;
};

std::vector<BranchPoint> assign_branches(const std::vector<LoopSample>& loop) {
  std::vector<BranchPoint> pts;
  pts.reserve(loop.size());
  for (std::size_t k = 0; k < loop.size(); ++k) {
    double dh = 0.0;
    if (k + 1 < loop.size()) dh = loop[k + 1].h - loop[k].h;
    if (dh == 0.0 && k > 0) dh = loop[k].h - loop[k - 1].h;
    pts.push_back({loop[k].h, loop[k].m, dh >= 0.0 ? Branch::Ascending : Branch::Descending});
  }
  return pts;
}

struct Residuals {
  double sum_sq = 0.0;
  double max_abs = 0.0;
};

Residuals residuals(const std::vector<BranchPoint>& pts, double a, double hc) {
  Residuals r;
  for (const auto& p : pts) {
    const double d = tanh_branch_model(p.h, a, hc, p.branch) - p.m;
    r.sum_sq += d * d;
    r.max_abs = std::max(r.max_abs, std::abs(d));
  }
  return r;
}

// Levenberg-Marquardt on (log a, hc) so that a stays positive.
std::array<double, 2> levenberg_marquardt(const std::vector<BranchPoint>& pts,
                                          std::array<double, 2> p) {
  double lambda = 1e-3;
  auto cost = [&](const std::array<double, 2>& x) {
    return residuals(pts, std::exp(x[0]), std::max(0.0, x[1])).sum_sq;
  };
  double current = cost(p);
  for (int iter = 0; iter < 200; ++iter) {
    double jtj[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    double jtr[2] = {0.0, 0.0};
    const double a = std::exp(p[0]);
    const double hc = std::max(0.0, p[1]);
    for (const auto& pt : pts) {
      const double sign = pt.branch == Branch::Ascending ? -1.0 : 1.0;
      const double u = pt.h + sign * hc;
      const double y = std::tanh(a * u);
      const double sech2 = 1.0 - y * y;
      const double r = y - pt.m;
      const double j0 = sech2 * u * a;  // d/d(log a)
      const double j1 = sech2 * a * sign;
      jtj[0][0] += j0 * j0;
      jtj[0][1] += j0 * j1;
      jtj[1][1] += j1 * j1;
      jtr[0] += j0 * r;
      jtr[1] += j1 * r;
    }
    jtj[1][0] = jtj[0][1];
    bool improved = false;
    for (int attempt = 0; attempt < 20 && !improved; ++attempt) {
      const double a00 = jtj[0][0] * (1.0 + lambda);
      const double a11 = jtj[1][1] * (1.0 + lambda);
      const double det = a00 * a11 - jtj[0][1] * jtj[1][0];
      if (det == 0.0 || !std::isfinite(det)) {
        lambda *= 10.0;
        continue;
      }
      const std::array<double, 2> step{-(a11 * jtr[0] - jtj[0][1] * jtr[1]) / det,
                                       -(a00 * jtr[1] - jtj[1][0] * jtr[0]) / det};
      std::array<double, 2> trial{p[0] + step[0], std::max(0.0, p[1] + step[1])};
      const double c = cost(trial);
      if (c < current) {
        const double gain = current - c;
        p = trial;
        current = c;
        lambda = std::max(lambda / 10.0, 1e-12);
        improved = true;
        if (gain < 1e-14 * (1.0 + current)) return p;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }
  return p;
}

}  // namespace

TanhBranchFit fit_tanh_branches(const std::vector<LoopSample>& loop) {
  if (loop.size() < 8) throw Error(ErrorCode::Shape, "tanh fit: need at least 8 samples");
  const auto pts = assign_branches(loop);
  double h_span = 0.0;
  for (const auto& p : pts) h_span = std::max(h_span, std::abs(p.h));
  if (h_span == 0.0) throw Error(ErrorCode::Shape, "tanh fit: loop has no field excursion");

  TanhBranchFit best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (double a_scale : {0.3, 1.0, 3.0, 10.0, 30.0, 100.0}) {
    for (double hc_frac : {0.0, 0.1, 0.5, 0.9}) {
      auto p = levenberg_marquardt(pts, {std::log(a_scale / h_span), hc_frac * h_span});
      const double a = std::exp(p[0]);
      const double hc = std::max(0.0, p[1]);
      const auto r = residuals(pts, a, hc);
      if (r.sum_sq < best_cost) {
        best_cost = r.sum_sq;
        best = {a, hc, r.max_abs, std::sqrt(r.sum_sq / static_cast<double>(pts.size()))};
      }
    }
  }
  return best;
}

}  // namespace meminductor
