#pragma once

#include <optional>
#include <vector>

#include "meminductor/device.hpp"
#include "meminductor/waveform.hpp"

namespace meminductor {

/// One point of an m-H loop. The field is taken proportional to the coil
/// current with unit constant, so `h` carries the drive value itself.
struct LoopSample {
  double h;
  double m;
};

struct LoopMetrics {
  double area = 0.0;
  std::optional<double> hc_up;    // field at the upward m = 0 crossing
  std::optional<double> hc_down;  // field at the downward m = 0 crossing
};

enum class Branch { Ascending, Descending };

struct LoopOptions {
  int cycles = 2;
  int samples_per_cycle = 400;
  /// Length of one cycle. Defaults to the drive period; required for
  /// non-periodic drives.
  std::optional<double> cycle_span;
};

/// Integrates the magnetization rate law under `drive` (amperes) for
/// `cycles` spans and returns the last one, endpoints included, as
/// samples_per_cycle + 1 points.
std::vector<LoopSample> simulate_mh_loop(const Waveform& drive, const CoilCoreParams& params,
                                         const LoopOptions& options);

/// tanh(a (h - hc)) on the ascending branch, tanh(a (h + hc)) on the
/// descending one.
double tanh_branch_model(double h, double a, double hc, Branch branch);

/// Shoelace area and interpolated coercive fields. Throws Error(Shape) for
/// fewer than 8 samples or an open curve.
LoopMetrics loop_metrics(const std::vector<LoopSample>& loop, double closure_tolerance = 1e-3);

struct TanhBranchFit {
  double a = 0.0;
  double hc = 0.0;
  double max_abs_dev = 0.0;
  double rms_dev = 0.0;
};

/// Least-squares fit of tanh_branch_model to a loop. Each sample is compared
/// with the branch given by the direction the field is moving at that point.
TanhBranchFit fit_tanh_branches(const std::vector<LoopSample>& loop);

}  // namespace meminductor
