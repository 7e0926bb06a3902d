#pragma once

#include <vector>

#include "meminductor/waveform.hpp"

namespace meminductor {

/// Coil-core meminductor constants.
///
/// The magnetization is m = M_Z / M_S and follows the reduced
/// Landau-Lifshitz-Gilbert rate law dm/dt = i (1 - m^2) / sw_eff, whose
/// solution along a charge history q(t) is m = tanh(q / sw_eff + atanh(m0)).
///
/// `sw_eff` is the switching coefficient expressed as a charge. The
/// field-time form (Oe * us) needs the coil's turns per length to convert,
/// so it is folded into this single effective SI constant.
class CoilCoreParams {
 public:
  static constexpr double kDefaultFluxScale = 1e-3;  // Wb
  static constexpr double kDefaultSwEff = 0.2e-6;    // A*s
  static constexpr double kDefaultM0 = -0.964;

  /// Throws Error(Domain) unless flux_scale > 0, sw_eff > 0 and |m0| < 1.
  CoilCoreParams(double flux_scale = kDefaultFluxScale, double sw_eff = kDefaultSwEff,
                 double m0 = kDefaultM0);

  [[nodiscard]] double flux_scale() const noexcept { return flux_scale_; }
  [[nodiscard]] double sw_eff() const noexcept { return sw_eff_; }
  [[nodiscard]] double m0() const noexcept { return m0_; }
  /// Integration constant atanh(m0).
  [[nodiscard]] double offset() const noexcept { return offset_; }

  bool operator==(const CoilCoreParams&) const = default;

 private:
  double flux_scale_;
  double sw_eff_;
  double m0_;
  double offset_;
};

struct MagnetizationSample {
  double t;  // s
  double m;
  double q;  // C
};

/// dm/dt = i (1 - m^2) / sw_eff. Exactly zero at |m| = 1.
double magnetization_rate(double m, double i, double sw_eff);

/// m(q) = tanh(q / sw_eff + atanh(m0)), with q = 0 at t = 0.
double magnetization_closed_form(double q, const CoilCoreParams& params);

/// Fixed-step RK4 integration of (m, q) under current drive `current`
/// (amperes). Samples every step from t = 0; the last sample is exactly at
/// t_stop (the final step is shortened if dt does not divide t_stop).
std::vector<MagnetizationSample> integrate_magnetization(const Waveform& current,
                                                         const CoilCoreParams& params,
                                                         double dt, double t_stop);

/// phi(q) = flux_scale * (tanh(q / sw_eff + atanh(m0)) - m0), so phi(0) = 0.
double flux_of_charge(double q, const CoilCoreParams& params);

/// d phi / d q = (flux_scale / sw_eff) * sech^2(q / sw_eff + atanh(m0)).
double flux_slope(double q, const CoilCoreParams& params);

/// Terminal voltage drop v = d phi / dt = flux_slope(q) * i, passive sign
/// convention (positive in the direction of positive current).
double element_voltage(double q, double i, const CoilCoreParams& params);

struct RhoL {
  double rho;  // Wb*s
  double l;    // H
};

/// rho = integral of phi dt along the constant-current trajectory q = i0 t,
/// and L = d rho / d q = phi(q) / i0. Requires i0 > 0 and q >= 0.
RhoL rho_and_L_constant_current(double q, double i0, const CoilCoreParams& params);

/// The literal expression flux_scale * ln cosh(tanh(q/sw + atanh m0) - m0).
/// It is not an antiderivative of phi; kept only to compare against
/// rho_and_L_constant_current in reports.
double rho_as_printed(double q, const CoilCoreParams& params);

/// ln(cosh(x)) without overflow for large |x|.
double log_cosh(double x);

}  // namespace meminductor
