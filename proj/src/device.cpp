#include "meminductor/device.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "meminductor/error.hpp"
#include "rk4.hpp"

namespace meminductor {

CoilCoreParams::CoilCoreParams(double flux_scale, double sw_eff, double m0)
    : flux_scale_(flux_scale), sw_eff_(sw_eff), m0_(m0), offset_(0.0) {
  if (!(std::isfinite(flux_scale) && flux_scale > 0.0)) {
    throw Error(ErrorCode::Domain, "coil core: flux_scale must be finite and > 0");
  }
  if (!(std::isfinite(sw_eff) && sw_eff > 0.0)) {
    throw Error(ErrorCode::Domain, "coil core: sw_eff must be finite and > 0");
  }
  if (!(std::isfinite(m0) && std::abs(m0) < 1.0)) {
    throw Error(ErrorCode::Domain, "coil core: |m0| must be < 1");
  }
  offset_ = std::atanh(m0);
}

double magnetization_rate(double m, double i, double sw_eff) {
  if (!std::isfinite(m) || !std::isfinite(i) || !std::isfinite(sw_eff)) {
    throw Error(ErrorCode::Domain, "magnetization_rate: non-finite input");
  }
  if (sw_eff <= 0.0) throw Error(ErrorCode::Domain, "magnetization_rate: sw_eff must be > 0");
  return i * (1.0 - m * m) / sw_eff;
}

double magnetization_closed_form(double q, const CoilCoreParams& params) {
  return std::tanh(q / params.sw_eff() + params.offset());
}

std::vector<MagnetizationSample> integrate_magnetization(const Waveform& current,
                                                         const CoilCoreParams& params,
                                                         double dt, double t_stop) {
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw Error(ErrorCode::Domain, "integrate_magnetization: dt must be > 0");
  }
  if (!(std::isfinite(t_stop) && t_stop >= dt)) {
    throw Error(ErrorCode::Domain, "integrate_magnetization: t_stop must be >= dt");
  }
  const double steps = std::ceil(t_stop / dt - 1e-9);
  if (steps > detail::kMaxSteps) {
    throw Error(ErrorCode::StepOverflow,
                "integrate_magnetization: " + std::to_string(steps) + " steps exceeds limit");
  }
  const auto n = static_cast<std::size_t>(steps);
  const double sw = params.sw_eff();

  // state: (m, q)
  auto rhs = [&](double t, const detail::Vec<2>& x) -> detail::Vec<2> {
    const double i = current.value(t);
    return {magnetization_rate(x[0], i, sw), i};
  };

  std::vector<MagnetizationSample> out;
  out.reserve(n + 1);
  detail::Vec<2> x{params.m0(), 0.0};
  out.push_back({0.0, x[0], x[1]});
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double t_next = (k + 1 == n) ? t_stop : static_cast<double>(k + 1) * dt;
    x = detail::rk4_step<2>(rhs, t, x, t_next - t);
    if (!detail::all_finite(x)) {
      throw Error(ErrorCode::Divergence,
                  "integrate_magnetization: non-finite state at t=" + std::to_string(t_next));
    }
    out.push_back({t_next, x[0], x[1]});
  }
  return out;
}

double flux_of_charge(double q, const CoilCoreParams& params) {
  return params.flux_scale() * (magnetization_closed_form(q, params) - params.m0());
}

double flux_slope(double q, const CoilCoreParams& params) {
  const double c = std::cosh(q / params.sw_eff() + params.offset());
  return params.flux_scale() / params.sw_eff() / (c * c);
}

double element_voltage(double q, double i, const CoilCoreParams& params) {
  return flux_slope(q, params) * i;
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

RhoL rho_and_L_constant_current(double q, double i0, const CoilCoreParams& params) {
  if (!(std::isfinite(i0) && i0 > 0.0)) {
    throw Error(ErrorCode::Domain, "rho_and_L_constant_current: i0 must be > 0");
  }
  if (!(std::isfinite(q) && q >= 0.0)) {
    throw Error(ErrorCode::Domain, "rho_and_L_constant_current: q must be >= 0");
  }
  const double sw = params.sw_eff();
  const double c = params.offset();
  // integral_0^q (tanh(s/sw + c) - m0) ds, the time integral divided by i0
  const double flux_integral = sw * (log_cosh(q / sw + c) - log_cosh(c)) - params.m0() * q;
  return {params.flux_scale() * flux_integral / i0, flux_of_charge(q, params) / i0};
}

double rho_as_printed(double q, const CoilCoreParams& params) {
  return params.flux_scale() * log_cosh(magnetization_closed_form(q, params) - params.m0());
}

}  // namespace meminductor
