#include "meminductor/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "meminductor/error.hpp"
#include "rk4.hpp"

namespace meminductor {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Underdamped: return "underdamped";
    case Regime::Critical: return "critical";
    case Regime::Overdamped: return "overdamped";
  }
  return "?";
}

SecondOrderMetrics analyze_second_order(double r, double l, double c) {
  if (!(std::isfinite(l) && l > 0.0)) throw Error(ErrorCode::Domain, "second order: L must be > 0");
  if (!(std::isfinite(c) && c > 0.0)) throw Error(ErrorCode::Domain, "second order: C must be > 0");
  if (!(std::isfinite(r) && r >= 0.0)) throw Error(ErrorCode::Domain, "second order: R must be >= 0");
  SecondOrderMetrics m{};
  m.f0 = 1.0 / (2.0 * std::numbers::pi * std::sqrt(l * c));
  m.alpha = r / (2.0 * l);
  const double w0 = 2.0 * std::numbers::pi * m.f0;
  const double gap = (w0 - m.alpha) / w0;
  if (std::abs(gap) <= 1e-12) {
    m.regime = Regime::Critical;
  } else if (gap > 0.0) {
    m.regime = Regime::Underdamped;
    const double a = m.alpha / (2.0 * std::numbers::pi);
    m.fd = std::sqrt(m.f0 * m.f0 - a * a);
  } else {
    m.regime = Regime::Overdamped;
  }
  return m;
}

const std::vector<double>& Trace::column(std::string_view name) const {
  if (name == "time") return time;
  if (name == "v_in") return v_in;
  if (name == "i") return i;
  if (name == "v_out") return v_out;
  if (name == "q") return q;
  if (name == "l_eff") {
    if (l_eff) return *l_eff;
    throw Error(ErrorCode::Range, "trace: l_eff is not recorded for this element");
  }
  throw Error(ErrorCode::Range, "trace: unknown signal '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

OdeSystem::OdeSystem(CompiledCircuit circuit) : OdeSystem(std::move(circuit), Options{}) {}

OdeSystem::OdeSystem(CompiledCircuit circuit, Options options)
    : circuit_(std::move(circuit)), options_(options) {
  if (!(circuit_.resistance >= 0.0)) throw Error(ErrorCode::Domain, "circuit: R must be >= 0");
  if (!(circuit_.capacitance > 0.0)) throw Error(ErrorCode::Domain, "circuit: C must be > 0");
  if (const auto* lin = std::get_if<LinearInductor>(&circuit_.inductive); lin && !(lin->l > 0.0)) {
    throw Error(ErrorCode::Domain, "circuit: L must be > 0");
  }
  if (const auto* st = std::get_if<StaircaseInductor>(&circuit_.inductive)) {
    if (!(st->l0 > 0.0) || !(st->delta >= 0.0 && st->delta < 1.0)) {
      throw Error(ErrorCode::Domain, "circuit: staircase needs l0 > 0 and 0 <= delta < 1");
    }
  }
}

bool OdeSystem::inertial() const noexcept {
  return !std::holds_alternative<CoilCoreElement>(circuit_.inductive);
}

double OdeSystem::coil_core_current(double t, double q, double v_c) const {
  const auto& core = std::get<CoilCoreElement>(circuit_.inductive);
  const double slope = flux_slope(circuit_.inductive_orientation * q, core.params);
  const double series = circuit_.resistance + slope;
  if (!(series >= options_.stiffness_floor)) {
    throw Error(ErrorCode::Stiffness,
                "coil-core loop: R + dphi/dq = " + std::to_string(series) + " ohm at t=" +
                    std::to_string(t) + " is below the floor; increase R");
  }
  return (circuit_.source.value(t) - v_c) / series;
}

double OdeSystem::inductance_after(int events) const {
  if (const auto* lin = std::get_if<LinearInductor>(&circuit_.inductive)) return lin->l;
  if (const auto* st = std::get_if<StaircaseInductor>(&circuit_.inductive)) {
    return st->l0 * std::pow(1.0 - st->delta, events);
  }
  throw Error(ErrorCode::Domain, "circuit: coil-core element has no fixed inductance");
}

OdeSystem compile_circuit(const CompiledCircuit& circuit, OdeSystem::Options options) {
  return OdeSystem(circuit, options);
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void diverged(double t) {
  throw Error(ErrorCode::Divergence, "transient: non-finite state at t=" + std::to_string(t));
}

}  // namespace

Trace simulate_transient(const OdeSystem& system, const TransientOptions& options) {
  const CompiledCircuit& c = system.circuit();
  const TranSpec tran = options.tran.value_or(c.tran);
  if (!(std::isfinite(tran.step) && tran.step > 0.0)) {
    throw Error(ErrorCode::Domain, "transient: dt must be > 0");
  }
  if (!(std::isfinite(tran.stop) && tran.step <= tran.stop / 10.0 * (1.0 + 1e-12))) {
    throw Error(ErrorCode::Domain, "transient: dt must be <= t_stop / 10");
  }
  const double dt = tran.step;
  const double steps = std::floor(tran.stop / dt + 1e-9);
  if (steps > detail::kMaxSteps) {
    throw Error(ErrorCode::StepOverflow, "transient: " + std::to_string(steps) + " steps exceeds limit");
  }
  const auto n = static_cast<std::size_t>(steps);

  std::vector<double> events = options.staircase_events.value_or(c.source.pulse_starts());
  std::sort(events.begin(), events.end());
  const bool staircase = std::holds_alternative<StaircaseInductor>(c.inductive);

  Trace trace;
  trace.dt = dt;
  trace.time.reserve(n + 1);
  trace.v_in.reserve(n + 1);
  trace.i.reserve(n + 1);
  trace.v_out.reserve(n + 1);
  trace.q.reserve(n + 1);
  if (system.inertial()) trace.l_eff.emplace().reserve(n + 1);

  const double r = c.resistance;
  const double cap = c.capacitance;
  const double vout_sign = c.capacitor_orientation;
  const CircuitState& init = system.options().initial;

  if (system.inertial()) {
    int fired = 0;
    std::size_t next_event = 0;
    double l = system.inductance_after(0);
    auto rhs = [&](double t, const detail::Vec<3>& x) -> detail::Vec<3> {
      return {x[1], (c.source.value(t) - r * x[1] - x[2]) / l, x[1] / cap};
    };
    detail::Vec<3> x{init.q, init.i, init.v_c};
    for (std::size_t k = 0;; ++k) {
      const double t = static_cast<double>(k) * dt;
      while (next_event < events.size() && events[next_event] <= t + 1e-6 * dt) {
        ++next_event;
        if (staircase) l = system.inductance_after(++fired);
      }
      trace.time.push_back(t);
      trace.v_in.push_back(c.source.value(t));
      trace.q.push_back(x[0]);
      trace.i.push_back(x[1]);
      trace.v_out.push_back(vout_sign * x[2]);
      trace.l_eff->push_back(l);
      if (k == n) break;
      x = detail::rk4_step<3>(rhs, t, x, dt);
      if (!detail::all_finite(x)) diverged(t + dt);
    }
  } else {
    auto rhs = [&](double t, const detail::Vec<2>& x) -> detail::Vec<2> {
      const double i = system.coil_core_current(t, x[0], x[1]);
      return {i, i / cap};
    };
    detail::Vec<2> x{init.q, init.v_c};
    for (std::size_t k = 0;; ++k) {
      const double t = static_cast<double>(k) * dt;
      const double i = system.coil_core_current(t, x[0], x[1]);
      if (!std::isfinite(i)) diverged(t);
      trace.time.push_back(t);
      trace.v_in.push_back(c.source.value(t));
      trace.q.push_back(x[0]);
      trace.i.push_back(i);
      trace.v_out.push_back(vout_sign * x[1]);
      if (k == n) break;
      x = detail::rk4_step<2>(rhs, t, x, dt);
      if (!detail::all_finite(x)) diverged(t + dt);
    }
  }
  return trace;
}

// ---------------------------------------------------------------------------

std::vector<Extremum> local_extrema(const std::vector<double>& time,
                                    const std::vector<double>& values) {
  std::vector<Extremum> out;
  const std::size_t n = std::min(time.size(), values.size());
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double ym = values[k - 1];
    const double y0 = values[k];
    const double yp = values[k + 1];
    const bool peak = y0 > ym && y0 >= yp;
    const bool trough = y0 < ym && y0 <= yp;
    if (!peak && !trough) continue;
    const double denom = ym - 2.0 * y0 + yp;
    double offset = 0.0;
    if (denom != 0.0) offset = std::clamp(0.5 * (ym - yp) / denom, -0.5, 0.5);
    const double h = offset >= 0.0 ? time[k + 1] - time[k] : time[k] - time[k - 1];
    out.push_back({time[k] + offset * h, y0 - 0.25 * (ym - yp) * offset});
  }
  return out;
}

std::vector<EnvelopePoint> envelope(const std::vector<double>& time,
                                    const std::vector<double>& values) {
  std::vector<EnvelopePoint> env;
  for (const auto& e : local_extrema(time, values)) env.push_back({e.t, std::abs(e.value)});
  return env;
}

std::vector<EnvelopePoint> envelope(const Trace& trace, std::string_view signal) {
  return envelope(trace.time, trace.column(signal));
}

Ringdown measure_ringdown(const std::vector<double>& time, const std::vector<double>& values,
                          double t_from) {
  const std::size_t n = std::min(time.size(), values.size());
  std::size_t first = 0;
  while (first < n && time[first] < t_from) ++first;

  std::vector<double> crossings;
  for (std::size_t k = first; k + 1 < n; ++k) {
    const double a = values[k];
    const double b = values[k + 1];
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      crossings.push_back(time[k] + a / (a - b) * (time[k + 1] - time[k]));
    }
  }
  if (crossings.size() < 4) {
    throw Error(ErrorCode::InsufficientData,
                "ringdown: need at least 4 zero crossings, found " + std::to_string(crossings.size()));
  }
  const double spacing = (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);

  std::vector<double> t_sub(time.begin() + static_cast<std::ptrdiff_t>(first), time.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<double> v_sub(values.begin() + static_cast<std::ptrdiff_t>(first), values.begin() + static_cast<std::ptrdiff_t>(n));
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t m = 0;
  for (const auto& p : envelope(t_sub, v_sub)) {
    if (!(p.amplitude > 0.0)) continue;
    const double y = std::log(p.amplitude);
    st += p.t;
    sy += y;
    stt += p.t * p.t;
    sty += p.t * y;
    ++m;
  }
  if (m < 2) throw Error(ErrorCode::InsufficientData, "ringdown: need at least 2 peaks");
  const double dm = static_cast<double>(m);
  const double slope = (dm * sty - st * sy) / (dm * stt - st * st);
  return {1.0 / (2.0 * spacing), -slope};
}

Ringdown measure_ringdown(const Trace& trace, std::string_view signal, double t_from) {
  return measure_ringdown(trace.time, trace.column(signal), t_from);
}

}  // namespace meminductor
