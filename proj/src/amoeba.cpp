#include "meminductor/amoeba.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "meminductor/error.hpp"

namespace meminductor {

double SpsConfig::trained_inductance() const { return l0 * std::pow(1.0 - delta, n_train); }

double SpsConfig::effective_capacitance() const {
  if (capacitance) return *capacitance;
  const double w = 2.0 * std::numbers::pi * f_sti;
  return 1.0 / (w * w * trained_inductance());
}

void SpsConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::Configuration, std::string("sps: ") + what);
  };
  require(std::isfinite(f_sti) && f_sti > 0.0, "f_sti must be > 0");
  require(n_train >= 1, "n_train must be >= 1");
  require(n_probe >= 0, "n_probe must be >= 0");
  const double w = effective_pulse_width();
  require(std::isfinite(w) && w > 0.0 && w < period(), "pulse width must be in (0, 1/f_sti)");
  require(std::isfinite(amplitude), "amplitude must be finite");
  require(std::isfinite(resistance) && resistance >= 0.0, "resistance must be >= 0");
  require(std::isfinite(l0) && l0 > 0.0, "l0 must be > 0");
  require(delta >= 0.0 && delta < 1.0, "delta must be in [0, 1)");
  const double c = effective_capacitance();
  require(std::isfinite(c) && c > 0.0, "capacitance must be > 0");
  const double step = effective_dt();
  require(std::isfinite(step) && step > 0.0 && step <= period() / 10.0, "dt must be in (0, period/10]");
  require(window > 0.0 && window < 0.5, "window must be in (0, 0.5)");
  require(floor_fraction >= 0.0 && floor_fraction < 1.0, "floor_fraction must be in [0, 1)");
}

SpsStimulus build_sps_stimulus(const SpsConfig& cfg) {
  cfg.validate();
  const double T = cfg.period();
  SpsStimulus s{Waveform(PulseTrain{0.0, cfg.amplitude, T, cfg.effective_pulse_width(), T, cfg.n_train}),
                {}, {}, (cfg.n_train + cfg.n_probe + 1) * T};
  s.pulse_starts = s.waveform.pulse_starts();
  for (int k = 1; k <= cfg.n_probe; ++k) s.probe_times.push_back(s.pulse_starts.back() + k * T);
  return s;
}

CompiledCircuit sps_circuit(const SpsConfig& cfg, const SpsStimulus& stimulus) {
  CompiledCircuit c;
  c.source = stimulus.waveform;
  c.resistance = cfg.resistance;
  c.inductive = StaircaseInductor{cfg.l0, cfg.delta};
  c.capacitance = cfg.effective_capacitance();
  c.tran = {cfg.effective_dt(), stimulus.t_stop};
  c.outputs = {"v_out", "l_eff"};
  c.inductive_name = "ML1";
  return c;
}

namespace {

std::optional<Extremum> largest_in(const std::vector<Extremum>& extrema, double lo, double hi) {
  std::optional<Extremum> best;
  for (const auto& e : extrema) {
    if (e.t < lo || e.t > hi) continue;
    if (!best || std::abs(e.value) > std::abs(best->value)) best = e;
  }
  return best;
}

std::size_t sample_at(const Trace& trace, double t) {
  const auto k = static_cast<std::size_t>(std::llround(t / trace.dt));
  return std::min(k, trace.size() - 1);
}

}  // namespace

std::vector<ResponseEvent> detect_responses(const Trace& trace,
                                            const std::vector<double>& expected_times,
                                            double window, double floor,
                                            std::string_view signal) {
  if (!(window > 0.0 && window < 0.5)) {
    throw Error(ErrorCode::Domain, "detect_responses: window must be in (0, 0.5)");
  }
  if (trace.size() == 0) throw Error(ErrorCode::Range, "detect_responses: empty trace");
  const double t0 = trace.time.front();
  const double t1 = trace.time.back();
  for (double t : expected_times) {
    if (!(t >= t0 && t <= t1)) {
      throw Error(ErrorCode::Range,
                  "detect_responses: expected time " + std::to_string(t) + " is outside the trace");
    }
  }
  const auto extrema = local_extrema(trace.time, trace.column(signal));
  std::vector<ResponseEvent> events;
  for (std::size_t k = 0; k < expected_times.size(); ++k) {
    const double t = expected_times[k];
    const auto best = largest_in(extrema, t * (1.0 - window), t * (1.0 + window));
    if (best && std::abs(best->value) >= floor) {
      events.push_back({k, t, best->t, best->value, std::abs(best->value)});
    }
  }
  return events;
}

SpsReport run_sps(const SpsConfig& cfg) {
  const SpsStimulus stim = build_sps_stimulus(cfg);
  const CompiledCircuit circuit = sps_circuit(cfg, stim);
  const double T = cfg.period();

  SpsReport report;
  report.trace = simulate_transient(compile_circuit(circuit));
  const Trace& trace = report.trace;

  report.l_sequence.push_back(trace.l_eff->front());
  for (double s : stim.pulse_starts) report.l_sequence.push_back((*trace.l_eff)[sample_at(trace, s)]);
  for (double l : report.l_sequence) {
    report.f0_sequence.push_back(analyze_second_order(cfg.resistance, l, circuit.capacitance).f0);
  }
  report.alpha = cfg.resistance / (2.0 * report.l_sequence.back());

  const double training_end = stim.pulse_starts.back() + T;
  double peak = 0.0;
  for (std::size_t k = 0; k < trace.size() && trace.time[k] < training_end; ++k) {
    peak = std::max(peak, std::abs(trace.v_out[k]));
  }
  report.noise_floor = cfg.floor_fraction * peak;

  // Responses to training pulses: from the end of each pulse to the next slot.
  const auto extrema = local_extrema(trace.time, trace.v_out);
  const double width = cfg.effective_pulse_width();
  for (std::size_t k = 0; k < stim.pulse_starts.size(); ++k) {
    const double s = stim.pulse_starts[k];
    const auto best = largest_in(extrema, s + width, s + T);
    if (best && std::abs(best->value) >= report.noise_floor && peak > 0.0) {
      report.s_events.push_back({k, s, best->t, best->value, std::abs(best->value)});
    }
  }

  // Probe expectations: the last training response repeated every period.
  double anchor = stim.pulse_starts.back();
  if (!report.s_events.empty() && report.s_events.back().index + 1 == stim.pulse_starts.size()) {
    anchor = report.s_events.back().time;
  }
  for (int k = 1; k <= cfg.n_probe; ++k) report.probe_expected.push_back(anchor + k * T);

  report.timing_errors.assign(report.probe_expected.size(), std::nullopt);
  for (std::size_t k = 0; k < report.probe_expected.size(); ++k) {
    const double t = report.probe_expected[k];
    if (t > trace.time.back()) continue;
    const double frac = cfg.window * T / t;
    auto found = detect_responses(trace, {t}, frac, report.noise_floor);
    if (found.empty() || peak == 0.0) continue;
    found.front().index = k;
    report.timing_errors[k] = std::abs(found.front().time - t);
    report.c_events.push_back(found.front());
  }
  report.anticipation_detected =
      cfg.n_probe > 0 && report.c_events.size() == static_cast<std::size_t>(cfg.n_probe);
  return report;
}

}  // namespace meminductor
