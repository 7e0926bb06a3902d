#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "meminductor/circuit.hpp"
#include "meminductor/compiled_circuit.hpp"
#include "meminductor/waveform.hpp"

namespace meminductor {

/// Stimulus-train learning experiment on a series loop with a staircase
/// meminductor. Training pulses S_1..S_n arrive once per stimulus period;
/// after them the input stays at zero for n_probe further periods, during
/// which the loop should keep responding at the learned rhythm (C_1..C_m).
struct SpsConfig {
  double f_sti = 100.0;  // Hz
  int n_train = 3;
  int n_probe = 3;
  std::optional<double> pulse_width;  // s, default 0.1 / f_sti
  double amplitude = 1.0;             // V
  double resistance = 10.0;           // ohm
  double l0 = 2.0;                    // H
  double delta = 0.2;
  /// Default: the value that puts the post-training resonance at f_sti.
  std::optional<double> capacitance;
  std::optional<double> dt;     // s, default period / 1000
  double window = 0.05;         // probe window half-width, fraction of the period
  double floor_fraction = 0.01; // noise floor, fraction of the peak training response

  [[nodiscard]] double period() const { return 1.0 / f_sti; }
  [[nodiscard]] double effective_pulse_width() const { return pulse_width.value_or(0.1 / f_sti); }
  [[nodiscard]] double trained_inductance() const;
  /// 1 / ((2 pi f_sti)^2 * l0 (1 - delta)^n_train) unless set explicitly.
  [[nodiscard]] double effective_capacitance() const;
  [[nodiscard]] double effective_dt() const { return dt.value_or(period() / 1000.0); }

  /// Throws Error(Configuration) on an invalid combination.
  void validate() const;
};

struct SpsStimulus {
  Waveform waveform;
  std::vector<double> pulse_starts;  // S_k
  std::vector<double> probe_times;   // nominal C_k = S_n + k T
  double t_stop;
};

SpsStimulus build_sps_stimulus(const SpsConfig& cfg);

/// Series loop driven by the stimulus, with the staircase element.
CompiledCircuit sps_circuit(const SpsConfig& cfg, const SpsStimulus& stimulus);

struct ResponseEvent {
  std::size_t index;  // position in the list of expected times
  double expected;    // s
  double time;        // s
  double value;       // signed extremum
  double amplitude;   // |value|
};

/// For each expected time t, the largest-|v| local extremum of `signal`
/// inside [t (1 - window), t (1 + window)], reported iff its magnitude
/// reaches `floor`. Throws Error(Range) for times outside the trace and
/// Error(Domain) unless 0 < window < 0.5.
std::vector<ResponseEvent> detect_responses(const Trace& trace,
                                            const std::vector<double>& expected_times,
                                            double window, double floor,
                                            std::string_view signal = "v_out");

struct SpsReport {
  std::vector<double> l_sequence;   // H, before training then after each pulse
  std::vector<double> f0_sequence;  // Hz
  std::vector<ResponseEvent> s_events;
  std::vector<ResponseEvent> c_events;
  std::vector<double> probe_expected;               // s, S_n response + k T
  std::vector<std::optional<double>> timing_errors; // per probe, empty when missed
  bool anticipation_detected = false;
  double noise_floor = 0.0;
  double alpha = 0.0;  // 1/s, after training
  Trace trace;
};

/// Simulates the protocol and extracts the training and probe responses.
/// Probe expectations are anchored on the detected S_n response, i.e. the
/// loop must repeat its last response phase once per stimulus period.
SpsReport run_sps(const SpsConfig& cfg);

}  // namespace meminductor
