#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meminductor/compiled_circuit.hpp"

namespace meminductor {

enum class Regime { Underdamped, Critical, Overdamped };

std::string_view to_string(Regime regime);

struct SecondOrderMetrics {
  double f0;                  // Hz, 1 / (2 pi sqrt(LC))
  double alpha;               // 1/s, R / 2L
  std::optional<double> fd;   // Hz, damped frequency; set only when underdamped
  Regime regime;
};

/// Series-RLC analytics. Throws Error(Domain) unless l > 0, c > 0, r >= 0.
SecondOrderMetrics analyze_second_order(double r, double l, double c);

/// Uniformly sampled simulation output: time[k] = k * dt.
struct Trace {
  double dt = 0.0;
  std::vector<double> time;
  std::vector<double> v_in;
  std::vector<double> i;
  std::vector<double> v_out;
  std::vector<double> q;
  std::optional<std::vector<double>> l_eff;  // absent for the coil-core element

  [[nodiscard]] std::size_t size() const noexcept { return time.size(); }
  /// Column by CSV name; throws Error(Range) for an unknown or absent column.
  [[nodiscard]] const std::vector<double>& column(std::string_view name) const;
};

struct CircuitState {
  double q = 0.0;    // C
  double i = 0.0;    // A
  double v_c = 0.0;  // V, drop across C in the loop direction
};

/// Loop equations for a compiled circuit.
///
/// Linear and staircase inductors use the inertial state (q, i, v_c) with
/// L di/dt = v_in - R i - v_c. The coil-core element has no di/dt term; the
/// loop current follows algebraically from
/// v_in = R i + flux_slope(q) i + v_c.
class OdeSystem {
 public:
  struct Options {
    /// Smallest admissible R + flux_slope(q) for the coil-core loop, ohms.
    double stiffness_floor = 1e-9;
    CircuitState initial{};
  };

  explicit OdeSystem(CompiledCircuit circuit);
  OdeSystem(CompiledCircuit circuit, Options options);

  [[nodiscard]] const CompiledCircuit& circuit() const noexcept { return circuit_; }
  [[nodiscard]] const Options& options() const noexcept { return options_; }
  [[nodiscard]] bool inertial() const noexcept;

  /// Loop current of the coil-core loop at (t, q, v_c). Throws
  /// Error(Stiffness) when the series resistance falls below the floor.
  [[nodiscard]] double coil_core_current(double t, double q, double v_c) const;

  /// Inductance at time t for linear/staircase elements, given how many
  /// staircase events have already fired.
  [[nodiscard]] double inductance_after(int events) const;

 private:
  CompiledCircuit circuit_;
  Options options_;
};

/// compile_circuit: validated circuit -> ODE description.
OdeSystem compile_circuit(const CompiledCircuit& circuit, OdeSystem::Options options = {});

struct TransientOptions {
  /// Overrides the circuit's .tran when set.
  std::optional<TranSpec> tran;
  /// Times at which a staircase element drops by delta. Defaults to the
  /// source's pulse start times.
  std::optional<std::vector<double>> staircase_events;
};

/// Fixed-step RK4 transient. Throws Error(Domain) for dt <= 0 or
/// dt > t_stop / 10 and Error(Divergence) on a non-finite state.
Trace simulate_transient(const OdeSystem& system, const TransientOptions& options = {});

struct Ringdown {
  double frequency;  // Hz
  double alpha;      // 1/s
};

/// Frequency from mean zero-crossing spacing and decay rate from a log-linear
/// fit of successive |peak| values, using samples at or after `t_from`.
/// Throws Error(InsufficientData) with fewer than 4 zero crossings.
Ringdown measure_ringdown(const Trace& trace, std::string_view signal, double t_from = 0.0);

/// Same, on a raw uniformly sampled series.
Ringdown measure_ringdown(const std::vector<double>& time, const std::vector<double>& values,
                          double t_from = 0.0);

struct EnvelopePoint {
  double t;
  double amplitude;
};

/// |local extremum| values with parabolic refinement of position and height.
std::vector<EnvelopePoint> envelope(const Trace& trace, std::string_view signal);
std::vector<EnvelopePoint> envelope(const std::vector<double>& time,
                                    const std::vector<double>& values);

/// Signed local extrema (peaks and troughs), parabolically refined.
struct Extremum {
  double t;
  double value;
};
std::vector<Extremum> local_extrema(const std::vector<double>& time,
                                    const std::vector<double>& values);

}  // namespace meminductor
