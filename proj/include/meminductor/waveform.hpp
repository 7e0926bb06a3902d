#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace meminductor {

// Declarative stimulus descriptions. All of them are pure functions of time;
// the unit (volts or amperes) is whatever the consumer drives with them.

struct Dc {
  double value = 0.0;
  bool operator==(const Dc&) const = default;
};

/// offset + amplitude * sin(2*pi*frequency*t)
struct Sine {
  double offset = 0.0;
  double amplitude = 1.0;
  double frequency = 1.0;
  bool operator==(const Sine&) const = default;
};

/// `count` rectangular pulses of level v1 over baseline v0. Pulse k occupies
/// [delay + k*period, delay + k*period + width).
struct PulseTrain {
  double v0 = 0.0;
  double v1 = 1.0;
  double delay = 0.0;
  double width = 1.0;
  double period = 2.0;
  int count = 1;
  bool operator==(const PulseTrain&) const = default;
};

/// v0 before `time`, v1 from `time` on.
struct Step {
  double v0 = 0.0;
  double v1 = 1.0;
  double time = 0.0;
  bool operator==(const Step&) const = default;
};

/// Linear interpolation through (t, v) points, held constant outside.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> points;
  bool operator==(const PiecewiseLinear&) const = default;
};

class Waveform {
 public:
  using Shape = std::variant<Dc, Sine, PulseTrain, Step, PiecewiseLinear>;

  Waveform() : shape_(Dc{}) {}
  Waveform(Shape shape);  // NOLINT(google-explicit-constructor)

  static Waveform constant(double value) { return Waveform(Dc{value}); }
  static Waveform sine(double amplitude, double frequency, double offset = 0.0) {
    return Waveform(Sine{offset, amplitude, frequency});
  }

  [[nodiscard]] double value(double t) const;

  /// True only for drives that repeat forever (sine).
  [[nodiscard]] bool is_periodic() const;
  [[nodiscard]] std::optional<double> period() const;

  /// Upper bound on |value(t)| over all t.
  [[nodiscard]] double peak_magnitude() const;

  /// Leading-edge times of every pulse (empty unless a pulse train).
  [[nodiscard]] std::vector<double> pulse_starts() const;

  [[nodiscard]] const Shape& shape() const noexcept { return shape_; }

  bool operator==(const Waveform&) const = default;

 private:
  Shape shape_;
};

}  // namespace meminductor
