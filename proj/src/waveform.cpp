#include "meminductor/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "meminductor/error.hpp"

namespace meminductor {

namespace {

// Pulse and step edges that land on a sample time up to rounding count as
// already reached.
constexpr double kEdgeTolerance = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::Domain, std::string("waveform: ") + what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

Waveform::Waveform(Shape shape) : shape_(std::move(shape)) {
  std::visit(
      overloaded{
          [](const Dc& w) { require(finite(w.value), "non-finite DC level"); },
          [](const Sine& w) {
            require(finite(w.offset) && finite(w.amplitude), "non-finite sine parameter");
            require(finite(w.frequency) && w.frequency > 0.0, "sine frequency must be > 0");
          },
          [](const PulseTrain& w) {
            require(finite(w.v0) && finite(w.v1) && finite(w.delay), "non-finite pulse parameter");
            require(finite(w.width) && w.width > 0.0, "pulse width must be > 0");
            require(finite(w.period) && w.period >= w.width, "pulse period must be >= width");
            require(w.delay >= 0.0, "pulse delay must be >= 0");
            require(w.count >= 0, "pulse count must be >= 0");
          },
          [](const Step& w) {
            require(finite(w.v0) && finite(w.v1) && finite(w.time), "non-finite step parameter");
          },
          [](const PiecewiseLinear& w) {
            require(!w.points.empty(), "PWL needs at least one point");
            for (std::size_t k = 0; k < w.points.size(); ++k) {
              require(finite(w.points[k].first) && finite(w.points[k].second),
                      "non-finite PWL point");
              if (k > 0) {
                require(w.points[k].first > w.points[k - 1].first,
                        "PWL times must be strictly increasing");
              }
            }
          },
      },
      shape_);
}

double Waveform::value(double t) const {
  return std::visit(
      overloaded{
          [](const Dc& w) { return w.value; },
          [t](const Sine& w) {
            return w.offset + w.amplitude * std::sin(2.0 * std::numbers::pi * w.frequency * t);
          },
          [t](const PulseTrain& w) {
            const double eps = kEdgeTolerance * w.width;
            const double rel = t - w.delay;
            if (rel < -eps || w.count == 0) return w.v0;
            const double k = std::floor((rel + eps) / w.period);
            if (k >= static_cast<double>(w.count)) return w.v0;
            const double local = rel - k * w.period;
            return local < w.width - eps ? w.v1 : w.v0;
          },
          [t](const Step& w) {
            const double eps = kEdgeTolerance * std::max(1.0, std::abs(w.time));
            return t >= w.time - eps ? w.v1 : w.v0;
          },
          [t](const PiecewiseLinear& w) {
            const auto& p = w.points;
            if (t <= p.front().first) return p.front().second;
            if (t >= p.back().first) return p.back().second;
            auto hi = std::upper_bound(p.begin(), p.end(), t,
                                       [](double x, const auto& pt) { return x < pt.first; });
            auto lo = hi - 1;
            const double s = (t - lo->first) / (hi->first - lo->first);
            return lo->second + s * (hi->second - lo->second);
          },
      },
      shape_);
}

bool Waveform::is_periodic() const { return std::holds_alternative<Sine>(shape_); }

std::optional<double> Waveform::period() const {
  if (const auto* s = std::get_if<Sine>(&shape_)) return 1.0 / s->frequency;
  return std::nullopt;
}

double Waveform::peak_magnitude() const {
  return std::visit(
      overloaded{
          [](const Dc& w) { return std::abs(w.value); },
          [](const Sine& w) { return std::abs(w.offset) + std::abs(w.amplitude); },
          [](const PulseTrain& w) { return std::max(std::abs(w.v0), std::abs(w.v1)); },
          [](const Step& w) { return std::max(std::abs(w.v0), std::abs(w.v1)); },
          [](const PiecewiseLinear& w) {
            double m = 0.0;
            for (const auto& [t, v] : w.points) m = std::max(m, std::abs(v));
            return m;
          },
      },
      shape_);
}

std::vector<double> Waveform::pulse_starts() const {
  std::vector<double> starts;
  if (const auto* p = std::get_if<PulseTrain>(&shape_)) {
    starts.reserve(static_cast<std::size_t>(p->count));
    for (int k = 0; k < p->count; ++k) starts.push_back(p->delay + k * p->period);
  }
  return starts;
}

}  // namespace meminductor
