#pragma once

#include <string>
#include <variant>
#include <vector>

#include "meminductor/device.hpp"
#include "meminductor/waveform.hpp"

namespace meminductor {

struct LinearInductor {
  double l;  // H
  bool operator==(const LinearInductor&) const = default;
};

/// Behavioral meminductor: starts at l0 and is multiplied by (1 - delta) at
/// each scheduled stimulus pulse.
struct StaircaseInductor {
  double l0;     // H
  double delta;  // fractional drop per pulse, [0, 1)
  bool operator==(const StaircaseInductor&) const = default;
};

/// Physical coil-core element: contributes flux_slope(q) * i to the loop.
struct CoilCoreElement {
  CoilCoreParams params;
  bool operator==(const CoilCoreElement&) const = default;
};

using InductiveElement = std::variant<LinearInductor, StaircaseInductor, CoilCoreElement>;

struct TranSpec {
  double step;  // s
  double stop;  // s
  bool operator==(const TranSpec&) const = default;
};

/// A single series loop V - R - inductive - C. Loop current is positive when
/// it leaves the source's first node. Orientation is +1 when the loop current
/// enters an element at its first node.
struct CompiledCircuit {
  Waveform source;
  double resistance = 0.0;
  InductiveElement inductive = LinearInductor{1.0};
  double capacitance = 1.0;
  TranSpec tran{1e-3, 1.0};
  std::vector<std::string> outputs;

  int inductive_orientation = 1;
  int capacitor_orientation = 1;

  std::string source_name = "V1";
  std::string resistor_name = "R1";
  std::string inductive_name = "L1";
  std::string capacitor_name = "C1";
};

}  // namespace meminductor
