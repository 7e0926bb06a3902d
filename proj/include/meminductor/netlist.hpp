#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "meminductor/compiled_circuit.hpp"

namespace meminductor {

// Line-oriented circuit description:
//
//   # comment            ; comment
//   V1 in 0 PULSE(0 1 10m 1m 10m 3)
//   R1 in n1 10
//   ML1 n1 out MLSTAIR(l0=2, delta=0.2)
//   C1 out 0 2.474u
//   .tran 10u 70m
//   .print v_out l_eff
//   .end
//
// Numbers accept the SPICE suffixes t g meg k m u n p f (case-insensitive);
// trailing letters after a suffix are ignored as units.

enum class NetlistErrorCode {
  Lexical,
  UnknownElementKind,
  MalformedParameters,
  DuplicateName,
  BadDirective,
  BadValue,
  SourceCount,
  NonSeriesTopology,
  NonPositiveCapacitance,
  MissingTran,
  MultipleInductive,
};

/// Stable machine-readable identifier, e.g. "E_DUPLICATE_NAME".
std::string_view to_string(NetlistErrorCode code);

class NetlistError : public std::runtime_error {
 public:
  NetlistError(NetlistErrorCode code, int line, int column, const std::string& message);

  [[nodiscard]] NetlistErrorCode code() const noexcept { return code_; }
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  NetlistErrorCode code_;
  int line_;
  int column_;
  std::string message_;
};

enum class ElementKind { V, R, L, C, MLStair, MLCore };

std::string_view to_string(ElementKind kind);

struct SourceLoc {
  int line = 0;
  int column = 0;
};

/// NAME(arg arg ... key=value ...)
struct ModelCall {
  std::string name;
  std::vector<double> positional;
  std::vector<std::pair<std::string, double>> named;
  bool operator==(const ModelCall&) const = default;
};

using ElementValue = std::variant<double, ModelCall>;

struct NetlistElement {
  std::string name;
  ElementKind kind;
  std::string node_a;
  std::string node_b;
  ElementValue value;
  SourceLoc loc;
};

struct TranDirective {
  double step;
  double stop;
  SourceLoc loc;
};

struct PrintDirective {
  std::vector<std::string> signals;
  SourceLoc loc;
};

struct NetlistDocument {
  std::vector<NetlistElement> elements;
  std::vector<TranDirective> tran;
  std::vector<PrintDirective> prints;
  int line_count = 0;
};

/// Throws NetlistError for lexical errors, unknown element kinds, malformed
/// parameter lists, duplicate (case-insensitive) names and bad directives.
NetlistDocument parse_netlist(std::string_view text);

/// Checks the single series loop, element values and the analysis directive.
CompiledCircuit validate_circuit(const NetlistDocument& doc);

/// Canonical text form; parse_netlist(print_netlist(d)) is structurally equal to d.
std::string print_netlist(const NetlistDocument& doc);

/// Equality of content, ignoring source locations.
bool same_structure(const NetlistDocument& a, const NetlistDocument& b);

/// Parses a number with an optional engineering suffix ("0.2u", "2meg", "10k").
/// Returns false if the text is not a number.
bool parse_eng_number(std::string_view text, double& out);

/// Trace signals accepted by .print.
bool is_trace_signal(std::string_view name);

}  // namespace meminductor
