#include "meminductor/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "meminductor/amoeba.hpp"
#include "meminductor/circuit.hpp"
#include "meminductor/device.hpp"
#include "meminductor/error.hpp"
#include "meminductor/hysteresis.hpp"
#include "meminductor/netlist.hpp"
#include "meminductor/output.hpp"

namespace meminductor {
namespace {

// Bad --set keys or values; reported as usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input file problems that are not netlist syntax (unreadable file).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::pair<std::string, double>> parse_overrides(const std::vector<std::string>& raw) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--set expects key=value, got '" + item + "'");
    }
    double v = 0.0;
    if (!parse_eng_number(std::string_view(item).substr(eq + 1), v)) {
      throw UsageError("--set " + item.substr(0, eq) + ": '" + item.substr(eq + 1) +
                       "' is not a number");
    }
    out.emplace_back(lower(item.substr(0, eq)), v);
  }
  return out;
}

using Setters = std::map<std::string, std::function<void(double)>>;

void apply_overrides(const std::vector<std::string>& raw, const Setters& setters) {
  for (const auto& [key, value] : parse_overrides(raw)) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      std::string known;
      for (const auto& [k, f] : setters) known += (known.empty() ? "" : ", ") + k;
      throw UsageError("--set: unknown key '" + key + "' (known: " + known + ")");
    }
    it->second(value);
  }
}

int to_int(double v, const char* what) {
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw UsageError(std::string(what) + " must be an integer");
  }
  return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// simulate

const std::vector<std::string>& positional_names(std::string_view model) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> names = {
      {"SIN", {"offset", "amplitude", "frequency"}},
      {"PULSE", {"v0", "v1", "delay", "width", "period", "count"}},
      {"STEP", {"v0", "v1", "time"}},
  };
  static const std::vector<std::string> none;
  const auto it = names.find(model);
  return it == names.end() ? none : it->second;
}

// tran.step, tran.stop, NAME (plain value) and NAME.param (model parameter).
void apply_netlist_overrides(NetlistDocument& doc, const std::vector<std::string>& raw) {
  for (const auto& [key, value] : parse_overrides(raw)) {
    if (key == "tran.step" || key == "tran.stop") {
      if (doc.tran.empty()) doc.tran.push_back({0.0, 0.0, {}});
      (key == "tran.step" ? doc.tran.front().step : doc.tran.front().stop) = value;
      continue;
    }
    const auto dot = key.find('.');
    const std::string name = key.substr(0, dot);
    auto el = std::find_if(doc.elements.begin(), doc.elements.end(),
                           [&](const NetlistElement& e) { return lower(e.name) == name; });
    if (el == doc.elements.end()) throw UsageError("--set: no element named '" + name + "'");
    if (dot == std::string::npos) {
      if (!std::holds_alternative<double>(el->value)) {
        throw UsageError("--set: " + el->name + " has model parameters; use " + name + ".<param>");
      }
      el->value = value;
      continue;
    }
    auto* call = std::get_if<ModelCall>(&el->value);
    if (!call) throw UsageError("--set: " + el->name + " has a plain value; use " + name + "=<value>");
    const std::string param = key.substr(dot + 1);
    const auto& pos_names = positional_names(call->name);
    if (const auto it = std::find(pos_names.begin(), pos_names.end(), param); it != pos_names.end()) {
      call->positional.at(static_cast<std::size_t>(it - pos_names.begin())) = value;
      continue;
    }
    if (call->name == "MLSTAIR" || call->name == "MLCORE") {
      auto named = std::find_if(call->named.begin(), call->named.end(),
                                [&](const auto& kv) { return kv.first == param; });
      if (named != call->named.end()) {
        named->second = value;
      } else {
        call->named.emplace_back(param, value);
      }
      continue;
    }
    throw UsageError("--set: " + call->name + " has no parameter '" + param + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Start of the free ringdown: after the last pulse or the step edge.
double ringdown_start(const Waveform& w) {
  if (const auto* p = std::get_if<PulseTrain>(&w.shape()); p && p->count > 0) {
    return p->delay + (p->count - 1) * p->period + p->width;
  }
  if (const auto* s = std::get_if<Step>(&w.shape())) return std::max(0.0, s->time);
  return 0.0;
}

nlohmann::json simulate_metrics(const CompiledCircuit& c, const Trace& trace) {
  nlohmann::json j;
  j["samples"] = trace.size();
  j["dt"] = trace.dt;
  j["t_stop"] = trace.time.empty() ? 0.0 : trace.time.back();
  j["resistance"] = c.resistance;
  j["capacitance"] = c.capacitance;
  if (const auto* lin = std::get_if<LinearInductor>(&c.inductive)) {
    j["element"] = "inductor";
    j["second_order"] = to_json(analyze_second_order(c.resistance, lin->l, c.capacitance));
  } else if (const auto* st = std::get_if<StaircaseInductor>(&c.inductive)) {
    j["element"] = "staircase";
    const auto events = c.source.pulse_starts();
    j["second_order"] = nlohmann::json::array();
    std::vector<double> ls;
    for (std::size_t k = 0; k <= events.size(); ++k) {
      const double l = st->l0 * std::pow(1.0 - st->delta, static_cast<double>(k));
      ls.push_back(l);
      j["second_order"].push_back(to_json(analyze_second_order(c.resistance, l, c.capacitance)));
    }
    j["l_sequence"] = ls;
  } else {
    j["element"] = "coil_core";
    j["second_order"] = nullptr;
  }
  try {
    const auto rd = measure_ringdown(trace, "v_out", ringdown_start(c.source));
    j["ringdown"] = {{"frequency", rd.frequency}, {"alpha", rd.alpha}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientData) throw;
    j["ringdown"] = nullptr;
  }
  return j;
}

void add_trace(OutputBundle& bundle, const Trace& trace, std::string_view title) {
  bundle.add("trace.csv", trace_csv(trace));
  std::vector<std::string> ys{"v_in", "i", "v_out"};
  if (trace.l_eff) ys.emplace_back("l_eff");
  bundle.add("trace_plot.py", plot_script("trace.csv", title, "time", ys));
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct Common {
  std::string out_dir = ".";
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("-o,--output", common.out_dir, "Output directory (created if missing)");
  sub->add_option("--set", common.overrides, "Override a parameter, key=value (repeatable)")
      ->allow_extra_args(false)
      ->take_all();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Meminductor circuit simulator"};
  app.require_subcommand(1);

  Common common;

  // simulate
  auto* sim = app.add_subcommand("simulate", "Transient run of a netlist");
  std::string netlist_path;
  double stiffness_floor = 1e-9;
  sim->add_option("netlist", netlist_path, "Netlist file")->required();
  sim->add_option("--stiffness-floor", stiffness_floor, "Smallest R + dphi/dq for coil-core loops");
  add_common(sim, common);

  // hysteresis
  auto* hys = app.add_subcommand("hysteresis", "m-H loop of the coil-core element");
  std::string drive = "sine";
  double amplitude = 1.0;
  double frequency = 10.0;
  double sw = 6e-3;
  std::optional<double> m0;
  double flux_scale = CoilCoreParams::kDefaultFluxScale;
  int cycles = 2;
  int samples = 400;
  std::optional<double> span;
  hys->add_option("--drive", drive, "sine or step")->check(CLI::IsMember({"sine", "step"}));
  hys->add_option("--amplitude", amplitude, "Drive current amplitude, A");
  hys->add_option("--frequency", frequency, "Sine frequency, Hz");
  hys->add_option("--sw", sw, "Switching coefficient as a charge, A*s");
  hys->add_option("--m0", m0,
                  "Initial magnetization (sine default: the value giving a loop centred on m = 0)");
  hys->add_option("--flux-scale", flux_scale, "Flux scale, Wb");
  hys->add_option("--cycles", cycles, "Drive cycles; the last one is reported");
  hys->add_option("--samples", samples, "Samples per reported cycle");
  hys->add_option("--span", span, "Step drive: observation span, s (default 10 sw / amplitude)");
  add_common(hys, common);

  // rho-q
  auto* rq = app.add_subcommand("rho-q", "Constitutive rho-q curve under constant current");
  double rq_flux = 1.0;
  double rq_sw = 1.0;
  double rq_m0 = -0.964;
  double i0 = 1.0;
  double q_max = 10.0;
  int points = 201;
  rq->add_option("--flux-scale", rq_flux, "Flux scale, Wb");
  rq->add_option("--sw", rq_sw, "Switching coefficient as a charge, A*s");
  rq->add_option("--m0", rq_m0, "Initial magnetization");
  rq->add_option("--i0", i0, "Constant drive current, A");
  rq->add_option("--q-max", q_max, "Largest charge, C");
  rq->add_option("--points", points, "Number of samples");
  add_common(rq, common);

  // amoeba
  auto* am = app.add_subcommand("amoeba", "Stimulus-train learning experiment");
  SpsConfig cfg;
  bool control = false;
  am->add_option("--f-sti", cfg.f_sti, "Stimulus frequency, Hz");
  am->add_option("--train", cfg.n_train, "Training pulses");
  am->add_option("--probe", cfg.n_probe, "Probe periods after training");
  am->add_flag("--control", control, "Control run: no plasticity, same capacitor");
  add_common(am, common);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("meminductor");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    OutputBundle bundle;
    if (sim->parsed()) {
      const std::string text = read_file(netlist_path);
      NetlistDocument doc;
      CompiledCircuit circuit;
      try {
        doc = parse_netlist(text);
        apply_netlist_overrides(doc, common.overrides);
        circuit = validate_circuit(doc);
      } catch (const NetlistError& e) {
        err << netlist_path << ':' << e.line() << ':' << e.column() << ": "
            << to_string(e.code()) << ": " << e.message() << '\n';
        return kExitInput;
      }
      OdeSystem::Options opts;
      opts.stiffness_floor = stiffness_floor;
      const Trace trace = simulate_transient(compile_circuit(circuit, opts));
      add_trace(bundle, trace, netlist_path);
      bundle.add("metrics.json", dump(simulate_metrics(circuit, trace)));
    } else if (hys->parsed()) {
      apply_overrides(common.overrides,
                      {{"amplitude", [&](double v) { amplitude = v; }},
                       {"frequency", [&](double v) { frequency = v; }},
                       {"sw", [&](double v) { sw = v; }},
                       {"m0", [&](double v) { m0 = v; }},
                       {"flux_scale", [&](double v) { flux_scale = v; }},
                       {"cycles", [&](double v) { cycles = to_int(v, "cycles"); }},
                       {"samples", [&](double v) { samples = to_int(v, "samples"); }},
                       {"span", [&](double v) { span = v; }}});
      const bool sine = drive == "sine";
      LoopOptions lo;
      lo.samples_per_cycle = samples;
      Waveform w;
      if (sine) {
        w = Waveform::sine(amplitude, frequency);
        lo.cycles = cycles;
        // q swings over [0, 2A/w]; centring the tanh argument makes m swing symmetrically.
        if (!m0) m0 = -std::tanh(std::abs(amplitude) / (2.0 * std::numbers::pi * frequency * sw));
      } else {
        w = Waveform(Step{0.0, amplitude, 0.0});
        lo.cycles = 1;
        lo.cycle_span = span.value_or(10.0 * sw / std::abs(amplitude));
        if (!m0) m0 = CoilCoreParams::kDefaultM0;
      }
      const CoilCoreParams params(flux_scale, sw, *m0);
      const auto loop = simulate_mh_loop(w, params, lo);
      bundle.add("loop.csv", loop_csv(loop));
      bundle.add("loop_plot.py", plot_script("loop.csv", "m-H loop", "h", {"m"}));
      nlohmann::json j{{"drive", drive}, {"m0", *m0}, {"sw", sw}, {"amplitude", amplitude}};
      try {
        j["metrics"] = to_json(loop_metrics(loop));
        j["closed"] = true;
        j["tanh_fit"] = to_json(fit_tanh_branches(loop));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Shape) throw;
        j["closed"] = false;
        j["metrics"] = nullptr;
        j["tanh_fit"] = nullptr;
      }
      bundle.add("loop_metrics.json", dump(j));
    } else if (rq->parsed()) {
      apply_overrides(common.overrides,
                      {{"flux_scale", [&](double v) { rq_flux = v; }},
                       {"sw", [&](double v) { rq_sw = v; }},
                       {"m0", [&](double v) { rq_m0 = v; }},
                       {"i0", [&](double v) { i0 = v; }},
                       {"q_max", [&](double v) { q_max = v; }},
                       {"points", [&](double v) { points = to_int(v, "points"); }}});
      if (points < 2) throw UsageError("--points must be >= 2");
      if (!(q_max > 0.0)) throw UsageError("--q-max must be > 0");
      const CoilCoreParams params(rq_flux, rq_sw, rq_m0);
      std::vector<RhoQRow> rows;
      for (int k = 0; k < points; ++k) {
        const double q = q_max * k / (points - 1);
        const auto r = rho_and_L_constant_current(q, i0, params);
        rows.push_back({q, r.rho, r.l});
      }
      bundle.add("rho_q.csv", rho_q_csv(rows));
      bundle.add("rho_q_plot.py", plot_script("rho_q.csv", "rho-q", "q", {"rho", "L"}));
    } else {
      apply_overrides(common.overrides,
                      {{"f_sti", [&](double v) { cfg.f_sti = v; }},
                       {"n_train", [&](double v) { cfg.n_train = to_int(v, "n_train"); }},
                       {"n_probe", [&](double v) { cfg.n_probe = to_int(v, "n_probe"); }},
                       {"pulse_width", [&](double v) { cfg.pulse_width = v; }},
                       {"amplitude", [&](double v) { cfg.amplitude = v; }},
                       {"resistance", [&](double v) { cfg.resistance = v; }},
                       {"l0", [&](double v) { cfg.l0 = v; }},
                       {"delta", [&](double v) { cfg.delta = v; }},
                       {"capacitance", [&](double v) { cfg.capacitance = v; }},
                       {"dt", [&](double v) { cfg.dt = v; }},
                       {"window", [&](double v) { cfg.window = v; }},
                       {"floor_fraction", [&](double v) { cfg.floor_fraction = v; }}});
      if (control) {
        cfg.validate();
        cfg.capacitance = cfg.effective_capacitance();
        cfg.delta = 0.0;
      }
      const SpsReport report = run_sps(cfg);
      nlohmann::json j = to_json(report);
      j["control"] = control;
      j["capacitance"] = cfg.effective_capacitance();
      bundle.add("sps_report.json", dump(j));
      add_trace(bundle, report.trace, control ? "SPS control run" : "SPS run");
    }
    bundle.commit(common.out_dir);
    for (const auto& [name, content] : bundle.files()) {
      out << (std::filesystem::path(common.out_dir) / name).string() << '\n';
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << "simulation error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitSimulation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSimulation;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace meminductor
