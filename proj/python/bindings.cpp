#include <sstream>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "meminductor/amoeba.hpp"
#include "meminductor/circuit.hpp"
#include "meminductor/cli.hpp"
#include "meminductor/device.hpp"
#include "meminductor/error.hpp"
#include "meminductor/hysteresis.hpp"
#include "meminductor/netlist.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace meminductor;

namespace {

py::array_t<double> array(const std::vector<double>& v) {
  py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict trace_dict(const Trace& t) {
  py::dict d("time"_a = array(t.time), "v_in"_a = array(t.v_in), "i"_a = array(t.i),
             "v_out"_a = array(t.v_out), "q"_a = array(t.q));
  d["l_eff"] = t.l_eff ? py::object(array(*t.l_eff)) : py::object(py::none());
  return d;
}

py::dict event_dict(const ResponseEvent& e) {
  return py::dict("index"_a = e.index, "expected"_a = e.expected, "time"_a = e.time,
                  "value"_a = e.value, "amplitude"_a = e.amplitude);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Meminductor device models and series-loop circuit simulation";

  py::register_exception<Error>(m, "SimulationError", PyExc_RuntimeError);
  m.add_object("NetlistError", py::reinterpret_steal<py::object>(PyErr_NewException(
                                   "meminductor._core.NetlistError", PyExc_ValueError, nullptr)));
  // NetlistError instances carry code, line and column attributes.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NetlistError& e) {
      py::object type = py::module_::import("meminductor._core").attr("NetlistError");
      py::object inst = type(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      inst.attr("line") = e.line();
      inst.attr("column") = e.column();
      PyErr_SetObject(type.ptr(), inst.ptr());
    }
  });

  py::class_<CoilCoreParams>(m, "CoilCoreParams")
      .def(py::init<double, double, double>(), "flux_scale"_a = CoilCoreParams::kDefaultFluxScale,
           "sw"_a = CoilCoreParams::kDefaultSwEff, "m0"_a = CoilCoreParams::kDefaultM0)
      .def_property_readonly("flux_scale", &CoilCoreParams::flux_scale)
      .def_property_readonly("sw", &CoilCoreParams::sw_eff)
      .def_property_readonly("m0", &CoilCoreParams::m0)
      .def("__repr__", [](const CoilCoreParams& p) {
        std::ostringstream s;
        s << "CoilCoreParams(flux_scale=" << p.flux_scale() << ", sw=" << p.sw_eff()
          << ", m0=" << p.m0() << ")";
        return s.str();
      });

  m.def("magnetization_closed_form", &magnetization_closed_form, "q"_a, "params"_a);
  m.def("flux_of_charge", &flux_of_charge, "q"_a, "params"_a);
  m.def("flux_slope", &flux_slope, "q"_a, "params"_a);

  m.def(
      "integrate_magnetization_sine",
      [](double amplitude, double frequency, const CoilCoreParams& p, double dt, double t_stop) {
        const auto s = integrate_magnetization(Waveform::sine(amplitude, frequency), p, dt, t_stop);
        std::vector<double> t, mm, q;
        for (const auto& x : s) {
          t.push_back(x.t);
          mm.push_back(x.m);
          q.push_back(x.q);
        }
        return py::dict("t"_a = array(t), "m"_a = array(mm), "q"_a = array(q));
      },
      "amplitude"_a, "frequency"_a, "params"_a, "dt"_a, "t_stop"_a,
      "RK4 magnetization under a sinusoidal current drive.");

  m.def(
      "rho_and_L",
      [](double q, double i0, const CoilCoreParams& p) {
        const auto r = rho_and_L_constant_current(q, i0, p);
        return py::make_tuple(r.rho, r.l);
      },
      "q"_a, "i0"_a, "params"_a, "(rho, L) along a constant-current trajectory.");

  m.def(
      "analyze_second_order",
      [](double r, double l, double c) {
        const auto s = analyze_second_order(r, l, c);
        py::dict d("f0"_a = s.f0, "alpha"_a = s.alpha, "regime"_a = std::string(to_string(s.regime)));
        d["fd"] = s.fd ? py::object(py::float_(*s.fd)) : py::object(py::none());
        return d;
      },
      "r"_a, "l"_a, "c"_a);

  m.def(
      "simulate_netlist",
      [](const std::string& text) {
        const auto circuit = validate_circuit(parse_netlist(text));
        Trace t;
        {
          py::gil_scoped_release release;
          t = simulate_transient(compile_circuit(circuit));
        }
        return trace_dict(t);
      },
      "text"_a, "Parse, validate and run a netlist; returns trace columns.");

  m.def(
      "format_netlist", [](const std::string& text) { return print_netlist(parse_netlist(text)); },
      "text"_a, "Canonical pretty-printed form of a netlist.");

  m.def(
      "mh_loop",
      [](double amplitude, double frequency, const CoilCoreParams& p, int cycles, int samples) {
        const auto loop =
            simulate_mh_loop(Waveform::sine(amplitude, frequency), p, {cycles, samples, {}});
        std::vector<double> h, mm;
        for (const auto& s : loop) {
          h.push_back(s.h);
          mm.push_back(s.m);
        }
        const auto metrics = loop_metrics(loop);
        py::dict d("h"_a = array(h), "m"_a = array(mm), "area"_a = metrics.area);
        d["hc_up"] = metrics.hc_up ? py::object(py::float_(*metrics.hc_up)) : py::object(py::none());
        d["hc_down"] =
            metrics.hc_down ? py::object(py::float_(*metrics.hc_down)) : py::object(py::none());
        return d;
      },
      "amplitude"_a, "frequency"_a, "params"_a, "cycles"_a = 2, "samples"_a = 400,
      "m-H loop under a sine drive (last cycle) with its metrics.");

  m.def(
      "run_sps",
      [](double f_sti, int n_train, int n_probe, double delta, std::optional<double> capacitance) {
        SpsConfig cfg;
        cfg.f_sti = f_sti;
        cfg.n_train = n_train;
        cfg.n_probe = n_probe;
        cfg.delta = delta;
        cfg.capacitance = capacitance;
        SpsReport r;
        {
          py::gil_scoped_release release;
          r = run_sps(cfg);
        }
        py::list s_events, c_events, timing;
        for (const auto& e : r.s_events) s_events.append(event_dict(e));
        for (const auto& e : r.c_events) c_events.append(event_dict(e));
        for (const auto& e : r.timing_errors) timing.append(e ? py::object(py::float_(*e)) : py::object(py::none()));
        return py::dict("l_sequence"_a = r.l_sequence, "f0_sequence"_a = r.f0_sequence,
                        "s_events"_a = s_events, "c_events"_a = c_events,
                        "timing_errors"_a = timing, "anticipation_detected"_a = r.anticipation_detected,
                        "alpha"_a = r.alpha, "trace"_a = trace_dict(r.trace));
      },
      "f_sti"_a = 100.0, "n_train"_a = 3, "n_probe"_a = 3, "delta"_a = 0.2,
      "capacitance"_a = py::none(), "Stimulus-train learning experiment.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "args"_a, "Run the command-line front end in-process; returns (exit_code, stdout, stderr).");
}
