// Acceptance checks, one line per criterion:
//   acceptance          run all
//   acceptance 3 5      run a subset
// Exit status is non-zero if any selected criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "meminductor/amoeba.hpp"
#include "meminductor/circuit.hpp"
#include "meminductor/cli.hpp"
#include "meminductor/device.hpp"
#include "meminductor/hysteresis.hpp"
#include "meminductor/netlist.hpp"

using namespace meminductor;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string fixture(const std::string& name) { return std::string(MEMINDUCTOR_FIXTURES) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------------------

Result closed_form_oracle() {
  Result r;
  const double f = 10.0;
  const double w = 2.0 * std::numbers::pi * f;
  const CoilCoreParams p(1.0, 1.0, -0.964);
  const auto start = std::chrono::steady_clock::now();
  const auto samples = integrate_magnetization(Waveform::sine(1.0, f), p, 1e-4, 1.0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst = 0.0;
  for (const auto& s : samples) {
    const double q = (1.0 - std::cos(w * s.t)) / w;
    worst = std::max(worst, std::abs(s.m - std::tanh(q + std::atanh(-0.964))));
  }
  r.check(worst <= 1e-6, "max |m - closed form| " + num(worst) + " (tol 1e-6)");
  r.check(seconds < 1.0, "runtime " + num(seconds) + " s (limit 1 s)");
  return r;
}

// Independent double integration: RK4 on (m, rho) with q = i0 t,
// dm/dt = i0 (1 - m^2) / sw and drho/dt = F (m - m0).
double rho_by_simulation(double q_end, double i0, double flux, double sw, double m0, int steps) {
  const double t_end = q_end / i0;
  const double h = t_end / steps;
  auto f = [&](const std::array<double, 2>& x) {
    return std::array<double, 2>{i0 * (1.0 - x[0] * x[0]) / sw, flux * (x[0] - m0)};
  };
  std::array<double, 2> x{m0, 0.0};
  for (int k = 0; k < steps; ++k) {
    const auto k1 = f(x);
    const auto k2 = f({x[0] + 0.5 * h * k1[0], x[1] + 0.5 * h * k1[1]});
    const auto k3 = f({x[0] + 0.5 * h * k2[0], x[1] + 0.5 * h * k2[1]});
    const auto k4 = f({x[0] + h * k3[0], x[1] + h * k3[1]});
    for (int j = 0; j < 2; ++j) x[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
  }
  return x[1];
}

Result constitutive_ideality() {
  Result r;
  const double i0 = 1.0;
  const CoilCoreParams p(1.0, 1.0, -0.964);
  const int n = 1000;
  std::vector<double> qs, rhos;
  for (int k = 0; k <= n; ++k) {
    qs.push_back(10.0 * k / n);
    rhos.push_back(rho_and_L_constant_current(qs.back(), i0, p).rho);
  }
  bool increasing = true;
  for (int k = 1; k <= n; ++k) increasing = increasing && rhos[k] > rhos[k - 1];
  r.check(increasing, "rho strictly increasing on [0, 10]");

  double worst_fd = 0.0;
  const double h = 1e-4;
  for (int k = 1; k <= n; ++k) {
    const double q = qs[k];
    const double lo = std::max(0.0, q - h);
    const double fd = (rho_and_L_constant_current(q + h, i0, p).rho -
                       rho_and_L_constant_current(lo, i0, p).rho) / (q + h - lo);
    const double target = flux_of_charge(q, p) / i0;
    worst_fd = std::max(worst_fd, std::abs(fd - target) / std::abs(target));
  }
  r.check(worst_fd <= 1e-6, "central difference vs phi/i0 rel " + num(worst_fd) + " (tol 1e-6)");

  double sq = 0, sr = 0, sqq = 0, sqr = 0;
  for (int k = 0; k <= n; ++k) {
    sq += qs[k];
    sr += rhos[k];
    sqq += qs[k] * qs[k];
    sqr += qs[k] * rhos[k];
  }
  const double m = n + 1.0;
  const double slope = (m * sqr - sq * sr) / (m * sqq - sq * sq);
  const double icept = (sr - slope * sq) / m;
  double resid = 0.0;
  for (int k = 0; k <= n; ++k) resid = std::max(resid, std::abs(rhos[k] - (slope * qs[k] + icept)));
  const double range = rhos.back() - rhos.front();
  r.check(resid > 1e-3 * range, "affine fit residual " + num(resid / range) + " of range (nonlinear)");

  double worst_sim = 0.0;
  for (double q : {0.5, 2.0, 5.0, 10.0}) {
    const double sim = rho_by_simulation(q, i0, 1.0, 1.0, -0.964, 20000);
    const double cf = rho_and_L_constant_current(q, i0, p).rho;
    worst_sim = std::max(worst_sim, std::abs(sim - cf) / std::abs(cf));
  }
  r.check(worst_sim <= 1e-5, "double-integration oracle rel " + num(worst_sim) + " (tol 1e-5)");
  return r;
}

Result staircase_plasticity() {
  Result r;
  SpsConfig cfg;
  cfg.capacitance = 2.474e-6;
  const auto report = run_sps(cfg);
  const double target_l = 2.0 * 0.8 * 0.8 * 0.8;
  r.check(report.l_sequence.size() == 4 && std::abs(report.l_sequence.back() - target_l) <= 1e-12,
          "l_eff after 3 pulses " + num(report.l_sequence.back()) + " H (expect 1.024)");
  const std::array<double, 4> f0{71.6, 80.0, 89.4, 100.0};
  double worst = 0.0;
  for (std::size_t k = 0; k < 4 && k < report.f0_sequence.size(); ++k) {
    worst = std::max(worst, std::abs(report.f0_sequence[k] - f0[k]) / f0[k]);
  }
  std::string seq;
  for (double f : report.f0_sequence) seq += (seq.empty() ? "" : ", ") + num(f);
  r.check(report.f0_sequence.size() == 4 && worst <= 0.005,
          "f0 sequence " + seq + " Hz, worst rel " + num(worst) + " (tol 0.5%)");
  return r;
}

bool timing_property(const SpsReport& rep, double period, std::size_t n_probe) {
  if (rep.c_events.size() != n_probe) return false;
  return std::all_of(rep.timing_errors.begin(), rep.timing_errors.end(),
                     [&](const auto& e) { return e && *e <= 0.05 * period; });
}

Result sps_reproduction() {
  Result r;
  SpsConfig cfg;
  cfg.capacitance = 2.474e-6;
  const double T = cfg.period();
  const auto rep = run_sps(cfg);
  r.check(rep.s_events.size() == 3, "s_events " + std::to_string(rep.s_events.size()) + "/3");
  double worst_timing = 0.0;
  for (const auto& e : rep.timing_errors) worst_timing = std::max(worst_timing, e ? *e : INFINITY);
  r.check(timing_property(rep, T, 3),
          "C windows hit " + std::to_string(rep.c_events.size()) + "/3, worst timing " +
              num(worst_timing / T * 100) + "% of T (tol 5%)");
  const double expected_ratio = std::exp(-rep.alpha * T);
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k < rep.c_events.size(); ++k) {
    const double ratio = rep.c_events[k].amplitude / rep.c_events[k - 1].amplitude;
    worst_ratio = std::max(worst_ratio, std::abs(ratio - expected_ratio) / expected_ratio);
  }
  r.check(rep.c_events.size() >= 2 && worst_ratio <= 0.10,
          "C decay vs exp(-alpha T) = " + num(expected_ratio) + ", worst rel " + num(worst_ratio) +
              " (tol 10%)");
  SpsConfig control = cfg;
  control.delta = 0.0;
  const auto ctl = run_sps(control);
  r.check(!timing_property(ctl, T, 3),
          "control (delta = 0) C windows hit " + std::to_string(ctl.c_events.size()) + "/3, timing property fails");
  return r;
}

CompiledCircuit free_rlc(double r, double l, double c, double dt, double stop) {
  CompiledCircuit cc;
  cc.source = Waveform::constant(0.0);
  cc.resistance = r;
  cc.inductive = LinearInductor{l};
  cc.capacitance = c;
  cc.tran = {dt, stop};
  return cc;
}

// Capacitor discharging through the loop from v_c = 1.
double free_response(double t, double r, double l, double c) {
  const double a = r / (2 * l);
  const double wd = std::sqrt(1.0 / (l * c) - a * a);
  return std::exp(-a * t) * (std::cos(wd * t) + a / wd * std::sin(wd * t));
}

Result series_rlc() {
  Result r;
  const double R = 10.0, L = 1.0, C = 10e-6;
  const auto an = analyze_second_order(R, L, C);
  const double T = 1.0 / an.f0;
  OdeSystem::Options opts;
  opts.initial.v_c = 1.0;

  // Step response: step at t = 0 onto an uncharged loop.
  CompiledCircuit step = free_rlc(R, L, C, T / 1000, 20 * T);
  step.source = Waveform(Step{0.0, 1.0, 0.0});
  const auto trace = simulate_transient(compile_circuit(step));
  std::vector<double> ring(trace.v_out.size());
  std::transform(trace.v_out.begin(), trace.v_out.end(), ring.begin(), [](double v) { return v - 1.0; });
  const auto rd = measure_ringdown(trace.time, ring);
  const double fd_err = std::abs(rd.frequency - *an.fd) / *an.fd;
  const double a_err = std::abs(rd.alpha - an.alpha) / an.alpha;
  r.check(fd_err <= 0.01, "ringdown fd " + num(rd.frequency) + " vs " + num(*an.fd) + " Hz, rel " + num(fd_err) + " (tol 1%)");
  r.check(a_err <= 0.05, "ringdown alpha " + num(rd.alpha) + " vs " + num(an.alpha) + " 1/s, rel " + num(a_err) + " (tol 5%)");

  // Lossless energy drift over 10 periods.
  const auto lossless = simulate_transient(compile_circuit(free_rlc(0.0, L, C, T / 1000, 10 * T), opts));
  auto energy = [&](std::size_t k) {
    return 0.5 * L * lossless.i[k] * lossless.i[k] + 0.5 * C * lossless.v_out[k] * lossless.v_out[k];
  };
  double drift = 0.0;
  for (std::size_t k = 0; k < lossless.size(); ++k) {
    drift = std::max(drift, std::abs(energy(k) - energy(0)) / energy(0));
  }
  r.check(drift < 1e-6, "R = 0 energy drift " + num(drift) + " (tol 1e-6)");

  // Convergence: error at a fixed time for dt and dt / 2.
  auto error_at_end = [&](double dt) {
    const auto tr = simulate_transient(compile_circuit(free_rlc(R, L, C, dt, 4 * T), opts));
    double worst = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
      worst = std::max(worst, std::abs(tr.v_out[k] - free_response(tr.time[k], R, L, C)));
    }
    return worst;
  };
  const double e1 = error_at_end(T / 40);
  const double e2 = error_at_end(T / 80);
  r.check(e1 / e2 >= 12.0, "RK4 error ratio on dt halving " + num(e1 / e2) + " (need >= 12, order " +
                               num(std::log2(e1 / e2)) + ")");
  return r;
}

Result hysteresis() {
  Result r;
  // Drive amplitude 1 A at 10 Hz; the charge swing spans 2k switching units.
  const double k = 2.5;
  const double f = 10.0;
  const double sw = 1.0 / (2.0 * std::numbers::pi * f * k);
  const CoilCoreParams p(1.0, sw, -std::tanh(k));
  const auto loop = simulate_mh_loop(Waveform::sine(1.0, f), p, {3, 1000, {}});
  const auto m = loop_metrics(loop);
  r.check(m.area > 0.0, "loop closed, area " + num(m.area));
  const bool both = m.hc_up && m.hc_down;
  const double asym = both ? std::abs(*m.hc_up + *m.hc_down) / (0.5 * (*m.hc_up - *m.hc_down)) : INFINITY;
  r.check(both && asym <= 0.02, "coercive fields " + (both ? num(*m.hc_up) + " / " + num(*m.hc_down) : "missing") +
                                    ", asymmetry " + num(asym) + " (tol 2%)");

  const CoilCoreParams ps(1.0, 1e-3, -0.964);
  LoopOptions so;
  so.cycles = 1;
  so.cycle_span = 20e-3;
  const auto path = simulate_mh_loop(Waveform(Step{0.0, 1.0, 0.0}), ps, so);
  bool monotone = true;
  for (std::size_t j = 1; j < path.size(); ++j) monotone = monotone && path[j].m >= path[j - 1].m;
  r.check(monotone && std::abs(path.front().m + 0.964) < 1e-12 && path.back().m > 0.99,
          "step drive monotone from " + num(path.front().m) + " to " + num(path.back().m));

  const auto fit = fit_tanh_branches(loop);
  r.check(fit.max_abs_dev <= 0.05, "tanh-branch fit a " + num(fit.a) + ", hc " + num(fit.hc) +
                                       ", max |dm| " + num(fit.max_abs_dev) + " (tol 0.05)");
  return r;
}

Result parser() {
  Result r;
  bool golden = false;
  try {
    const auto doc = parse_netlist(slurp(fixture("learning_loop.cir")));
    const auto c = validate_circuit(doc);
    golden = std::holds_alternative<StaircaseInductor>(c.inductive);
    r.check(golden && same_structure(doc, parse_netlist(print_netlist(doc))),
            "golden netlist validates and round-trips");
  } catch (const std::exception& e) {
    r.check(false, std::string("golden netlist: ") + e.what());
  }

  struct Case {
    const char* file;
    const char* code;
    int line;
  };
  const Case cases[] = {
      {"lexical.cir", "E_LEXICAL", 3},
      {"unknown_kind.cir", "E_UNKNOWN_KIND", 4},
      {"malformed.cir", "E_MALFORMED_PARAMS", 1},
      {"duplicate.cir", "E_DUPLICATE_NAME", 5},
      {"topology.cir", "E_TOPOLOGY", 5},
      {"capacitance.cir", "E_CAPACITANCE", 4},
      {"missing_tran.cir", "E_MISSING_TRAN", 4},
      {"multiple_inductive.cir", "E_MULTIPLE_INDUCTIVE", 4},
  };
  int ok = 0;
  std::string misses;
  for (const auto& c : cases) {
    std::ostringstream out, err;
    const std::string path = fixture(c.file);
    const int code = run_cli({"simulate", path, "-o", "acceptance_unused_out"}, out, err);
    const std::string expect = path + ":" + std::to_string(c.line) + ":";
    if (code == 2 && err.str().find(expect) != std::string::npos &&
        err.str().find(c.code) != std::string::npos) {
      ++ok;
    } else {
      misses += std::string(" ") + c.file;
    }
  }
  r.check(ok == 8, std::to_string(ok) + "/8 error classes exit 2 with code and line" + misses);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"closed-form magnetization oracle", closed_form_oracle},
      {"constitutive curve ideality", constitutive_ideality},
      {"staircase plasticity", staircase_plasticity},
      {"stimulus-train learning", sps_reproduction},
      {"series RLC correctness", series_rlc},
      {"hysteresis", hysteresis},
      {"netlist parser", parser},
  };
  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.contains(id)) continue;
    Result res;
    try {
      res = criteria[k].second();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d %s: %s\n", res.pass ? "PASS" : "FAIL", id, criteria[k].first,
                res.detail.c_str());
    failed += res.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
