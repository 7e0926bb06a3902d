#include <doctest.h>

#include <cmath>
#include <numbers>

#include "meminductor/circuit.hpp"
#include "meminductor/error.hpp"
#include "meminductor/netlist.hpp"

using namespace meminductor;

namespace {

CompiledCircuit rlc(Waveform source, double r, InductiveElement ind, double c, double dt, double stop) {
  CompiledCircuit cc;
  cc.source = std::move(source);
  cc.resistance = r;
  cc.inductive = std::move(ind);
  cc.capacitance = c;
  cc.tran = {dt, stop};
  return cc;
}

// Unit step response of the capacitor voltage, underdamped series RLC.
double step_response(double t, double r, double l, double c) {
  const double a = r / (2 * l);
  const double wd = std::sqrt(1.0 / (l * c) - a * a);
  return 1.0 - std::exp(-a * t) * (std::cos(wd * t) + a / wd * std::sin(wd * t));
}

}  // namespace

TEST_CASE("second-order analytics") {
  const auto m = analyze_second_order(10.0, 2.0, 1e-6);
  CHECK(m.f0 == doctest::Approx(112.5395395).epsilon(1e-9));
  CHECK(m.alpha == 2.5);
  CHECK(m.regime == Regime::Underdamped);
  REQUIRE(m.fd);
  CHECK(*m.fd == doctest::Approx(std::sqrt(m.f0 * m.f0 - std::pow(2.5 / (2 * std::numbers::pi), 2))));
  // R = 2 sqrt(L / C) is critical damping.
  const auto crit = analyze_second_order(2.0 * std::sqrt(2.0 / 1e-6), 2.0, 1e-6);
  CHECK(crit.regime == Regime::Critical);
  CHECK_FALSE(crit.fd);
  CHECK(analyze_second_order(1e5, 2.0, 1e-6).regime == Regime::Overdamped);
  CHECK_THROWS_AS(analyze_second_order(1.0, 0.0, 1e-6), Error);
  CHECK_THROWS_AS(analyze_second_order(-1.0, 1.0, 1e-6), Error);
  CHECK(to_string(Regime::Overdamped) == "overdamped");
}

TEST_CASE("linear step response matches the analytic solution") {
  const double r = 20.0, l = 0.5, c = 10e-6;
  const auto trace = simulate_transient(
      compile_circuit(rlc(Waveform(Step{0.0, 1.0, 0.0}), r, LinearInductor{l}, c, 1e-5, 0.05)));
  REQUIRE(trace.size() == 5001);
  CHECK(trace.time[1234] == doctest::Approx(1234 * 1e-5));
  double worst = 0.0;
  for (std::size_t k = 0; k < trace.size(); ++k) {
    worst = std::max(worst, std::abs(trace.v_out[k] - step_response(trace.time[k], r, l, c)));
  }
  CHECK(worst < 1e-7);
  REQUIRE(trace.l_eff);
  CHECK(trace.l_eff->back() == l);
  // q integrates i; v_out = q / C for a capacitor starting uncharged.
  CHECK(trace.v_out.back() == doctest::Approx(trace.q.back() / c));
}

TEST_CASE("transient argument checks") {
  const auto sys = compile_circuit(rlc(Waveform::constant(1.0), 1.0, LinearInductor{1.0}, 1e-6, 1e-3, 1e-2));
  TransientOptions o;
  o.tran = TranSpec{0.0, 1.0};
  CHECK_THROWS_AS(simulate_transient(sys, o), Error);
  o.tran = TranSpec{0.2, 1.0};
  CHECK_THROWS_AS(simulate_transient(sys, o), Error);
  CHECK_THROWS_AS(compile_circuit(rlc(Waveform{}, 1.0, LinearInductor{1.0}, 0.0, 1e-3, 1.0)), Error);
}

TEST_CASE("staircase drops at each pulse start") {
  const auto c = rlc(Waveform(PulseTrain{0.0, 1.0, 10e-3, 1e-3, 10e-3, 3}), 10.0,
                     StaircaseInductor{2.0, 0.2}, 2.474e-6, 1e-5, 70e-3);
  const auto trace = simulate_transient(compile_circuit(c));
  const auto& l = *trace.l_eff;
  CHECK(l[999] == 2.0);
  CHECK(l[1000] == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(l[2000] == doctest::Approx(1.28).epsilon(1e-15));
  CHECK(l[3000] == doctest::Approx(1.024).epsilon(1e-15));
  CHECK(l.back() == l[3000]);
  // Custom event list overrides the pulse starts.
  TransientOptions o;
  o.staircase_events = std::vector<double>{5e-3};
  const auto t2 = simulate_transient(compile_circuit(c), o);
  CHECK(t2.l_eff->back() == doctest::Approx(1.6));
}

TEST_CASE("coil-core loop: algebraic current and no l_eff column") {
  const auto doc = parse_netlist(
      "V1 in 0 SIN(0 1 50)\nR1 in a 100\nML1 a b MLCORE(flux_scale=1e-3, sw=0.2u, m0=-0.964)\n"
      "C1 b 0 10u\n.tran 10u 40m\n");
  const auto circuit = validate_circuit(doc);
  const auto sys = compile_circuit(circuit);
  CHECK_FALSE(sys.inertial());
  const auto trace = simulate_transient(sys);
  CHECK_FALSE(trace.l_eff);
  CHECK_THROWS_AS((void)trace.column("l_eff"), Error);
  CHECK_THROWS_AS((void)trace.column("nope"), Error);
  const auto& p = std::get<CoilCoreElement>(circuit.inductive).params;
  // KVL at every sample: v_in = R i + dphi/dq i + v_c.
  double worst = 0.0;
  for (std::size_t k = 0; k < trace.size(); k += 97) {
    const double drop = 100.0 * trace.i[k] + flux_slope(trace.q[k], p) * trace.i[k] + trace.v_out[k];
    worst = std::max(worst, std::abs(trace.v_in[k] - drop));
  }
  CHECK(worst < 1e-9);
  // i is the derivative of q.
  const std::size_t k = 2000;
  const double dq = (trace.q[k + 1] - trace.q[k - 1]) / (2 * trace.dt);
  CHECK(dq == doctest::Approx(trace.i[k]).epsilon(1e-3));
}

TEST_CASE("stiffness floor is enforced") {
  const auto c = rlc(Waveform::constant(1.0), 0.0, CoilCoreElement{CoilCoreParams()}, 1e-6, 1e-6, 1e-4);
  OdeSystem::Options o;
  o.stiffness_floor = 1e12;
  try {
    simulate_transient(compile_circuit(c, o));
    FAIL("expected a stiffness error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Stiffness);
  }
}

TEST_CASE("ringdown of a synthetic damped sine") {
  std::vector<double> t, v;
  for (int k = 0; k <= 20000; ++k) {
    t.push_back(k * 1e-3);
    v.push_back(std::exp(-0.25 * t.back()) * std::sin(2 * std::numbers::pi * 1.59105 * t.back()));
  }
  const auto rd = measure_ringdown(t, v);
  CHECK(rd.frequency == doctest::Approx(1.59105).epsilon(1e-4));
  CHECK(rd.alpha == doctest::Approx(0.25).epsilon(1e-3));
  CHECK_THROWS_AS(measure_ringdown({0, 1, 2}, {1, -1, 1}), Error);
}

TEST_CASE("local extrema refine the peak position") {
  std::vector<double> t, v;
  for (int k = 0; k <= 100; ++k) {
    t.push_back(k * 0.01);
    v.push_back(-std::pow(t.back() - 0.503, 2));
  }
  const auto ex = local_extrema(t, v);
  REQUIRE(ex.size() == 1);
  CHECK(ex[0].t == doctest::Approx(0.503).epsilon(1e-9));
  CHECK(ex[0].value == doctest::Approx(0.0));
}

TEST_CASE("coil-core current integrates back to the charge column") {
  const auto circuit = validate_circuit(parse_netlist(
      "V1 in 0 SIN(0 1 50)\nR1 in a 100\nML1 a b MLCORE(flux_scale=1e-3, sw=0.2u, m0=-0.964)\n"
      "C1 b 0 10u\n.tran 0.5u 40m\n"));
  const auto trace = simulate_transient(compile_circuit(circuit));
  double q = 0.0;
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    q += 0.5 * trace.dt * (trace.i[k - 1] + trace.i[k]);
    worst = std::max(worst, std::abs(q - trace.q[k]));
    scale = std::max(scale, std::abs(trace.q[k]));
  }
  CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("envelope of a decaying sine follows the exponential") {
  std::vector<double> t, v;
  for (int k = 0; k <= 3000; ++k) {
    t.push_back(k * 1e-3);
    v.push_back(std::exp(-t.back()) * std::sin(2 * std::numbers::pi * 10 * t.back()));
  }
  const auto env = envelope(t, v);
  REQUIRE(env.size() >= 50);
  for (std::size_t k = 0; k < env.size(); ++k) {
    CHECK(env[k].amplitude == doctest::Approx(std::exp(-env[k].t)).epsilon(0.02));
    if (k > 0) CHECK(env[k].amplitude <= env[k - 1].amplitude);
  }
  std::vector<double> flat;
  for (double x : t) flat.push_back(std::sin(2 * std::numbers::pi * 10 * x));
  for (const auto& p : envelope(t, flat)) CHECK(p.amplitude == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("resonance rises along the staircase") {
  double prev = 0.0;
  for (double l : {2.0, 1.6, 1.28, 1.024}) {
    const double f0 = analyze_second_order(10.0, l, 2.474e-6).f0;
    CHECK(f0 > prev);
    prev = f0;
  }
}
