#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "meminductor/output.hpp"

using namespace meminductor;
namespace fs = std::filesystem;

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.024) == "1.024");
  CHECK(format_number(2.474e-6) == "2.474e-06");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333");
}

TEST_CASE("trace CSV leaves absent columns empty") {
  Trace t;
  t.time = {0.0, 0.5};
  t.v_in = {1.0, 1.0};
  t.i = {0.0, 0.25};
  t.v_out = {0.0, -0.5};
  t.q = {0.0, 0.1};
  CHECK(trace_csv(t) == "time,v_in,i,v_out,q,l_eff\n0,1,0,0,0,\n0.5,1,0.25,-0.5,0.1,\n");
  t.l_eff = std::vector<double>{2.0, 1.6};
  CHECK(trace_csv(t) == "time,v_in,i,v_out,q,l_eff\n0,1,0,0,0,2\n0.5,1,0.25,-0.5,0.1,1.6\n");
}

TEST_CASE("loop and rho-q CSV headers") {
  CHECK(loop_csv({{0.5, -0.25}}) == "h,m\n0.5,-0.25\n");
  CHECK(rho_q_csv({{1.0, 2.0, 3.0}}) == "q,rho,L\n1,2,3\n");
}

TEST_CASE("plot script names its CSV and columns") {
  const auto s = plot_script("trace.csv", "run", "time", {"v_out", "l_eff"});
  CHECK(s.find("\"trace.csv\"") != std::string::npos);
  CHECK(s.find("\"v_out\", \"l_eff\"") != std::string::npos);
  CHECK(s.find("import matplotlib") != std::string::npos);
}

TEST_CASE("report JSON keys") {
  SpsReport r;
  r.l_sequence = {2.0};
  r.timing_errors = {std::nullopt, 1e-4};
  const auto j = to_json(r);
  for (const char* k : {"l_sequence", "f0_sequence", "s_events", "c_events", "anticipation_detected",
                        "timing_errors"}) {
    CHECK(j.contains(k));
  }
  CHECK(j["timing_errors"][0].is_null());
  CHECK(j["timing_errors"][1] == 1e-4);
  LoopMetrics m;
  m.area = 1.0;
  CHECK(to_json(m)["hc_up"].is_null());
}

TEST_CASE("bundle commit writes every file and no temporaries") {
  const fs::path dir = fs::temp_directory_path() / "meminductor_bundle_test";
  fs::remove_all(dir);
  OutputBundle b;
  b.add("a.txt", "alpha");
  b.add("b.txt", "beta");
  b.commit(dir);
  std::ifstream in(dir / "b.txt");
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str() == "beta");
  int count = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++count;
  CHECK(count == 2);
  fs::remove_all(dir);
}
