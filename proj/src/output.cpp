#include "meminductor/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace meminductor {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string trace_csv(const Trace& trace) {
  std::string out = "time,v_in,i,v_out,q,l_eff\n";
  out.reserve(out.size() + trace.size() * 80);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out += format_number(trace.time[k]);
    out += ',';
    out += format_number(trace.v_in[k]);
    out += ',';
    out += format_number(trace.i[k]);
    out += ',';
    out += format_number(trace.v_out[k]);
    out += ',';
    out += format_number(trace.q[k]);
    out += ',';
    if (trace.l_eff) out += format_number((*trace.l_eff)[k]);
    out += '\n';
  }
  return out;
}

std::string loop_csv(const std::vector<LoopSample>& loop) {
  std::string out = "h,m\n";
  for (const auto& s : loop) out += format_number(s.h) + ',' + format_number(s.m) + '\n';
  return out;
}

std::string rho_q_csv(const std::vector<RhoQRow>& rows) {
  std::string out = "q,rho,L\n";
  for (const auto& r : rows) {
    out += format_number(r.q) + ',' + format_number(r.rho) + ',' + format_number(r.l) + '\n';
  }
  return out;
}

std::string plot_script(std::string_view csv_file, std::string_view title, std::string_view x,
                        const std::vector<std::string>& ys) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
    << "# Plots " << csv_file << ". Display only; the CSV is the result.\n"
    << "import csv\n"
    << "import os\n"
    << "import sys\n\n"
    << "import matplotlib.pyplot as plt\n\n"
    << "here = os.path.dirname(os.path.abspath(__file__))\n"
    << "with open(os.path.join(here, \"" << csv_file << "\"), newline=\"\") as f:\n"
    << "    rows = list(csv.DictReader(f))\n\n"
    << "def column(name):\n"
    << "    return [float(r[name]) if r[name] != \"\" else float(\"nan\") for r in rows]\n\n"
    << "ys = [";
  for (std::size_t k = 0; k < ys.size(); ++k) s << (k ? ", " : "") << '"' << ys[k] << '"';
  s << "]\n"
    << "fig, axes = plt.subplots(len(ys), 1, sharex=True, squeeze=False)\n"
    << "for ax, name in zip(axes[:, 0], ys):\n"
    << "    ax.plot(column(\"" << x << "\"), column(name))\n"
    << "    ax.set_ylabel(name)\n"
    << "    ax.grid(True)\n"
    << "axes[-1, 0].set_xlabel(\"" << x << "\")\n"
    << "fig.suptitle(\"" << title << "\")\n"
    << "if len(sys.argv) > 1:\n"
    << "    fig.savefig(sys.argv[1])\n"
    << "else:\n"
    << "    plt.show()\n";
  return s.str();
}

nlohmann::json to_json(const SecondOrderMetrics& m) {
  nlohmann::json j{{"f0", m.f0}, {"alpha", m.alpha}, {"regime", std::string(to_string(m.regime))}};
  j["fd"] = m.fd ? nlohmann::json(*m.fd) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const LoopMetrics& m) {
  nlohmann::json j{{"area", m.area}};
  j["hc_up"] = m.hc_up ? nlohmann::json(*m.hc_up) : nlohmann::json(nullptr);
  j["hc_down"] = m.hc_down ? nlohmann::json(*m.hc_down) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const TanhBranchFit& fit) {
  return {{"a", fit.a}, {"hc", fit.hc}, {"max_abs_dev", fit.max_abs_dev}, {"rms_dev", fit.rms_dev}};
}

nlohmann::json to_json(const ResponseEvent& e) {
  return {{"index", e.index}, {"expected", e.expected}, {"time", e.time},
          {"value", e.value}, {"amplitude", e.amplitude}};
}

nlohmann::json to_json(const SpsReport& report) {
  nlohmann::json j;
  j["l_sequence"] = report.l_sequence;
  j["f0_sequence"] = report.f0_sequence;
  j["s_events"] = nlohmann::json::array();
  for (const auto& e : report.s_events) j["s_events"].push_back(to_json(e));
  j["c_events"] = nlohmann::json::array();
  for (const auto& e : report.c_events) j["c_events"].push_back(to_json(e));
  j["anticipation_detected"] = report.anticipation_detected;
  j["timing_errors"] = nlohmann::json::array();
  for (const auto& t : report.timing_errors) {
    j["timing_errors"].push_back(t ? nlohmann::json(*t) : nlohmann::json(nullptr));
  }
  j["probe_expected"] = report.probe_expected;
  j["noise_floor"] = report.noise_floor;
  j["alpha"] = report.alpha;
  return j;
}

void OutputBundle::add(std::string name, std::string content) {
  files_.emplace_back(std::move(name), std::move(content));
}

void OutputBundle::commit(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& [tmp, final_path] : staged) fs::remove(tmp, ec);
  };
  try {
    for (const auto& [name, content] : files_) {
      const fs::path final_path = dir / name;
      const fs::path tmp = dir / ("." + name + ".tmp" + std::to_string(::getpid()));
      staged.emplace_back(tmp, final_path);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      out.close();
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    for (const auto& [tmp, final_path] : staged) fs::rename(tmp, final_path);
  } catch (...) {
    cleanup();
    throw;
  }
}

}  // namespace meminductor
