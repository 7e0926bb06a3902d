#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "meminductor/amoeba.hpp"
#include "meminductor/circuit.hpp"
#include "meminductor/hysteresis.hpp"

namespace meminductor {

/// "%.10g"; the same double always renders to the same bytes.
std::string format_number(double v);

/// Header time,v_in,i,v_out,q,l_eff; absent columns are empty fields.
std::string trace_csv(const Trace& trace);

/// Header h,m.
std::string loop_csv(const std::vector<LoopSample>& loop);

struct RhoQRow {
  double q;
  double rho;
  double l;
};

/// Header q,rho,L.
std::string rho_q_csv(const std::vector<RhoQRow>& rows);

/// Standalone matplotlib script plotting `ys` against `x` from `csv_file`
/// (resolved next to the script).
std::string plot_script(std::string_view csv_file, std::string_view title, std::string_view x,
                        const std::vector<std::string>& ys);

nlohmann::json to_json(const SecondOrderMetrics& m);
nlohmann::json to_json(const LoopMetrics& m);
nlohmann::json to_json(const TanhBranchFit& fit);
nlohmann::json to_json(const ResponseEvent& e);
/// Keys l_sequence, f0_sequence, s_events, c_events, anticipation_detected,
/// timing_errors, plus probe_expected, noise_floor and alpha.
nlohmann::json to_json(const SpsReport& report);

/// Collects files in memory and publishes them together: everything is
/// written to hidden temporaries first and then renamed into place, so a
/// failure leaves no partial output behind.
class OutputBundle {
 public:
  void add(std::string name, std::string content);
  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& files() const noexcept {
    return files_;
  }
  /// Throws std::filesystem::filesystem_error or std::runtime_error on I/O failure.
  void commit(const std::filesystem::path& dir) const;

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace meminductor
