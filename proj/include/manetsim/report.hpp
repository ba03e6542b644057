#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "manetsim/analysis.hpp"
#include "manetsim/ensemble.hpp"

namespace manet {

/// FNV-1a 64-bit, used to stamp every data file with its config hash.
std::uint64_t fnv1a(std::string_view text);
std::string to_hex(std::uint64_t value);

/// Fixed-schema emitters.  Every file starts with a comment line carrying
/// the config hash and seed, so re-runs are byte-comparable.

void write_curves_csv(std::ostream& out,
                      const std::vector<ConnectivityCurve>& curves,
                      const std::map<int, LogisticFit>* fits,
                      std::string_view config_hash, std::uint64_t seed);

std::vector<ConnectivityCurve> read_curves_csv(std::istream& in);

void write_collapse_csv(std::ostream& out,
                        const std::vector<ConnectivityCurve>& curves,
                        const CollapseResult& collapse,
                        std::string_view config_hash, std::uint64_t seed);

void write_collapse_profile_csv(std::ostream& out,
                                const CollapseResult& collapse,
                                std::string_view config_hash,
                                std::uint64_t seed);

void write_metrics_csv(std::ostream& out, const MetricsTable& table,
                       std::string_view config_hash, std::uint64_t seed);

struct KcSweepRow {
  double sigma = 0.0;
  int k_c = 0;
  double mean_degree = 0.0;
  std::int64_t accepted = 0;
  std::int64_t attempts = 0;
};

void write_kc_sweep_csv(std::ostream& out, int z,
                        const std::vector<KcSweepRow>& rows,
                        std::string_view config_hash, std::uint64_t seed);

/// Gnuplot scripts matching the emitted CSVs (data-only pipeline; the
/// scripts are convenience, not a GUI).
std::string gnuplot_curves_script(const std::string& csv_name,
                                  const std::vector<int>& z_list);
std::string gnuplot_collapse_script(const std::string& csv_name,
                                    const std::vector<int>& z_list);
std::string gnuplot_metrics_script(const std::vector<std::string>& csv_names);

}  // namespace manet
