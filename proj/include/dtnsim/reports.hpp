#pragma once

// CSV emission. Numbers are rendered with 4 decimal places; column orders are
// fixed and documented in the README.

#include <map>
#include <string>
#include <vector>

#include "dtnsim/metrics.hpp"

namespace dtnsim {

struct SummaryRow {
  std::string scenario;
  std::string router;         // "epidemic" | "snw"
  std::int64_t buffer = 0;    // traffic destination group's buffer, bytes
  std::uint64_t seed = 0;
  Summary stats;
};

// "nan" for NaN, otherwise fixed-point with `decimals` places
std::string format_fixed(double v, int decimals = 4);

std::string summary_csv_header();
std::string summary_csv_line(const SummaryRow& row);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows);
void write_timeline_csv(const std::string& path,
                        const std::vector<MetricsAccumulator::TimelineRow>& rows);
void write_hops_csv(const std::string& path, const std::map<int, std::int64_t>& histogram);

// Reads a timeline.csv and emits <out_base>.dat (gnuplot-ready columns) and
// <out_base>.gp (a plot script). Returns the .dat path.
std::string write_plot_data(const std::string& timeline_csv, const std::string& out_base);

}  // namespace dtnsim
