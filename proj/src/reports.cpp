#include "dtnsim/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dtnsim {

namespace {
std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}
}  // namespace

std::string format_fixed(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string summary_csv_header() {
  return "scenario,router,buffer,seed,created,started,relayed,delivered,dropped,"
         "dropped_buffer,dropped_expired,delivery_probability,overhead_ratio,"
         "latency_avg,latency_median,hopcount_avg,buffertime_avg";
}

std::string summary_csv_line(const SummaryRow& row) {
  const Summary& s = row.stats;
  std::ostringstream out;
  out << row.scenario << "," << row.router << "," << row.buffer << "," << row.seed << ","
      << s.created << "," << s.started << "," << s.relayed << "," << s.delivered << ","
      << s.dropped << "," << s.dropped_buffer << "," << s.dropped_expired << ","
      << format_fixed(s.delivery_probability) << "," << format_fixed(s.overhead_ratio) << ","
      << format_fixed(s.latency_avg) << "," << format_fixed(s.latency_median) << ","
      << format_fixed(s.hopcount_avg) << "," << format_fixed(s.buffertime_avg);
  return out.str();
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
  auto out = open_or_throw(path);
  out << summary_csv_header() << "\n";
  for (const auto& row : rows) out << summary_csv_line(row) << "\n";
}

void write_timeline_csv(const std::string& path,
                        const std::vector<MetricsAccumulator::TimelineRow>& rows) {
  auto out = open_or_throw(path);
  out << "time,created,delivered,delivery_rate\n";
  for (const auto& r : rows)
    out << format_fixed(r.time) << "," << r.created << "," << r.delivered << ","
        << format_fixed(r.rate) << "\n";
}

void write_hops_csv(const std::string& path, const std::map<int, std::int64_t>& histogram) {
  auto out = open_or_throw(path);
  out << "hops,count\n";
  for (const auto& [hops, count] : histogram) out << hops << "," << count << "\n";
}

std::string write_plot_data(const std::string& timeline_csv, const std::string& out_base) {
  std::ifstream in(timeline_csv);
  if (!in) throw std::runtime_error("cannot read '" + timeline_csv + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("time,", 0) != 0)
    throw std::runtime_error(timeline_csv + ": not a timeline csv");

  const std::string dat_path = out_base + ".dat";
  auto dat = open_or_throw(dat_path);
  dat << "# time delivery_rate\n";
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string time, created, delivered, rate;
    if (std::getline(ss, time, ',') && std::getline(ss, created, ',') &&
        std::getline(ss, delivered, ',') && std::getline(ss, rate))
      dat << time << " " << rate << "\n";
  }

  auto gp = open_or_throw(out_base + ".gp");
  gp << "set xlabel 'time (s)'\n"
     << "set ylabel 'delivery rate'\n"
     << "set yrange [0:1]\n"
     << "set grid\n"
     << "plot '" << dat_path << "' using 1:2 with lines title 'delivery rate'\n";
  return dat_path;
}

}  // namespace dtnsim
