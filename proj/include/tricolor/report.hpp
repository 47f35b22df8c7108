#ifndef TRICOLOR_REPORT_HPP
#define TRICOLOR_REPORT_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tricolor/bench.hpp"
#include "tricolor/stats.hpp"

namespace tricolor {

/// Fixed schema: algorithm,type,n,p,delta,runs,SR,AES,ER. AES cell is empty
/// when no run succeeded.
void write_aggregate_csv(const std::vector<SweepResult>& results, std::ostream& out);

/// Per-instance schema: algorithm,type,n,p,delta,seed,runs,SR,AES. This is
/// the input the `stats` subcommand consumes.
void write_instances_csv(const std::vector<SweepResult>& results, std::ostream& out);
std::vector<InstanceScore> read_instances_csv(std::istream& in);

/// Rank diagram data: type,p,instances,algorithms,cd,chi2,p_value then one
/// row per algorithm with avg rank and the +-CD/2 interval.
void write_ranks_csv(const std::vector<RankGroup>& groups, std::ostream& out);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};
/// Standalone SVG line chart; y axis optionally log10.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series,
                           bool log_y = false);
/// Average ranks with +-CD/2 interval bars for one group.
std::string svg_rank_diagram(const RankGroup& group);

/// records dir -> aggregate.csv, instances.csv and per-type SR/AES charts.
void make_report(const std::string& records_dir, const std::string& out_dir);

/// instances.csv -> ranks.csv plus one rank diagram SVG per (type, p) group.
void make_stats_report(const std::string& instances_csv, const std::string& out_dir,
                       double alpha);

}  // namespace tricolor

#endif  // TRICOLOR_REPORT_HPP
