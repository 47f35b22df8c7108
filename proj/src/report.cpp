#include "tricolor/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tricolor {

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

void write_aggregate_csv(const std::vector<SweepResult>& results, std::ostream& out) {
  out << "algorithm,type,n,p,delta,runs,SR,AES,ER\n";
  for (const auto& r : results) {
    out << r.algorithm << "," << r.type << "," << r.n << "," << r.p_label << "," << r.delta
        << "," << r.runs << "," << fmt(r.sr) << "," << (r.aes ? fmt(*r.aes) : "") << ","
        << fmt(r.er) << "\n";
  }
}

void write_instances_csv(const std::vector<SweepResult>& results, std::ostream& out) {
  out << "algorithm,type,n,p,delta,seed,runs,SR,AES\n";
  for (const auto& r : results) {
    out << r.algorithm << "," << r.type << "," << r.n << "," << r.p_label << "," << r.delta
        << "," << r.seed << "," << r.runs << "," << fmt(r.sr) << ","
        << (r.aes ? fmt(*r.aes) : "") << "\n";
  }
}

std::vector<InstanceScore> read_instances_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty instances csv");
  const auto header = split_csv_line(line);
  const std::vector<std::string> expected = {"algorithm", "type", "n",  "p",  "delta",
                                             "seed",      "runs", "SR", "AES"};
  if (header != expected) throw std::runtime_error("unexpected instances csv header");
  std::vector<InstanceScore> scores;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != expected.size())
      throw std::runtime_error("instances csv line " + std::to_string(lineno) +
                               ": wrong field count");
    InstanceScore s;
    s.algorithm = f[0];
    s.type = f[1];
    s.n = std::stoi(f[2]);
    s.p_label = f[3];
    s.delta = std::stoi(f[4]);
    s.graph_seed = std::stoull(f[5]);
    s.sr = std::stod(f[7]);
    if (!f[8].empty()) s.aes = std::stod(f[8]);
    scores.push_back(std::move(s));
  }
  return scores;
}

void write_ranks_csv(const std::vector<RankGroup>& groups, std::ostream& out) {
  out << "type,p,instances,algorithm,avg_rank,rank_lo,rank_hi,cd,friedman_chi2,friedman_p\n";
  for (const auto& g : groups) {
    for (const auto& e : g.entries) {
      out << g.type << "," << g.p_label << "," << g.instances << "," << e.algorithm << ","
          << fmt(e.avg_rank) << "," << fmt(e.avg_rank - g.cd / 2) << ","
          << fmt(e.avg_rank + g.cd / 2) << "," << fmt(g.cd) << "," << fmt(g.test.statistic)
          << "," << fmt(g.test.p_value) << "\n";
    }
  }
}

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Scale {
  double lo, hi, px0, px1;
  double operator()(double v) const {
    if (hi == lo) return (px0 + px1) / 2;
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series,
                           bool log_y) {
  constexpr int W = 720, H = 440;
  constexpr double ml = 70, mr = 160, mt = 40, mb = 50;

  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  bool first = true;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      const double yv = log_y ? std::log10(std::max(y, 1.0)) : y;
      if (first) {
        xlo = xhi = x;
        ylo = yhi = yv;
        first = false;
      } else {
        xlo = std::min(xlo, x);
        xhi = std::max(xhi, x);
        ylo = std::min(ylo, yv);
        yhi = std::max(yhi, yv);
      }
    }
  }
  if (first) { xlo = ylo = 0; xhi = yhi = 1; }
  if (ylo == yhi) { ylo -= 0.5; yhi += 0.5; }
  if (xlo == xhi) { xlo -= 0.5; xhi += 0.5; }

  const Scale sx{xlo, xhi, ml, W - mr};
  const Scale sy{ylo, yhi, H - mb, mt};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(title) << "</text>\n";

  // axes + ticks
  svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double fx = xlo + (xhi - xlo) * t / 5.0;
    const double fy = ylo + (yhi - ylo) * t / 5.0;
    svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << H - mb << "\" x2=\"" << sx(fx) << "\" y2=\""
        << H - mb + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << sx(fx) << "\" y=\"" << H - mb + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(std::round(fx * 1e6) / 1e6)
        << "</text>\n";
    const std::string ylabel = log_y ? "1e" + fmt(std::round(fy * 100) / 100) : fmt(std::round(fy * 1e4) / 1e4);
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(fy) << "\" x2=\"" << ml << "\" y2=\""
        << sy(fy) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << sy(fy) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << ylabel << "</text>\n";
  }
  svg << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape_xml(x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
      << (mt + H - mb) / 2 << ")\">" << escape_xml(y_label) << "</text>\n";

  int idx = 0;
  for (const auto& s : series) {
    const char* color = kPalette[idx % (sizeof kPalette / sizeof *kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : s.points) {
      const double yv = log_y ? std::log10(std::max(y, 1.0)) : y;
      svg << sx(x) << "," << sy(yv) << " ";
    }
    svg << "\"/>\n";
    for (auto [x, y] : s.points) {
      const double yv = log_y ? std::log10(std::max(y, 1.0)) : y;
      svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(yv) << "\" r=\"2.5\" fill=\"" << color
          << "\"/>\n";
    }
    const double ly = mt + 16.0 * idx;
    svg << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 34
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << W - mr + 40 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
        << escape_xml(s.name) << "</text>\n";
    ++idx;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string svg_rank_diagram(const RankGroup& group) {
  const int k = static_cast<int>(group.entries.size());
  const int W = 640, H = 70 + 34 * k;
  constexpr double ml = 140, mr = 30;
  double lo = 1, hi = static_cast<double>(k);
  for (const auto& e : group.entries) {
    lo = std::min(lo, e.avg_rank - group.cd / 2);
    hi = std::max(hi, e.avg_rank + group.cd / 2);
  }
  const Scale sx{lo, hi, ml, W - mr};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">type="
      << escape_xml(group.type) << " p=" << escape_xml(group.p_label) << " (N="
      << group.instances << ", CD=" << fmt(std::round(group.cd * 1000) / 1000)
      << ")</text>\n";
  int row = 0;
  for (const auto& e : group.entries) {
    const double y = 50 + 34.0 * row;
    svg << "<text x=\"" << ml - 10 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"12\">" << escape_xml(e.algorithm) << "</text>\n"
        << "<line x1=\"" << sx(e.avg_rank - group.cd / 2) << "\" y1=\"" << y << "\" x2=\""
        << sx(e.avg_rank + group.cd / 2) << "\" y2=\"" << y
        << "\" stroke=\"#1f77b4\" stroke-width=\"3\"/>\n"
        << "<circle cx=\"" << sx(e.avg_rank) << "\" cy=\"" << y
        << "\" r=\"4\" fill=\"#d62728\"/>\n"
        << "<text x=\"" << sx(e.avg_rank) << "\" y=\"" << y - 8
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(std::round(e.avg_rank * 100) / 100)
        << "</text>\n";
    ++row;
  }
  svg << "</svg>\n";
  return svg.str();
}

void make_report(const std::string& records_dir, const std::string& out_dir) {
  const auto records = read_records_dir(records_dir);
  std::filesystem::create_directories(out_dir);

  const auto aggregated = aggregate(records, GroupBy{});
  {
    std::ofstream out(std::filesystem::path(out_dir) / "aggregate.csv");
    if (!out) throw std::runtime_error("cannot write aggregate.csv");
    write_aggregate_csv(aggregated, out);
  }
  GroupBy per_instance;
  per_instance.seed = true;
  const auto instances = aggregate(records, per_instance);
  {
    std::ofstream out(std::filesystem::path(out_dir) / "instances.csv");
    if (!out) throw std::runtime_error("cannot write instances.csv");
    write_instances_csv(instances, out);
  }

  // One SR and one AES chart per (graph type, n); series per algorithm.
  std::set<std::pair<std::string, int>> panels;
  for (const auto& r : aggregated) panels.insert({r.type, r.n});
  for (const auto& [type, n] : panels) {
    std::map<std::string, Series> sr_series, aes_series;
    for (const auto& r : aggregated) {
      if (r.type != type || r.n != n) continue;
      const double p = Decimal::parse(r.p_label).value();
      auto& s = sr_series[r.algorithm];
      s.name = r.algorithm;
      s.points.emplace_back(p, r.sr);
      if (r.aes) {
        auto& a = aes_series[r.algorithm];
        a.name = r.algorithm;
        a.points.emplace_back(p, *r.aes);
      }
    }
    auto finalize = [](std::map<std::string, Series>& m) {
      std::vector<Series> out;
      for (auto& [name, s] : m) {
        std::sort(s.points.begin(), s.points.end());
        out.push_back(std::move(s));
      }
      return out;
    };
    const std::string suffix = type + "_" + std::to_string(n);
    {
      std::ofstream out(std::filesystem::path(out_dir) / ("sr_" + suffix + ".svg"));
      out << svg_line_chart("SR on " + type + " graphs, n=" + std::to_string(n), "p", "SR",
                            finalize(sr_series));
    }
    {
      std::ofstream out(std::filesystem::path(out_dir) / ("aes_" + suffix + ".svg"));
      out << svg_line_chart("AES on " + type + " graphs, n=" + std::to_string(n), "p", "AES",
                            finalize(aes_series), /*log_y=*/true);
    }
  }
}

void make_stats_report(const std::string& instances_csv, const std::string& out_dir,
                       double alpha) {
  std::ifstream in(instances_csv);
  if (!in) throw std::runtime_error("cannot open: " + instances_csv);
  const auto scores = read_instances_csv(in);
  std::filesystem::create_directories(out_dir);
  std::ofstream warn_out(std::filesystem::path(out_dir) / "stats_warnings.txt");
  const auto groups = significance_report(
      scores, alpha, [&](const std::string& msg) { warn_out << msg << "\n"; });
  std::ofstream ranks(std::filesystem::path(out_dir) / "ranks.csv");
  if (!ranks) throw std::runtime_error("cannot write ranks.csv");
  write_ranks_csv(groups, ranks);
  for (const auto& g : groups) {
    std::ofstream out(std::filesystem::path(out_dir) /
                      ("ranks_" + g.type + "_" + g.p_label + ".svg"));
    out << svg_rank_diagram(g);
  }
}

}  // namespace tricolor
