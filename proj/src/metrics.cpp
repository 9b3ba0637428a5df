#include "artrec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "artrec/error.hpp"

namespace artrec {

namespace {

void check_list(const IdList& l, const char* what) {
  if (l.empty()) fail(ErrorKind::Validation, std::string(what) + ": empty list");
  std::unordered_set<std::string> s(l.begin(), l.end());
  if (s.size() != l.size()) fail(ErrorKind::Validation, std::string(what) + ": duplicate ids");
}

}  // namespace

double iou(const IdList& a, const IdList& b) {
  check_list(a, "iou");
  check_list(b, "iou");
  const std::unordered_set<std::string> sa(a.begin(), a.end());
  std::size_t inter = 0;
  for (const auto& x : b) inter += sa.count(x);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

double rbo(const IdList& a, const IdList& b, double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::Usage, "rbo: p must lie in (0, 1)");
  check_list(a, "rbo");
  check_list(b, "rbo");
  if (a.size() != b.size()) fail(ErrorKind::Validation, "rbo: lists differ in length");
  // Running overlap: an item adds one when it has already been seen in the
  // other list's prefix (or both lists place it at the same depth).
  std::unordered_set<std::string> only_a;
  std::unordered_set<std::string> only_b;
  std::size_t overlap = 0;
  double weight = 1.0;
  double sum = 0.0;
  const std::size_t k = a.size();
  for (std::size_t d = 1; d <= k; ++d) {
    const std::string& x = a[d - 1];
    const std::string& y = b[d - 1];
    if (x == y) {
      ++overlap;
    } else {
      if (only_b.erase(x)) ++overlap; else only_a.insert(x);
      if (only_a.erase(y)) ++overlap; else only_b.insert(y);
    }
    weight *= p;
    sum += static_cast<double>(overlap) / static_cast<double>(d) * weight;
  }
  return static_cast<double>(overlap) / static_cast<double>(k) * weight +
         (1.0 - p) / p * sum;
}

MeanSd mean_sd(const std::vector<double>& values) {
  MeanSd out;
  out.count = values.size();
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(ss / n);
  return out;
}

OverlapReport overlap_report(const UserRankings& rankings, double p,
                             const std::vector<std::string>& engine_order) {
  if (rankings.size() < 2) {
    fail(ErrorKind::Validation, "overlap report needs >= 2 users (got " +
                                    std::to_string(rankings.size()) + ")");
  }
  std::set<std::string> engines;
  for (const auto& [engine, _] : rankings.begin()->second) engines.insert(engine);
  for (const auto& [user, per_engine] : rankings) {
    std::set<std::string> e;
    for (const auto& [engine, _] : per_engine) e.insert(engine);
    if (e != engines) {
      fail(ErrorKind::Validation, "user '" + user + "' does not cover the same engines");
    }
  }
  OverlapReport report;
  report.p = p;
  report.users = rankings.size();
  for (const auto& e : engine_order) {
    if (engines.count(e)) report.columns.push_back(e);
  }
  for (const auto& e : engines) {
    if (std::find(report.columns.begin(), report.columns.end(), e) == report.columns.end()) {
      report.columns.push_back(e);
    }
  }

  // std::map iteration gives a canonical user order, so the report does not
  // depend on how the caller enumerated users.
  std::vector<const std::map<std::string, IdList>*> users;
  for (const auto& [_, per_engine] : rankings) users.push_back(&per_engine);

  std::vector<double> all_iou;
  std::vector<double> all_rbo;
  for (const auto& engine : report.columns) {
    std::vector<double> iou_values;
    std::vector<double> rbo_values;
    for (std::size_t i = 0; i < users.size(); ++i) {
      for (std::size_t j = i + 1; j < users.size(); ++j) {
        const IdList& a = users[i]->at(engine);
        const IdList& b = users[j]->at(engine);
        iou_values.push_back(iou(a, b));
        rbo_values.push_back(rbo(a, b, p));
      }
    }
    all_iou.insert(all_iou.end(), iou_values.begin(), iou_values.end());
    all_rbo.insert(all_rbo.end(), rbo_values.begin(), rbo_values.end());
    report.iou[engine] = mean_sd(iou_values);
    report.rbo[engine] = mean_sd(rbo_values);
  }
  report.iou[kAllColumn] = mean_sd(all_iou);
  report.rbo[kAllColumn] = mean_sd(all_rbo);
  report.columns.push_back(kAllColumn);
  return report;
}

namespace {

std::string cell(const MeanSd& v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v.mean << " ± " << v.sd;
  return s.str();
}

std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

void pad(std::ostream& out, const std::string& s, std::size_t width) {
  out << s;
  for (std::size_t i = display_width(s); i < width; ++i) out << ' ';
}

}  // namespace

void write_overlap_table(const OverlapReport& report, std::ostream& out) {
  out << "# Ranking overlap, Mean ± SD over " << report.users * (report.users - 1) / 2
      << " user pairs (" << report.users << " users)\n"
      << "# RBO: extrapolated estimate at list depth, p = " << report.p << "\n"
      << "# SD: population; All: per-engine pairwise values pooled across engines\n";
  std::size_t width = 13;
  for (const auto& c : report.columns) width = std::max(width, display_width(c) + 2);
  pad(out, "", 6);
  for (const auto& c : report.columns) pad(out, c, width);
  out << '\n';
  for (const auto* metric : {"IoU", "RBO"}) {
    const auto& values = std::string(metric) == "IoU" ? report.iou : report.rbo;
    pad(out, metric, 6);
    for (const auto& c : report.columns) pad(out, cell(values.at(c)), width);
    out << '\n';
  }
}

void write_overlap_tsv(const OverlapReport& report, std::ostream& out) {
  out << "metric\tcolumn\tmean\tsd\tpairs\n";
  out << std::setprecision(17);
  for (const auto* metric : {"IoU", "RBO"}) {
    const auto& values = std::string(metric) == "IoU" ? report.iou : report.rbo;
    for (const auto& c : report.columns) {
      const MeanSd& v = values.at(c);
      out << metric << '\t' << c << '\t' << v.mean << '\t' << v.sd << '\t' << v.count << '\n';
    }
  }
}

UserRankings read_rankings_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) data_error("cannot open rankings file " + path.string());
  UserRankings out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string user, engine, ids;
    if (!std::getline(fields, user, '\t') || !std::getline(fields, engine, '\t') ||
        !std::getline(fields, ids)) {
      data_error(path.string() + " line " + std::to_string(line_no) +
                 ": expected session<TAB>engine<TAB>ids");
    }
    if (user == "session_id") continue;  // header
    IdList list;
    std::istringstream id_stream(ids);
    std::string id;
    while (std::getline(id_stream, id, ',')) {
      if (!id.empty()) list.push_back(id);
    }
    out[user][engine] = std::move(list);
  }
  return out;
}

}  // namespace artrec
