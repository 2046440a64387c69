#include "spde/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spde {

StudyAxis parse_axis(const std::string &name) {
  if (name == "spatial") return StudyAxis::spatial;
  if (name == "temporal") return StudyAxis::temporal;
  throw std::invalid_argument("unknown study axis '" + name + "'");
}

std::string to_string(StudyAxis axis) {
  return axis == StudyAxis::spatial ? "spatial" : "temporal";
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ConvergenceReport::finalize() {
  stats.clear();
  for (const auto &per_level : errors) stats.push_back(summarize(per_level));
  fit.reset();
  if (levels.size() < 3) return;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(stats[i].mean > 0.0)) return;
    x.push_back(levels[i]);
    y.push_back(stats[i].mean);
  }
  fit = fit_rate(x, y);
}

std::string samples_csv(const ConvergenceReport &report) {
  std::ostringstream out;
  out << "axis,level,sample,seed,sup_l2_error\n";
  const auto axis = to_string(report.axis);
  for (std::size_t l = 0; l < report.levels.size(); ++l) {
    for (std::size_t s = 0; s < report.errors[l].size(); ++s) {
      out << axis << ',' << report.levels[l] << ',' << s << ',' << report.seeds[s] << ','
          << format_real(report.errors[l][s]) << '\n';
    }
  }
  return out.str();
}

std::string summary_csv(const ConvergenceReport &report) {
  std::ostringstream out;
  out << "axis,level,mean_error,std_error,n_samples\n";
  const auto axis = to_string(report.axis);
  for (std::size_t l = 0; l < report.levels.size(); ++l) {
    const auto &s = report.stats[l];
    out << axis << ',' << report.levels[l] << ',' << format_real(s.mean) << ','
        << format_real(s.std_error) << ',' << s.count << '\n';
  }
  if (report.fit) {
    out << "# slope=" << format_real(report.fit->slope)
        << " intercept=" << format_real(report.fit->intercept)
        << " r2=" << format_real(report.fit->r2) << '\n';
  } else {
    out << "# slope=nan intercept=nan r2=nan\n";
  }
  out << "# sup_t taken over coarse grid times; config_digest=" << report.config_digest << '\n';
  return out.str();
}

void write_report(const std::filesystem::path &dir, const ConvergenceReport &report) {
  std::filesystem::create_directories(dir);
  auto write = [&](const char *name, const std::string &text) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  };
  write("convergence_samples.csv", samples_csv(report));
  write("convergence_summary.csv", summary_csv(report));
}

}  // namespace spde
