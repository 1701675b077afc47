#include "mfc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mfc {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_field_csv(const std::string& path, const TimeGrid& tg,
                     const Grid1D& g, const TrajectoryField& field) {
  auto out = open_out(path);
  out << "t,x,value\n";
  for (int k = 0; k <= tg.m; ++k)
    for (int i = 0; i < g.n; ++i)
      out << fmt17(tg.t(k)) << ',' << fmt17(g.nodes(i)) << ','
          << fmt17(field.values(k, i)) << '\n';
}

TrajectoryField read_field_csv(const std::string& path, int m_plus_1, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  std::getline(in, line);  // header
  TrajectoryField field(m_plus_1, n);
  for (int k = 0; k < m_plus_1; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!std::getline(in, line))
        throw std::runtime_error("truncated CSV: " + path);
      const auto p1 = line.find(',');
      const auto p2 = line.find(',', p1 + 1);
      field.values(k, i) = std::stod(line.substr(p2 + 1));
    }
  }
  return field;
}

void write_functional_csv(const std::string& path,
                          const std::vector<double>& J_trace) {
  auto out = open_out(path);
  out << "iter,J\n";
  for (size_t i = 0; i < J_trace.size(); ++i)
    out << i << ',' << fmt17(J_trace[i]) << '\n';
}

void write_profile_csv(const std::string& path, const Grid1D& g,
                       const Eigen::VectorXd& values) {
  auto out = open_out(path);
  out << "x,value\n";
  for (int i = 0; i < g.n; ++i)
    out << fmt17(g.nodes(i)) << ',' << fmt17(values(i)) << '\n';
}

}  // namespace mfc
