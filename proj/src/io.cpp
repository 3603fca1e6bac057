#include "utm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "utm/errors.hpp"

namespace utm {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path, const std::vector<TraceSample>& samples) {
  auto out = open_out(path);
  out << "theta,re_f,im_f\n";
  for (const auto& s : samples)
    out << format_double(s.theta) << ',' << format_double(s.value.real()) << ','
        << format_double(s.value.imag()) << '\n';
  finish(out, path);
}

void write_grid_csv(const std::string& path, const StreamGrid& grid) {
  auto out = open_out(path);
  out << "x,y,psi,inside\n";
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const auto& v = grid.psi[std::size_t(j) * grid.nx + i];
      out << format_double(grid.x[i]) << ',' << format_double(grid.y[j]) << ',';
      if (v) out << format_double(*v) << ",1\n";
      else out << ",0\n";
    }
  }
  finish(out, path);
}

void write_report(const std::string& path, const Report& report) {
  auto out = open_out(path);
  for (const auto& [k, v] : report) out << k << " = " << v << '\n';
  finish(out, path);
}

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || trim(t.substr(0, eq)).empty())
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

}  // namespace utm
