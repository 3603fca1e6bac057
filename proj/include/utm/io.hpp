#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "utm/geometry.hpp"
#include "utm/vortex.hpp"

namespace utm {

struct TraceSample {
  double theta;
  cplx value;
};

// Columns theta,re_f,im_f; 17 significant digits; '\n' line endings.
void write_trace_csv(const std::string& path, const std::vector<TraceSample>& samples);

// Columns x,y,psi,inside; absent cells have inside=0 and an empty psi.
void write_grid_csv(const std::string& path, const StreamGrid& grid);

// Flat `key = value` lines in insertion order.
using Report = std::vector<std::pair<std::string, std::string>>;
void write_report(const std::string& path, const Report& report);

// Shortest text that round-trips the double (17 significant digits).
std::string format_double(double v);

// Reads `key = value` lines; blank lines and lines starting with '#' are
// skipped. Throws IoError if unreadable, InvalidArgument on a malformed line.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

}  // namespace utm
