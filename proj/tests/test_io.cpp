#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "utm/errors.hpp"
#include "utm/io.hpp"

using namespace utm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "utm_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("doubles round-trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 4.9e-324, 1.0 - 1e-16})
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("trace CSV") {
  const auto path = scratch("trace.csv");
  write_trace_csv(path.string(), {{0.0, cplx(1.0, -0.5)}, {0.1, cplx(1.0 / 3.0, 0.0)}});
  std::istringstream in(slurp(path));
  std::string line;
  std::getline(in, line);
  CHECK(line == "theta,re_f,im_f");
  std::getline(in, line);
  CHECK(line == "0,1,-0.5");
  std::getline(in, line);
  double th, re, im;
  char c1, c2;
  std::istringstream(line) >> th >> c1 >> re >> c2 >> im;
  CHECK(th == 0.1);
  CHECK(re == 1.0 / 3.0);
  CHECK(im == 0.0);
  CHECK(slurp(path).find('\r') == std::string::npos);
}

TEST_CASE("grid CSV") {
  const auto path = scratch("grid.csv");
  StreamGrid g;
  write_grid_csv(path.string(), g);
  CHECK(slurp(path) == "x,y,psi,inside\n");

  g.nx = 2;
  g.ny = 1;
  g.x = {-1.0, 1.0};
  g.y = {0.0};
  g.psi = {0.25, std::nullopt};
  write_grid_csv(path.string(), g);
  CHECK(slurp(path) == "x,y,psi,inside\n-1,0,0.25,1\n1,0,,0\n");
}

TEST_CASE("report and key-value files") {
  const auto path = scratch("run.report");
  write_report(path.string(), {{"residual_lsq", "1e-12"}, {"rows", "42"}});
  CHECK(slurp(path) == "residual_lsq = 1e-12\nrows = 42\n");
  const auto kv = read_key_value_file(path.string());
  CHECK(kv.at("residual_lsq") == "1e-12");
  CHECK(kv.at("rows") == "42");

  const auto cfg = scratch("cfg.txt");
  std::ofstream(cfg) << "# comment\n\nN = 8\n  m=2  \n";
  const auto c = read_key_value_file(cfg.string());
  CHECK(c.size() == 2);
  CHECK(c.at("N") == "8");
  CHECK(c.at("m") == "2");

  std::ofstream(cfg) << "no separator\n";
  CHECK_THROWS_AS(read_key_value_file(cfg.string()), InvalidArgument);
}

TEST_CASE("unwritable paths raise IoError") {
  const std::string bad = "/nonexistent_dir_utm/x.csv";
  CHECK_THROWS_AS(write_trace_csv(bad, {}), IoError);
  CHECK_THROWS_AS(write_report(bad, {}), IoError);
  CHECK_THROWS_AS(read_key_value_file(bad), IoError);
}
