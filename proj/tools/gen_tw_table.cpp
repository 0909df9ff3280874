// Writes the TW1 distribution function on [-10, 6] to data/tw1_cdf.csv.
#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/core.h>

#include "bssk/csv.hpp"
#include "bssk/tw_fredholm.hpp"

int main(int argc, char** argv) {
  CLI::App app{"TW1 table generator"};
  std::string out = std::string(BSSK_DATA_DIR) + "/tw1_cdf.csv";
  double step = 0.01;
  int nodes = 96;
  app.add_option("--out", out);
  app.add_option("--step", step);
  app.add_option("--nodes", nodes);
  CLI11_PARSE(app, argc, argv);

  const int count = static_cast<int>(std::lround(16.0 / step));
  bssk::CsvWriter w(out, {"x", "cdf"});
  double prev = 0.0;
  for (int k = 0; k <= count; ++k) {
    const double x = -10.0 + k * step;
    // rounding noise can undercut the previous value in the flat tails
    const double F = std::clamp(bssk::tw1_cdf_fredholm(x, nodes), prev, 1.0);
    w.row(fmt::format("{:.2f}", x), F);
    prev = F;
  }
  fmt::print("wrote {} rows to {}\n", count + 1, out);
}
