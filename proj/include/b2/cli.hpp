// Command-line front end: moment diagnostics, closure evaluation, region
// sweeps, and the slab third-moment contour export.
#pragma once

#include <string>
#include <vector>

#include "b2/io.hpp"

namespace b2 {

enum class Command { check, close, sample_nonneg, sample_hyp, slab_e3 };

struct RunConfig {
  Command command = Command::check;
  std::string input;
  std::string output;      // empty = stdout (JSON commands only)
  int grid = 200;
  int fgrid = 11;
  int dirs = 200;
  int quad_order = 64;
  double tol = 1e-9;
  bool verify = false;
};

// exit codes: 0 ok/realizable, 2 not realizable or self-test failure, 1 parse
int cmd_check(const RunConfig& cfg);
int cmd_close(const RunConfig& cfg);
int cmd_sample_nonneg(const RunConfig& cfg);
int cmd_sample_hyp(const RunConfig& cfg);
int cmd_slab_e3(const RunConfig& cfg);

std::vector<SlabSample> slab_e3_samples(int grid_n);

int run_cli(int argc, const char* const* argv);

}  // namespace b2
