#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gs/study.hpp"

namespace gs {

/// Bad command line or config file. The message is meant for the user.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Thrown when --help was asked for; carries the help text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  int example = 0;
  int q = 2;
  std::vector<int> h_exponents{2, 3, 4};  // cell size 2^-l
  std::vector<int> sigma_exponents{3, 4, 5, 6, 7};
  std::optional<double> t_final;
  std::optional<int> reference_sigma_exponent;
  std::string output_dir = ".";
  std::vector<double> snapshot_times;
  int snapshot_resolution = 64;
  double fp_tol = 1e-12;
  int fp_max_iter = 100;
  int threads = 0;  // 0 keeps the OpenMP default
  bool dump_eigenvalues = false;
};

/// Parses `run ...` arguments (argv[0] is the program name). Throws
/// ConfigError on anything it does not understand and HelpRequested for
/// --help.
RunConfig parse_config(int argc, const char* const* argv);

/// Expands exponents into cell counts and steps, fills example defaults.
StudyConfig to_study_config(const RunConfig& config);

/// Number of cells per side giving cell size 2^-l on a side of length
/// `length`; throws ConfigError when that is not an integer.
int cells_for_exponent(double length, int l);

}  // namespace gs
