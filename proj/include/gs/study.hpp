#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gs/model.hpp"
#include "gs/norms.hpp"
#include "gs/stepper.hpp"

namespace gs {

/// Supplies the basis for a mesh of `cells` per side and element degree
/// `degree`, e.g. from a cache shared between sweeps.
using BasisProvider = std::function<std::shared_ptr<const SpectralBasis>(
    const RectDomain& domain, int cells, int degree)>;

/// One convergence sweep: every (cells, sigma) pair is one row.
struct StudyConfig {
  int example = 1;
  int q = 2;                        // element degree is q + 1
  std::vector<int> cells_per_side;  // spatial levels
  std::vector<double> sigmas;       // time steps
  std::optional<double> t_final;
  std::optional<double> reference_sigma;  // required without an exact solution
  StepperConfig stepper;
  std::vector<double> snapshot_times;
  int snapshot_resolution = 64;
  std::string output_dir;  // snapshots are written here when non-empty
  bool dump_eigenvalues = false;
  BasisProvider basis_provider;  // bases are built per mesh when empty
};

struct ErrorRecord {
  int cells = 0;
  double h = 0.0;  // cell size
  double sigma = 0.0;
  TrajectoryNorms norms;
  std::optional<double> co_u;
  std::optional<double> co_v;
  double setup_s = 0.0;
  double solve_s = 0.0;
  bool failed = false;
  std::string failure;
};

struct ConvergenceTable {
  int example = 0;
  int q = 0;
  double t_final = 0.0;
  std::optional<double> reference_sigma;
  double reference_solve_s = 0.0;
  std::vector<ErrorRecord> rows;
};

/// Fills co_u / co_v: a row is compared with the row on the same mesh and
/// twice its time step when present (temporal order), otherwise with the row
/// at the same step on the mesh with half as many cells (spatial order).
void compute_orders(std::vector<ErrorRecord>& rows);

/// Runs the sweep. Bases are built once per mesh and shared by all time steps
/// on it. Without an exact solution a reference run at reference_sigma on the
/// same basis stands in for it. Solver failures mark the row and the sweep
/// continues.
ConvergenceTable run_convergence_study(const StudyConfig& config,
                                       const std::function<void(const ErrorRecord&)>& on_row = {});

/// Same, for an explicitly supplied problem (config.example is only a label).
ConvergenceTable run_convergence_study(const GrayScottProblem& problem, const StudyConfig& config,
                                       const std::function<void(const ErrorRecord&)>& on_row = {});

// ---------------------------------------------------------------------------
// Output formats

/// 6 significant digits; scientific notation when 0 < |x| < 1e-3.
std::string format_float(double x);

inline constexpr const char* kConvergenceCsvHeader =
    "example,q,h,sigma,norm_u_exact,norm_u_num,err_u,co_u,norm_v_exact,norm_v_num,err_v,co_v,"
    "setup_s,solve_s";

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table);

/// Parsed CSV row; empty optionals stand for empty cells.
struct CsvRow {
  int example = 0;
  int q = 0;
  std::vector<std::optional<double>> values;  // h .. solve_s, 12 entries
};
std::vector<CsvRow> read_convergence_csv(std::istream& in);

/// Uniform samples of both species; row index increases with y.
struct FieldSnapshot {
  double time = 0.0;
  int resolution = 0;
  RectDomain domain;
  std::vector<double> u;  // resolution * resolution, row-major
  std::vector<double> v;
};

FieldSnapshot sample_snapshot(const SpectralCoeffs& coeffs, const SpectralBasis& basis,
                              int resolution);
void write_snapshot(std::ostream& out, const FieldSnapshot& snap);
FieldSnapshot read_snapshot(std::istream& in);

/// I/O failure while writing outputs.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gs
