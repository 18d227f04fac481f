#pragma once

// Regime sweeps over N, power-law fits and CSV output.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohav/scaling_fit.hpp"
#include "cohav/sweep_config.hpp"

namespace cohav {

/// quantity is "<quantity>:<param>", e.g. "global_qfi:x". flag is "ok" or a
/// '|'-joined list of signals, conditioning notes, PT regime metadata and
/// per-point errors.
struct SweepRow {
  int n = 0;
  std::string quantity;
  std::string regime;
  double value = 0.0;
  std::string flag;
};

struct FitRow {
  std::string quantity;
  std::string regime;
  double n_min = 0.0;
  double n_max = 0.0;
  double exponent = 0.0;
  double stderr_exponent = 0.0;
};

struct ScanResult {
  std::vector<SweepRow> rows;
  std::vector<FitRow> fits;
};

/// Rows ordered by (quantity, regime, N) in configuration order, independent
/// of the worker count.
ScanResult run_sweep(const SweepConfig& config);
/// Sections concatenated in order.
ScanResult run_sweep(const std::vector<SweepConfig>& sections);

/// Keeps only configuration entries with N <= n_max.
void truncate_n(std::vector<SweepConfig>& sections, int n_max);

/// Fit over rows of one (quantity, regime) within [n_lo, n_hi]. Rows whose
/// value is not finite or whose flag marks a signal or error are skipped.
/// Throws FitDomainError on fewer than three points or nonpositive values.
PowerLawFit fit_scaling(const std::vector<SweepRow>& rows, const std::string& quantity, const std::string& regime,
                        double n_lo, double n_hi);

/// One fit per (quantity, regime) over the upper half of its N range.
/// Groups that cannot be fitted are left out.
std::vector<FitRow> fit_all(const std::vector<SweepRow>& rows);

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_rows_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_fits_csv(const std::vector<FitRow>& fits, std::ostream& out);

/// Writes path and path + ".fits.csv". Throws OutputError.
void emit_csv(const ScanResult& result, const std::string& path);

/// Parses a file written by write_rows_csv. Throws InvalidArgument.
std::vector<SweepRow> read_rows_csv(std::istream& in);

}  // namespace cohav
