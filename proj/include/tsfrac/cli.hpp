#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace tsfrac::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kValidation = 2, kNumerical = 3 };

struct RunConfig {
  std::string command;  ///< describe-timescale, fracint, fracderiv, solve-ivp, synthesize-control, verify
  std::string input_path;
  std::string output_dir = ".";
  int grid_N = 256;
  double tol = 1e-10;
  std::uint64_t seed = 0;

  // Overrides of the corresponding input fields.
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<std::string> psi;  ///< "name" or "name:p1,p2,..."
  std::optional<double> t;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

/// Executes one command, writing artifacts under output_dir. Messages go to
/// `out`, errors to `err`. Never throws.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to run().
int main(int argc, char** argv);

}  // namespace tsfrac::cli
