#ifndef PTDARBOUX_TOOLS_CLI_HPP
#define PTDARBOUX_TOOLS_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptdarboux/jet.hpp"
#include "ptdarboux/scarf2.hpp"

namespace ptdarboux::cli {

enum class Format { Csv, Json };

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Everything one invocation needs. Grid flags left unset pick the regime
/// default (see grid_for).
struct RunConfig {
  double v1 = 24.0;
  Complex v2 = 18.0;
  int m = 0;
  scarf2::Branch branch = scarf2::Branch::Minus;
  std::optional<double> grid_l;
  std::optional<int> grid_n;
  double x_min = -5.0;
  double x_max = 5.0;
  int samples = 501;
  bool numeric = false;
  Format format = Format::Csv;
  std::string out;  // file for tables, directory for figures; empty = stdout / "."
};

/// Parses "18", "-2.5", "4i", "-i", "0+4i", "3-0i". Throws ParameterError for
/// malformed text and for values with both parts nonzero.
Complex parse_coupling(const std::string& text);

/// Checks the RunConfig invariants that do not depend on the regime.
void validate(const RunConfig& config);

/// (L, N) for the finite-difference runs: the flags if given, else L = 12,
/// N = 1201 in the unbroken regime and L = 40, N = 1601 in the broken one.
std::pair<double, int> grid_for(const RunConfig& config, scarf2::Regime regime);

int cmd_classify(const RunConfig& config, std::ostream& out);
int cmd_spectrum(const RunConfig& config, std::ostream& out);
int cmd_darboux(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
/// Writes fig1 (real parts) and fig2 (imaginary parts) into config.out and
/// lists the written paths on `out`.
int cmd_figures(const RunConfig& config, std::ostream& out);

/// Full command-line entry point; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool upper_bound;  // value <= tolerance, else value > tolerance
  bool passed() const { return upper_bound ? value <= tolerance : value > tolerance; }
};

struct Note {
  std::string name;
  std::optional<double> value;
  std::string text;
};

/// Passes iff every check passes; notes never affect the status.
struct VerificationReport {
  std::vector<Check> checks;
  std::vector<Note> notes;
  bool passed() const;
};

VerificationReport verify(const RunConfig& config);

}  // namespace ptdarboux::cli

#endif  // PTDARBOUX_TOOLS_CLI_HPP
