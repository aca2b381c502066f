#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "file_formats.hpp"

namespace sympoly::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kNumerical = 3 };

/// Flags shared by the sweeping subcommands; unset values fall back to the
/// file, then to library defaults.
struct SweepFlags {
  std::optional<double> tol;
  std::optional<double> omega_max;
  std::optional<int> grid_points;
  std::optional<double> exclusion_radius;
};

struct InterpolateArgs {
  std::string problem_path;
  SweepFlags sweep;
  std::optional<std::string> norm;
  std::optional<std::string> output;
  bool quiet = false;
};

struct VerifyArgs {
  std::string path;
  std::string cls;
  std::optional<int> nu;
  std::optional<double> beta;
  SweepFlags sweep;
};

struct DegreeArgs {
  std::string path;
  std::optional<double> beta;
  double rank_tol = kDefaultRankTol;
};

struct EvalArgs {
  std::string path;
  Complex s;
  std::optional<double> beta;
  bool adjoint = false;
};

struct ReduceArgs {
  std::string problem_path;
};

int cmd_interpolate(const InterpolateArgs& args, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);
int cmd_degree(const DegreeArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);
int cmd_reduce(const ReduceArgs& args, std::ostream& out, std::ostream& err);

/// Parses "re" or "re,im".
std::optional<Complex> parse_point(const std::string& text);

/// Entry point used by main(): parses argv, dispatches, maps exceptions to
/// exit codes.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sympoly::cli
