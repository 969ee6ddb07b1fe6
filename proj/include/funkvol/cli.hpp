#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace funkvol {

struct RunConfig {
  enum class Command { volume, coeffs, santalo, simplex, hanner, polygon, verify, sweep };
  enum class Format { text, json, csv };

  Command command = Command::volume;
  std::string input_path;            // polytope JSON, for body-based commands
  std::vector<double> radii;         // ball radii / fit grid; per-command default when empty
  std::vector<double> lambdas;       // polygon derivative grid; default when empty
  std::vector<double> center;        // ball center / expansion point (origin when empty)
  double tol = 0;                    // 0 picks the per-command default; volume and verify read
                                     // it as an absolute quadrature tolerance, coeffs and sweep
                                     // as the per-point relative fit tolerance
  Format format = Format::text;
  unsigned long long seed = 1;       // randomized verify pieces
  int simplex_dim = 2;               // simplex command
  std::string hanner_spec = "product(segment,segment)";  // hanner command
};

// Executes one command and writes the full report to out only after every
// number in it has been computed. On failure nothing is printed to out and
// the exit code names the stage: 2 parse, 3 geometry, 4 quadrature,
// 5 optimization; verify returns 1 when a property fails.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace funkvol
