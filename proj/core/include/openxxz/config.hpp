#pragma once

#include <map>
#include <string>

#include "openxxz/bethe.hpp"
#include "openxxz/transfer.hpp"

namespace openxxz {

// Everything a command run needs, read from a flat key-value text file with
// [chain], [sector], [tolerances] and [output] sections.
struct RunConfig {
  ChainSpec chain;
  SectorConfig sector;
  // Boundary key whose value was given as "solve"; that parameter is then
  // recomputed from the constraint before use. At most one key may be marked.
  std::string solve_param;
  std::map<std::string, double> tolerances;
  std::string out_path;  // empty writes to stdout
  std::string format = "csv";
  long seed = 2024;
};

// Table geometry: N = 2, s = 1, eta = 0.3i, the published boundary
// parameters, sector (-) with k = 1 and all epsilons +1.
RunConfig default_run_config();

// Parses config text; `origin` names the source in diagnostics.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config_file(const std::string& path);

// Complex literal "a+bi" (also plain "a", pure-imaginary "bi", and
// exponent forms like "1e-3+2.5e-4i").
Complex parse_complex(const std::string& text);

// Spin literal: an integer or a half-integer fraction such as "3/2".
Spin parse_spin(const std::string& text);

// Fixed-width scientific form with 12 significant digits.
std::string format_real(double x);
std::string format_complex(Complex z);

}  // namespace openxxz
