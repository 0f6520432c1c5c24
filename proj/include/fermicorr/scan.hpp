#pragma once

#include <string>
#include <vector>

#include "fermicorr/types.hpp"

namespace fermicorr {

// One row per grid point; failed rows carry a status message and keep the
// scan going.
struct ScanTable {
  std::vector<std::string> columns;

  struct Row {
    std::vector<double> values;
    std::string status = "ok";
  };
  std::vector<Row> rows;

  void validate() const;  // uniform row widths
};

// "start:stop:step" with inclusive endpoints (1e-12 slack), or a single
// value.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace fermicorr
