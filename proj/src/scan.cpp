#include "fermicorr/scan.hpp"

#include <cmath>
#include <cstdlib>

namespace fermicorr {

void ScanTable::validate() const {
  for (const Row& row : rows)
    if (row.values.size() != columns.size())
      throw ValidationError("ScanTable: ragged row");
}

std::vector<double> parse_grid(const std::string& spec) {
  auto to_double = [](const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      throw ValidationError("parse_grid: bad number '" + s + "'");
    return v;
  };

  const std::size_t c1 = spec.find(':');
  if (c1 == std::string::npos) return {to_double(spec)};
  const std::size_t c2 = spec.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw ValidationError("parse_grid: expected start:stop:step");

  const double start = to_double(spec.substr(0, c1));
  const double stop = to_double(spec.substr(c1 + 1, c2 - c1 - 1));
  const double step = to_double(spec.substr(c2 + 1));
  if (step <= 0.0) throw ValidationError("parse_grid: step must be positive");
  if (stop < start - 1e-12)
    throw ValidationError("parse_grid: stop below start");

  // endpoints are inclusive when reachable within 1e-12 of a step multiple
  std::vector<double> out;
  const long n = static_cast<long>(
      std::floor((stop - start) / step + 1e-12 / step + 1e-12));
  for (long k = 0; k <= n; ++k) out.push_back(start + k * step);
  return out;
}

}  // namespace fermicorr
