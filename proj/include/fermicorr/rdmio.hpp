#pragma once

#include <iosfwd>
#include <string>

#include "fermicorr/densmat.hpp"
#include "fermicorr/scan.hpp"

namespace fermicorr {

enum class RdmKind { OneOrbital, TwoOrbital };

// Text format, one header line each:
//   orbrdm 1
//   kind one|two
//   basis omega,up,down,updown
//   signs jw-lsb
// followed by sparse entries "i j re im" (0-based, upper triangle
// sufficient; the lower triangle is filled by conjugation).
struct RdmFile {
  int version;
  RdmKind kind;
  std::string basis_order;
  std::string sign_convention;
  DensityMatrix state;
};

RdmFile parse_rdm(const std::string& path);
RdmFile parse_rdm_stream(std::istream& in, const std::string& origin);

void write_rdm(const std::string& path, const DensityMatrix& state,
               RdmKind kind);

enum class ScanFormat { Csv, Json };

ScanFormat parse_scan_format(const std::string& name);

std::string scan_to_string(const ScanTable& table, ScanFormat format);

// path "-" writes to standard output
void write_scan(const ScanTable& table, ScanFormat format,
                const std::string& path);

}  // namespace fermicorr
