#include "fermicorr/rdmio.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fermicorr {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string next_token(std::istringstream& in, const std::string& what,
                       const std::string& origin) {
  std::string tok;
  if (!(in >> tok))
    throw ValidationError(origin + ": missing " + what);
  return tok;
}

}  // namespace

RdmFile parse_rdm_stream(std::istream& in, const std::string& origin) {
  std::string line;

  auto header_line = [&](const std::string& key) {
    if (!std::getline(in, line))
      throw ValidationError(origin + ": truncated header, expected '" + key +
                            "'");
    std::istringstream ls(line);
    const std::string k = next_token(ls, "keyword", origin);
    if (k != key)
      throw ValidationError(origin + ": expected '" + key + "', found '" + k +
                            "'");
    return next_token(ls, "value of " + key, origin);
  };

  const std::string magic_version = header_line("orbrdm");
  if (magic_version != "1")
    throw ValidationError(origin + ": unsupported version '" + magic_version +
                          "'");
  const std::string kind_str = header_line("kind");
  RdmKind kind;
  int dim;
  if (kind_str == "one") {
    kind = RdmKind::OneOrbital;
    dim = 4;
  } else if (kind_str == "two") {
    kind = RdmKind::TwoOrbital;
    dim = 16;
  } else {
    throw ValidationError(origin + ": unknown kind '" + kind_str + "'");
  }
  const std::string basis = header_line("basis");
  if (basis != "omega,up,down,updown")
    throw ValidationError(origin + ": unknown basis order '" + basis + "'");
  const std::string signs = header_line("signs");
  if (signs != "jw-lsb")
    throw ValidationError(origin + ": unknown sign convention '" + signs +
                          "'");

  Matrix m = Matrix::Zero(dim, dim);
  std::vector<std::vector<bool>> set(dim, std::vector<bool>(dim, false));
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int i, j;
    double re, im;
    if (!(ls >> i >> j >> re >> im))
      throw ValidationError(origin + ": malformed entry line '" + line + "'");
    if (i < 0 || j < 0 || i >= dim || j >= dim)
      throw ValidationError(origin + ": entry index outside " +
                            std::to_string(dim) + "x" + std::to_string(dim));
    m(i, j) = Complex(re, im);
    set[i][j] = true;
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      if (set[i][j] && !set[j][i]) m(j, i) = std::conj(m(i, j));
      if (set[j][i] && !set[i][j]) m(i, j) = std::conj(m(j, i));
    }

  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-9)
    throw ValidationError(origin + ": Hermiticity violated by " +
                          fmt17(asym));
  m = raw::hermitize(m);
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError(origin + ": trace deviates from one by " +
                          fmt17(tr - 1.0));
  const double lo = raw::min_eigenvalue(m);
  if (lo < -kPsdTol)
    throw ValidationError(origin + ": not positive, min eigenvalue " +
                          fmt17(lo));

  const TensorShape shape = kind == RdmKind::OneOrbital
                                ? TensorShape{4}
                                : TensorShape{4, 4};
  return {1, kind, basis, signs, DensityMatrix(shape, std::move(m))};
}

RdmFile parse_rdm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("parse_rdm: cannot open '" + path + "'");
  return parse_rdm_stream(in, path);
}

void write_rdm(const std::string& path, const DensityMatrix& state,
               RdmKind kind) {
  const int dim = kind == RdmKind::OneOrbital ? 4 : 16;
  if (state.dim() != dim)
    throw ValidationError("write_rdm: kind/dimension mismatch");
  std::ofstream out(path);
  if (!out) throw ValidationError("write_rdm: cannot open '" + path + "'");
  out << "orbrdm 1\n";
  out << "kind " << (kind == RdmKind::OneOrbital ? "one" : "two") << "\n";
  out << "basis omega,up,down,updown\n";
  out << "signs jw-lsb\n";
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const Complex v = state.mat()(i, j);
      if (v == Complex(0, 0)) continue;
      out << i << " " << j << " " << fmt17(v.real()) << " " << fmt17(v.imag())
          << "\n";
    }
  if (!out) throw ValidationError("write_rdm: write failed for '" + path + "'");
}

ScanFormat parse_scan_format(const std::string& name) {
  if (name == "csv") return ScanFormat::Csv;
  if (name == "json") return ScanFormat::Json;
  throw ValidationError("unknown output format '" + name + "' (csv|json)");
}

std::string scan_to_string(const ScanTable& table, ScanFormat format) {
  table.validate();
  std::ostringstream out;
  if (format == ScanFormat::Csv) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out << table.columns[c] << ",";
    out << "status\n";
    for (const auto& row : table.rows) {
      for (double v : row.values) out << fmt17(v) << ",";
      out << row.status << "\n";
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj;
      for (std::size_t c = 0; c < table.columns.size(); ++c)
        obj[table.columns[c]] = row.values[c];
      obj["status"] = row.status;
      arr.push_back(obj);
    }
    out << arr.dump(2) << "\n";
  }
  return out.str();
}

void write_scan(const ScanTable& table, ScanFormat format,
                const std::string& path) {
  const std::string text = scan_to_string(table, format);
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("write_scan: cannot open '" + path + "'");
  out << text;
  if (!out)
    throw ValidationError("write_scan: write failed for '" + path + "'");
}

}  // namespace fermicorr
