#pragma once

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spec2lab/convergence.hpp"
#include "spec2lab/pencil.hpp"
#include "spec2lab/potential.hpp"

namespace spec2lab {

namespace detail {

inline std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

inline void check_write(const std::ofstream& out, const std::string& path) {
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace detail

// Point sets are written as `re,im,residual` with 17 significant digits so a
// read-back reproduces every double bit-exactly.  Points whose residual was
// not computed get an explicit `nan` rather than a fake zero.
inline void write_points_csv(const std::string& path, const SpectralPointSet& set) {
  std::ofstream out = detail::open_for_write(path);
  out << "re,im,residual\n";
  for (size_t i = 0; i < set.points.size(); ++i) {
    const double res = i < set.residuals.size() ? set.residuals[i]
                                                : std::numeric_limits<double>::quiet_NaN();
    out << detail::format_sig17(set.points[i].real()) << ','
        << detail::format_sig17(set.points[i].imag()) << ','
        << detail::format_sig17(res) << '\n';
  }
  detail::check_write(out, path);
}

inline SpectralPointSet read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty points file: " + path);
  if (line == "re,im,residual\r") line.pop_back();
  if (line != "re,im,residual")
    throw std::runtime_error("unexpected header in " + path + ": '" + line + "'");
  SpectralPointSet set;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 3)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 3 fields, got " +
                               std::to_string(fields.size()));
    try {
      set.points.emplace_back(std::stod(fields[0]), std::stod(fields[1]));
      set.residuals.push_back(std::stod(fields[2]));
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unparseable number");
    }
  }
  return set;
}

// Bare complex list, `re,im`.
inline void write_complex_csv(const std::string& path, const std::vector<Complex>& zs) {
  std::ofstream out = detail::open_for_write(path);
  out << "re,im\n";
  for (const Complex& z : zs)
    out << detail::format_sig17(z.real()) << ',' << detail::format_sig17(z.imag()) << '\n';
  detail::check_write(out, path);
}

// Convergence table: one row per truncation size, with the log-log slope
// from the previous row (blank on the first row).
inline void write_convergence_csv(const std::string& path,
                                  const std::vector<ConvergenceRecord>& records,
                                  const std::vector<double>& slopes,
                                  const std::string& trailer_comment = "") {
  if (!slopes.empty() && slopes.size() != records.size() - 1)
    throw std::invalid_argument("write_convergence_csv: need one slope per consecutive record pair");
  std::ofstream out = detail::open_for_write(path);
  out << "k,max_dist,witness_re,witness_im,slope_from_prev\n";
  for (size_t i = 0; i < records.size(); ++i) {
    out << records[i].k << ',' << detail::format_sig17(records[i].max_dist) << ','
        << detail::format_sig17(records[i].witness.real()) << ','
        << detail::format_sig17(records[i].witness.imag()) << ',';
    if (i > 0 && !slopes.empty()) out << detail::format_sig17(slopes[i - 1]);
    out << '\n';
  }
  if (!trailer_comment.empty()) out << "# " << trailer_comment << '\n';
  detail::check_write(out, path);
}

}  // namespace spec2lab
