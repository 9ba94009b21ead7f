#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spec2lab/exact_spectrum.hpp"
#include "spec2lab/pencil.hpp"

namespace spec2lab {

// One row of a convergence study: the worst distance from the computed
// second-order spectrum to the exact spectrum, and the point that attains it.
struct ConvergenceRecord {
  int k = 0;
  double max_dist = 0.0;
  Complex witness{0.0, 0.0};
};

// Scans a computed point set against the exact descriptor.  Ties on the
// distance (conjugate pairs attain it simultaneously) are broken toward the
// larger imaginary part, then the larger real part, so the witness is
// deterministic across platforms.
inline ConvergenceRecord convergence_record(int k, const std::vector<Complex>& points,
                                            const SpectrumDescriptor& exact) {
  if (points.empty()) throw std::invalid_argument("convergence_record: empty point set");
  ConvergenceRecord rec;
  rec.k = k;
  rec.max_dist = -1.0;
  for (const Complex& z : points) {
    const double d = dist_to_spectrum(z, exact);
    const bool wins_tie = d == rec.max_dist &&
                          (std::abs(z.imag()) > std::abs(rec.witness.imag()) ||
                           (std::abs(z.imag()) == std::abs(rec.witness.imag()) && z.real() > rec.witness.real()));
    if (d > rec.max_dist || wins_tie) {
      rec.max_dist = d;
      rec.witness = z;
    }
  }
  return rec;
}

// Log-log slopes between consecutive records:
//   slope_i = (ln d_{i+1} - ln d_i) / (ln k_{i+1} - ln k_i).
// A slope near -1 means the worst-case distance decays like 1/k.
inline std::vector<double> pairwise_slopes(const std::vector<ConvergenceRecord>& records) {
  if (records.size() < 2) return {};
  std::vector<double> slopes;
  slopes.reserve(records.size() - 1);
  for (size_t i = 0; i + 1 < records.size(); ++i) {
    const auto& lo = records[i];
    const auto& hi = records[i + 1];
    if (lo.k <= 0 || hi.k <= 0 || lo.k == hi.k)
      throw std::invalid_argument("pairwise_slopes: k values must be positive and distinct");
    if (!(lo.max_dist > 0.0) || !(hi.max_dist > 0.0))
      throw std::invalid_argument("pairwise_slopes: distances must be positive to take logs");
    slopes.push_back((std::log(hi.max_dist) - std::log(lo.max_dist)) /
                     (std::log(double(hi.k)) - std::log(double(lo.k))));
  }
  return slopes;
}

}  // namespace spec2lab
