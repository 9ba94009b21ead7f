#pragma once

#include <json.hpp>

#include <Eigen/Core>
#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spec2lab/convergence.hpp"
#include "spec2lab/core.hpp"
#include "spec2lab/exact_spectrum.hpp"
#include "spec2lab/io.hpp"
#include "spec2lab/pencil.hpp"
#include "spec2lab/point_metrics.hpp"
#include "spec2lab/potential.hpp"
#include "spec2lab/toeplitz_analysis.hpp"

namespace spec2lab {

// Truncation ceilings for the command-line driver.  Runs above the default
// ceiling take minutes in the dense eigensolver and must be requested
// explicitly; the hard ceiling protects the dense path outright.
inline constexpr int default_k_ceiling = 400;
inline constexpr int large_k_ceiling = 1500;

struct RunConfig {
  std::string command;                       // spec2 | converge | toeplitz-roots | exact
  Potential potential = Potential::zero();
  std::vector<int> ks;                       // truncation sizes to run
  std::string out_base;                      // output stem; empty = log only, no files
  unsigned long long seed = 0;               // recorded for randomized property suites
  bool allow_large = false;                  // lift the k ceiling to large_k_ceiling
  double residual_warn = 1e-8;               // log a warning above this residual
  double pairing_tol = 1e-10;                // conjugate-symmetry pairing tolerance
};

inline void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands = {"spec2", "converge", "toeplitz-roots", "exact"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
    throw std::invalid_argument("config field 'command': unknown command '" + cfg.command +
                                "' (expected spec2 | converge | toeplitz-roots | exact)");
  const bool needs_k = cfg.command != "exact";
  if (needs_k && cfg.ks.empty())
    throw std::invalid_argument("config field 'ks': command '" + cfg.command +
                                "' needs at least one truncation size (--k or --ks)");
  const int ceiling = cfg.allow_large ? large_k_ceiling : default_k_ceiling;
  for (int k : cfg.ks) {
    if (k < 1) throw std::invalid_argument("config field 'ks': truncation size must be >= 1, got " +
                                           std::to_string(k));
    if (k > ceiling) {
      if (!cfg.allow_large && k <= large_k_ceiling)
        throw std::invalid_argument("config field 'ks': k = " + std::to_string(k) +
                                    " exceeds the default ceiling " + std::to_string(default_k_ceiling) +
                                    " (pass --large to allow up to " + std::to_string(large_k_ceiling) + ")");
      throw std::invalid_argument("config field 'ks': k = " + std::to_string(k) +
                                  " exceeds the hard ceiling " + std::to_string(large_k_ceiling));
    }
  }
  if (cfg.command == "converge") {
    if (cfg.ks.size() < 2)
      throw std::invalid_argument("config field 'ks': converge needs at least 2 truncation sizes");
    for (size_t i = 0; i + 1 < cfg.ks.size(); ++i)
      if (cfg.ks[i] >= cfg.ks[i + 1])
        throw std::invalid_argument("config field 'ks': converge needs a strictly increasing list, got " +
                                    std::to_string(cfg.ks[i]) + " before " + std::to_string(cfg.ks[i + 1]));
  }
  if (!(cfg.residual_warn > 0.0))
    throw std::invalid_argument("config field 'residual_warn': must be > 0");
  if (!(cfg.pairing_tol > 0.0))
    throw std::invalid_argument("config field 'pairing_tol': must be > 0");
}

// --- manifest ---------------------------------------------------------------
//
// Every file-producing run also writes `<out>.manifest.json` recording what
// was computed and with which library versions.  The manifest is
// deliberately timestamp-free so identical runs produce identical bytes.

inline std::string eigen_version_string() {
  return std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
         std::to_string(EIGEN_MINOR_VERSION);
}

inline nlohmann::ordered_json manifest_json(const RunConfig& cfg,
                                            const std::vector<std::string>& outputs) {
  nlohmann::ordered_json m;
  m["command"] = cfg.command;
  m["potential"] = cfg.potential.to_string();
  if (cfg.ks.size() == 1)
    m["k"] = cfg.ks.front();
  else
    m["k"] = cfg.ks;
  m["seed"] = cfg.seed;
  m["allow_large"] = cfg.allow_large;
  m["tolerances"] = {{"residual_warn", cfg.residual_warn}, {"conjugate_pairing", cfg.pairing_tol}};
  m["versions"] = {{"spec2lab", std::string(version)}, {"eigen", eigen_version_string()}};
  m["outputs"] = outputs;
  return m;
}

inline RunConfig config_from_manifest(const nlohmann::json& m) {
  RunConfig cfg;
  if (!m.contains("command") || !m["command"].is_string())
    throw std::invalid_argument("manifest field 'command': missing or not a string");
  cfg.command = m["command"].get<std::string>();
  if (!m.contains("potential") || !m["potential"].is_string())
    throw std::invalid_argument("manifest field 'potential': missing or not a string");
  cfg.potential = Potential::parse(m["potential"].get<std::string>());
  if (m.contains("k")) {
    if (m["k"].is_number_integer())
      cfg.ks = {m["k"].get<int>()};
    else if (m["k"].is_array())
      cfg.ks = m["k"].get<std::vector<int>>();
    else
      throw std::invalid_argument("manifest field 'k': expected integer or integer array");
  }
  if (m.contains("seed")) {
    const auto& s = m["seed"];
    const bool non_negative_integer =
        s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0);
    if (!non_negative_integer)
      throw std::invalid_argument("manifest field 'seed': expected a non-negative integer");
    cfg.seed = s.get<unsigned long long>();
  }
  if (m.contains("allow_large")) cfg.allow_large = m["allow_large"].get<bool>();
  if (m.contains("tolerances")) {
    const auto& tol = m["tolerances"];
    if (tol.contains("residual_warn")) cfg.residual_warn = tol["residual_warn"].get<double>();
    if (tol.contains("conjugate_pairing")) cfg.pairing_tol = tol["conjugate_pairing"].get<double>();
  }
  return cfg;
}

namespace detail {

inline void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs) {
  if (cfg.out_base.empty()) return;
  const std::string path = cfg.out_base + ".manifest.json";
  std::ofstream out = open_for_write(path);
  out << manifest_json(cfg, outputs).dump(2) << '\n';
  check_write(out, path);
}

inline std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

inline void report_point_set(std::ostream& log, const RunConfig& cfg, int k,
                             const SpectralPointSet& set, bool check_negation) {
  log << cfg.command << ": k = " << k << ", " << set.points.size() << " points\n";
  size_t bad = 0;
  double worst = 0.0;
  for (double r : set.residuals) {
    worst = std::max(worst, r);
    if (r > cfg.residual_warn) ++bad;
  }
  log << "  worst residual " << format_sig(worst, 3) << "\n";
  if (bad > 0)
    log << "  WARNING: " << bad << " points exceed the residual threshold "
        << format_sig(cfg.residual_warn, 3) << "\n";
  if (multiset_conjugate_symmetric(set.points, cfg.pairing_tol))
    log << "  conjugate symmetry: ok (pairing tol " << format_sig(cfg.pairing_tol, 3) << ")\n";
  else
    log << "  WARNING: conjugate symmetry violated at pairing tol "
        << format_sig(cfg.pairing_tol, 3) << "\n";
  if (check_negation) {
    if (multiset_negation_symmetric(set.points, cfg.pairing_tol))
      log << "  negation symmetry: ok\n";
    else
      log << "  WARNING: negation symmetry violated\n";
  }
}

inline bool is_zero_potential(const Potential& v) {
  if (const auto* ex = std::get_if<ExplicitPotential>(&v.spec()))
    return std::all_of(ex->values.begin(), ex->values.end(), [](double x) { return x == 0.0; });
  return false;
}

}  // namespace detail

// --- commands ----------------------------------------------------------------

// spec2: second-order spectra of the potential's operator, one point file per
// truncation size.
inline void run_spec2(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::string> outputs;
  const bool zero_pot = detail::is_zero_potential(cfg.potential);
  for (int k : cfg.ks) {
    const SpectralPointSet set = second_order_spectrum(cfg.potential, k);
    detail::report_point_set(log, cfg, k, set, zero_pot);
    if (!cfg.out_base.empty()) {
      const std::string path = cfg.out_base + ".k" + std::to_string(k) + ".points.csv";
      write_points_csv(path, set);
      outputs.push_back(path);
      log << "  wrote " << path << "\n";
    }
  }
  detail::write_manifest(cfg, outputs);
}

// toeplitz-roots: roots of the free-symbol section determinant, same report
// shape as spec2.  These sets are symmetric under both conjugation and
// negation, and both are checked.
inline void run_toeplitz_roots(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::string> outputs;
  for (int k : cfg.ks) {
    const SpectralPointSet set = toeplitz_pencil_roots(k);
    detail::report_point_set(log, cfg, k, set, /*check_negation=*/true);
    if (!cfg.out_base.empty()) {
      const std::string path = cfg.out_base + ".k" + std::to_string(k) + ".points.csv";
      write_points_csv(path, set);
      outputs.push_back(path);
      log << "  wrote " << path << "\n";
    }
  }
  detail::write_manifest(cfg, outputs);
}

// converge: worst distance from the computed second-order spectrum to the
// exact spectrum, per truncation size, with log-log slopes between rows.
// Requires a potential with an exact descriptor.  If a truncation size fails
// mid-study, the rows finished so far are still written (with an `# aborted`
// trailer) before the error propagates.
inline void run_converge(const RunConfig& cfg, std::ostream& log) {
  const SpectrumDescriptor exact = spectrum_descriptor(cfg.potential);
  std::vector<ConvergenceRecord> records;
  std::string abort_note;
  std::string abort_error;
  for (int k : cfg.ks) {
    try {
      // Residuals are skipped: the study only needs the point locations, and
      // the per-point solves dominate the cost at large k.
      const SpectralPointSet set = second_order_spectrum(cfg.potential, k, ResidualPolicy::skip);
      records.push_back(convergence_record(k, set.points, exact));
      const ConvergenceRecord& rec = records.back();
      log << "converge: k = " << k << ", max_dist = " << detail::format_sig(rec.max_dist, 7)
          << ", witness = (" << detail::format_sig(rec.witness.real(), 7) << ", "
          << detail::format_sig(rec.witness.imag(), 7) << ")\n";
    } catch (const std::exception& err) {
      abort_note = "aborted at k=" + std::to_string(k) + ": " + err.what();
      abort_error = err.what();
      log << "converge: " << abort_note << "\n";
      break;
    }
  }
  // Slopes need strictly positive distances; a zero max_dist is possible in
  // principle (every point landing on the exact spectrum) and is reported
  // rather than assumed away.
  std::vector<double> slopes;
  const bool all_positive =
      std::all_of(records.begin(), records.end(),
                  [](const ConvergenceRecord& r) { return r.max_dist > 0.0; });
  if (all_positive) {
    slopes = pairwise_slopes(records);
    for (size_t i = 0; i < slopes.size(); ++i)
      log << "  slope " << records[i].k << " -> " << records[i + 1].k << ": "
          << detail::format_sig(slopes[i], 6) << "\n";
  } else if (records.size() > 1) {
    log << "  NOTE: some max_dist is exactly zero; log-log slopes are undefined and omitted\n";
  }
  std::vector<std::string> outputs;
  if (!cfg.out_base.empty() && !records.empty()) {
    const std::string path = cfg.out_base + ".convergence.csv";
    write_convergence_csv(path, records, slopes, abort_note);
    outputs.push_back(path);
    log << "  wrote " << path << "\n";
    detail::write_manifest(cfg, outputs);
  }
  if (!abort_error.empty()) throw std::runtime_error("converge " + abort_note);
}

// exact: closed-form data for the rank-one bound state - the eigenvalue with
// its sign-change bracket, every root of the multiplier polynomial q, and the
// non-real resonance candidates.
inline void run_exact(const RunConfig& cfg, std::ostream& log) {
  const auto* r1 = std::get_if<RankOnePotential>(&cfg.potential.spec());
  if (r1 == nullptr)
    throw std::domain_error(
        "exact: no exact descriptor for this potential (supported: rank1 with a > 2, j >= 3)");
  const double a = r1->height;
  const int j = r1->site;
  const double x = char_root(a, j);  // validates a > 2, j >= 3
  const double lam = x + 1.0 / x;
  const CharPoly q(a, j);
  log << "exact: potential " << cfg.potential.to_string() << "\n";
  log << "  lambda_a = " << detail::format_sig(lam, 14) << "\n";
  log << "  multiplier x_a = " << detail::format_sig(x, 14) << "\n";

  // The bracket endpoints carry opposite signs of q by construction; print
  // the actual values so a reader can confirm the sign change.
  const double q_lo = q(a);
  const double q_hi = q(a + 1.0 / a);
  log << "  bracket check: q(" << detail::format_sig(a, 14) << ") = " << detail::format_sig(q_lo, 6)
      << " < 0 < q(" << detail::format_sig(a + 1.0 / a, 14)
      << ") = " << detail::format_sig(q_hi, 6)
      << ((q_lo < 0.0 && q_hi > 0.0) ? "  [ok]" : "  [SIGN CHANGE VIOLATED]") << "\n";

  const std::vector<Complex> roots = q_roots_all(a, j);
  log << "  multiplier polynomial degree " << q.degree() << ", all roots:\n";
  for (const Complex& r : roots)
    log << "    (" << detail::format_sig(r.real(), 14) << ", " << detail::format_sig(r.imag(), 14)
        << ")\n";

  const auto candidates = resonance_candidates(a, j);
  size_t degenerate = 0;
  for (const auto& c : candidates) degenerate += c.degenerate ? 1 : 0;
  log << "  " << candidates.size() << " non-real resonance candidates (" << degenerate
      << " degenerate)\n";
  for (const auto& c : candidates)
    log << "    value (" << detail::format_sig(c.value.real(), 9) << ", "
        << detail::format_sig(c.value.imag(), 9) << ")  |root| = "
        << detail::format_sig(std::abs(c.root), 9) << (c.degenerate ? "  [degenerate]" : "") << "\n";

  std::vector<std::string> outputs;
  if (!cfg.out_base.empty()) {
    const std::string roots_path = cfg.out_base + ".roots.csv";
    write_complex_csv(roots_path, roots);
    outputs.push_back(roots_path);
    log << "  wrote " << roots_path << "\n";

    std::vector<Complex> values;
    values.reserve(candidates.size());
    for (const auto& c : candidates) values.push_back(c.value);
    const std::string res_path = cfg.out_base + ".resonances.csv";
    write_complex_csv(res_path, values);
    outputs.push_back(res_path);
    log << "  wrote " << res_path << "\n";
    detail::write_manifest(cfg, outputs);
  }
}

// Dispatch.  Throws std::invalid_argument / std::domain_error for usage
// errors (callers should map these to exit code 2) and std::runtime_error
// for computational failures (exit code 1).
inline void run_command(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (cfg.command == "spec2") return run_spec2(cfg, log);
  if (cfg.command == "converge") return run_converge(cfg, log);
  if (cfg.command == "toeplitz-roots") return run_toeplitz_roots(cfg, log);
  run_exact(cfg, log);
}

}  // namespace spec2lab
