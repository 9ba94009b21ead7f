#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace spec2lab {

// Diagonal potential v : {1, 2, 3, ...} -> R of the discrete Schrodinger
// operator (Hu)(n) = u(n+1) + u(n-1) + v(n)u(n) on the half line, with the
// boundary convention u(0) = 0.  Site indices are 1-based everywhere; u(0)=0
// is a boundary condition, not a site.
//
// Families:
//   rank-one     v(n) = a for n = j, zero elsewhere   (a > 0, j >= 1)
//   power-decay  v(n) = a / n^{r+1}                   (a > 0, r > 0)
//   explicit     v(n) = values[n-1], zero beyond the stored prefix

struct RankOnePotential {
  double height;  // a
  int site;       // j
};

struct PowerDecayPotential {
  double amplitude;  // a
  double rate;       // r
};

struct ExplicitPotential {
  std::vector<double> values;
};

namespace detail {

// %.17g prints enough digits that reading the string back recovers the
// exact double.
inline std::string format_sig17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline double parse_double_field(const std::string& text, const std::string& field) {
  try {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("potential spec: field '" + field + "' is not a number: '" + text + "'");
  }
}

inline int parse_int_field(const std::string& text, const std::string& field) {
  try {
    std::size_t pos = 0;
    const int value = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument("potential spec: field '" + field + "' is not an integer: '" + text + "'");
  }
}

}  // namespace detail

class Potential {
 public:
  using Spec = std::variant<RankOnePotential, PowerDecayPotential, ExplicitPotential>;

  static Potential rank_one(double a, int j) {
    if (!(a > 0.0)) throw std::invalid_argument("potential rank1: height a must be > 0");
    if (j < 1) throw std::invalid_argument("potential rank1: site j must be >= 1");
    return Potential(RankOnePotential{a, j});
  }

  static Potential power_decay(double a, double r) {
    if (!(a > 0.0)) throw std::invalid_argument("potential decay: amplitude a must be > 0");
    if (!(r > 0.0)) throw std::invalid_argument("potential decay: rate r must be > 0");
    return Potential(PowerDecayPotential{a, r});
  }

  static Potential from_values(std::vector<double> values) {
    return Potential(ExplicitPotential{std::move(values)});
  }

  static Potential zero() { return from_values({}); }

  // v(n); n = 0 or negative is rejected (the lattice starts at 1).
  double operator()(int n) const {
    if (n < 1) throw std::domain_error("potential index must be >= 1 (u(0)=0 is a boundary condition, not a site)");
    if (const auto* r1 = std::get_if<RankOnePotential>(&spec_))
      return n == r1->site ? r1->height : 0.0;
    if (const auto* pd = std::get_if<PowerDecayPotential>(&spec_))
      return pd->amplitude / std::pow(double(n), pd->rate + 1.0);
    const auto& values = std::get<ExplicitPotential>(spec_).values;
    return n <= int(values.size()) ? values[n - 1] : 0.0;
  }

  double max_abs(int k) const {
    double m = 0.0;
    for (int n = 1; n <= k; ++n) m = std::max(m, std::abs((*this)(n)));
    return m;
  }

  const Spec& spec() const { return spec_; }

  // CLI / config grammar:
  //   rank1:a=<float>,j=<int>
  //   decay:a=<float>,r=<float>
  //   file:<path>            (one real per line, site 1 first; blank lines and
  //                           '#' comments are skipped)
  //   list:<v1>,<v2>,...     (inline explicit values; `list:` alone is v == 0)
  static Potential parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("potential spec '" + text + "': expected <family>:<args> with family rank1|decay|file|list");
    const std::string family = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);

    Potential p = [&] {
      if (family == "rank1" || family == "decay") {
        double a = 0.0, second = 0.0;
        bool have_a = false, have_second = false;
        const std::string second_key = family == "rank1" ? "j" : "r";
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const auto eq = item.find('=');
          if (eq == std::string::npos)
            throw std::invalid_argument("potential spec: expected key=value, got '" + item + "'");
          const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
          if (key == "a") {
            a = detail::parse_double_field(value, "a");
            have_a = true;
          } else if (key == second_key) {
            second = family == "rank1" ? double(detail::parse_int_field(value, second_key))
                                       : detail::parse_double_field(value, second_key);
            have_second = true;
          } else {
            throw std::invalid_argument("potential spec: unknown field '" + key + "' for family '" + family + "'");
          }
        }
        if (!have_a) throw std::invalid_argument("potential spec: missing field 'a' in '" + text + "'");
        if (!have_second)
          throw std::invalid_argument("potential spec: missing field '" + second_key + "' in '" + text + "'");
        return family == "rank1" ? rank_one(a, int(second)) : power_decay(a, second);
      }
      if (family == "file") {
        std::ifstream in(rest);
        if (!in) throw std::invalid_argument("potential spec: cannot open file '" + rest + "'");
        std::vector<double> values;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
          ++line_no;
          const auto first = line.find_first_not_of(" \t\r");
          if (first == std::string::npos || line[first] == '#') continue;
          const auto last = line.find_last_not_of(" \t\r");
          values.push_back(detail::parse_double_field(line.substr(first, last - first + 1),
                                                      "line " + std::to_string(line_no)));
        }
        return from_values(std::move(values));
      }
      if (family == "list") {
        std::vector<double> values;
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ','))
          values.push_back(detail::parse_double_field(item, "list entry"));
        return from_values(std::move(values));
      }
      throw std::invalid_argument("potential spec: unknown family '" + family + "' (expected rank1|decay|file|list)");
    }();
    p.origin_ = text;
    return p;
  }

  // Round-trips through parse(); parsed potentials keep their original spec
  // string (so file-backed potentials stay file references).
  std::string to_string() const {
    if (!origin_.empty()) return origin_;
    if (const auto* r1 = std::get_if<RankOnePotential>(&spec_))
      return "rank1:a=" + detail::format_sig17(r1->height) + ",j=" + std::to_string(r1->site);
    if (const auto* pd = std::get_if<PowerDecayPotential>(&spec_))
      return "decay:a=" + detail::format_sig17(pd->amplitude) + ",r=" + detail::format_sig17(pd->rate);
    const auto& values = std::get<ExplicitPotential>(spec_).values;
    std::string out = "list:";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += detail::format_sig17(values[i]);
    }
    return out;
  }

 private:
  explicit Potential(Spec s) : spec_(std::move(s)) {}
  Spec spec_;
  std::string origin_;
};

}  // namespace spec2lab
