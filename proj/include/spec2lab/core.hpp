#pragma once

#include <complex>
#include <string_view>

namespace spec2lab {

using Complex = std::complex<double>;

inline constexpr std::string_view version = "0.1.0";

}  // namespace spec2lab
