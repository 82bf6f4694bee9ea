#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace gln {

namespace detail {

inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline double distance_to_pole(std::complex<double> z) {
  if (z.real() > 0.5) return INFINITY;
  double k = std::round(z.real());
  if (k > 0) k = 0;
  return std::abs(z - std::complex<double>(k, 0));
}

}  // namespace detail

// log Gamma for Re z >= 1/2 (principal branch of the Lanczos sum)
inline std::complex<double> lgamma_lanczos(std::complex<double> z) {
  using C = std::complex<double>;
  z -= 1.0;
  C x = detail::kLanczos[0];
  for (int i = 1; i < 9; ++i) x += detail::kLanczos[i] / (z + double(i));
  C t = z + detail::kLanczosG + 0.5;
  return 0.5 * std::log(2 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline std::complex<double> cgamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (detail::distance_to_pole(z) == 0) throw std::domain_error("gamma: pole");
  if (z.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * z) * std::exp(lgamma_lanczos(C(1.0) - z)));
  }
  return std::exp(lgamma_lanczos(z));
}

}  // namespace gln
