#pragma once

#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

namespace orderstats {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Sample sizes up to this use exact rational arithmetic in
/// exact_tau_min_pair; larger ones use log-gamma binomials.
inline constexpr std::size_t kRationalTauLimit = 60;

/// Exact binomial coefficient C(n, k); zero when k > n.
[[nodiscard]] BigInt binomial(std::size_t n, std::size_t k);

/// Kendall's tau between the minimum and the i-th order statistic of an
/// i.i.d. continuous sample of size n, 2 <= i <= n:
///
///   1 - 2(n-1)/(2n-1) * C(n-2, i-2) * sum_{s=0}^{n-i} C(n, s) / C(2n-2, n-i+s)
///
/// The value does not depend on the parent distribution.
[[nodiscard]] Rational exact_tau_min_pair_rational(std::size_t n, std::size_t i);

/// The same quantity in double precision: rational evaluation for
/// n <= kRationalTauLimit, tau_min_pair_floating beyond.
[[nodiscard]] double exact_tau_min_pair(std::size_t n, std::size_t i);

/// Floating-point evaluation with binomials from lgamma.
[[nodiscard]] double tau_min_pair_floating(std::size_t n, std::size_t i);

}  // namespace orderstats
