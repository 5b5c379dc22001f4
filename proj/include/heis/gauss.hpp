#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace heis {

/// Quadratic Gauss sum sum_{k<m} exp(2 pi i k^2 / m), closed form by m mod 4:
/// (1+i)sqrt(m), sqrt(m), 0, i sqrt(m).
inline std::complex<double> gauss_sum(long long m) {
    if (m < 1) throw std::invalid_argument("gauss_sum requires m >= 1");
    const double r = std::sqrt(static_cast<double>(m));
    switch (m % 4) {
    case 0: return {r, r};
    case 1: return {r, 0.0};
    case 2: return {0.0, 0.0};
    default: return {0.0, r};
    }
}

/// Direct summation; k^2 is reduced mod m in integers before the exponential.
inline std::complex<double> gauss_sum_direct(long long m) {
    if (m < 1) throw std::invalid_argument("gauss_sum_direct requires m >= 1");
    std::complex<double> sum = 0.0;
    for (long long k = 0; k < m; ++k) {
        const std::int64_t r = static_cast<std::int64_t>((k * k) % m);
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
        sum += std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return sum;
}

} // namespace heis
