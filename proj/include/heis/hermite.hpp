// Physicists' Hermite polynomials and the oscillator eigenfunctions built
// from them.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heis {

inline constexpr int kMaxHermiteOrder = 200;

inline void check_hermite_order(int lambda) {
    if (lambda < 0 || lambda > kMaxHermiteOrder) {
        throw std::out_of_range("Hermite order must lie in [0, " + std::to_string(kMaxHermiteOrder) +
                                "], got " + std::to_string(lambda));
    }
}

/// H_lambda(y) by H_{k+1} = 2y H_k - 2k H_{k-1}.
inline double hermite_poly(int lambda, double y) {
    check_hermite_order(lambda);
    double prev = 1.0;
    if (lambda == 0) return prev;
    double cur = 2.0 * y;
    for (int k = 1; k < lambda; ++k) {
        const double next = 2.0 * y * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// F_lambda(y) = H_lambda(y) exp(-y^2/2); eigenfunction of -d^2/dy^2 + y^2
/// with eigenvalue 2 lambda + 1.
inline double hermite_function(int lambda, double y) {
    check_hermite_order(lambda);
    // Same recurrence, rescaled on the fly so that large |y| in the Gaussian
    // tail yields 0 rather than inf * 0.
    constexpr double kBig = 1e150;
    double log_scale = 0.0;
    double prev = 1.0;
    double cur = lambda == 0 ? 1.0 : 2.0 * y;
    for (int k = 1; k < lambda; ++k) {
        const double next = 2.0 * y * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
        if (std::fabs(cur) > kBig) {
            cur /= kBig;
            prev /= kBig;
            log_scale += std::log(kBig);
        }
    }
    if (log_scale == 0.0) return cur * std::exp(-0.5 * y * y);
    return cur * std::exp(log_scale - 0.5 * y * y);
}

enum class HermiteScaling {
    Plain,   ///< F_{n,lambda}(x) = F_lambda(sqrt(2 pi |n|) x)
    Sqrt2l,  ///< F_{n,lambda,l}(x) = H_lambda(2 sqrt(l pi |n|) x) exp(-2 l pi |n| x^2)
};

/// Argument scale y = rate * x of the scaled Hermite function.
inline double hermite_rate(int n, double l, HermiteScaling scaling) {
    if (n == 0) throw std::invalid_argument("scaled Hermite function requires n != 0");
    const double an = std::abs(static_cast<double>(n));
    if (scaling == HermiteScaling::Plain) return std::sqrt(2.0 * std::numbers::pi * an);
    if (!(l > 0.0)) throw std::invalid_argument("scaled Hermite function requires l > 0");
    return 2.0 * std::sqrt(l * std::numbers::pi * an);
}

/// l is a real parameter so that the Sqrt2l family can be checked at l = 1/2,
/// where it coincides with Plain.
inline double scaled_hermite(int n, int lambda, double l, HermiteScaling scaling, double x) {
    return hermite_function(lambda, hermite_rate(n, l, scaling) * x);
}

/// Classical turning point sqrt(2 lambda + 1) mapped back to x.
inline double scaled_hermite_width(int n, int lambda, double l, HermiteScaling scaling) {
    return std::sqrt(2.0 * lambda + 1.0) / hermite_rate(n, l, scaling);
}

} // namespace heis
