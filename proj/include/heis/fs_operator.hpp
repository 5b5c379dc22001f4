// Finite-difference application of the Folland-Stein operator
// L_alpha = (-(P^2 + Q^2) + i alpha S) / 4,  P = d/dp, Q = d/dq + p d/ds, S = d/ds.
#pragma once

#include <heis/group.hpp>

#include <complex>
#include <functional>
#include <stdexcept>

namespace heis {

using PointFunction = std::function<std::complex<double>(const PolarizedPoint &)>;

inline constexpr double kDefaultFdStep = 1e-3;

/// (L_alpha f)(pt) by second-order central differences; the mixed term of
/// Q^2 = d_q^2 + 2p d_q d_s + p^2 d_s^2 uses the 4-point cross stencil.
inline std::complex<double> folland_stein_apply(const PointFunction &f, double alpha, const PolarizedPoint &pt,
                                                double h = kDefaultFdStep) {
    if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    const auto at = [&](double dp, double dq, double ds) { return f({pt.p + dp, pt.q + dq, pt.s + ds}); };
    const std::complex<double> f0 = at(0, 0, 0);
    const double h2 = h * h;

    const auto fpp = (at(h, 0, 0) - 2.0 * f0 + at(-h, 0, 0)) / h2;
    const auto fqq = (at(0, h, 0) - 2.0 * f0 + at(0, -h, 0)) / h2;
    const auto fsp = at(0, 0, h);
    const auto fsm = at(0, 0, -h);
    const auto fss = (fsp - 2.0 * f0 + fsm) / h2;
    const auto fs = (fsp - fsm) / (2.0 * h);
    const auto fqs = (at(0, h, h) - at(0, h, -h) - at(0, -h, h) + at(0, -h, -h)) / (4.0 * h2);

    const auto q2 = fqq + 2.0 * pt.p * fqs + pt.p * pt.p * fss;
    return 0.25 * (-(fpp + q2) + std::complex<double>(0.0, alpha) * fs);
}

/// |(L_alpha f)(pt) - E f(pt)|
inline double folland_stein_residual(const PointFunction &f, double alpha, double eigenvalue,
                                     const PolarizedPoint &pt, double h = kDefaultFdStep) {
    return std::abs(folland_stein_apply(f, alpha, pt, h) - eigenvalue * f(pt));
}

} // namespace heis
