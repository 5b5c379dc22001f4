// Eigenvalue counting functions, the Weyl constant A_alpha, volumes and the
// counting bounds behind the Weyl laws of the Bieberbach quotients.
#pragma once

#include <heis/quotient_spectrum.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heis {

inline double volume(const LatticeSpec &spec) {
    return spec.p_step() * spec.q_step() * spec.center_period;
}

/// Half (GammaPi) or a quarter (GammaPiHalf) of the covering lattice volume.
inline double volume(const BieberbachSpec &spec) { return volume(spec.base) / spec.index; }

inline double volume(const ManifoldSpec &spec) {
    return std::visit([](const auto &s) { return volume(s); }, spec);
}

struct WeylConstant {
    double alpha = 0.0;
    double value = 0.0;
    double quadrature_error = 0.0;
};

namespace detail {

/// x/sinh(x) * 2 cosh(alpha x) for x >= 0, written with decaying exponentials.
inline double weyl_integrand(double x, double alpha) {
    if (x == 0.0) return 2.0;
    const double den = -std::expm1(-2.0 * x); // 1 - e^{-2x}
    return 2.0 * x * (std::exp((alpha - 1.0) * x) + std::exp(-(alpha + 1.0) * x)) / den;
}

/// 2 (x/sinh x)^2 for x >= 0.
inline double weyl_integrand_edge(double x) {
    if (x == 0.0) return 2.0;
    const double r = 2.0 * x * std::exp(-x) / -std::expm1(-2.0 * x);
    return 2.0 * r * r;
}

} // namespace detail

/// A_alpha = (1/pi^2) int_R x/sinh(x) e^{-alpha x} dx for |alpha| < 1 and
/// (1/(2 pi^2)) int_R (x/sinh x)^2 dx at alpha = +-1, by adaptive
/// Gauss-Kronrod on [0, L] after folding the integrand.
inline WeylConstant weyl_constant(double alpha) {
    if (!(alpha >= -1.0 && alpha <= 1.0)) {
        throw std::domain_error("weyl_constant requires -1 <= alpha <= 1");
    }
    using boost::math::quadrature::gauss_kronrod;
    constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
    double error = 0.0;
    if (std::fabs(alpha) == 1.0) {
        const double integral =
            gauss_kronrod<double, 61>::integrate([](double x) { return detail::weyl_integrand_edge(x); }, 0.0, 60.0,
                                                 20, 1e-15, &error);
        // (1/2pi^2) * 2 int_0^inf (x/sinh x)^2
        return {alpha, integral / (2.0 * kPi2), error / (2.0 * kPi2)};
    }
    const double eps = 1.0 - std::fabs(alpha);
    const double upper = std::min(40.0 / eps, 2000.0);
    const double a = std::fabs(alpha);
    double integral = gauss_kronrod<double, 61>::integrate([a](double x) { return detail::weyl_integrand(x, a); },
                                                           0.0, upper, 20, 1e-15, &error);
    // Past the cap the integrand is 2x e^{-eps x} up to a relative e^{-2L}.
    const double tail = 2.0 * std::exp(-eps * upper) * (upper / eps + 1.0 / (eps * eps));
    if (tail > 1e-300) integral += tail;
    error /= kPi2;
    if (!(error < 1e-10 * std::max(1.0, integral / kPi2))) {
        throw std::runtime_error("weyl_constant: quadrature error estimate too large");
    }
    return {alpha, integral / kPi2, error};
}

struct CountingSample {
    double t = 0.0;
    long long count = 0;
    long long oscillator = 0;
    long long torus = 0;
};

struct CountingSeries {
    std::string manifold;
    double alpha = 0.0;
    std::vector<CountingSample> samples;
    /// Set for Bieberbach quotients, whose torus counts are orbit counts.
    bool torus_heuristic = false;
};

inline std::vector<double> default_tgrid() {
    std::vector<double> grid;
    const double lo = std::numbers::pi / 2.0;
    const double hi = 1000.0;
    constexpr int kSamples = 20;
    for (int i = 0; i < kSamples; ++i) {
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (kSamples - 1)));
    }
    grid.back() = hi;
    return grid;
}

namespace detail {

inline void check_tgrid(const std::vector<double> &tgrid) {
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
        if (!(tgrid[i] > 0.0)) throw std::invalid_argument("tgrid values must be positive");
        if (i > 0 && tgrid[i] < tgrid[i - 1]) throw std::invalid_argument("tgrid must be sorted");
    }
}

/// Prefix counts of (value, weight) events at each threshold.
inline std::vector<long long> cumulative_at(std::vector<std::pair<double, long long>> events,
                                            const std::vector<double> &tgrid) {
    std::sort(events.begin(), events.end());
    std::vector<long long> out;
    out.reserve(tgrid.size());
    std::size_t idx = 0;
    long long acc = 0;
    for (double t : tgrid) {
        while (idx < events.size() && within_threshold(events[idx].first, t)) acc += events[idx++].second;
        out.push_back(acc);
    }
    return out;
}

} // namespace detail

/// N(t) = number of positive eigenvalues <= t with multiplicity, split into
/// the oscillator and torus sectors. Zero eigenvalues are not counted.
inline CountingSeries counting_function(const ManifoldSpec &spec, double alpha, const std::vector<double> &tgrid) {
    detail::check_tgrid(tgrid);
    CountingSeries series{manifold_name(spec), alpha, {}, std::holds_alternative<BieberbachSpec>(spec)};
    if (tgrid.empty()) return series;
    const double tmax = tgrid.back();

    std::vector<std::pair<double, long long>> osc;
    for_each_oscillator_pair(alpha, tmax, [&](int n, int lambda, double v) {
        const long long m = oscillator_multiplicity(spec, n, lambda);
        if (m > 0) osc.emplace_back(v, m);
    });

    const LatticeSpec cover = covering_lattice(spec);
    const DualLatticeBasis basis = dual_lattice(cover);
    const int order = torus_rotation_order(spec);
    std::vector<std::pair<double, long long>> tor;
    for (auto &[key, pts] : torus_shells(cover, tmax)) {
        if (key == 0) continue;
        tor.emplace_back(torus_eigenvalue(pts.front()), torus_orbit_count(pts, basis, order));
    }

    const auto osc_counts = detail::cumulative_at(std::move(osc), tgrid);
    const auto tor_counts = detail::cumulative_at(std::move(tor), tgrid);
    for (std::size_t i = 0; i < tgrid.size(); ++i) {
        series.samples.push_back({tgrid[i], osc_counts[i] + tor_counts[i], osc_counts[i], tor_counts[i]});
    }
    return series;
}

/// #E(t) and #O(t): admissible (n, lambda) with |n| + lambda even / odd.
struct ParitySetCounts {
    double t = 0.0;
    long long even = 0;
    long long odd = 0;

    /// 2(t/pi + 1)
    double bound() const { return 2.0 * (t / std::numbers::pi + 1.0); }
};

inline ParitySetCounts parity_counts(double t, double alpha) {
    if (!(t > 0.0)) throw std::invalid_argument("parity_counts requires t > 0");
    ParitySetCounts out{t, 0, 0};
    for_each_oscillator_pair(alpha, t, [&](int n, int lambda, double) {
        if ((std::abs(n) + lambda) % 2 == 0) {
            ++out.even;
        } else {
            ++out.odd;
        }
    });
    return out;
}

struct OscillatorPairSums {
    long long ones = 0;  ///< sum over admissible (n, lambda) of 1
    long long mults = 0; ///< sum of 2l|n|

    double ratio() const { return mults == 0 ? 0.0 : static_cast<double>(ones) / static_cast<double>(mults); }
};

inline OscillatorPairSums oscillator_pair_sums(double t, double alpha, int l) {
    if (!(t > 0.0)) throw std::invalid_argument("oscillator_pair_sums requires t > 0");
    if (l <= 0) throw std::invalid_argument("oscillator_pair_sums requires l > 0");
    OscillatorPairSums out;
    for_each_oscillator_pair(alpha, t, [&](int n, int, double) {
        ++out.ones;
        out.mults += 2LL * l * std::abs(n);
    });
    return out;
}

/// Floor sums over lambda = 0..floor(ct), c = 2/pi, for one sign of
/// 2 lambda + 1 -/+ alpha (terms with a non-positive denominator omitted):
/// F = sum floor(x), G = sum floor(x)(floor(x)+1), H = sum x, Q = sum x^2,
/// x = ct / (2 lambda + 1 -/+ alpha).
struct FloorSums {
    long long f = 0;
    long long g = 0;
    double h = 0.0;
    double q = 0.0;
    long long terms = 0; ///< floor(ct) + 1
};

inline FloorSums floor_sums(double t, double alpha, int sign) {
    const double c = 2.0 / std::numbers::pi;
    const long long top = static_cast<long long>(std::floor(c * t));
    FloorSums out;
    out.terms = top + 1;
    for (long long lambda = 0; lambda <= top; ++lambda) {
        const double den = 2.0 * static_cast<double>(lambda) + 1.0 - sign * alpha;
        if (den <= 0.0) continue;
        const double x = c * t / den;
        const long long fl = static_cast<long long>(std::floor(x));
        out.f += fl;
        out.g += fl * (fl + 1);
        out.h += x;
        out.q += x * x;
    }
    return out;
}

struct WeylRatioSample {
    double t = 0.0;
    long long count = 0;
    double ratio = 0.0;
    double target = 0.0;
    double deviation = 0.0; ///< |ratio - target| / target
};

/// N(t)/t^2 against A_alpha vol.
inline std::vector<WeylRatioSample> weyl_ratio_check(const ManifoldSpec &spec, double alpha,
                                                     const std::vector<double> &tgrid) {
    const double target = weyl_constant(alpha).value * volume(spec);
    const CountingSeries series = counting_function(spec, alpha, tgrid);
    std::vector<WeylRatioSample> out;
    for (const auto &s : series.samples) {
        const double ratio = static_cast<double>(s.count) / (s.t * s.t);
        out.push_back({s.t, s.count, ratio, target, std::fabs(ratio - target) / target});
    }
    return out;
}

} // namespace heis
