// Spectrum of L_alpha on the lattice quotients N_l\H and N'_{2l}\H.
#pragma once

#include <heis/lattice.hpp>
#include <heis/weil_brezin.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

namespace heis {

struct TorusOrigin {
    std::vector<DualLatticePoint> points;
};

struct OscillatorOrigin {
    int n = 1;
    int lambda = 0;
};

using LineOrigin = std::variant<TorusOrigin, OscillatorOrigin>;

struct SpectralLine {
    double value = 0.0;
    long long multiplicity = 0;
    LineOrigin origin;
    /// Torus-sector multiplicities of Bieberbach quotients are orbit counts.
    bool heuristic = false;

    bool is_torus() const { return std::holds_alternative<TorusOrigin>(origin); }
    bool is_oscillator() const { return std::holds_alternative<OscillatorOrigin>(origin); }
};

/// value <= t, forgiving the last ulp or so of the eigenvalue formula.
inline bool within_threshold(double value, double t) { return value <= t + 1e-12 * std::max(1.0, std::fabs(t)); }

/// Admissible oscillator pairs (n, lambda) with 0 < eigenvalue <= t, visited
/// in the order sign (+, -), |n| ascending, lambda ascending.
template <typename Visit>
void for_each_oscillator_pair(double alpha, double t, Visit &&visit) {
    for (const int sign : {1, -1}) {
        // Smallest positive factor 2 lambda + 1 - alpha sgn(n).
        int lambda_first = 0;
        while (2.0 * lambda_first + 1.0 - alpha * sign <= 0.0) ++lambda_first;
        const double min_factor = 2.0 * lambda_first + 1.0 - alpha * sign;
        for (int an = 1;; ++an) {
            if (!within_threshold(std::numbers::pi * an / 2.0 * min_factor, t)) break;
            const int n = sign * an;
            for (int lambda = lambda_first;; ++lambda) {
                const double v = oscillator_eigenvalue(n, lambda, alpha);
                if (!within_threshold(v, t)) break;
                if (v > 0.0) visit(n, lambda, v);
            }
        }
    }
}

/// Dual-lattice points with torus eigenvalue <= t, grouped by the exact
/// integer key of mu^2 + nu^2, keyed in ascending order.
inline std::map<std::int64_t, std::vector<DualLatticePoint>> torus_shells(const LatticeSpec &lattice, double t) {
    const DualLatticeBasis basis = dual_lattice(lattice);
    std::map<std::int64_t, std::vector<DualLatticePoint>> shells;
    if (t < 0.0) return shells;
    const double radius = std::sqrt(std::max(t, 0.0)) / std::numbers::pi;
    const long long imax = static_cast<long long>(std::floor(radius / basis.mu_step)) + 1;
    const long long jmax = static_cast<long long>(std::floor(radius / basis.nu_step)) + 1;
    const std::int64_t l = lattice.l;
    for (long long i = -imax; i <= imax; ++i) {
        for (long long j = -jmax; j <= jmax; ++j) {
            const DualLatticePoint pt = basis.at(i, j);
            if (!within_threshold(torus_eigenvalue(pt), t)) continue;
            // StandardRect: mu^2 + nu^2 = (l^2 i^2 + j^2) / l^2; ScaledSquare: (i^2 + j^2) / 2l.
            const std::int64_t key =
                lattice.kind == LatticeKind::StandardRect ? l * l * i * i + j * j : i * i + j * j;
            shells[key].push_back(pt);
        }
    }
    return shells;
}

inline bool line_less(const SpectralLine &x, const SpectralLine &y) {
    if (x.value != y.value) return x.value < y.value;
    if (x.is_torus() != y.is_torus()) return x.is_torus();
    if (x.is_oscillator() && y.is_oscillator()) {
        const auto &ox = std::get<OscillatorOrigin>(x.origin);
        const auto &oy = std::get<OscillatorOrigin>(y.origin);
        if (ox.n != oy.n) return ox.n < oy.n;
        return ox.lambda < oy.lambda;
    }
    return false;
}

/// All torus lines pi^2(mu^2 + nu^2) <= tmax (the constant function included)
/// and all oscillator lines in (0, tmax] with multiplicity period * |n|.
/// Oscillator lines are one per (n, lambda) and never merged with torus lines.
inline std::vector<SpectralLine> enumerate_spectrum(const LatticeSpec &lattice, double alpha, double tmax) {
    if (!(tmax > 0.0)) throw std::invalid_argument("enumerate_spectrum requires tmax > 0");
    std::vector<SpectralLine> lines;
    for (auto &[key, pts] : torus_shells(lattice, tmax)) {
        const double value = torus_eigenvalue(pts.front());
        const long long mult = static_cast<long long>(pts.size());
        lines.push_back({value, mult, TorusOrigin{std::move(pts)}, false});
    }
    const long long period = lattice.wb_period();
    for_each_oscillator_pair(alpha, tmax, [&](int n, int lambda, double v) {
        lines.push_back({v, period * std::abs(n), OscillatorOrigin{n, lambda}, false});
    });
    std::stable_sort(lines.begin(), lines.end(), line_less);
    return lines;
}

} // namespace heis
