// Schrodinger representation, Weil-Brezin transform and the explicit
// eigenfunctions of L_alpha on N_l and N'_{2l}.
#pragma once

#include <heis/errors.hpp>
#include <heis/group.hpp>
#include <heis/hermite.hpp>
#include <heis/lattice.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heis {

using cplx = std::complex<double>;

/// exp(2 pi i t), with t reduced mod 1 first.
inline cplx unit_phase(double t) {
    t -= std::round(t);
    const double angle = 2.0 * std::numbers::pi * t;
    return {std::cos(angle), std::sin(angle)};
}

/// A function on the line together with where it lives: |g| is negligible
/// outside a Gaussian-decaying neighbourhood of [center - width, center + width].
struct LineFunction {
    std::function<cplx(double)> eval;
    double center = 0.0;
    double width = 1.0;

    cplx operator()(double x) const { return eval(x); }
};

/// F_{n,lambda} (Plain) or F_{n,lambda,l} (Sqrt2l) as a line function.
inline LineFunction hermite_line(int n, int lambda, double l, HermiteScaling scaling) {
    check_hermite_order(lambda);
    const double rate = hermite_rate(n, l, scaling);
    return {[rate, lambda](double x) { return cplx(hermite_function(lambda, rate * x), 0.0); }, 0.0,
            scaled_hermite_width(n, lambda, l, scaling)};
}

/// (pi_beta(p,q,s) g)(x) = exp(2 pi i beta (s + q x)) g(x + p)
inline cplx schrodinger_act(double beta, const PolarizedPoint &h, const LineFunction &g, double x) {
    if (beta == 0.0) throw std::invalid_argument("Schrodinger representation requires beta != 0");
    return unit_phase(beta * (h.s + h.q * x)) * g(x + h.p);
}

/// pi_beta(h) g as a line function (centre moves by -p).
inline LineFunction schrodinger_act(double beta, const PolarizedPoint &h, const LineFunction &g) {
    if (beta == 0.0) throw std::invalid_argument("Schrodinger representation requires beta != 0");
    return {[beta, h, g](double x) { return unit_phase(beta * (h.s + h.q * x)) * g(x + h.p); },
            g.center - h.p, g.width};
}

/// Index (n, a, b) of W_n^{a,b} on the lattice N_period: a in Z/|n|, b in
/// Z/period. On the Bieberbach covers period = 2l.
struct WBIndex {
    int n = 1;
    int a = 0;
    int b = 0;
    int period = 1;

    WBIndex() = default;
    WBIndex(int n_, int a_, int b_, int period_) : n(n_), a(a_), b(b_), period(period_) {
        if (n == 0) throw std::invalid_argument("WBIndex requires n != 0");
        if (period <= 0) throw std::invalid_argument("WBIndex requires a positive period");
        if (a < 0 || a >= std::abs(n)) throw std::invalid_argument("WBIndex requires 0 <= a < |n|");
        if (b < 0 || b >= period) throw std::invalid_argument("WBIndex requires 0 <= b < period");
    }

    /// Canonical residues of arbitrary integers a, b.
    static WBIndex from_residues(int n, long long a, long long b, int period) {
        if (n == 0) throw std::invalid_argument("WBIndex requires n != 0");
        if (period <= 0) throw std::invalid_argument("WBIndex requires a positive period");
        const long long an = std::abs(n);
        return {n, static_cast<int>(((a % an) + an) % an), static_cast<int>(((b % period) + period) % period),
                period};
    }

    int abs_n() const { return std::abs(n); }
    int basis_size() const { return abs_n() * period; }
    /// Position in the (a major, b minor) basis ordering.
    int flat() const { return a * period + b; }
    static WBIndex from_flat(int n, int period, int flat) { return {n, flat / period, flat % period, period}; }

    /// j/|n| + u/(period * n); note the signed n in the second term.
    double offset() const {
        return static_cast<double>(a) / abs_n() + static_cast<double>(b) / (static_cast<double>(period) * n);
    }
};

inline constexpr double kDefaultWBTolerance = 1e-12;

namespace detail {
inline constexpr int kMaxWBTerms = 10000;
}

/// (W_n^{a,b} g)(p,q,s) = e^{2 pi i n s} sum_k g(p + k + x) e^{2 pi i n (k + x) q}
/// with x = j/|n| + u/(period n). Terms are added centre first, then in
/// (+d, -d) pairs; each side stops once it is past the bulk of g and two
/// consecutive terms are below tol/10.
inline cplx weil_brezin_eval(const WBIndex &idx, const LineFunction &g, const PolarizedPoint &pt,
                             double tol = kDefaultWBTolerance) {
    if (!(tol > 0.0)) throw std::invalid_argument("weil_brezin_eval requires tol > 0");
    const double x = idx.offset();
    const double n = idx.n;
    const double k0 = std::round(g.center - pt.p - x);
    const double cutoff = tol / 10.0;

    auto term = [&](double k) -> std::pair<cplx, double> {
        const double arg = pt.p + k + x;
        const cplx gv = g(arg);
        return {gv * unit_phase(n * (k + x) * pt.q), std::abs(gv)};
    };
    auto past_bulk = [&](double k) { return std::fabs(pt.p + k + x - g.center) > g.width + 1.0; };

    cplx sum = term(k0).first;
    int small_up = 0;
    int small_down = 0;
    bool up_done = false;
    bool down_done = false;
    for (int d = 1; !(up_done && down_done); ++d) {
        if (d > detail::kMaxWBTerms) {
            throw TruncationError("Weil-Brezin series did not converge: terms do not shrink (n=" +
                                  std::to_string(idx.n) + ")");
        }
        if (!up_done) {
            const double k = k0 + d;
            const auto [t, mag] = term(k);
            sum += t;
            small_up = (mag < cutoff && past_bulk(k)) ? small_up + 1 : 0;
            up_done = small_up >= 2;
        }
        if (!down_done) {
            const double k = k0 - d;
            const auto [t, mag] = term(k);
            sum += t;
            small_down = (mag < cutoff && past_bulk(k)) ? small_down + 1 : 0;
            down_done = small_down >= 2;
        }
    }
    return unit_phase(n * pt.s) * sum;
}

/// Eigenvalue (pi |n| / 2c)(2 lambda + 1 - alpha sgn n) of the oscillator sector.
inline double oscillator_eigenvalue(int n, int lambda, double alpha, double center_period = 1.0) {
    if (n == 0) throw std::invalid_argument("oscillator eigenvalue requires n != 0");
    const double an = std::abs(static_cast<double>(n));
    const double sgn = n > 0 ? 1.0 : -1.0;
    return std::numbers::pi * an / (2.0 * center_period) * (2.0 * lambda + 1.0 - alpha * sgn);
}

/// StandardRect(l): W_n^{a,b} F_{n,lambda} at pt (period l).
/// ScaledSquare(l): (W_n^{a,b} F_{n,lambda,l}) o S_{2l} at pt (period 2l).
inline cplx wb_eigenfunction(const WBIndex &idx, int lambda, const LatticeSpec &lattice,
                             const PolarizedPoint &pt, double tol = kDefaultWBTolerance) {
    if (idx.period != lattice.wb_period()) {
        throw std::invalid_argument("wb_eigenfunction: index period " + std::to_string(idx.period) +
                                    " does not match lattice period " + std::to_string(lattice.wb_period()));
    }
    if (lattice.kind == LatticeKind::StandardRect) {
        return weil_brezin_eval(idx, hermite_line(idx.n, lambda, 1.0, HermiteScaling::Plain), pt, tol);
    }
    const SymplecticMap s2l = SymplecticMap::scaling(lattice.l);
    return weil_brezin_eval(idx, hermite_line(idx.n, lambda, lattice.l, HermiteScaling::Sqrt2l), s2l(pt), tol);
}

struct DualLatticePoint {
    double mu = 0.0;
    double nu = 0.0;

    friend bool operator==(const DualLatticePoint &, const DualLatticePoint &) = default;
};

/// chi_{mu,nu}(p,q) = exp(2 pi i (mu p + nu q))
inline cplx torus_character(const DualLatticePoint &mn, const PolarizedPoint &pt) {
    const double t = mn.mu * pt.p + mn.nu * pt.q;
    const double angle = 2.0 * std::numbers::pi * t;
    return {std::cos(angle), std::sin(angle)};
}

inline double torus_eigenvalue(const DualLatticePoint &mn) {
    return std::numbers::pi * std::numbers::pi * (mn.mu * mn.mu + mn.nu * mn.nu);
}

/// Rectangular generators (mu_step, 0), (0, nu_step) of the dual lattice of
/// the projected lattice Lambda_N.
struct DualLatticeBasis {
    double mu_step = 1.0;
    double nu_step = 1.0;

    DualLatticePoint at(long long i, long long j) const {
        return {static_cast<double>(i) * mu_step, static_cast<double>(j) * nu_step};
    }
};

inline DualLatticeBasis dual_lattice(const LatticeSpec &lattice) {
    if (lattice.kind == LatticeKind::StandardRect) return {1.0, 1.0 / lattice.l};
    const double r = 1.0 / std::sqrt(2.0 * lattice.l);
    return {r, r};
}

/// mu u + nu v in Z for both generators (u, v) of Lambda_N.
inline bool is_dual_point(const LatticeSpec &lattice, const DualLatticePoint &mn, double tol = 1e-10) {
    const double a = mn.mu * lattice.p_step();
    const double b = mn.nu * lattice.q_step();
    return std::fabs(a - std::round(a)) <= tol && std::fabs(b - std::round(b)) <= tol;
}

} // namespace heis
