// Spectra of the Bieberbach quotients, read off the covering lattice: the
// oscillator sector through the invariant-subspace dimensions, the torus
// sector through generator orbits of characters.
#pragma once

#include <heis/dimensions.hpp>
#include <heis/lattice.hpp>
#include <heis/spectrum.hpp>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <utility>
#include <variant>
#include <vector>

namespace heis {

inline LatticeSpec covering_lattice(const LatticeSpec &spec) { return spec; }
inline LatticeSpec covering_lattice(const BieberbachSpec &spec) { return spec.base; }
inline LatticeSpec covering_lattice(const ManifoldSpec &spec) {
    return std::visit([](const auto &s) { return covering_lattice(s); }, spec);
}

/// Multiplicity of the oscillator eigenvalue of (n, lambda).
inline long long oscillator_multiplicity(const ManifoldSpec &spec, int n, int lambda) {
    if (const auto *lat = std::get_if<LatticeSpec>(&spec)) {
        return static_cast<long long>(lat->wb_period()) * std::abs(n);
    }
    const auto &b = std::get<BieberbachSpec>(spec);
    return b.kind == BieberbachKind::GammaPi ? dim_phi_invariant(n, lambda, b.l) : dim_psi_invariant(n, lambda, b.l);
}

/// Rotation order acting on characters: chi_{mu,nu} o phi = chi_{-mu,-nu},
/// chi_{mu,nu} o psi = chi_{nu,-mu}.
inline int torus_rotation_order(const ManifoldSpec &spec) {
    if (std::holds_alternative<LatticeSpec>(spec)) return 1;
    return std::get<BieberbachSpec>(spec).kind == BieberbachKind::GammaPi ? 2 : 4;
}

/// Number of generator orbits among the characters of one shell.
inline long long torus_orbit_count(const std::vector<DualLatticePoint> &shell, const DualLatticeBasis &basis,
                                   int order) {
    if (order == 1) return static_cast<long long>(shell.size());
    std::set<std::pair<long long, long long>> seen;
    long long orbits = 0;
    for (const auto &pt : shell) {
        long long i = std::llround(pt.mu / basis.mu_step);
        long long j = std::llround(pt.nu / basis.nu_step);
        if (seen.contains({i, j})) continue;
        ++orbits;
        for (int k = 0; k < order; ++k) {
            seen.insert({i, j});
            if (order == 2) {
                i = -i;
                j = -j;
            } else {
                // Square dual lattice, so (mu,nu) -> (nu,-mu) maps indices alike.
                const long long ni = j;
                j = -i;
                i = ni;
            }
        }
    }
    return orbits;
}

inline std::vector<SpectralLine> enumerate_spectrum(const BieberbachSpec &spec, double alpha, double tmax) {
    if (!(tmax > 0.0)) throw std::invalid_argument("enumerate_spectrum requires tmax > 0");
    const ManifoldSpec m = spec;
    const DualLatticeBasis basis = dual_lattice(spec.base);
    const int order = torus_rotation_order(m);
    std::vector<SpectralLine> lines;
    for (auto &[key, pts] : torus_shells(spec.base, tmax)) {
        const double value = torus_eigenvalue(pts.front());
        const long long mult = torus_orbit_count(pts, basis, order);
        lines.push_back({value, mult, TorusOrigin{std::move(pts)}, true});
    }
    for_each_oscillator_pair(alpha, tmax, [&](int n, int lambda, double v) {
        const long long mult = oscillator_multiplicity(m, n, lambda);
        if (mult > 0) lines.push_back({v, mult, OscillatorOrigin{n, lambda}, false});
    });
    std::stable_sort(lines.begin(), lines.end(), line_less);
    return lines;
}

inline std::vector<SpectralLine> enumerate_spectrum(const ManifoldSpec &spec, double alpha, double tmax) {
    return std::visit([&](const auto &s) { return enumerate_spectrum(s, alpha, tmax); }, spec);
}

} // namespace heis
