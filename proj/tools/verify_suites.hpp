// Invariant suites run by `heis_spectra verify`.
#pragma once

#include <heis/heis.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace heis::cli {

struct VerifyOptions {
    double wb_tol = kDefaultWBTolerance;
    double nullity_tol = kNullityTolerance;
    double fd_step = kDefaultFdStep;
    /// Added to entry (0,0) of every pullback matrix; nonzero values are a
    /// negative control that must make the pullback suite fail.
    double pullback_perturbation = 0.0;
};

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

namespace suites {

/// Records the first failure of a suite.
class Checker {
  public:
    explicit Checker(std::string name) : result_{std::move(name), true, {}} {}

    void expect(bool ok, const std::string &what) {
        ++checks_;
        if (!ok && result_.passed) {
            result_.passed = false;
            result_.detail = what;
        }
    }

    SuiteResult finish() {
        if (result_.passed) result_.detail = fmt::format("{} checks", checks_);
        return result_;
    }

  private:
    SuiteResult result_;
    long checks_ = 0;
};

inline PolarizedPoint random_point(std::mt19937_64 &rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    const double p = u(rng);
    const double q = u(rng);
    return {p, q, u(rng)};
}

inline SuiteResult group(const VerifyOptions &) {
    Checker c("group");
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 1000; ++i) {
        const auto g = random_point(rng, 2.0);
        const auto h = random_point(rng, 2.0);
        const auto k = random_point(rng, 2.0);
        const auto lhs = polarized_mul(polarized_mul(g, h), k);
        const auto rhs = polarized_mul(g, polarized_mul(h, k));
        c.expect(max_abs_diff(lhs, rhs) < 1e-12, "associativity");
        c.expect(max_abs_diff(polarized_mul(g, polarized_inverse(g)), polarized_identity()) < 1e-12, "inverse");

        const StandardPoint x{g.p, g.q, g.s};
        const StandardPoint y{h.p, h.q, h.s};
        const auto hom = max_abs_diff(standard_to_polarized(standard_mul(x, y)),
                                      polarized_mul(standard_to_polarized(x), standard_to_polarized(y)));
        c.expect(hom < 1e-12, "coordinate isomorphism");

        const auto u = UnitaryAutomorphism::rotation(angle(rng));
        const auto v = UnitaryAutomorphism::rotation(angle(rng));
        c.expect(max_abs_diff(u(polarized_mul(g, h)), polarized_mul(u(g), u(h))) < 1e-12, "automorphism");
        c.expect(max_abs_diff(u.compose(v)(g), u(v(g))) < 1e-12, "rotation composition");
    }
    c.expect(motion_power(phi_motion(), 2) == RigidMotion::translate(central(1.0)), "phi^2 = (0,0,1)");
    c.expect(motion_power(psi_motion(), 4) == RigidMotion::translate(central(1.0)), "psi^4 = (0,0,1)");
    c.expect(motion_power(psi_motion(), 2) == phi_motion(), "psi^2 = phi");
    return c.finish();
}

inline SuiteResult lattice(const VerifyOptions &) {
    Checker c("lattice");
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> small(-5, 5);
    for (int l = 1; l <= 3; ++l) {
        for (const auto &spec : {BieberbachSpec::gamma_pi(l), BieberbachSpec::gamma_pi_half(l)}) {
            const double ps = spec.base.p_step();
            const double qs = spec.base.q_step();
            for (int i = 0; i < 100; ++i) {
                const PolarizedPoint g{small(rng) * ps, small(rng) * qs, static_cast<double>(small(rng))};
                const auto w = torsion_witness(g, spec);
                const double closed = torsion_closed_form(g, spec);
                c.expect(std::fabs(w.p) < 1e-9 && std::fabs(w.q) < 1e-9, "torsion witness is central");
                c.expect(std::fabs(w.s - closed) < 1e-9, "torsion witness closed form");
                const long long s = std::llround(closed);
                const long long r = ((s % 4) + 4) % 4;
                if (spec.kind == BieberbachKind::GammaPi) {
                    c.expect(r % 2 == 1, "gamma^2 central part odd");
                } else {
                    c.expect(r == 1 || r == 3, "gamma^4 central part 1 or 3 mod 4");
                }
            }
        }
        const std::vector<ManifoldSpec> specs{LatticeSpec::standard_rect(l), LatticeSpec::scaled_square(l),
                                              BieberbachSpec::gamma_pi(l), BieberbachSpec::gamma_pi_half(l)};
        for (const auto &spec : specs) {
            for (int i = 0; i < 200; ++i) {
                const auto g = random_point(rng, 4.0);
                const auto r = reduce_to_fundamental_domain(spec, g);
                c.expect(in_fundamental_domain(spec, r.point), "reduced point lies in the domain");
                c.expect(max_abs_diff(r.element(r.point), g) < 1e-10, "reduction reproduces the point");
                const bool member = std::visit([&](const auto &s) { return group_contains(s, r.element); }, spec);
                c.expect(member, "reduction element lies in the group");
            }
        }
    }
    return c.finish();
}

inline SuiteResult hermite(const VerifyOptions &) {
    Checker c("hermite");
    c.expect(hermite_poly(1, 3.0) == 6.0, "H_1(3) = 6");
    c.expect(hermite_poly(2, 1.0) == 2.0, "H_2(1) = 2");
    c.expect(std::fabs(hermite_function(0, 1.0) - std::exp(-0.5)) < 1e-15, "F_0(1)");
    const double h = 1e-4;
    for (int lambda = 0; lambda <= 10; ++lambda) {
        for (double y = -3.0; y <= 3.0; y += 0.37) {
            const double f = hermite_function(lambda, y);
            c.expect(hermite_function(lambda, -y) == (lambda % 2 == 0 ? f : -f), "parity");
            const double fpp = (hermite_function(lambda, y + h) - 2.0 * f + hermite_function(lambda, y - h)) / (h * h);
            const double scale = std::max(1.0, std::fabs(hermite_poly(lambda, y)));
            c.expect(std::fabs(-fpp + y * y * f - (2.0 * lambda + 1.0) * f) < 1e-5 * scale, "oscillator equation");
        }
    }
    return c.finish();
}

inline SuiteResult weil_brezin(const VerifyOptions &opt) {
    Checker c("weil-brezin");
    double theta = 0.0;
    for (int k = -20; k <= 20; ++k) theta += std::exp(-std::numbers::pi * k * k);
    const auto origin = wb_eigenfunction(WBIndex(1, 0, 0, 1), 0, LatticeSpec::standard_rect(1), {}, opt.wb_tol);
    c.expect(std::abs(origin - theta) < 1e-10, "theta value at the origin");
    std::mt19937_64 rng(13);
    for (int l = 1; l <= 2; ++l) {
        for (int n = -3; n <= 3; ++n) {
            if (n == 0) continue;
            const LatticeSpec lat = LatticeSpec::standard_rect(l);
            const auto g = hermite_line(n, 1, 1.0, HermiteScaling::Plain);
            for (int i = 0; i < 10; ++i) {
                const WBIndex idx(n, i % std::abs(n), i % l, l);
                const auto h = random_point(rng, 1.0);
                const auto pt = random_point(rng, 1.5);
                const auto lhs = weil_brezin_eval(idx, schrodinger_act(n, h, g), pt, opt.wb_tol);
                const auto rhs = weil_brezin_eval(idx, g, polarized_mul(pt, h), opt.wb_tol);
                c.expect(std::abs(lhs - rhs) < 1e-8, "intertwining");
                const PolarizedPoint gen{1.0, static_cast<double>(l), 0.0};
                const auto moved = wb_eigenfunction(idx, 1, lat, polarized_mul(gen, pt), opt.wb_tol);
                c.expect(std::abs(moved - wb_eigenfunction(idx, 1, lat, pt, opt.wb_tol)) < 1e-8, "lattice invariance");
            }
        }
    }
    return c.finish();
}

inline SuiteResult spectrum(const VerifyOptions &opt) {
    Checker c("spectrum");
    const double tmax = 20.0;
    long long total = 0;
    for (const auto &line : enumerate_spectrum(LatticeSpec::standard_rect(1), 0.0, tmax)) total += line.multiplicity;
    long long brute = 0;
    for (int n = -50; n <= 50; ++n) {
        for (int lambda = 0; lambda <= 50; ++lambda) {
            if (n != 0 && oscillator_eigenvalue(n, lambda, 0.0) <= tmax) brute += std::abs(n);
        }
    }
    for (int i = -10; i <= 10; ++i) {
        for (int j = -10; j <= 10; ++j) {
            if (std::numbers::pi * std::numbers::pi * (i * i + j * j) <= tmax) ++brute;
        }
    }
    c.expect(total == brute, "multiplicity total matches brute force");

    std::mt19937_64 rng(14);
    for (const auto &lat : {LatticeSpec::standard_rect(1), LatticeSpec::scaled_square(1)}) {
        for (const int n : {1, -1}) {
            for (const int lambda : {0, 1}) {
                for (const double alpha : {0.0, 0.5}) {
                    const WBIndex idx(n, 0, 0, lat.wb_period());
                    const PointFunction f = [&](const PolarizedPoint &pt) {
                        return wb_eigenfunction(idx, lambda, lat, pt, opt.wb_tol);
                    };
                    const double e = oscillator_eigenvalue(n, lambda, alpha);
                    const auto pt = random_point(rng, 0.8);
                    c.expect(folland_stein_residual(f, alpha, e, pt, opt.fd_step) < 1e-3, "oscillator eigenfunction");
                }
            }
        }
        const auto basis = dual_lattice(lat);
        for (int i = -1; i <= 1; ++i) {
            for (int j = -1; j <= 1; ++j) {
                const auto mn = basis.at(i, j);
                const PointFunction f = [&](const PolarizedPoint &pt) { return torus_character(mn, pt); };
                const double e = torus_eigenvalue(mn);
                c.expect(folland_stein_residual(f, 0.3, e, random_point(rng, 1.0), opt.fd_step) < 1e-3,
                         "torus eigenfunction");
            }
        }
    }
    return c.finish();
}

inline SuiteResult pullback(const VerifyOptions &opt) {
    Checker c("pullback");
    std::mt19937_64 rng(15);
    for (int l = 1; l <= 2; ++l) {
        for (int n = -3; n <= 3; ++n) {
            if (n == 0) continue;
            for (int lambda = 0; lambda <= 3; ++lambda) {
                auto phi = phi_pullback_matrix(n, lambda, l);
                auto psi = psi_pullback_matrix(n, lambda, l);
                phi.matrix(0, 0) += opt.pullback_perturbation;
                psi.matrix(0, 0) += opt.pullback_perturbation;
                const auto id = CMatrix::Identity(psi.size(), psi.size());
                c.expect(power_defect(phi) < 1e-10, "phi^* squared is the identity");
                c.expect(power_defect(psi) < 1e-10, "psi^* to the fourth is the identity");
                c.expect((psi.matrix.adjoint() * psi.matrix - id).norm() < 1e-10, "psi^* unitary");
                c.expect((psi.matrix * psi.matrix - phi.matrix).norm() < 1e-10, "psi^* squared equals phi^*");
                for (int i = 0; i < 3; ++i) {
                    const auto pt = random_point(rng, 1.5);
                    c.expect(pullback_pointwise_defect(phi, pt, opt.wb_tol) < 1e-8, "pointwise phi^*");
                    c.expect(pullback_pointwise_defect(psi, pt, opt.wb_tol) < 1e-8, "pointwise psi^*");
                }
            }
        }
    }
    return c.finish();
}

inline SuiteResult gauss(const VerifyOptions &) {
    Checker c("gauss");
    for (long long m = 1; m <= 400; ++m) {
        c.expect(std::abs(gauss_sum(m) - gauss_sum_direct(m)) < 1e-9, fmt::format("Gauss sum m={}", m));
    }
    for (int l = 1; l <= 3; ++l) {
        for (int n = 1; n <= 6; ++n) {
            const int r = (2 * l * n) % 4;
            c.expect(r == 0 || r == 2, "2l|n| is 0 or 2 mod 4");
        }
    }
    return c.finish();
}

inline SuiteResult dimensions(const VerifyOptions &opt) {
    Checker c("dimensions");
    for (int l = 1; l <= 3; ++l) {
        for (int n = -6; n <= 6; ++n) {
            if (n == 0) continue;
            for (int lambda = 0; lambda <= 8; ++lambda) {
                const int dphi = dim_phi_invariant(n, lambda, l);
                const int dpsi = dim_psi_invariant(n, lambda, l);
                const auto label = fmt::format("(n={}, lambda={}, l={})", n, lambda, l);
                c.expect(fixed_subspace_dim(phi_pullback_matrix(n, lambda, l), opt.nullity_tol) == dphi,
                         "phi oracle " + label);
                c.expect(fixed_subspace_dim(psi_pullback_matrix(n, lambda, l), opt.nullity_tol) == dpsi,
                         "psi oracle " + label);
                const auto table = character_table(n, lambda, l);
                c.expect(std::abs(table.fixed_dimension() - static_cast<double>(dpsi)) < 1e-9, "character " + label);
                double sectors = 0.0;
                for (int k = 0; k < 4; ++k) sectors += table.sector_dimension(k).real();
                c.expect(std::fabs(sectors - 2.0 * l * std::abs(n)) < 1e-9, "sector total " + label);
                if (std::abs(n) <= 3 && lambda <= 4) {
                    c.expect(static_cast<int>(phi_constraint_solve(n, lambda, l).size()) == dphi, "phi constraints " + label);
                    c.expect(static_cast<int>(psi_constraint_solve(n, lambda, l).size()) == dpsi, "psi constraints " + label);
                }
            }
        }
    }
    return c.finish();
}

inline SuiteResult weyl(const VerifyOptions &) {
    Checker c("weyl");
    c.expect(std::fabs(weyl_constant(0.0).value - 0.5) < 1e-8, "A_0 = 1/2");
    c.expect(std::fabs(weyl_constant(1.0).value - 1.0 / 6.0) < 1e-8, "A_1 = 1/6");
    c.expect(std::fabs(weyl_constant(-1.0).value - 1.0 / 6.0) < 1e-8, "A_-1 = 1/6");
    for (const double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        c.expect(std::fabs(weyl_constant(a).value - weyl_constant(-a).value) < 1e-10, "A symmetric");
    }
    const std::vector<double> grid{10.0, 100.0, 1000.0};
    for (const double alpha : {0.0, 0.5, 1.0}) {
        const auto gamma = counting_function(BieberbachSpec::gamma_pi(1), alpha, grid);
        const auto cover = counting_function(LatticeSpec::standard_rect(2), alpha, grid);
        const auto quarter = counting_function(BieberbachSpec::gamma_pi_half(1), alpha, grid);
        const auto square = counting_function(LatticeSpec::scaled_square(1), alpha, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto pc = parity_counts(grid[i], alpha);
            const long long gap = std::llabs(2 * gamma.samples[i].oscillator - cover.samples[i].oscillator);
            c.expect(gap == 2 * std::llabs(pc.even - pc.odd), "half relation");
            c.expect(std::fabs(static_cast<double>(pc.even - pc.odd)) <= pc.bound(), "E/O bound");
            const auto sums = oscillator_pair_sums(grid[i], alpha, 1);
            c.expect(sums.mults == square.samples[i].oscillator, "pair sum matches the cover count");
            const double ratio =
                static_cast<double>(quarter.samples[i].oscillator) / static_cast<double>(square.samples[i].oscillator);
            c.expect(std::fabs(ratio - 0.25) <= sums.ratio() + 1e-15, "quarter sandwich");
            long long floor_total = 0;
            for (const int sign : {1, -1}) {
                const auto fs = floor_sums(grid[i], alpha, sign);
                floor_total += fs.f;
                c.expect(fs.h - static_cast<double>(fs.terms) <= fs.f + 1e-9 && fs.f <= fs.h + 1e-9, "F sandwich");
                c.expect(fs.q - fs.h <= fs.g + 1e-9 && fs.g <= fs.q + fs.h + 1e-9, "G sandwich");
            }
            c.expect(floor_total == sums.ones, "floor sums count the admissible pairs");
        }
    }
    return c.finish();
}

} // namespace suites

struct SuiteEntry {
    std::string name;
    std::function<SuiteResult(const VerifyOptions &)> run;
};

inline const std::vector<SuiteEntry> &all_suites() {
    static const std::vector<SuiteEntry> entries{
        {"group", suites::group},           {"lattice", suites::lattice},
        {"hermite", suites::hermite},       {"weil-brezin", suites::weil_brezin},
        {"spectrum", suites::spectrum},     {"pullback", suites::pullback},
        {"gauss", suites::gauss},           {"dimensions", suites::dimensions},
        {"weyl", suites::weyl},
    };
    return entries;
}

} // namespace heis::cli
