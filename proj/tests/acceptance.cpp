// Acceptance gate: runs the ten acceptance criteria and prints one PASS/FAIL
// line per criterion. Exit status is nonzero if any criterion fails.
#include "oracles.hpp"

#include <heis/heis.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace heis;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
    long checks = 0;

    void expect(bool ok, const std::string &what) {
        ++checks;
        if (!ok && passed) {
            passed = false;
            detail = what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

PolarizedPoint random_point(std::mt19937_64 &rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    const double p = u(rng);
    const double q = u(rng);
    return {p, q, u(rng)};
}

std::string cell(int n, int lambda, int l) {
    return "n=" + std::to_string(n) + " lambda=" + std::to_string(lambda) + " l=" + std::to_string(l);
}

/// Classical closed form of sum_{k<m} e^{2 pi i k^2/m} by m mod 4.
std::complex<double> gauss_closed(long long m) {
    const double r = std::sqrt(static_cast<double>(m));
    switch (m % 4) {
    case 0:
        return {r, r};
    case 1:
        return {r, 0.0};
    case 2:
        return {0.0, 0.0};
    default:
        return {0.0, r};
    }
}

Outcome dimension_equivalence() {
    Outcome out;
    const auto start = Clock::now();
    for (int l = 1; l <= 3; ++l) {
        for (int n = -6; n <= 6; ++n) {
            if (n == 0) continue;
            for (int lambda = 0; lambda <= 8; ++lambda) {
                out.expect(fixed_subspace_dim(phi_pullback_matrix(n, lambda, l)) == dim_phi_invariant(n, lambda, l),
                           "phi " + cell(n, lambda, l));
                out.expect(fixed_subspace_dim(psi_pullback_matrix(n, lambda, l)) == dim_psi_invariant(n, lambda, l),
                           "psi " + cell(n, lambda, l));
            }
        }
    }
    const double elapsed = seconds_since(start);
    out.expect(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
    return out;
}

Outcome character_reconstruction() {
    Outcome out;
    for (int l = 1; l <= 3; ++l) {
        for (int n = -6; n <= 6; ++n) {
            if (n == 0) continue;
            for (int lambda = 0; lambda <= 8; ++lambda) {
                const auto m = psi_pullback_matrix(n, lambda, l).matrix;
                out.expect(std::fabs(oracle::projector_rank(m, 4) - dim_psi_invariant(n, lambda, l)) < 1e-6,
                           "averaged trace " + cell(n, lambda, l));
                const long long size = 2LL * l * std::abs(n);
                const auto g = gauss_closed(size);
                const auto expected = psi_phase(n, lambda) / std::sqrt(static_cast<double>(size)) *
                                      (n > 0 ? std::conj(g) : g);
                out.expect(std::abs(m.trace() - expected) < 1e-9, "chi(psi) " + cell(n, lambda, l));
                out.expect(std::abs(character_table(n, lambda, l).values[1] - expected) < 1e-9,
                           "character table " + cell(n, lambda, l));
            }
        }
    }
    return out;
}

/// f_k(pt) for the basis W^{a,b} F of the covering lattice, from direct sums.
std::vector<std::complex<double>> oracle_basis(Generator gen, int n, int lambda, int l, const PolarizedPoint &pt) {
    const int an = std::abs(n);
    const int period = 2 * l;
    std::vector<std::complex<double>> values;
    for (int a = 0; a < an; ++a) {
        for (int b = 0; b < period; ++b) {
            values.push_back(gen == Generator::Phi ? oracle::wb_plain(n, a, b, period, lambda, pt.p, pt.q, pt.s)
                                                   : oracle::wb_scaled(n, a, b, l, lambda, pt.p, pt.q, pt.s));
        }
    }
    return values;
}

Outcome pullback_formulas() {
    Outcome out;
    std::mt19937_64 rng(1003);
    for (int l = 1; l <= 2; ++l) {
        for (int n = -3; n <= 3; ++n) {
            if (n == 0) continue;
            for (int lambda = 0; lambda <= 4; ++lambda) {
                for (const auto gen : {Generator::Phi, Generator::Psi}) {
                    const auto pm = gen == Generator::Phi ? phi_pullback_matrix(n, lambda, l)
                                                          : psi_pullback_matrix(n, lambda, l);
                    const RigidMotion motion = gen == Generator::Phi ? phi_motion() : psi_motion();
                    for (int i = 0; i < 20; ++i) {
                        const auto pt = random_point(rng, 1.5);
                        const auto here = oracle_basis(gen, n, lambda, l, pt);
                        const auto there = oracle_basis(gen, n, lambda, l, motion(pt));
                        double worst = 0.0;
                        for (int c = 0; c < pm.size(); ++c) {
                            std::complex<double> predicted = 0.0;
                            for (int r = 0; r < pm.size(); ++r) predicted += pm.matrix(r, c) * here[r];
                            worst = std::fmax(worst, std::abs(there[c] - predicted));
                        }
                        out.expect(worst < 1e-7, std::string(gen == Generator::Phi ? "phi " : "psi ") +
                                                     cell(n, lambda, l) + " defect " + std::to_string(worst));
                    }
                }
            }
        }
    }
    return out;
}

Outcome eigenfunction_residuals() {
    Outcome out;
    constexpr double h = 1e-3;
    std::mt19937_64 rng(1004);
    for (int l = 1; l <= 2; ++l) {
        for (const auto &lat : {LatticeSpec::standard_rect(l), LatticeSpec::scaled_square(l)}) {
            for (const int n : {-1, 1}) {
                for (const int lambda : {0, 1}) {
                    for (const double alpha : {-1.0, 0.0, 0.5, 1.0}) {
                        const WBIndex idx(n, 0, lat.wb_period() - 1, lat.wb_period());
                        const PointFunction f = [&](const PolarizedPoint &pt) {
                            return wb_eigenfunction(idx, lambda, lat, pt);
                        };
                        const double e = oscillator_eigenvalue(n, lambda, alpha);
                        for (int i = 0; i < 3; ++i) {
                            const double r = folland_stein_residual(f, alpha, e, random_point(rng, 0.8), h);
                            out.expect(r < 1e-3, "oscillator residual " + std::to_string(r));
                        }
                    }
                }
            }
            const auto basis = dual_lattice(lat);
            for (int i = -1; i <= 1; ++i) {
                for (int j = -1; j <= 1; ++j) {
                    const auto mn = basis.at(i, j);
                    const PointFunction f = [&](const PolarizedPoint &pt) { return torus_character(mn, pt); };
                    const double r = folland_stein_residual(f, 0.3, torus_eigenvalue(mn), random_point(rng, 1.0), h);
                    out.expect(r < 1e-3, "torus residual " + std::to_string(r));
                }
            }
        }
    }
    const auto lat = LatticeSpec::standard_rect(1);
    const WBIndex idx(1, 0, 0, 1);
    const PointFunction f = [&](const PolarizedPoint &pt) { return wb_eigenfunction(idx, 1, lat, pt); };
    const PolarizedPoint pt{0.37, -0.21, 0.44};
    const double e = oscillator_eigenvalue(1, 1, 0.0);
    const double ratio = folland_stein_residual(f, 0.0, e, pt, 2.0 * h) / folland_stein_residual(f, 0.0, e, pt, h);
    out.expect(std::fabs(ratio - 4.0) < 0.5, "halving h divides the residual by " + std::to_string(ratio));
    return out;
}

Outcome intertwining() {
    Outcome out;
    std::mt19937_64 rng(1005);
    std::uniform_int_distribution<int> pick_n(1, 3);
    std::uniform_int_distribution<int> pick_sign(0, 1);
    std::uniform_int_distribution<int> pick_l(1, 2);
    std::uniform_int_distribution<int> pick_lambda(0, 3);
    for (int i = 0; i < 50; ++i) {
        const int n = pick_n(rng) * (pick_sign(rng) == 0 ? 1 : -1);
        const int l = pick_l(rng);
        const int lambda = pick_lambda(rng);
        const WBIndex idx(n, i % std::abs(n), i % l, l);
        const auto g = hermite_line(n, lambda, 1.0, HermiteScaling::Plain);
        const auto h = random_point(rng, 1.5);
        const auto pt = random_point(rng, 1.5);
        const auto lhs = weil_brezin_eval(idx, g, polarized_mul(pt, h));
        const auto rhs = weil_brezin_eval(idx, schrodinger_act(n, h, g), pt);
        out.expect(std::abs(lhs - rhs) < 1e-8, "case " + std::to_string(i));
    }
    return out;
}

Outcome gauss_sums() {
    Outcome out;
    for (long long m = 1; m <= 400; ++m) {
        out.expect(std::abs(gauss_sum(m) - oracle::gauss_direct(m)) < 1e-9, "m=" + std::to_string(m));
    }
    for (int l = 1; l <= 3; ++l) {
        for (int n = -6; n <= 6; ++n) {
            if (n == 0) continue;
            const int r = (2 * l * std::abs(n)) % 4;
            out.expect(r == 0 || r == 2, "branch " + std::to_string(r));
        }
    }
    return out;
}

Outcome weyl_cancellation() {
    Outcome out;
    const std::vector<double> grid{10.0, 100.0, 1000.0};
    const auto gamma = counting_function(BieberbachSpec::gamma_pi(1), 0.0, grid);
    const auto cover = counting_function(LatticeSpec::standard_rect(2), 0.0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        long long oracle_gamma = 0;
        long long oracle_cover = 0;
        for (const auto &p : oracle::admissible_pairs(grid[i], 0.0)) {
            const int an = std::abs(p.n);
            oracle_gamma += (an + p.lambda) % 2 == 0 ? an + 1 : an - 1;
            oracle_cover += 2 * an;
        }
        out.expect(gamma.samples[i].oscillator == oracle_gamma, "GammaPi(1) count");
        out.expect(cover.samples[i].oscillator == oracle_cover, "StandardRect(2) count");
        const double gap = std::fabs(static_cast<double>(oracle_gamma) - 0.5 * static_cast<double>(oracle_cover));
        const double bound = 2.0 * (grid[i] / oracle::kPi + 1.0);
        out.expect(gap <= bound, "t=" + std::to_string(grid[i]) + " gap " + std::to_string(gap));
    }
    return out;
}

Outcome weyl_limit() {
    Outcome out;
    const auto start = Clock::now();
    const auto samples = weyl_ratio_check(LatticeSpec::standard_rect(1), 0.0, {50.0, 400.0});
    const double elapsed = seconds_since(start);
    out.expect(std::fabs(samples[0].target - 0.5) < 1e-8, "target " + std::to_string(samples[0].target));
    out.expect(std::fabs(samples[1].ratio - 0.5) <= 0.05, "ratio at 400 is " + std::to_string(samples[1].ratio));
    out.expect(samples[1].deviation < samples[0].deviation, "deviation does not shrink");
    out.expect(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
    out.detail = "N(400)/400^2 = " + std::to_string(samples[1].ratio);
    return out;
}

Outcome weyl_constant_values() {
    Outcome out;
    out.expect(std::fabs(weyl_constant(0.0).value - 0.5) <= 1e-8, "A_0");
    out.expect(std::fabs(weyl_constant(0.0).value - oracle::weyl_integral(0.0)) <= 1e-8, "A_0 vs oracle");
    for (const double a : {1.0, -1.0}) {
        const double v = weyl_constant(a).value;
        out.expect(std::fabs(v - 1.0 / 6.0) <= 1e-8, "A_+-1");
        out.expect(std::fabs(v - oracle::weyl_integral_edge()) <= 1e-8, "A_+-1 vs oracle");
    }
    for (const double a : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95, 0.999}) {
        out.expect(std::fabs(weyl_constant(a).value - weyl_constant(-a).value) <= 1e-10, "symmetry");
    }
    return out;
}

Outcome group_layer() {
    Outcome out;
    out.expect(motion_power(phi_motion(), 2) == RigidMotion::translate(central(1.0)), "phi^2");
    out.expect(motion_power(psi_motion(), 4) == RigidMotion::translate(central(1.0)), "psi^4");
    std::mt19937_64 rng(1010);
    std::uniform_int_distribution<int> small(-6, 6);
    for (const auto &spec : {BieberbachSpec::gamma_pi(1), BieberbachSpec::gamma_pi_half(1),
                             BieberbachSpec::gamma_pi(2), BieberbachSpec::gamma_pi_half(2)}) {
        for (int i = 0; i < 100; ++i) {
            const PolarizedPoint g{small(rng) * spec.base.p_step(), small(rng) * spec.base.q_step(),
                                   static_cast<double>(small(rng))};
            const RigidMotion gamma = RigidMotion::translate(g) * generator_motion(
                spec.kind == BieberbachKind::GammaPi ? Generator::Phi : Generator::Psi);
            const RigidMotion power = motion_power(gamma, spec.index);
            const double d = g.p - g.q;
            const double closed = spec.kind == BieberbachKind::GammaPi ? 2.0 * g.s - g.p * g.q + 1.0
                                                                        : 4.0 * g.s + d * d + 1.0;
            out.expect(power.is_pure_translation(1e-12), "power is a translation");
            out.expect(std::fabs(power.translation.p) < 1e-9 && std::fabs(power.translation.q) < 1e-9,
                       "power is central");
            out.expect(std::fabs(power.translation.s - closed) < 1e-9, "closed form");
            out.expect(std::fabs(torsion_witness(g, spec).s - closed) < 1e-9, "library witness");
        }
    }
    std::uniform_real_distribution<double> angle(0.0, 2.0 * oracle::kPi);
    for (int i = 0; i < 1000; ++i) {
        const auto g = random_point(rng, 2.0);
        const auto h = random_point(rng, 2.0);
        const auto k = random_point(rng, 2.0);
        out.expect(max_abs_diff(polarized_mul(polarized_mul(g, h), k), polarized_mul(g, polarized_mul(h, k))) < 1e-12,
                   "associativity");
        out.expect(max_abs_diff(polarized_mul(g, polarized_inverse(g)), polarized_identity()) < 1e-12, "inverse");
        const StandardPoint x{g.p, g.q, g.s};
        const StandardPoint y{h.p, h.q, h.s};
        out.expect(max_abs_diff(standard_to_polarized(standard_mul(x, y)),
                                polarized_mul(standard_to_polarized(x), standard_to_polarized(y))) < 1e-12,
                   "coordinate homomorphism");
        const auto u = UnitaryAutomorphism::rotation(angle(rng));
        out.expect(max_abs_diff(u(polarized_mul(g, h)), polarized_mul(u(g), u(h))) < 1e-12, "rotation automorphism");
        for (int l = 1; l <= 3; ++l) {
            const auto s = SymplecticMap::scaling(l);
            out.expect(max_abs_diff(s(polarized_mul(g, h)), polarized_mul(s(g), s(h))) < 1e-12,
                       "symplectic automorphism");
        }
        const auto m = psi_motion();
        out.expect(max_abs_diff(m(polarized_mul(g, h)), polarized_mul(m(g), m.rotation(h))) < 1e-12,
                   "rigid motion");
    }
    return out;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"dimension equivalence", dimension_equivalence},
        {"character reconstruction", character_reconstruction},
        {"pullback formulas", pullback_formulas},
        {"eigenfunction residuals", eigenfunction_residuals},
        {"intertwining", intertwining},
        {"Gauss sums", gauss_sums},
        {"Weyl cancellation", weyl_cancellation},
        {"Weyl limit", weyl_limit},
        {"Weyl constant", weyl_constant_values},
        {"group layer", group_layer},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = Clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.passed) ++failures;
        std::printf("criterion %zu %s: %s (%ld checks, %.2f s)%s%s\n", i + 1, criteria[i].first.c_str(),
                    o.passed ? "PASS" : "FAIL", o.checks, seconds_since(start), o.detail.empty() ? "" : ": ",
                    o.detail.c_str());
    }
    std::printf("%s: %d of %zu criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
