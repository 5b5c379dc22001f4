// Matrices of phi^* and psi^* on the Weil-Brezin eigenbasis of H_n, and the
// numerical fixed-subspace oracle.
#pragma once

#include <heis/errors.hpp>
#include <heis/lattice.hpp>
#include <heis/weil_brezin.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace heis {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class Generator { Phi, Psi };

/// Matrix of gamma^* in the basis W_n^{a,b} F, ordered (a major, b minor),
/// b in Z/2l: gamma^*(W^{a,b} F) = sum_{a',b'} M[(a',b'),(a,b)] W^{a',b'} F.
struct PullbackMatrix {
    CMatrix matrix;
    Generator generator = Generator::Phi;
    int n = 1;
    int lambda = 0;
    int l = 1;

    int period() const { return 2 * l; }
    int size() const { return static_cast<int>(matrix.rows()); }
    /// phi^2 and psi^4 act trivially on H_n.
    int order() const { return generator == Generator::Phi ? 2 : 4; }
};

namespace detail {

inline void check_nlambda(int n, int lambda, int l) {
    if (n == 0) throw std::invalid_argument("pullback matrices require n != 0");
    if (lambda < 0) throw std::invalid_argument("pullback matrices require lambda >= 0");
    if (l <= 0) throw std::invalid_argument("pullback matrices require l > 0");
}

inline int mod(long long x, long long m) { return static_cast<int>(((x % m) + m) % m); }

/// i^k
inline std::complex<double> i_power(long long k) {
    switch (mod(k, 4)) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

} // namespace detail

/// Target (a', b') of phi^* applied to W^{a,b}: b = 0 -> (-a, 0);
/// b != 0 -> (-a - 1, -b) for n > 0 and (-a + 1, -b) for n < 0.
inline std::pair<int, int> phi_target(int n, int l, int a, int b) {
    const int an = std::abs(n);
    if (b == 0) return {detail::mod(-a, an), 0};
    const int shift = n > 0 ? -1 : 1;
    return {detail::mod(-a + shift, an), detail::mod(-b, 2 * l)};
}

/// exp(pi i (n + lambda))
inline double phi_phase(int n, int lambda) { return ((std::abs(n) + lambda) % 2 == 0) ? 1.0 : -1.0; }

inline PullbackMatrix phi_pullback_matrix(int n, int lambda, int l) {
    detail::check_nlambda(n, lambda, l);
    const int an = std::abs(n);
    const int period = 2 * l;
    const int dim = an * period;
    CMatrix m = CMatrix::Zero(dim, dim);
    const double phase = phi_phase(n, lambda);
    for (int a = 0; a < an; ++a) {
        for (int b = 0; b < period; ++b) {
            const auto [ta, tb] = phi_target(n, l, a, b);
            m(ta * period + tb, a * period + b) = phase;
        }
    }
    return {std::move(m), Generator::Phi, n, lambda, l};
}

/// Global phase of psi^*: exp(pi i (n + lambda)/2) for n > 0,
/// exp(pi i (n + 3 lambda)/2) for n < 0.
inline std::complex<double> psi_phase(int n, int lambda) {
    return n > 0 ? detail::i_power(static_cast<long long>(n) + lambda)
                 : detail::i_power(static_cast<long long>(n) + 3LL * lambda);
}

/// M[(j',u'),(j,u)] = phase / sqrt(2l|n|) * exp(-4 l n pi i x' x) with
/// x = j/|n| + u/(2ln). Writing x = k/(2ln), k = 2l sgn(n) j + u, the
/// exponent is -2 pi i k k' / (2ln); k k' is reduced mod 2l|n| exactly.
inline PullbackMatrix psi_pullback_matrix(int n, int lambda, int l) {
    detail::check_nlambda(n, lambda, l);
    const long long an = std::abs(n);
    const long long period = 2LL * l;
    const long long modulus = period * an;
    const int dim = static_cast<int>(modulus);
    const std::complex<double> prefactor = psi_phase(n, lambda) / std::sqrt(static_cast<double>(modulus));
    const long long sgn = n > 0 ? 1 : -1;
    auto residue = [&](long long j, long long u) { return sgn * period * j + u; };
    CMatrix m(dim, dim);
    for (long long jp = 0; jp < an; ++jp) {
        for (long long up = 0; up < period; ++up) {
            const long long kp = residue(jp, up);
            for (long long j = 0; j < an; ++j) {
                for (long long u = 0; u < period; ++u) {
                    const long long r = detail::mod(kp * residue(j, u), modulus);
                    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) /
                                         (static_cast<double>(period) * n);
                    m(jp * period + up, j * period + u) = prefactor * std::polar(1.0, angle);
                }
            }
        }
    }
    return {std::move(m), Generator::Psi, static_cast<int>(n), lambda, l};
}

inline double power_defect(const PullbackMatrix &pm) {
    CMatrix p = CMatrix::Identity(pm.size(), pm.size());
    for (int k = 0; k < pm.order(); ++k) p = p * pm.matrix;
    return (p - CMatrix::Identity(pm.size(), pm.size())).norm();
}

inline constexpr double kNullityTolerance = 1e-8;

struct FixedSubspace {
    int dimension = 0;
    CMatrix basis; ///< orthonormal columns spanning ker(M - I)
    Eigen::VectorXd singular_values;
};

/// +1 eigenspace of M as the numerical kernel of M - I.
inline FixedSubspace fixed_subspace(const PullbackMatrix &pm, double tol = kNullityTolerance) {
    if (!(tol > 0.0)) throw std::invalid_argument("fixed_subspace requires tol > 0");
    if (power_defect(pm) > 1e-8) {
        throw std::invalid_argument("pullback matrix does not satisfy M^" + std::to_string(pm.order()) + " = I");
    }
    const int dim = pm.size();
    const CMatrix a = pm.matrix - CMatrix::Identity(dim, dim);
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd &sv = svd.singularValues();
    FixedSubspace out;
    out.singular_values = sv;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) >= tol / 10.0 && sv(i) <= tol * 10.0) {
            throw IllConditionedError("singular value " + std::to_string(sv(i)) + " too close to threshold");
        }
        if (sv(i) < tol) ++out.dimension;
    }
    // Singular values are sorted decreasingly; the kernel is the trailing block of V.
    out.basis = svd.matrixV().rightCols(out.dimension);
    return out;
}

inline int fixed_subspace_dim(const PullbackMatrix &pm, double tol = kNullityTolerance) {
    return fixed_subspace(pm, tol).dimension;
}

/// Orthonormal bases spanning the same subspace.
inline double span_distance(const CMatrix &x, const CMatrix &y) {
    if (x.cols() != y.cols() || x.rows() != y.rows()) return std::numeric_limits<double>::infinity();
    if (x.cols() == 0) return 0.0;
    const double dx = (x - y * (y.adjoint() * x)).norm();
    const double dy = (y - x * (x.adjoint() * y)).norm();
    return std::fmax(dx, dy);
}

/// The covering lattice whose Weil-Brezin basis the matrix acts on:
/// N_{2l} for phi, N'_{2l} for psi.
inline LatticeSpec pullback_lattice(const PullbackMatrix &pm) {
    return pm.generator == Generator::Phi ? LatticeSpec::standard_rect(2 * pm.l) : LatticeSpec::scaled_square(pm.l);
}

inline RigidMotion generator_motion(Generator g) { return g == Generator::Phi ? phi_motion() : psi_motion(); }

/// Largest defect over basis columns c of
/// |f_c(gamma pt) - sum_r M[r, c] f_r(pt)|, f_k = W^{a,b} F at flat index k.
inline double pullback_pointwise_defect(const PullbackMatrix &pm, const PolarizedPoint &pt,
                                        double tol = kDefaultWBTolerance) {
    const LatticeSpec lattice = pullback_lattice(pm);
    const PolarizedPoint moved = motion_apply(generator_motion(pm.generator), pt);
    const int dim = pm.size();
    CVector here(dim);
    for (int k = 0; k < dim; ++k) {
        here(k) = wb_eigenfunction(WBIndex::from_flat(pm.n, pm.period(), k), pm.lambda, lattice, pt, tol);
    }
    const CVector predicted = pm.matrix.transpose() * here;
    double worst = 0.0;
    for (int c = 0; c < dim; ++c) {
        const auto actual = wb_eigenfunction(WBIndex::from_flat(pm.n, pm.period(), c), pm.lambda, lattice, moved, tol);
        worst = std::fmax(worst, std::abs(actual - predicted(c)));
    }
    return worst;
}

} // namespace heis
