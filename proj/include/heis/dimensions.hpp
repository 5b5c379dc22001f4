// Dimensions of phi- and psi-invariant eigenspaces: closed forms, the
// character of psi on H_n, and explicit invariant coefficient vectors.
#pragma once

#include <heis/gauss.hpp>
#include <heis/pullback.hpp>
#include <heis/weil_brezin.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace heis {

/// l|n| + 1 if |n| + lambda is even, l|n| - 1 if odd.
inline int dim_phi_invariant(int n, int lambda, int l) {
    detail::check_nlambda(n, lambda, l);
    const int base = l * std::abs(n);
    return (std::abs(n) + lambda) % 2 == 0 ? base + 1 : base - 1;
}

/// |n| or l even: l|n|/2 + {1, 0, 0, -1} for |n| + lambda = 0, 1, 2, 3 mod 4.
/// Both odd: l|n|/2 + 1/2 for |n| + lambda = 0, 2 mod 4, l|n|/2 - 1/2 otherwise.
inline int dim_psi_invariant(int n, int lambda, int l) {
    detail::check_nlambda(n, lambda, l);
    const int an = std::abs(n);
    const int ln = l * an;
    const int r = (an + lambda) % 4;
    if (an % 2 == 0 || l % 2 == 0) {
        const int half = ln / 2;
        if (r == 0) return half + 1;
        if (r == 3) return half - 1;
        return half;
    }
    return r % 2 == 0 ? (ln + 1) / 2 : (ln - 1) / 2;
}

/// Character of the Z/4 action psi^* on span{W~_n^{a,b} F_{n,lambda,l}}.
struct CharacterTable {
    int n = 1;
    int lambda = 0;
    int l = 1;
    std::array<std::complex<double>, 4> values{}; ///< chi(psi^m), m = 0..3

    /// (1/4) sum_m chi(psi^m) conj(w)^m for the psi^*-eigenvalue w = i^k.
    std::complex<double> sector_dimension(int k) const {
        std::complex<double> sum = 0.0;
        for (int m = 0; m < 4; ++m) sum += values[m] * detail::i_power(-static_cast<long long>(k) * m);
        return 0.25 * sum;
    }
    std::complex<double> fixed_dimension() const { return sector_dimension(0); }
};

/// chi(psi^0) = 2l|n|, chi(psi^2) = chi(phi) = 2 exp(pi i (n + lambda)),
/// chi(psi) = phase / sqrt(2l|n|) * (Gauss sum of 2l|n|, conjugated for n > 0),
/// chi(psi^3) = conj chi(psi).
inline CharacterTable character_table(int n, int lambda, int l) {
    detail::check_nlambda(n, lambda, l);
    const long long m = 2LL * l * std::abs(n);
    const std::complex<double> g = gauss_sum(m);
    const std::complex<double> sum = n > 0 ? std::conj(g) : g;
    const std::complex<double> chi1 = psi_phase(n, lambda) / std::sqrt(static_cast<double>(m)) * sum;
    CharacterTable table{n, lambda, l, {}};
    table.values[0] = static_cast<double>(m);
    table.values[1] = chi1;
    table.values[2] = 2.0 * phi_phase(n, lambda);
    table.values[3] = std::conj(chi1);
    return table;
}

/// Coefficients c^{a,b} of G = sum c^{a,b} W^{a,b} F, (a major, b minor).
struct CoefficientVector {
    int n = 1;
    int l = 1;
    CVector entries;

    int period() const { return 2 * l; }
    std::complex<double> operator()(int a, int b) const { return entries(a * period() + b); }
};

namespace detail {

/// Orthonormal basis of ker(constraints): kernel from full-pivoting LU,
/// orthonormalised by column-pivoting Householder QR.
inline std::vector<CoefficientVector> solve_constraints(const CMatrix &constraints, int n, int l) {
    Eigen::FullPivLU<CMatrix> lu(constraints);
    lu.setThreshold(1e-10);
    std::vector<CoefficientVector> out;
    const auto k = lu.dimensionOfKernel();
    if (k == 0) return out;
    const CMatrix kernel = lu.kernel();
    Eigen::ColPivHouseholderQR<CMatrix> qr(kernel);
    const CMatrix q = qr.householderQ() * CMatrix::Identity(kernel.rows(), k);
    for (Eigen::Index c = 0; c < k; ++c) out.push_back({n, l, q.col(c)});
    return out;
}

} // namespace detail

/// Solutions of e^{pi i (n+lambda)} c^{a,0} = c^{-a,0} and
/// e^{pi i (n+lambda)} c^{a,b} = c^{-a-/+1,-b} (b != 0; upper sign for n > 0).
inline std::vector<CoefficientVector> phi_constraint_solve(int n, int lambda, int l) {
    detail::check_nlambda(n, lambda, l);
    const int an = std::abs(n);
    const int period = 2 * l;
    const int dim = an * period;
    const double omega = phi_phase(n, lambda);
    CMatrix c = CMatrix::Zero(dim, dim);
    for (int a = 0; a < an; ++a) {
        for (int b = 0; b < period; ++b) {
            const int row = a * period + b;
            const int a_t = b == 0 ? detail::mod(-a, an) : detail::mod(n > 0 ? -a - 1 : -a + 1, an);
            const int b_t = detail::mod(-b, period);
            c(row, row) += omega;
            c(row, a_t * period + b_t) -= 1.0;
        }
    }
    return detail::solve_constraints(c, n, l);
}

/// Solutions of c^{j',u'} = phase / sqrt(2l|n|) sum_{j,u}
/// exp(-4 l n pi i (j'/|n| + u'/(2ln))(j/|n| + u/(2ln))) c^{j,u}.
inline std::vector<CoefficientVector> psi_constraint_solve(int n, int lambda, int l) {
    detail::check_nlambda(n, lambda, l);
    const int an = std::abs(n);
    const int period = 2 * l;
    const int dim = an * period;
    const double ln = static_cast<double>(l) * n;
    const std::complex<double> pre = psi_phase(n, lambda) / std::sqrt(2.0 * l * an);
    auto offset = [&](int j, int u) { return static_cast<double>(j) / an + static_cast<double>(u) / (2.0 * ln); };
    CMatrix c = CMatrix::Identity(dim, dim);
    for (int jp = 0; jp < an; ++jp) {
        for (int up = 0; up < period; ++up) {
            for (int j = 0; j < an; ++j) {
                for (int u = 0; u < period; ++u) {
                    const double angle = -4.0 * ln * std::numbers::pi * offset(jp, up) * offset(j, u);
                    c(jp * period + up, j * period + u) -= pre * std::polar(1.0, angle);
                }
            }
        }
    }
    return detail::solve_constraints(c, n, l);
}

inline CMatrix as_matrix(const std::vector<CoefficientVector> &basis, int dim) {
    CMatrix m(dim, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = basis[i].entries;
    return m;
}

/// G(pt) = sum c^{a,b} W^{a,b} F(pt) on N_{2l} (Plain F) or N'_{2l} (Sqrt2l F).
inline std::complex<double> evaluate_combination(const CoefficientVector &c, int lambda, const LatticeSpec &lattice,
                                                 const PolarizedPoint &pt, double tol = kDefaultWBTolerance) {
    const int period = c.period();
    std::complex<double> sum = 0.0;
    for (int k = 0; k < c.entries.size(); ++k) {
        if (c.entries(k) == std::complex<double>(0.0, 0.0)) continue;
        sum += c.entries(k) * wb_eigenfunction(WBIndex::from_flat(c.n, period, k), lambda, lattice, pt, tol);
    }
    return sum;
}

} // namespace heis
