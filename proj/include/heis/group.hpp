// Polarized Heisenberg group, unitary automorphisms and the rigid-motion
// group H x| U(1).
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace heis {

/// Element of H in polarized coordinates, multiplied by
/// (p,q,s)*(p',q',s') = (p+p', q+q', s+s'+pq').
struct PolarizedPoint {
    double p = 0.0;
    double q = 0.0;
    double s = 0.0;

    friend bool operator==(const PolarizedPoint &, const PolarizedPoint &) = default;
};

/// Element of H in standard coordinates (z = x + iy, t), multiplied by
/// (z,t)(z',t') = (z+z', t+t'+2 Im z conj(z')).
struct StandardPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    friend bool operator==(const StandardPoint &, const StandardPoint &) = default;
};

inline bool is_finite(const PolarizedPoint &g) {
    return std::isfinite(g.p) && std::isfinite(g.q) && std::isfinite(g.s);
}

inline PolarizedPoint polarized_mul(const PolarizedPoint &g, const PolarizedPoint &h) {
    return {g.p + h.p, g.q + h.q, g.s + h.s + g.p * h.q};
}

inline PolarizedPoint polarized_inverse(const PolarizedPoint &g) {
    return {-g.p, -g.q, -g.s + g.p * g.q};
}

inline constexpr PolarizedPoint polarized_identity() { return {0.0, 0.0, 0.0}; }

/// Central element (0,0,s).
inline constexpr PolarizedPoint central(double s) { return {0.0, 0.0, s}; }

inline StandardPoint standard_mul(const StandardPoint &g, const StandardPoint &h) {
    // Im(z conj z') = y x' - x y'
    return {g.x + h.x, g.y + h.y, g.t + h.t + 2.0 * (g.y * h.x - g.x * h.y)};
}

/// Group isomorphism (x,y,t) -> (y, x, t/4 + xy/2).
inline PolarizedPoint standard_to_polarized(const StandardPoint &g) {
    return {g.y, g.x, g.t / 4.0 + g.x * g.y / 2.0};
}

inline double max_abs_diff(const PolarizedPoint &a, const PolarizedPoint &b) {
    return std::fmax(std::fabs(a.p - b.p), std::fmax(std::fabs(a.q - b.q), std::fabs(a.s - b.s)));
}

/// Unitary automorphism U_{A,B}: rotation of (p,q) by A + iB, with the
/// quadratic s-correction that makes it a group automorphism.
class UnitaryAutomorphism {
  public:
    static constexpr double kUnitTolerance = 1e-12;

    UnitaryAutomorphism() = default;
    UnitaryAutomorphism(double a, double b) : a_(a), b_(b) {
        if (!(std::fabs(a * a + b * b - 1.0) <= kUnitTolerance)) {
            throw std::invalid_argument("unitary automorphism requires A^2 + B^2 = 1");
        }
    }

    static UnitaryAutomorphism identity() { return {}; }
    static UnitaryAutomorphism rotation(double angle) {
        return {std::cos(angle), std::sin(angle)};
    }
    /// pi-rotation U_{-1,0}.
    static UnitaryAutomorphism half_turn() { return {-1.0, 0.0}; }
    /// pi/2-rotation U_{0,1}.
    static UnitaryAutomorphism quarter_turn() { return {0.0, 1.0}; }

    double a() const { return a_; }
    double b() const { return b_; }
    std::complex<double> as_complex() const { return {a_, b_}; }

    PolarizedPoint operator()(const PolarizedPoint &g) const {
        const double ab = a_ * b_;
        const double twist = a_ * a_ - b_ * b_ - 1.0;
        return {a_ * g.p - b_ * g.q, b_ * g.p + a_ * g.q,
                g.s + 0.5 * (ab * (g.p * g.p - g.q * g.q) + twist * g.p * g.q)};
    }

    /// Composition corresponds to multiplying A + iB. The product is
    /// renormalised only when it drifts, so exact rotations stay exact.
    UnitaryAutomorphism compose(const UnitaryAutomorphism &other) const {
        double a = a_ * other.a_ - b_ * other.b_;
        double b = a_ * other.b_ + b_ * other.a_;
        const double norm = std::hypot(a, b);
        if (norm != 1.0) {
            a /= norm;
            b /= norm;
        }
        return UnitaryAutomorphism(a, b, Unchecked{});
    }

    UnitaryAutomorphism inverse() const { return UnitaryAutomorphism(a_, -b_, Unchecked{}); }

    bool is_identity(double tol = 0.0) const {
        return std::fabs(a_ - 1.0) <= tol && std::fabs(b_) <= tol;
    }

    friend bool operator==(const UnitaryAutomorphism &, const UnitaryAutomorphism &) = default;

  private:
    struct Unchecked {};
    UnitaryAutomorphism(double a, double b, Unchecked) : a_(a), b_(b) {}

    double a_ = 1.0;
    double b_ = 0.0;
};

inline PolarizedPoint apply_unitary(const UnitaryAutomorphism &u, const PolarizedPoint &g) {
    return u(g);
}

/// Linear symplectic automorphism associated with the matrix [[A, B], [C, D]]:
/// (p,q,s) -> (Cq + Dp, Aq + Bp, s + ((Aq+Bp)(Cq+Dp) - pq)/2).
class SymplecticMap {
  public:
    static constexpr double kDetTolerance = 1e-12;

    SymplecticMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
        if (!(std::fabs(a * d - b * c - 1.0) <= kDetTolerance)) {
            throw std::invalid_argument("symplectic map requires AD - BC = 1");
        }
    }

    /// S_{2l}(p,q,s) = (p / sqrt(2l), sqrt(2l) q, s); maps N'_{2l} onto N_{2l}.
    static SymplecticMap scaling(int l) {
        if (l <= 0) throw std::invalid_argument("scaling map requires l > 0");
        const double r = std::sqrt(2.0 * l);
        return {r, 0.0, 0.0, 1.0 / r};
    }

    PolarizedPoint operator()(const PolarizedPoint &g) const {
        const double np = c_ * g.q + d_ * g.p;
        const double nq = a_ * g.q + b_ * g.p;
        return {np, nq, g.s + 0.5 * (nq * np - g.p * g.q)};
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

  private:
    double a_, b_, c_, d_;
};

/// Element gU of H x| U(1); acts on H from the left by gU . h = g * U(h).
struct RigidMotion {
    PolarizedPoint translation{};
    UnitaryAutomorphism rotation{};

    static RigidMotion identity() { return {}; }
    static RigidMotion translate(const PolarizedPoint &g) { return {g, UnitaryAutomorphism::identity()}; }

    /// (g,U)(h,V) = (g U(h), UV)
    RigidMotion operator*(const RigidMotion &other) const {
        return {polarized_mul(translation, rotation(other.translation)), rotation.compose(other.rotation)};
    }

    RigidMotion inverse() const {
        const UnitaryAutomorphism inv = rotation.inverse();
        return {inv(polarized_inverse(translation)), inv};
    }

    PolarizedPoint operator()(const PolarizedPoint &g) const {
        return polarized_mul(translation, rotation(g));
    }

    bool is_pure_translation(double tol = 0.0) const { return rotation.is_identity(tol); }

    friend bool operator==(const RigidMotion &, const RigidMotion &) = default;
};

inline PolarizedPoint motion_apply(const RigidMotion &m, const PolarizedPoint &g) { return m(g); }

inline RigidMotion motion_power(const RigidMotion &m, long long k) {
    RigidMotion base = k < 0 ? m.inverse() : m;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1ULL
                                 : static_cast<unsigned long long>(k);
    RigidMotion result = RigidMotion::identity();
    for (unsigned long long i = 0; i < e; ++i) {
        result = result * base;
    }
    return result;
}

/// phi = (0,0,1/2) U_{-1,0}
inline RigidMotion phi_motion() { return {central(0.5), UnitaryAutomorphism::half_turn()}; }

/// psi = (0,0,1/4) U_{0,1}
inline RigidMotion psi_motion() { return {central(0.25), UnitaryAutomorphism::quarter_turn()}; }

} // namespace heis
