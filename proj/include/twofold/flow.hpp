#pragma once

#include "system.hpp"

namespace twofold {

struct FundamentalMatrix {
    Mat3 phi = Mat3::Identity();
    double t = 0.0;
};

// exp(DX t) assembled from the spectrum {A, C +- i}.
inline FundamentalMatrix fundamental_X(const SystemParams& p, double t) {
    const double A = p.A(), C = p.C(), H = p.H(), kap = p.kappa();
    const double q = C - A;  // q^2 + 1 = k
    const double eA = std::exp(A * t), eC = std::exp(C * t);
    const double c = std::cos(t), s = std::sin(t);

    FundamentalMatrix F;
    F.t = t;
    F.phi << eA, -H * (eC * (q * s - c) + eA), -H * (eC * (-A * c + (1.0 + C * q) * s) + A * eA),
             0.0, eC * (c - C * s), -kap * eC * s,
             0.0, eC * s, eC * (c + C * s);
    return F;
}

inline FundamentalMatrix fundamental_Y(const SystemParams& p, double t) {
    const Mat3& S = involution_matrix();
    FundamentalMatrix F = fundamental_X(p, t);
    F.phi = S * F.phi * S;
    return F;
}

namespace detail {

// (e^{At} - 1)/A, continuous at A = 0
inline double phi1(double A, double t) {
    const double u = A * t;
    if (std::abs(u) < 1e-300) return t;
    return std::expm1(u) / A;
}

// Variation of constants around the (y,z) equilibrium; valid for every A.
inline State3 flow_X_affine(const SystemParams& p, const State3& s0, double t) {
    const double A = p.A(), C = p.C(), H = p.H(), L = p.Lambda(), kap = p.kappa();
    const double q = C - A;
    const double ys = -2.0 * C * L / kap, zs = L / kap;
    const double alpha = s0.z - zs;
    const double beta = (s0.y - ys) + C * alpha;
    const double eA = std::exp(A * t), eC = std::exp(C * t);
    const double c = std::cos(t), s = std::sin(t);
    const double c0 = H * L * (1.0 - p.k() / kap);

    State3 out;
    out.z = zs + eC * (alpha * c + beta * s);
    out.y = ys + eC * ((s0.y - ys) * (c - C * s) - kap * alpha * s);
    out.x = eA * s0.x + c0 * phi1(A, t)
            - H * (alpha * (eC * (q * c + s) - q * eA) + beta * (eC * (q * s - c) + eA));
    return out;
}

}  // namespace detail

inline State3 flow_X(const SystemParams& p, const State3& s0, double t) {
    if (p.A() == 0.0) return detail::flow_X_affine(p, s0, t);
    const State3 st = stationary_X(p);
    const Vec3 d = s0.vec() - st.vec();
    return State3::from(fundamental_X(p, t).phi * d + st.vec());
}

inline State3 flow_Y(const SystemParams& p, const State3& s0, double t) {
    return apply_involution(flow_X(p, apply_involution(s0), t));
}

inline State3 flow(const SystemParams& p, Field f, const State3& s0, double t) {
    return f == Field::X ? flow_X(p, s0, t) : flow_Y(p, s0, t);
}

inline FundamentalMatrix fundamental(const SystemParams& p, Field f, double t) {
    return f == Field::X ? fundamental_X(p, t) : fundamental_Y(p, t);
}

}  // namespace twofold
