#pragma once

#include "flow.hpp"

#include <array>
#include <cstdint>
#include <random>

namespace twofold {

// ---------------------------------------------------------------------------
// Darboux polynomials of X (f1, f2) and of Y (F1, F2)

struct DarbouxValue {
    double value = 0.0;
    Vec3 grad = Vec3::Zero();
    double cofactor = 0.0;
};

inline DarbouxValue darboux_f1(const SystemParams& p, const State3& s) {
    const double C = p.C(), L = p.Lambda(), kap = p.kappa();
    DarbouxValue d;
    d.value = s.y * s.y + 2.0 * C * (s.z + L / kap) * s.y + kap * s.z * s.z +
              2.0 * L * (C * C - 1.0) * s.z / kap + L * L / kap;
    d.grad << 0.0, 2.0 * s.y + 2.0 * C * (s.z + L / kap),
        2.0 * C * s.y + 2.0 * kap * s.z + 2.0 * L * (C * C - 1.0) / kap;
    d.cofactor = 2.0 * C;
    return d;
}

inline DarbouxValue darboux_f2(const SystemParams& p, const State3& s) {
    DarbouxValue d;
    d.value = s.x - p.H() * (p.A() * s.z + s.y);
    d.grad << 1.0, -p.H(), -p.H() * p.A();
    d.cofactor = p.A();
    return d;
}

inline DarbouxValue darboux_F1(const SystemParams& p, const State3& s) {
    const double c = p.c(), lam = p.lambda(), kap = p.kappa();
    DarbouxValue d;
    d.value = s.x * s.x + 2.0 * c * (s.z + lam / kap) * s.x + kap * s.z * s.z +
              2.0 * lam * (c * c - 1.0) * s.z / kap + lam * lam / kap;
    d.grad << 2.0 * s.x + 2.0 * c * (s.z + lam / kap), 0.0,
        2.0 * c * s.x + 2.0 * kap * s.z + 2.0 * lam * (c * c - 1.0) / kap;
    d.cofactor = 2.0 * c;
    return d;
}

inline DarbouxValue darboux_F2(const SystemParams& p, const State3& s) {
    DarbouxValue d;
    d.value = s.y - p.h() * (p.a() * s.z + s.x);
    d.grad << -p.h(), 1.0, -p.h() * p.a();
    d.cofactor = p.a();
    return d;
}

namespace detail {

// base^e with the real-power domain enforced
inline double guarded_pow(double base, double e) {
    if (e == 1.0) return base;
    if (base > 0.0) return std::pow(base, e);
    if (e == std::round(e)) {
        if (base == 0.0 && e < 0.0) throw DomainError("first integral: zero base with negative exponent");
        return std::pow(base, e);
    }
    throw DomainError("first integral: non-positive base with non-integer exponent");
}

inline double first_integral_exponent(double cof1, double cof2) {
    if (cof2 == 0.0) throw DomainError("first integral undefined when the linear cofactor vanishes");
    return -cof1 / cof2;
}

}  // namespace detail

inline double eval_P_X(const SystemParams& p, const State3& s) {
    const double e = p.resonant() ? 1.0 : detail::first_integral_exponent(2.0 * p.C(), p.A());
    return darboux_f1(p, s).value * detail::guarded_pow(darboux_f2(p, s).value, e);
}

inline double eval_P_Y(const SystemParams& p, const State3& s) {
    const double e = p.resonant() ? 1.0 : detail::first_integral_exponent(2.0 * p.c(), p.a());
    return darboux_F1(p, s).value * detail::guarded_pow(darboux_F2(p, s).value, e);
}

// Slopes of the focal-plane traces r^X : x = H y and r^Y : y = h x.
inline double focal_slope_X(const SystemParams& p) { return p.H(); }
inline double focal_slope_Y(const SystemParams& p) { return p.h(); }

struct DarbouxReport {
    std::size_t samples = 0;
    double max_f1 = 0.0, max_f2 = 0.0, max_F1 = 0.0, max_F2 = 0.0;
    double cofactor_combination = 0.0;
    double max_plane_drift = 0.0;  // |f2| along X-orbits started on f2 = 0

    double max_residual() const {
        return std::max({max_f1, max_f2, max_F1, max_F2, std::abs(cofactor_combination)});
    }
};

// Checks X(f) = k f at random points of [-box, box]^3. Residuals are scaled
// by 1 + |X(f)| + |k f| so the report is meaningful for large boxes too.
inline DarbouxReport verify_darboux(const SystemParams& p, std::size_t samples = 1000,
                                    std::uint64_t seed = 20240611, double box = 2.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-box, box);
    DarbouxReport rep;
    rep.samples = samples;

    auto residual = [](const DarbouxValue& d, const State3& v) {
        const double lie = d.grad.dot(v.vec());
        return std::abs(lie - d.cofactor * d.value) / (1.0 + std::abs(lie) + std::abs(d.cofactor * d.value));
    };

    for (std::size_t i = 0; i < samples; ++i) {
        const State3 s{U(rng), U(rng), U(rng)};
        const State3 X = eval_X(p, s), Y = eval_Y(p, s);
        rep.max_f1 = std::max(rep.max_f1, residual(darboux_f1(p, s), X));
        rep.max_f2 = std::max(rep.max_f2, residual(darboux_f2(p, s), X));
        rep.max_F1 = std::max(rep.max_F1, residual(darboux_F1(p, s), Y));
        rep.max_F2 = std::max(rep.max_F2, residual(darboux_F2(p, s), Y));

        State3 w{0.0, U(rng), U(rng)};
        w.x = p.H() * (p.A() * w.z + w.y);
        const double t = U(rng) / box;
        const State3 wt = flow_X(p, w, t);
        rep.max_plane_drift = std::max(rep.max_plane_drift, std::abs(darboux_f2(p, wt).value) / (1.0 + wt.norm()));
    }
    if (p.A() != 0.0) rep.cofactor_combination = 1.0 * (2.0 * p.C()) + (-2.0 * p.C() / p.A()) * p.A();
    return rep;
}

// ---------------------------------------------------------------------------
// The conic Gamma_1 on the switching plane (resonant family)

enum class ConicKind { LinePair, Parabola, Hyperbola, Ellipse };

inline const char* to_string(ConicKind k) {
    switch (k) {
        case ConicKind::LinePair: return "line_pair";
        case ConicKind::Parabola: return "parabola";
        case ConicKind::Hyperbola: return "hyperbola";
        case ConicKind::Ellipse: return "ellipse";
    }
    return "?";
}

inline double gamma1_discriminant(double H) { return (1.0 - H) * (3.0 * H + 1.0); }

inline ConicKind conic_kind(double H) {
    if (std::abs(H - 1.0) <= tol::equality_rel) return ConicKind::LinePair;
    if (std::abs(H + 1.0 / 3.0) <= tol::equality_rel) return ConicKind::Parabola;
    return gamma1_discriminant(H) > 0.0 ? ConicKind::Hyperbola : ConicKind::Ellipse;
}

// a x^2 + b xy + c y^2 + d x + e y + f
struct ConicGamma1 {
    std::array<double, 6> coeffs{};
    double discriminant = 0.0;
    ConicKind kind = ConicKind::Hyperbola;

    double operator()(double x, double y) const {
        const auto& k = coeffs;
        return k[0] * x * x + k[1] * x * y + k[2] * y * y + k[3] * x + k[4] * y + k[5];
    }
    double operator()(const SigmaPoint& q) const { return (*this)(q.x, q.y); }
};

inline void require_resonant(const SystemParams& p, const char* what) {
    if (!p.resonant()) throw PreconditionError(std::string(what) + " requires the resonant family A = -2C");
}

inline ConicGamma1 gamma1_conic(const SystemParams& p) {
    require_resonant(p, "gamma1_conic");
    const double H = p.H(), C = p.C(), L = p.Lambda(), kap = p.kappa();
    ConicGamma1 g;
    g.coeffs = {H, -(H + 1.0), H, -2.0 * C * H * L / kap, 2.0 * C * H * L / kap, L * L * (H - 1.0) / kap};
    g.discriminant = gamma1_discriminant(H);
    g.kind = conic_kind(H);
    return g;
}

// lim y/x along the first-quadrant branch
inline double gamma1_slope_limit(const SystemParams& p) {
    const double H = p.H();
    const double D = gamma1_discriminant(H);
    if (D < 0.0) throw DomainError("slope limit needs the hyperbolic range -1/3 < H < 1");
    return 2.0 * H / (H + std::sqrt(D) + 1.0);
}

// x(y) on the branch of Gamma_1 that runs to infinity in the first quadrant.
inline double gamma1_branch_x(const SystemParams& p, double y) {
    require_resonant(p, "gamma1_branch_x");
    const double H = p.H(), C = p.C(), L = p.Lambda(), kap = p.kappa();
    if (!(H > 0.0 && H < 1.0)) throw PreconditionError("gamma1_branch_x requires 0 < H < 1");
    const double D = gamma1_discriminant(H);
    double R = L * (kap * (L + C * (1.0 - H) * y) - L * H) / (H * kap * kap) + D * y * y / (4.0 * H * H);
    if (R < 0.0) {
        if (R < -tol::radicand_clamp) throw DomainError("gamma1_branch_x: y outside the branch domain");
        R = 0.0;
    }
    const double x = (H + 1.0) * y / (2.0 * H) + L * C / kap + std::sqrt(R);
    const double res = gamma1_conic(p)(x, y);
    if (!(std::abs(res) <= 1e-9 * (1.0 + y * y)))
        throw Error("gamma1_branch_x: point is off the conic (residual " + std::to_string(res) + ")");
    return x;
}

inline SigmaPoint gamma1_branch_point(const SystemParams& p, double y) { return {gamma1_branch_x(p, y), y}; }

// Intersections with the coordinate axes: two on y = 0, two on x = 0.
inline std::array<SigmaPoint, 4> gamma1_axis_intercepts(const SystemParams& p) {
    require_resonant(p, "gamma1_axis_intercepts");
    const double H = p.H(), C = p.C(), L = p.Lambda(), kap = p.kappa();
    const double r = H * (kap - H);
    if (H == 0.0 || r < 0.0) throw DomainError("Gamma_1 has no real axis intercepts for this H");
    const double sq = std::sqrt(r);
    const double den = H * kap;
    return {SigmaPoint{(C * H + sq) * L / den, 0.0}, SigmaPoint{(C * H - sq) * L / den, 0.0},
            SigmaPoint{0.0, -(C * H - sq) * L / den}, SigmaPoint{0.0, -(C * H + sq) * L / den}};
}

// Discriminants of Gamma_1 restricted to r^X and r^Y; negative means no
// real intersection.
struct FocalLineCheck {
    double disc_rX = 0.0;
    double disc_rY = 0.0;
    bool meets_rX = false;
    bool meets_rY = false;
};

inline FocalLineCheck gamma1_meets_focal_lines(const SystemParams& p) {
    const ConicGamma1 g = gamma1_conic(p);
    const auto& k = g.coeffs;
    auto restricted_disc = [&](double qa, double qb, double qc) {
        if (qa == 0.0) return qb == 0.0 ? (qc == 0.0 ? 1.0 : -1.0) : 1.0;
        return qb * qb - 4.0 * qa * qc;
    };
    const double H = focal_slope_X(p), h = focal_slope_Y(p);
    FocalLineCheck out;
    // x = H y
    out.disc_rX = restricted_disc(k[0] * H * H + k[1] * H + k[2], k[3] * H + k[4], k[5]);
    // y = h x
    out.disc_rY = restricted_disc(k[0] + k[1] * h + k[2] * h * h, k[3] + k[4] * h, k[5]);
    out.meets_rX = out.disc_rX >= 0.0;
    out.meets_rY = out.disc_rY >= 0.0;
    return out;
}

}  // namespace twofold
