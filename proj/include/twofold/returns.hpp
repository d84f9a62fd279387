#pragma once

#include "invariants.hpp"
#include "sigma_geometry.hpp"

#include <limits>
#include <optional>
#include <utility>

namespace twofold {

struct ReturnOptions {
    double scan_step = pi / 64.0;
    double t_max = 8.0 * pi;
    int max_iter = 200;
};

struct HalfReturn {
    double t = 0.0;
    SigmaPoint start;
    SigmaPoint end;
    Field field = Field::X;
    bool reversed = false;  // true when the flight was reconstructed backwards from `end`
    int iterations = 0;
    double residual = 0.0;
};

namespace detail {

struct RootResult {
    double t = 0.0;
    int iterations = 0;
};

// First zero of g on (0, t_max] where sgn*g > 0 just after t = 0.
// g returns (value, derivative). Scan for a sign change, then refine with
// Newton steps that are kept inside the bracket (bisection otherwise).
template <class G>
std::optional<RootResult> first_sign_change(G&& g, double sgn, const ReturnOptions& o) {
    if (!(o.scan_step > 0.0) || !(o.t_max > 0.0)) throw PreconditionError("scan step and t_max must be positive");
    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (int k = 1;; ++k) {
        const double t = std::min(k * o.scan_step, o.t_max);
        const double v = sgn * g(t).first;
        if (v == 0.0) return RootResult{t, 0};
        if (v < 0.0) {
            hi = t;
            found = true;
            break;
        }
        lo = t;
        if (t >= o.t_max) break;
    }
    if (!found) return std::nullopt;

    RootResult r;
    double x = 0.5 * (lo + hi);
    const double eps = std::numeric_limits<double>::epsilon();
    for (r.iterations = 1; r.iterations <= o.max_iter; ++r.iterations) {
        const auto [f, df] = g(x);
        if (f == 0.0) break;
        if (sgn * f > 0.0) lo = x;
        else hi = x;
        double xn = x - f / df;
        if (!(df != 0.0 && xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        const double step = std::abs(xn - x);
        x = xn;
        if (step <= 4.0 * eps * std::max(1.0, x) || hi - lo <= 4.0 * eps * hi) break;
    }
    r.t = x;
    return r;
}

inline void check_residual(const HalfReturn& h, const char* what) {
    if (!(h.residual <= 1e-11 * (1.0 + h.start.norm() + h.end.norm())))
        throw NoConvergence(std::string(what) + ": return-time residual too large (" +
                            std::to_string(h.residual) + ")");
}

}  // namespace detail

// Flight of X through z > 0 from a point where X enters the upper half-space.
inline HalfReturn half_return_X(const SystemParams& p, const SigmaPoint& start, const ReturnOptions& o = {}) {
    const double xf = lie_Xf(p, start);
    if (!(xf > 0.0) || tol::is_tangent(xf, start.norm()))
        throw PreconditionError("half_return_X: start must satisfy Xf > 0");
    const State3 s0 = start.lift();
    auto g = [&](double t) {
        const State3 s = flow_X(p, s0, t);
        return std::pair{s.z, eval_X(p, s).z};
    };
    const auto root = detail::first_sign_change(g, 1.0, o);
    if (!root) throw NoReturn("half_return_X: no return to the switching plane before t_max");

    HalfReturn h;
    h.field = Field::X;
    h.t = root->t;
    h.iterations = root->iterations;
    const State3 e = flow_X(p, s0, h.t);
    h.start = start;
    h.end = {e.x, e.y};
    h.residual = std::abs(e.z);
    const double xe = lie_Xf(p, h.end);
    if (!(xe < 0.0) || tol::is_tangent(xe, h.end.norm()))
        throw TangentialGraze("half_return_X: exit is not transversal");
    detail::check_residual(h, "half_return_X");
    return h;
}

// Forward flight of Y through z < 0 from a point where Y enters the lower
// half-space (Yf < 0).
inline HalfReturn half_return_Y(const SystemParams& p, const SigmaPoint& start, const ReturnOptions& o = {}) {
    const double yf = lie_Yf(p, start);
    if (!(yf < 0.0) || tol::is_tangent(yf, start.norm()))
        throw PreconditionError("half_return_Y: start must satisfy Yf < 0");
    const State3 s0 = start.lift();
    auto g = [&](double t) {
        const State3 s = flow_Y(p, s0, t);
        return std::pair{s.z, eval_Y(p, s).z};
    };
    const auto root = detail::first_sign_change(g, -1.0, o);
    if (!root) throw NoReturn("half_return_Y: no return to the switching plane before t_max");

    HalfReturn h;
    h.field = Field::Y;
    h.t = root->t;
    h.iterations = root->iterations;
    const State3 e = flow_Y(p, s0, h.t);
    h.start = start;
    h.end = {e.x, e.y};
    h.residual = std::abs(e.z);
    const double ye = lie_Yf(p, h.end);
    if (!(ye > 0.0) || tol::is_tangent(ye, h.end.norm()))
        throw TangentialGraze("half_return_Y: exit is not transversal");
    detail::check_residual(h, "half_return_Y");
    return h;
}

// The Y flight that ends at `end` (where Y leaves z < 0, Yf > 0), found by
// integrating Y backwards. This is the Y leg of a crossing cycle through `end`.
inline HalfReturn reverse_half_return_Y(const SystemParams& p, const SigmaPoint& end, const ReturnOptions& o = {}) {
    const double yf = lie_Yf(p, end);
    if (!(yf > 0.0) || tol::is_tangent(yf, end.norm()))
        throw PreconditionError("reverse_half_return_Y: end point must satisfy Yf > 0");
    const State3 s0 = end.lift();
    auto g = [&](double t) {
        const State3 s = flow_Y(p, s0, -t);
        return std::pair{s.z, -eval_Y(p, s).z};
    };
    const auto root = detail::first_sign_change(g, -1.0, o);
    if (!root) throw NoReturn("reverse_half_return_Y: no preimage on the switching plane before t_max");

    HalfReturn h;
    h.field = Field::Y;
    h.reversed = true;
    h.t = root->t;
    h.iterations = root->iterations;
    const State3 s = flow_Y(p, s0, -h.t);
    h.start = {s.x, s.y};
    h.end = end;
    h.residual = std::abs(s.z);
    const double ys = lie_Yf(p, h.start);
    if (!(ys < 0.0) || tol::is_tangent(ys, h.start.norm()))
        throw TangentialGraze("reverse_half_return_Y: entry is not transversal");
    detail::check_residual(h, "reverse_half_return_Y");
    return h;
}

// Time until the orbit of `f` through s0 next reaches z = 0, if that happens
// within `horizon`. The side of the plane is taken from s0 (or from the
// field's Lie derivative when s0 is on the plane).
inline std::optional<double> next_crossing(const SystemParams& p, Field f, const State3& s0, double horizon,
                                           const ReturnOptions& o = {}) {
    if (!(horizon > 0.0)) return std::nullopt;
    double sgn = s0.z != 0.0 ? (s0.z > 0.0 ? 1.0 : -1.0) : (eval_field(p, f, s0).z >= 0.0 ? 1.0 : -1.0);
    ReturnOptions local = o;
    local.t_max = horizon;
    auto g = [&](double t) {
        const State3 s = flow(p, f, s0, t);
        return std::pair{s.z, eval_field(p, f, s).z};
    };
    const auto root = detail::first_sign_change(g, sgn, local);
    if (!root) return std::nullopt;
    return root->t;
}

// ---------------------------------------------------------------------------
// Expansions of the half-return times at infinity along the Gamma_1 branch,
// in v0 = 1/y0:  t_X - pi = gx1 v0 + gx2 v0^2 + ...,
//                t_Y - pi = gy1 v0 + gy2 v0^2 + ...   (t_Y: backward Y flight)

struct SeriesCoeffs {
    double gx1 = 0.0, gx2 = 0.0, gy1 = 0.0, gy2 = 0.0;

    double g1() const { return gx1 - gy1; }
    double g2() const { return gx2 - gy2; }
    double tau_x(double v) const { return (gx1 + gx2 * v) * v; }
    double tau_y(double v) const { return (gy1 + gy2 * v) * v; }
    double tau(double v) const { return (g1() + g2() * v) * v; }
};

inline SeriesCoeffs series_coeffs(const SystemParams& p) {
    require_resonant(p, "series_coeffs");
    const double H = p.H(), C = p.C(), L = p.Lambda(), kap = p.kappa();
    if (H == 0.0) throw PreconditionError("series_coeffs: H = 0 is excluded");
    if (!(H > -1.0 / 3.0 && H < 1.0)) throw PreconditionError("series_coeffs requires -1/3 < H < 1");

    const double ell = L / kap;
    const double s = (H > 0.0 ? 1.0 : -1.0) * std::sqrt(gamma1_discriminant(H));
    const double m = 2.0 * H / (H + 1.0 + s);
    const double ePi = std::exp(pi * C);
    const double g = ell * (1.0 + ePi);

    SeriesCoeffs out;
    out.gx1 = ell * (1.0 + 1.0 / ePi);
    out.gx2 = -C * out.gx1 * out.gx1;
    out.gy1 = 2.0 * H * L * (ePi + 1.0) / (kap * (s + H + 1.0));
    out.gy2 = m * m * g * C * ell * (ePi - (1.0 - H) / s);
    return out;
}

inline double critical_H(double C) { return 1.0 / (2.0 * std::cosh(pi * C) - 1.0); }

inline double gamma2_at_critical(double C, double Lambda) {
    if (C == 0.0) throw PreconditionError("gamma2_at_critical: C must be nonzero");
    const double kap2 = (C * C + 1.0) * (C * C + 1.0);
    const double E = std::exp(C * pi);
    if (C > 0.0) return -2.0 * Lambda * Lambda * C * (1.0 / E + 1.0 + 1.0 / (E * E)) / kap2;
    return -C * Lambda * Lambda *
           (1.0 + 2.0 / E - E * E + 1.0 / (E * E) + E * E * E * E + 2.0 * E * E * E) / kap2;
}

// x^6 + 2x^5 - x^4 + x^2 + 2x + 1, highest degree first
inline constexpr std::array<double, 7> critical_polynomial_coeffs{1.0, 2.0, -1.0, 0.0, 1.0, 2.0, 1.0};

inline double critical_polynomial(double x) {
    double acc = 0.0;
    for (double c : critical_polynomial_coeffs) acc = acc * x + c;
    return acc;
}

struct TimeMatchSample {
    double v0 = 0.0;
    SigmaPoint p0;
    HalfReturn x_leg;
    HalfReturn y_leg;
    double tau_x = 0.0;
    double tau_y = 0.0;
    double tau = 0.0;
};

inline TimeMatchSample time_matching_sample(const SystemParams& p, double v0, const ReturnOptions& o = {}) {
    require_resonant(p, "time_matching");
    if (!(p.H() > 0.0 && p.H() < 1.0)) throw PreconditionError("time_matching requires 0 < H < 1");
    if (!(v0 > 0.0)) throw PreconditionError("time_matching requires v0 > 0");
    TimeMatchSample s;
    s.v0 = v0;
    s.p0 = gamma1_branch_point(p, 1.0 / v0);
    s.x_leg = half_return_X(p, s.p0, o);
    s.y_leg = reverse_half_return_Y(p, s.p0, o);
    s.tau_x = s.x_leg.t - pi;
    s.tau_y = s.y_leg.t - pi;
    s.tau = s.tau_x - s.tau_y;
    return s;
}

inline double time_matching(const SystemParams& p, double v0, const ReturnOptions& o = {}) {
    return time_matching_sample(p, v0, o).tau;
}

}  // namespace twofold
