#pragma once

#include "returns.hpp"

#include <vector>

namespace twofold {

struct SymmetricCycle {
    SigmaPoint p0;
    SigmaPoint p1;
    double T = 0.0;
    double tX = 0.0;
    double tY = 0.0;
    double closure_residual = 0.0;  // |(x1 + y0, y1 + x0)|
    double return_residual = 0.0;   // distance between the Y-leg endpoint and p0
    int iterations = 0;
};

struct CycleOptions {
    int max_iter = 50;
    int max_halvings = 8;
    double fd_rel = 1e-7;
    double tol_rel = 1e-10;
    ReturnOptions returns{};
};

inline Vec2 closure_residual(const SystemParams& p, double y0, const ReturnOptions& o = {}) {
    const SigmaPoint p0 = gamma1_branch_point(p, y0);
    const HalfReturn h = half_return_X(p, p0, o);
    return {h.end.x + y0, h.end.y + p0.x};
}

namespace detail {

inline double reduced_residual(const SystemParams& p, double y0, const ReturnOptions& o) {
    return closure_residual(p, y0, o)(0);
}

// Builds the cycle through the branch point at y0 and checks that it really
// is a symmetric crossing cycle.
inline SymmetricCycle assemble_cycle(const SystemParams& p, double y0, int iterations, const ReturnOptions& o) {
    SymmetricCycle c;
    c.iterations = iterations;
    c.p0 = gamma1_branch_point(p, y0);
    const HalfReturn hx = half_return_X(p, c.p0, o);
    c.p1 = hx.end;
    const HalfReturn hy = half_return_Y(p, c.p1, o);
    c.tX = hx.t;
    c.tY = hy.t;
    c.T = c.tX + c.tY;
    c.closure_residual = Vec2(c.p1.x + c.p0.y, c.p1.y + c.p0.x).norm();
    c.return_residual = Vec2(hy.end.x - c.p0.x, hy.end.y - c.p0.y).norm();

    const double scale = 1.0 + c.p0.norm();
    const SigmaPoint Sp0 = apply_involution(c.p0);
    if (Vec2(c.p1.x - Sp0.x, c.p1.y - Sp0.y).norm() > 1e-8 * scale)
        throw NotACycle("p1 is not the mirror image of p0");
    if (std::abs(c.tX - c.tY) > 1e-9 * c.T) throw NotACycle("half-return times differ");
    if (c.return_residual > 1e-8 * scale) throw NotACycle("the Y leg does not return to p0");
    const ConicGamma1 g = gamma1_conic(p);
    if (std::abs(g(c.p1)) > 1e-8 * scale * scale) throw NotACycle("p1 is off Gamma_1");
    const double P0 = eval_P_X(p, c.p0.lift()), P1 = eval_P_X(p, c.p1.lift());
    if (std::abs(P0 - P1) > 1e-8 * (std::abs(P0) + std::abs(P1) + 1.0))
        throw NotACycle("first integral differs between the crossings");
    return c;
}

}  // namespace detail

// Newton iteration on r(y0) = x1 + y0 along the Gamma_1 branch.
inline SymmetricCycle find_cycle_newton(const SystemParams& p, double y0_init, const CycleOptions& o = {}) {
    require_resonant(p, "find_cycle_newton");
    if (!(p.H() > 0.0 && p.H() < 1.0)) throw PreconditionError("find_cycle_newton requires 0 < H < 1");
    if (!(y0_init > 0.0)) throw PreconditionError("find_cycle_newton: seed must be positive");

    auto r = [&](double y) { return detail::reduced_residual(p, y, o.returns); };
    double y = y0_init;
    double ry = r(y);
    int it = 0;
    bool converged = false;
    for (; it < o.max_iter; ++it) {
        if (std::abs(ry) <= o.tol_rel * (1.0 + y)) {
            converged = true;
            break;
        }
        const double h = o.fd_rel * std::max(1.0, y);
        const double dr = (r(y + h) - r(y - h)) / (2.0 * h);
        if (!(dr != 0.0) || !std::isfinite(dr)) throw NoConvergence("find_cycle_newton: singular derivative");
        double step = -ry / dr;
        bool accepted = false;
        for (int k = 0; k <= o.max_halvings; ++k, step *= 0.5) {
            const double yt = y + step;
            if (!(yt > 0.0)) continue;
            try {
                const double rt = r(yt);
                y = yt;
                ry = rt;
                accepted = true;
                break;
            } catch (const Error&) {
            }
        }
        if (!accepted) throw NoConvergence("find_cycle_newton: step left the branch domain");
    }
    if (!converged) throw NoConvergence("find_cycle_newton: no convergence in " + std::to_string(o.max_iter) +
                                        " iterations");

    // a couple of polishing steps while they still help
    for (int k = 0; k < 3; ++k) {
        const double h = o.fd_rel * std::max(1.0, y);
        const double dr = (r(y + h) - r(y - h)) / (2.0 * h);
        if (!(dr != 0.0)) break;
        const double yt = y - ry / dr;
        if (!(yt > 0.0)) break;
        double rt;
        try {
            rt = r(yt);
        } catch (const Error&) {
            break;
        }
        if (!(std::abs(rt) < std::abs(ry))) break;
        y = yt;
        ry = rt;
    }
    return detail::assemble_cycle(p, y, it, o.returns);
}

// Safeguarded secant/bisection on a bracket [lo, hi] with a sign change of r.
inline SymmetricCycle find_cycle_bracketed(const SystemParams& p, double lo, double hi, const CycleOptions& o = {}) {
    require_resonant(p, "find_cycle_bracketed");
    auto r = [&](double y) { return detail::reduced_residual(p, y, o.returns); };
    double flo = r(lo), fhi = r(hi);
    if (flo * fhi > 0.0) throw PreconditionError("find_cycle_bracketed: no sign change on the bracket");
    double y = hi, fy = fhi;
    int it = 0;
    for (; it < 4 * o.max_iter; ++it) {
        double yn = y - fy * (hi - lo) / (fhi - flo);
        if (!(yn > lo && yn < hi)) yn = 0.5 * (lo + hi);
        // fall back to bisection when the secant stalls at one end
        if (std::min(yn - lo, hi - yn) < 1e-3 * (hi - lo)) yn = 0.5 * (lo + hi);
        y = yn;
        fy = r(y);
        if (std::abs(fy) <= o.tol_rel * (1.0 + y) || hi - lo <= 1e-15 * hi) break;
        if ((fy < 0.0) == (flo < 0.0)) {
            lo = y;
            flo = fy;
        } else {
            hi = y;
            fhi = fy;
        }
    }
    if (!(std::abs(fy) <= o.tol_rel * (1.0 + y))) {
        // the bracket is tight; let Newton finish from its best end
        return find_cycle_newton(p, y, o);
    }
    return detail::assemble_cycle(p, y, it, o.returns);
}

// Seed 1/v* from the series head tau ~ g1 v + g2 v^2 when g1/g2 < 0.
inline std::optional<double> asymptotic_seed(const SystemParams& p) {
    const SeriesCoeffs s = series_coeffs(p);
    if (!(s.g1() / s.g2() < 0.0)) return std::nullopt;
    return -s.g2() / s.g1();
}

// Sign changes of r on a geometric grid of y0 values in [y_lo, y_hi].
inline std::vector<std::pair<double, double>> bracket_scan(const SystemParams& p, double y_lo, double y_hi,
                                                           int n = 200, const ReturnOptions& o = {}) {
    std::vector<std::pair<double, double>> out;
    double prev_y = 0.0, prev_r = 0.0;
    bool have_prev = false;
    const double q = std::pow(y_hi / y_lo, 1.0 / (n - 1));
    for (int i = 0; i < n; ++i) {
        const double y = y_lo * std::pow(q, i);
        double ry;
        try {
            ry = detail::reduced_residual(p, y, o);
        } catch (const Error&) {
            have_prev = false;
            continue;
        }
        if (have_prev && (ry < 0.0) != (prev_r < 0.0)) out.emplace_back(prev_y, y);
        prev_y = y;
        prev_r = ry;
        have_prev = true;
    }
    return out;
}

// Orbit of the full return map on the switching plane: X flight followed by
// the Y flight back. Entry 0 is the seed.
inline std::vector<SigmaPoint> iterate_reduced_map(const SystemParams& p, const SigmaPoint& seed, int n,
                                                   const ReturnOptions& o = {}) {
    std::vector<SigmaPoint> orbit{seed};
    orbit.reserve(n + 1);
    SigmaPoint q = seed;
    for (int i = 0; i < n; ++i) {
        if (!(q.x > 0.0 && q.y > 0.0)) throw Divergence("reduced map left the first quadrant");
        try {
            const HalfReturn hx = half_return_X(p, q, o);
            const HalfReturn hy = half_return_Y(p, hx.end, o);
            q = hy.end;
        } catch (const Divergence&) {
            throw;
        } catch (const Error& e) {
            throw Divergence(std::string("reduced map failed: ") + e.what());
        }
        if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw Divergence("reduced map produced a non-finite point");
        orbit.push_back(q);
    }
    return orbit;
}

inline std::vector<SigmaPoint> iterate_reduced_map(const SystemParams& p, double y0_init, int n,
                                                   const ReturnOptions& o = {}) {
    return iterate_reduced_map(p, gamma1_branch_point(p, y0_init), n, o);
}

}  // namespace twofold
