#pragma once

#include "cycles.hpp"

#include <complex>
#include <tuple>
#include <vector>

namespace twofold {

enum class Direction { XtoY, YtoX };

inline Mat3 saltation(const SystemParams& p, const SigmaPoint& q, Direction d) {
    const State3 s = q.lift();
    const Vec3 X = eval_X(p, s).vec(), Y = eval_Y(p, s).vec();
    const double div = d == Direction::XtoY ? X(2) : Y(2);
    if (tol::is_tangent(div, q.norm())) throw GrazingCrossing("saltation: crossing is tangential");
    const Vec3 jump = d == Direction::XtoY ? Vec3(Y - X) : Vec3(X - Y);
    Mat3 S = Mat3::Identity();
    S.col(2) += jump / div;
    return S;
}

struct SchurVerdict {
    bool det_below_one = false;   // 1 - det > 0
    bool q_at_plus_one = false;   // 2 - tr + det > 0
    bool q_at_minus_one = false;  // tr + det > 0
    bool stable = false;
};

inline SchurVerdict schur_verdict(double trace, double det) {
    SchurVerdict v;
    v.det_below_one = 1.0 - det > 0.0;
    v.q_at_plus_one = 2.0 - trace + det > 0.0;
    v.q_at_minus_one = trace + det > 0.0;
    v.stable = v.det_below_one && v.q_at_plus_one && v.q_at_minus_one;
    return v;
}

// Roots of mu^2 - (tr - 1) mu + det.
inline std::pair<std::complex<double>, std::complex<double>> transverse_multipliers(double trace, double det) {
    const double b = trace - 1.0;
    const double disc = b * b - 4.0 * det;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        // avoid cancellation in the smaller root
        const double big = 0.5 * (b + (b >= 0.0 ? sq : -sq));
        const double small = big != 0.0 ? det / big : 0.0;
        return {big, small};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {{0.5 * b, im}, {0.5 * b, -im}};
}

struct MonodromyReport {
    Mat3 M = Mat3::Identity();
    Mat3 M_reduced = Mat3::Identity();
    double trace = 0.0;
    double det = 0.0;
    std::complex<double> mu1, mu2, mu3;
    double trivial_residual = 0.0;     // |M Z - Z| / |Z| with Z = X(p0)
    double reduction_mismatch = 0.0;   // max entry of |M - M_reduced|
    double deflation_mismatch = 0.0;   // quadratic from deflation vs (1 - tr, det)
    SchurVerdict schur;
    bool stable = false;
    bool moduli_agree = false;         // Schur-Cohn vs |mu2|, |mu3| < 1
};

inline SchurVerdict schur_verdict(const MonodromyReport& r) { return schur_verdict(r.trace, r.det); }

inline MonodromyReport monodromy(const SystemParams& p, const SymmetricCycle& c) {
    MonodromyReport r;
    const Mat3 SYX = saltation(p, c.p0, Direction::YtoX);
    const Mat3 SXY = saltation(p, c.p1, Direction::XtoY);
    r.M = SYX * fundamental_Y(p, c.tY).phi * SXY * fundamental_X(p, c.tX).phi;

    const Mat3& S = involution_matrix();
    const Mat3 half = fundamental_X(p, 0.5 * c.T).phi;
    r.M_reduced = SYX * S * half * S * SXY * half;
    r.reduction_mismatch = (r.M - r.M_reduced).cwiseAbs().maxCoeff();

    r.trace = r.M.trace();
    r.det = r.M.determinant();

    // characteristic polynomial mu^3 - tr mu^2 + c2 mu - det
    const Mat3& M = r.M;
    const double c2 = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0) + M(0, 0) * M(2, 2) - M(0, 2) * M(2, 0) +
                      M(1, 1) * M(2, 2) - M(1, 2) * M(2, 1);
    double mu = 1.0;
    for (int k = 0; k < 8; ++k) {
        const double f = ((mu - r.trace) * mu + c2) * mu - r.det;
        const double df = (3.0 * mu - 2.0 * r.trace) * mu + c2;
        if (df == 0.0) break;
        const double step = f / df;
        mu -= step;
        if (std::abs(step) < 1e-15) break;
    }
    r.mu1 = mu;
    const double b = mu - r.trace;          // synthetic division by (mu - mu1)
    const double cq = c2 + mu * b;
    r.deflation_mismatch = std::max(std::abs(b - (1.0 - r.trace)), std::abs(cq - r.det));

    std::tie(r.mu2, r.mu3) = transverse_multipliers(r.trace, r.det);

    const Vec3 Z = eval_X(p, c.p0.lift()).vec();
    r.trivial_residual = (r.M * Z - Z).norm() / Z.norm();

    r.schur = schur_verdict(r.trace, r.det);
    r.stable = r.schur.stable;
    r.moduli_agree = r.stable == (std::abs(r.mu2) < 1.0 && std::abs(r.mu3) < 1.0);
    return r;
}

// ---------------------------------------------------------------------------
// Large-amplitude limits of det M and tr M, and the band they cut out.

struct AsymptoticInvariants {
    double m = 0.0;
    double m2 = 0.0;
    double tau_inf = 0.0;
};

inline AsymptoticInvariants asymptotic_invariants(double C, double H) {
    if (!(H > 0.0 && H < 1.0)) throw PreconditionError("asymptotic invariants require 0 < H < 1");
    const double sD = std::sqrt(gamma1_discriminant(H));
    AsymptoticInvariants a;
    a.m = 2.0 * H / (H + sD + 1.0);
    a.m2 = a.m * a.m;
    const double common = (H + 1.0) * sD - (H - 1.0) * (H - 1.0) + 2.0;
    const double psi2 = -(H + 1.0) * (H - sD - 3.0) / 2.0;
    const double psim1 = (H * H - 1.0) * common / (H * H);
    const double psim4 = common / 2.0;
    a.tau_inf = a.m2 * (psi2 * std::exp(2.0 * pi * C) + psim1 * std::exp(-pi * C) + psim4 * std::exp(-4.0 * pi * C));
    return a;
}

inline AsymptoticInvariants asymptotic_invariants(const SystemParams& p) {
    require_resonant(p, "asymptotic_invariants");
    return asymptotic_invariants(p.C(), p.H());
}

inline double band_upper_expr(double C, double H) {
    const auto a = asymptotic_invariants(C, H);
    return 2.0 + a.m2 - a.tau_inf;
}

inline double band_lower_expr(double C, double H) {
    const auto a = asymptotic_invariants(C, H);
    return a.tau_inf + a.m2;
}

struct BandPoint {
    double C = 0.0;
    double H = 0.0;
    double m2 = 0.0;
    double tau_inf = 0.0;
    std::array<bool, 3> inequalities{};  // 1 - m^2 > 0, 2 + m^2 - tau > 0, tau + m^2 > 0
    bool inside = false;
};

inline BandPoint band_point(double C, double H) {
    BandPoint b;
    b.C = C;
    b.H = H;
    const auto a = asymptotic_invariants(C, H);
    b.m2 = a.m2;
    b.tau_inf = a.tau_inf;
    b.inequalities = {1.0 - a.m2 > 0.0, 2.0 + a.m2 - a.tau_inf > 0.0, a.tau_inf + a.m2 > 0.0};
    b.inside = b.inequalities[0] && b.inequalities[1] && b.inequalities[2];
    return b;
}

namespace detail {

inline constexpr double band_H_floor = 1e-12;

// Root of f on [lo, hi] (sign change assumed), bisecting in log H so tiny
// roots are resolved to full relative precision.
template <class F>
double bisect_H(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = lo > 0.0 && hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Lower edge of the band at fixed C > 0, where tau + m^2 changes sign.
inline double band_H_min(double C) {
    if (!(C > 0.0)) throw EmptyBand("stability band requires C > 0");
    const double hc = critical_H(C);
    auto f = [&](double H) { return band_lower_expr(C, H); };
    const double lo = std::min(detail::band_H_floor, 1e-6 * hc);
    if (!(f(lo) < 0.0) || !(f(hc) > 0.0)) throw EmptyBand("no lower boundary below H_crit");
    return detail::bisect_H(f, lo, hc);
}

inline double band_width(double C) {
    const double w = critical_H(C) - band_H_min(C);
    if (!(w > 0.0)) throw EmptyBand("stability band is empty");
    return w;
}

struct BandGrid {
    double cmin = 0.0, cmax = 3.0;
    double hmin = 0.0, hmax = 1.0;
    int nc = 400, nh = 400;
};

struct BandResult {
    std::vector<BandPoint> points;                    // row-major in C, then H
    std::vector<std::pair<double, double>> upper;     // (C, H) on 2 + m^2 - tau = 0
    std::vector<std::pair<double, double>> lower;     // (C, H) on tau + m^2 = 0
    std::vector<std::pair<double, double>> hcrit;     // (C, H_crit(C))
};

// Grid nodes exclude the interval ends: C_j = cmin + (cmax - cmin)(j+1)/nc,
// H_i = hmin + (hmax - hmin)(i+1)/(nh+1). Boundaries are bracketed on the
// grid (ends included) and refined by bisection.
inline BandResult stability_band(const BandGrid& g, unsigned threads = 1) {
    if (g.nc < 2 || g.nh < 2) throw PreconditionError("stability_band: grid counts must be >= 2");
    if (!(g.cmin >= 0.0 && g.cmax > g.cmin)) throw PreconditionError("stability_band: C range must lie in (0, inf)");
    if (!(g.hmin >= 0.0 && g.hmax <= 1.0 && g.hmax > g.hmin))
        throw PreconditionError("stability_band: H range must lie in (0, 1)");

    BandResult out;
    out.points.resize(static_cast<std::size_t>(g.nc) * g.nh);
    std::vector<std::vector<double>> up(g.nc), lowv(g.nc);

    parallel_for(static_cast<std::size_t>(g.nc), threads, [&](std::size_t j) {
        const double C = g.cmin + (g.cmax - g.cmin) * double(j + 1) / g.nc;
        for (int i = 0; i < g.nh; ++i) {
            const double H = g.hmin + (g.hmax - g.hmin) * double(i + 1) / (g.nh + 1);
            out.points[j * g.nh + i] = band_point(C, H);
        }
        std::vector<double> nodes;
        nodes.reserve(g.nh + 2);
        nodes.push_back(std::max(g.hmin, detail::band_H_floor));
        for (int i = 0; i < g.nh; ++i) nodes.push_back(out.points[j * g.nh + i].H);
        nodes.push_back(std::min(g.hmax, 1.0 - 1e-12));

        auto scan = [&](auto&& f, std::vector<double>& roots) {
            double prev = f(nodes[0]);
            for (std::size_t k = 1; k < nodes.size(); ++k) {
                const double cur = f(nodes[k]);
                if ((cur < 0.0) != (prev < 0.0)) roots.push_back(detail::bisect_H(f, nodes[k - 1], nodes[k]));
                prev = cur;
            }
        };
        scan([&](double H) { return band_upper_expr(C, H); }, up[j]);
        scan([&](double H) { return band_lower_expr(C, H); }, lowv[j]);
    });

    for (int j = 0; j < g.nc; ++j) {
        const double C = g.cmin + (g.cmax - g.cmin) * double(j + 1) / g.nc;
        for (double H : up[j]) out.upper.emplace_back(C, H);
        for (double H : lowv[j]) out.lower.emplace_back(C, H);
        out.hcrit.emplace_back(C, critical_H(C));
    }
    return out;
}

}  // namespace twofold
