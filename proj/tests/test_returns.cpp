#include <catch_amalgamated.hpp>

#include <twofold/returns.hpp>

#include "oracles.hpp"

#include <algorithm>
#include <complex>
#include <vector>

using namespace twofold;
using Catch::Approx;

namespace {

// samples z along a flight and reports whether it kept its sign
bool keeps_side(const SystemParams& p, const HalfReturn& h) {
    for (int i = 1; i < 400; ++i) {
        const double t = h.t * i / 400.0;
        const double z = h.reversed ? flow_Y(p, h.end.lift(), -h.t + t).z
                                    : flow(p, h.field, h.start.lift(), t).z;
        if (h.field == Field::X ? !(z > 0.0) : !(z < 0.0)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("half_return_X basic contract", "[returns]") {
    const auto p = build_resonant(1.0, 0.04, 1.0);
    const SigmaPoint q = gamma1_branch_point(p, 1e3);
    const HalfReturn h = half_return_X(p, q);
    CHECK(h.field == Field::X);
    CHECK_FALSE(h.reversed);
    CHECK(h.t > 0.0);
    CHECK(std::abs(flow_X(p, q.lift(), h.t).z) <= 1e-11 * (1.0 + q.norm()));
    CHECK(h.residual <= 1e-11 * (1.0 + q.norm()));
    CHECK(h.end.x < 0.0);
    CHECK(h.end.y < 0.0);
    CHECK(classify_point(p, h.end).region == SigmaRegion::Crossing);
    CHECK(keeps_side(p, h));
    CHECK(h.iterations > 0);
}

TEST_CASE("half_return_X approaches pi with the series", "[returns]") {
    const auto p = build_resonant(1.0, 0.04, 1.0);
    const SeriesCoeffs s = series_coeffs(p);
    auto rem = [&](double y0) {
        const double t = half_return_X(p, gamma1_branch_point(p, y0)).t;
        return t - pi - s.gx1 / y0 - s.gx2 / (y0 * y0);
    };
    const double K = std::abs(rem(1e3)) * 1e9;
    CHECK(K > 0.0);
    CHECK(K < 10.0);
    CHECK(std::abs(rem(1e4)) <= 2.0 * K / 1e12 + 1e-14);
    CHECK(std::abs(rem(1e5)) <= 2.0 * K / 1e15 + 1e-14);

    double prev = 1.0;
    for (double y0 : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double d = std::abs(half_return_X(p, gamma1_branch_point(p, y0)).t - pi);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("Y flights: conjugacy, forward and reverse", "[returns]") {
    const auto p = build_resonant(0.8, 0.2, 1.3);
    for (double y0 : {2.0, 30.0, 500.0}) {
        const SigmaPoint q = gamma1_branch_point(p, y0);
        const HalfReturn hx = half_return_X(p, q);
        const HalfReturn hy = half_return_Y(p, apply_involution(q));
        CHECK(hy.t == Approx(hx.t).epsilon(1e-13));
        const SigmaPoint mirrored = apply_involution(hx.end);
        CHECK(hy.end.x == Approx(mirrored.x).epsilon(1e-12));
        CHECK(hy.end.y == Approx(mirrored.y).epsilon(1e-12));
        CHECK(keeps_side(p, hy));

        // backwards from the arrival point recovers the same flight
        const HalfReturn back = reverse_half_return_Y(p, hy.end);
        CHECK(back.reversed);
        CHECK(back.t == Approx(hy.t).epsilon(1e-12));
        CHECK(back.start.x == Approx(hy.start.x).epsilon(1e-10));
        CHECK(back.start.y == Approx(hy.start.y).epsilon(1e-10));
        CHECK(keeps_side(p, back));
    }
}

TEST_CASE("return preconditions and failures", "[returns]") {
    const auto p = build_resonant(1.0, 0.3, 1.0);
    CHECK_THROWS_AS(half_return_X(p, {1.0, -1.0}), PreconditionError);
    CHECK_THROWS_AS(half_return_X(p, {1.0, 0.0}), PreconditionError);
    CHECK_THROWS_AS(half_return_Y(p, {1.0, 1.0}), PreconditionError);
    CHECK_THROWS_AS(reverse_half_return_Y(p, {-1.0, 1.0}), PreconditionError);

    // with C < 0 the upper focus attracts; slow starts never come back
    const auto q = build_resonant(-1.0, 0.3, 1.0);
    CHECK_THROWS_AS(half_return_X(q, {0.0, 0.01}), NoReturn);
    ReturnOptions short_window;
    short_window.t_max = 1.0;
    CHECK_THROWS_AS(half_return_X(p, {1.0, 100.0}, short_window), NoReturn);
}

TEST_CASE("next_crossing", "[returns]") {
    const auto p = build_resonant(1.0, 0.3, 1.0);
    const SigmaPoint q{2.0, 5.0};
    const double t = *next_crossing(p, Field::X, q.lift(), 10.0);
    CHECK(t == Approx(half_return_X(p, q).t).epsilon(1e-13));
    CHECK_FALSE(next_crossing(p, Field::X, q.lift(), 0.5 * t).has_value());
    const State3 mid = flow_X(p, q.lift(), 0.5 * t);
    CHECK(*next_crossing(p, Field::X, mid, 10.0) == Approx(0.5 * t).epsilon(1e-12));
}

TEST_CASE("series coefficients", "[returns]") {
    const auto p = build_resonant(1.0, 0.04, 1.0);
    const SeriesCoeffs s = series_coeffs(p);
    CHECK(s.gx1 == Approx(0.5216).epsilon(1e-4));
    CHECK(s.gx1 == Approx((1.0 + std::exp(-pi)) / 2.0));
    for (double C : {-2.0, 0.3, 1.7})
        for (double H : {-0.2, 0.1, 0.6}) {
            const SeriesCoeffs t = series_coeffs(build_resonant(C, H, 0.9));
            CHECK(t.gx2 == Approx(-C * t.gx1 * t.gx1));
        }
    CHECK_THROWS_AS(series_coeffs(build_resonant(1.0, 0.0, 1.0)), PreconditionError);
    CHECK_THROWS_AS(series_coeffs(build_resonant(1.0, 1.0, 1.0)), PreconditionError);
    CHECK_THROWS_AS(series_coeffs(build_system(-1.0, 1.0, 0.5, 1.0)), PreconditionError);
}

TEST_CASE("numeric return times reproduce the series", "[returns][oracle]") {
    const std::array<double, 3> v{1e-3, 1e-4, 1e-5};
    for (double C : {0.5, 1.0, 1.5})
        for (double H : {0.02, 0.2, 0.6}) {
            const auto p = build_resonant(C, H, 1.3);
            const SeriesCoeffs s = series_coeffs(p);
            std::array<double, 3> tx{}, ty{};
            for (int i = 0; i < 3; ++i) {
                const TimeMatchSample m = time_matching_sample(p, v[i]);
                tx[i] = m.tau_x;
                ty[i] = m.tau_y;
                CHECK(m.tau == Approx(m.tau_x - m.tau_y));
            }
            const auto fx = oracle::cubic_fit(v, tx);
            const auto fy = oracle::cubic_fit(v, ty);
            CHECK(fx[0] == Approx(s.gx1).epsilon(1e-3));
            CHECK(fx[1] == Approx(s.gx2).epsilon(1e-3));
            CHECK(fy[0] == Approx(s.gy1).epsilon(1e-3));
            CHECK(fy[1] == Approx(s.gy2).epsilon(1e-3));
        }
}

TEST_CASE("forward Y flight from p0 does not follow the Y series", "[returns]") {
    // The Y leg of a cycle through p0 ends at p0; flying Y forward out of the
    // mirror point instead gives the X series again by conjugacy.
    const auto p = build_resonant(1.0, 0.04, 1.3);
    const SeriesCoeffs s = series_coeffs(p);
    const double v0 = 1e-4;
    const SigmaPoint q = gamma1_branch_point(p, 1.0 / v0);
    const double fwd = (half_return_Y(p, apply_involution(q)).t - pi) / v0;
    const double back = (reverse_half_return_Y(p, q).t - pi) / v0;
    CHECK(back == Approx(s.gy1).epsilon(1e-3));
    CHECK(fwd == Approx(s.gx1).epsilon(1e-3));
    CHECK(std::abs(fwd - s.gy1) > 0.1 * std::abs(s.gy1));
}

TEST_CASE("critical H", "[returns]") {
    CHECK(critical_H(1.0) == Approx(0.04508).epsilon(1e-4));
    CHECK(2.0 * std::cosh(pi) == Approx(23.1839).epsilon(1e-5));
    for (double C : {0.05, 0.25, 0.5, 1.0, 2.0, 3.0}) {
        const SeriesCoeffs s = series_coeffs(build_resonant(C, critical_H(C), 1.0));
        CHECK(std::abs(s.gx1 - s.gy1) <= 1e-12 * (1.0 + std::abs(s.gx1)));
    }
    // for C < 0 the first coefficients do not cancel at the same H
    const SeriesCoeffs n = series_coeffs(build_resonant(-1.0, critical_H(-1.0), 1.0));
    CHECK(std::abs(n.g1()) > 1.0);
}

TEST_CASE("second coefficient at the critical H", "[returns]") {
    for (double C : {-3.0, -2.0, -1.0, -0.5, -0.05, 0.05, 0.5, 1.0, 2.0, 3.0}) {
        for (double L : {0.5, 1.0, 1.7}) {
            const SeriesCoeffs s = series_coeffs(build_resonant(C, critical_H(C), L));
            const double g2 = gamma2_at_critical(C, L);
            CHECK(s.g2() == Approx(g2).epsilon(1e-10));
            CHECK(g2 != 0.0);
            if (C > 0) CHECK(g2 < 0.0);
        }
    }
    CHECK(gamma2_at_critical(1.0, 1.0) ==
          Approx(-2.0 * (std::exp(-pi) + 1.0 + std::exp(-2 * pi)) / 4.0));
}

TEST_CASE("time matching at and near the critical H", "[returns]") {
    const double C = 1.0, L = 1.0;
    const auto pc = build_resonant(C, critical_H(C), L);
    for (double v : {1e-3, 1e-4, 1e-5}) {
        const double tau = time_matching(pc, v);
        CHECK(std::abs(tau / v) < 5.0 * v);
        CHECK(tau < 0.0);
    }

    // below H-bar the sign changes once and bisection isolates the zero
    const auto p = build_resonant(C, critical_H(C) * 0.99, L);
    const SeriesCoeffs s = series_coeffs(p);
    const double vstar = -s.g1() / s.g2();
    double lo = 0.2 * vstar, hi = 5.0 * vstar;
    REQUIRE(time_matching(p, lo) > 0.0);
    REQUIRE(time_matching(p, hi) < 0.0);
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (time_matching(p, mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(lo == Approx(vstar).epsilon(0.05));

    // the zero of tau is where the X flight closes symmetrically
    const SigmaPoint q = gamma1_branch_point(p, 1.0 / lo);
    const HalfReturn h = half_return_X(p, q);
    CHECK(std::abs(h.end.x + q.y) < 1e-8 * q.y);
    CHECK(std::abs(h.end.y + q.x) < 1e-8 * q.y);
}

TEST_CASE("the sextic has no positive real root", "[returns][oracle]") {
    const std::vector<double> c(critical_polynomial_coeffs.begin(), critical_polynomial_coeffs.end());
    auto roots = oracle::poly_roots(c);
    REQUIRE(roots.size() == 6);
    const std::vector<std::complex<double>> reference{
        {-2.39314, 0.0}, {-0.567069, 0.0}, {-0.384611, 0.681543},
        {-0.384611, -0.681543}, {0.864713, 0.674897}, {0.864713, -0.674897}};
    for (const auto& r : reference) {
        const auto best = std::min_element(roots.begin(), roots.end(), [&](auto a, auto b) {
            return std::abs(a - r) < std::abs(b - r);
        });
        CHECK(std::abs(*best - r) < 1e-4);
    }
    for (const auto& r : roots) CHECK_FALSE((std::abs(r.imag()) < 1e-9 && r.real() > 0.0));
    for (double x = 0.0; x < 50.0; x += 0.01) CHECK(critical_polynomial(x) > 0.0);
}
