#pragma once

#include "system.hpp"

namespace twofold {

enum class SigmaRegion { Crossing, Sliding, Escaping, TangencyX, TangencyY, DoubleTangency };

inline const char* to_string(SigmaRegion r) {
    switch (r) {
        case SigmaRegion::Crossing: return "crossing";
        case SigmaRegion::Sliding: return "sliding";
        case SigmaRegion::Escaping: return "escaping";
        case SigmaRegion::TangencyX: return "tangency_X";
        case SigmaRegion::TangencyY: return "tangency_Y";
        case SigmaRegion::DoubleTangency: return "double_tangency";
    }
    return "?";
}

struct SigmaClass {
    SigmaRegion region = SigmaRegion::Crossing;
    double Xf = 0.0;
    double Yf = 0.0;
};

// Lie derivatives of f(x,y,z) = z at a point of the switching plane
inline double lie_Xf(const SystemParams& p, const SigmaPoint& q) { return eval_X(p, q.lift()).z; }
inline double lie_Yf(const SystemParams& p, const SigmaPoint& q) { return eval_Y(p, q.lift()).z; }

inline SigmaClass classify_point(const SystemParams& p, const SigmaPoint& q) {
    SigmaClass out;
    out.Xf = lie_Xf(p, q);
    out.Yf = lie_Yf(p, q);
    const double scale = q.norm();
    const bool tx = tol::is_tangent(out.Xf, scale);
    const bool ty = tol::is_tangent(out.Yf, scale);
    if (tx && ty) out.region = SigmaRegion::DoubleTangency;
    else if (tx) out.region = SigmaRegion::TangencyX;
    else if (ty) out.region = SigmaRegion::TangencyY;
    else if (out.Xf * out.Yf > 0.0) out.region = SigmaRegion::Crossing;
    else if (out.Xf < 0.0) out.region = SigmaRegion::Sliding;
    else out.region = SigmaRegion::Escaping;
    return out;
}

// The line {nx*x + ny*y + c0 = 0} of the switching plane.
struct TangencyLine {
    Field field = Field::X;
    double nx = 0.0;
    double ny = 0.0;
    double c0 = 0.0;

    double eval(const SigmaPoint& q) const { return nx * q.x + ny * q.y + c0; }
    bool contains(const SigmaPoint& q) const { return tol::is_tangent(eval(q), q.norm()); }
};

struct TangencyLines {
    TangencyLine LX;
    TangencyLine LY;
};

// Xf and Yf are affine on the plane, so three evaluations recover each line.
inline TangencyLines tangency_lines(const SystemParams& p) {
    auto line_of = [&](Field f) {
        auto zdot = [&](double x, double y) { return eval_field(p, f, {x, y, 0.0}).z; };
        const double c0 = zdot(0.0, 0.0);
        return TangencyLine{f, zdot(1.0, 0.0) - c0, zdot(0.0, 1.0) - c0, c0};
    };
    return {line_of(Field::X), line_of(Field::Y)};
}

enum class FoldKind { VisibleFold, InvisibleFold, Cusp };

inline const char* to_string(FoldKind k) {
    switch (k) {
        case FoldKind::VisibleFold: return "visible_fold";
        case FoldKind::InvisibleFold: return "invisible_fold";
        case FoldKind::Cusp: return "cusp";
    }
    return "?";
}

struct FoldInfo {
    Field field = Field::X;
    FoldKind kind = FoldKind::VisibleFold;
    double second = 0.0;  // X^2 f or Y^2 f
    double third = 0.0;   // X^3 f or Y^3 f
};

// X^n f at s, i.e. e3' D^{n-1} X(s) for an affine field with Jacobian D.
inline double lie_derivative(const SystemParams& p, Field f, const State3& s, int order) {
    const Mat3 D = f == Field::X ? DX(p) : DY(p);
    Vec3 v = eval_field(p, f, s).vec();
    for (int i = 1; i < order; ++i) v = D * v;
    return v(2);
}

inline FoldInfo fold_info(const SystemParams& p, const SigmaPoint& q, Field f) {
    const TangencyLines lines = tangency_lines(p);
    const TangencyLine& L = f == Field::X ? lines.LX : lines.LY;
    if (!L.contains(q))
        throw PreconditionError(std::string("point is not on the tangency line of ") + to_string(f));

    FoldInfo out;
    out.field = f;
    out.second = lie_derivative(p, f, q.lift(), 2);
    out.third = lie_derivative(p, f, q.lift(), 3);
    const double scale = q.norm();
    if (tol::is_tangent(out.second, scale)) {
        if (tol::is_tangent(out.third, scale))
            throw DomainError("degenerate tangency: second and third Lie derivatives vanish");
        out.kind = FoldKind::Cusp;
        return out;
    }
    // the X half-space is z > 0, the Y half-space z < 0
    const bool visible = f == Field::X ? out.second > 0.0 : out.second < 0.0;
    out.kind = visible ? FoldKind::VisibleFold : FoldKind::InvisibleFold;
    return out;
}

// Picks whichever tangency line q lies on (X first at the two-fold).
inline FoldInfo fold_info(const SystemParams& p, const SigmaPoint& q) {
    const TangencyLines lines = tangency_lines(p);
    if (lines.LX.contains(q)) return fold_info(p, q, Field::X);
    if (lines.LY.contains(q)) return fold_info(p, q, Field::Y);
    throw PreconditionError("point lies on neither tangency line");
}

// Filippov sliding vector field on the sliding and escaping regions.
inline Vec2 sliding_field(const SystemParams& p, const SigmaPoint& q) {
    const SigmaClass cls = classify_point(p, q);
    if (cls.region != SigmaRegion::Sliding && cls.region != SigmaRegion::Escaping)
        throw PreconditionError(std::string("sliding field undefined at a ") + to_string(cls.region) +
                                " point");
    const Vec3 X = eval_X(p, q.lift()).vec();
    const Vec3 Y = eval_Y(p, q.lift()).vec();
    const Vec3 Z = (cls.Yf * X - cls.Xf * Y) / (cls.Yf - cls.Xf);
    if (std::abs(Z(2)) > 1e-12 * (1.0 + X.norm() + Y.norm()))
        throw Error("sliding field has a normal component");
    return {Z(0), Z(1)};
}

}  // namespace twofold
