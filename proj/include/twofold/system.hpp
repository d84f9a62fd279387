#pragma once

#include "core.hpp"

#include <sstream>

namespace twofold {

// Parameters of the equivariant canonical family
//
//   X(x,y,z) = (A x - H(k z - Lambda), Lambda - kappa z, 2C z + y),   z > 0
//   Y        = S o X o S,                                           z < 0
//
// with k = (A-C)^2 + 1, kappa = C^2 + 1 and S(x,y,z) = (-y,-x,-z).
// Instances are only produced by build_system / build_resonant.
class SystemParams {
public:
    double A() const { return A_; }
    double C() const { return C_; }
    double H() const { return H_; }
    double Lambda() const { return Lambda_; }
    bool resonant() const { return resonant_; }

    // parameters of the Y field in the same canonical chart
    double a() const { return A_; }
    double c() const { return C_; }
    double h() const { return H_; }
    double lambda() const { return -Lambda_; }

    double kappa() const { return C_ * C_ + 1.0; }
    double k() const { return (A_ - C_) * (A_ - C_) + 1.0; }

    std::string describe() const {
        std::ostringstream os;
        os.precision(17);
        os << "A=" << A_ << " C=" << C_ << " H=" << H_ << " Lambda=" << Lambda_
           << (resonant_ ? " (resonant)" : "");
        return os.str();
    }

    friend SystemParams build_system(double A, double C, double H, double Lambda);
    friend SystemParams build_resonant(double C, double H, double Lambda);

private:
    SystemParams(double A, double C, double H, double Lambda, bool resonant)
        : A_(A), C_(C), H_(H), Lambda_(Lambda), resonant_(resonant) {}

    double A_, C_, H_, Lambda_;
    bool resonant_;
};

namespace detail {
inline void validate(double A, double C, double H, double Lambda) {
    if (!std::isfinite(A) || !std::isfinite(C) || !std::isfinite(H) || !std::isfinite(Lambda))
        throw InvalidParams("system parameters must be finite");
    if (C == 0.0) throw InvalidParams("C must be nonzero (no rotation at C = 0)");
    if (Lambda == 0.0) throw InvalidParams("Lambda must be nonzero (degenerate tangency)");
}
}  // namespace detail

inline SystemParams build_system(double A, double C, double H, double Lambda) {
    detail::validate(A, C, H, Lambda);
    return SystemParams(A, C, H, Lambda, A + 2.0 * C == 0.0);
}

inline SystemParams build_resonant(double C, double H, double Lambda) {
    detail::validate(-2.0 * C, C, H, Lambda);
    return SystemParams(-2.0 * C, C, H, Lambda, true);
}

// ---------------------------------------------------------------------------

inline State3 apply_involution(const State3& s) { return {-s.y, -s.x, -s.z}; }

inline SigmaPoint apply_involution(const SigmaPoint& q) { return {-q.y, -q.x}; }

inline const Mat3& involution_matrix() {
    static const Mat3 S = (Mat3() << 0, -1, 0, -1, 0, 0, 0, 0, -1).finished();
    return S;
}

inline State3 eval_X(const SystemParams& p, const State3& s) {
    return {p.A() * s.x - p.H() * (p.k() * s.z - p.Lambda()),
            p.Lambda() - p.kappa() * s.z,
            2.0 * p.C() * s.z + s.y};
}

// canonical Y row written with the mirror parameters (a, c, h, lambda)
inline State3 eval_Y(const SystemParams& p, const State3& s) {
    const double a = p.a(), c = p.c(), h = p.h(), lam = p.lambda();
    const double kk = (a - c) * (a - c) + 1.0;
    return {lam - (1.0 + c * c) * s.z,
            a * s.y - h * (kk * s.z - lam),
            2.0 * c * s.z + s.x};
}

inline State3 eval_field(const SystemParams& p, Field f, const State3& s) {
    return f == Field::X ? eval_X(p, s) : eval_Y(p, s);
}

inline Mat3 DX(const SystemParams& p) {
    Mat3 D;
    D << p.A(), 0.0, -p.H() * p.k(),
         0.0, 0.0, -p.kappa(),
         0.0, 1.0, 2.0 * p.C();
    return D;
}

inline Mat3 DY(const SystemParams& p) {
    const Mat3& S = involution_matrix();
    return S * DX(p) * S;
}

// Stationary point of the affine X field; exists iff A != 0.
inline State3 stationary_X(const SystemParams& p) {
    if (p.A() == 0.0) throw DomainError("X has no isolated stationary point when A = 0");
    const double L = p.Lambda(), kap = p.kappa();
    return {p.H() * L * (p.k() - kap) / (kap * p.A()), -2.0 * p.C() * L / kap, L / kap};
}

}  // namespace twofold
