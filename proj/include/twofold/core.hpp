#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace twofold {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec2 = Eigen::Vector2d;

inline constexpr double pi = std::numbers::pi;

struct State3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 vec() const { return {x, y, z}; }
    static State3 from(const Vec3& v) { return {v(0), v(1), v(2)}; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// point of the switching plane z = 0
struct SigmaPoint {
    double x = 0.0;
    double y = 0.0;

    State3 lift() const { return {x, y, 0.0}; }
    double norm() const { return std::hypot(x, y); }
};

enum class Field { X, Y };

inline const char* to_string(Field f) { return f == Field::X ? "X" : "Y"; }

// ---------------------------------------------------------------------------
// errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NoReturn : public Error {
public:
    using Error::Error;
};

class TangentialGraze : public Error {
public:
    using Error::Error;
};

class GrazingCrossing : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class NotACycle : public Error {
public:
    using Error::Error;
};

class Divergence : public Error {
public:
    using Error::Error;
};

class EmptyBand : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// tolerances shared across modules

namespace tol {
inline constexpr double equality_rel = 1e-12;
inline constexpr double tangency = 1e-10;
inline constexpr double radicand_clamp = 1e-12;

// scale-aware zero test for Lie derivatives on the switching plane
inline bool is_tangent(double lie, double scale) { return std::abs(lie) < tangency * (1.0 + scale); }
}  // namespace tol

// ---------------------------------------------------------------------------

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
// handled by exactly one worker, so writes to slot i of a pre-sized output
// are race-free and the result does not depend on the thread count.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(workers);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);
}

}  // namespace twofold
