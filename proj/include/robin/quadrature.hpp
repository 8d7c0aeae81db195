#pragma once

// Adaptive Gauss-Legendre quadrature for smooth integrands on an interval.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace robin::quadrature {

namespace detail {

// 15-point Gauss-Legendre nodes and weights on [-1, 1].
inline constexpr double kNodes15[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
inline constexpr double kWeights15[15] = {
    0.03075324199611727, 0.07036604748810812, 0.10715922046717194,
    0.13957067792615432, 0.16626920581699392, 0.18616100001556220,
    0.19843148532711158, 0.20257824192556127, 0.19843148532711158,
    0.18616100001556220, 0.16626920581699392, 0.13957067792615432,
    0.10715922046717194, 0.07036604748810812, 0.03075324199611727};

template <typename F>
double gauss15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < 15; ++i) {
        sum += kWeights15[i] * f(mid + half * kNodes15[i]);
    }
    return sum * half;
}

template <typename F>
double adaptive(const F& f, double a, double b, double tol, int depth) {
    const double whole = gauss15(f, a, b);
    const double mid = 0.5 * (a + b);
    const double split = gauss15(f, a, mid) + gauss15(f, mid, b);
    if (std::abs(whole - split) <= tol) {
        return split;
    }
    if (depth >= 40) {
        throw std::runtime_error("quadrature failed to converge on [" +
                                 std::to_string(a) + ", " + std::to_string(b) +
                                 "], residual " +
                                 std::to_string(std::abs(whole - split)));
    }
    return adaptive(f, a, mid, 0.5 * tol, depth + 1) +
           adaptive(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Integrates f over [a, b] to the given absolute tolerance.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol) {
    if (!(abs_tol > 0.0)) {
        throw std::domain_error("quadrature tolerance must be positive");
    }
    if (a == b) return 0.0;
    return detail::adaptive(f, a, b, abs_tol, 0);
}

}  // namespace robin::quadrature
