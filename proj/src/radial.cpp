#include "robin/radial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "robin/special.hpp"

namespace robin::radial {

namespace {

using special::bessel_i;
using special::bessel_k;
using special::gamma_fn;

void validate_ball(const BallSpec& spec) {
    if (spec.dim < 2) {
        throw std::domain_error("ball dimension must be >= 2");
    }
    if (!(spec.radius > 0.0) || !std::isfinite(spec.radius)) {
        throw std::domain_error("ball radius must be positive and finite");
    }
}

void validate_alpha(double alpha) {
    if (!(alpha < 0.0) || !std::isfinite(alpha)) {
        throw std::domain_error("boundary parameter alpha must be negative");
    }
}

// Root function k I_{beta+1}(kR) + alpha I_beta(kR), divided by e^{kR}.
// Negative as k -> 0+ (the alpha term dominates), positive for k > |alpha|.
double ball_root_fn(double beta, double radius, double alpha, double k) {
    const double x = k * radius;
    return k * bessel_i(beta + 1.0, x).scaled_value +
           alpha * bessel_i(beta, x).scaled_value;
}

}  // namespace

RadialEigen ball_eigenvalue(const BallSpec& spec, double alpha, double tol) {
    validate_ball(spec);
    validate_alpha(alpha);
    if (!(tol > 0.0)) {
        throw std::domain_error("tolerance must be positive");
    }

    const double beta = 0.5 * (spec.dim - 2);
    const double k_max = 10.0 * std::abs(alpha) + 10.0 / spec.radius;
    auto f = [&](double k) {
        return ball_root_fn(beta, spec.radius, alpha, k);
    };

    // Geometric scan for the first sign change.
    constexpr int scan_points = 200;
    const double k_min = k_max * 1e-6;
    const double ratio = std::pow(k_max / k_min, 1.0 / (scan_points - 1));
    double lo = k_min;
    double f_lo = f(lo);
    if (!(f_lo < 0.0)) {
        throw std::runtime_error("ball root function not negative near k = 0");
    }
    double hi = 0.0;
    bool bracketed = false;
    for (int i = 1; i < scan_points; ++i) {
        const double k = k_min * std::pow(ratio, i);
        const double fk = f(k);
        if (fk >= 0.0) {
            hi = k;
            bracketed = true;
            break;
        }
        lo = k;
        f_lo = fk;
    }
    if (!bracketed) {
        throw std::runtime_error("ball eigenvalue root not bracketed below k = " +
                                 std::to_string(k_max));
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    RadialEigen eig;
    eig.ball = spec;
    eig.alpha = alpha;
    eig.beta = beta;
    eig.k = 0.5 * (lo + hi);
    eig.lambda = -eig.k * eig.k;
    eig.root_residual = std::abs(f(eig.k));
    eig.bracket_lo = lo;
    eig.bracket_hi = hi;
    return eig;
}

PhiValue eigenfunction_phi(const RadialEigen& eig, double r) {
    const double R = eig.ball.radius;
    if (!(r >= 0.0 && r <= R * (1.0 + 1e-14))) {
        throw std::domain_error("eigenfunction_phi: r outside [0, R]");
    }
    r = std::min(r, R);
    const double beta = eig.beta;
    const double k = eig.k;
    if (r < R * 1e-14) {
        return {std::pow(0.5 * k, beta) / gamma_fn(beta + 1.0), 0.0};
    }
    const double rb = std::pow(r, -beta);
    return {rb * bessel_i(beta, k * r).value,
            k * rb * bessel_i(beta + 1.0, k * r).value};
}

double phi_inverse(const RadialEigen& eig, double t) {
    const double R = eig.ball.radius;
    const double t_lo = eigenfunction_phi(eig, 0.0).value;
    const double t_hi = eigenfunction_phi(eig, R).value;
    const double slack = 1e-12 * (t_hi - t_lo);
    if (!(t >= t_lo - slack && t <= t_hi + slack)) {
        throw std::domain_error("phi_inverse: t outside [phi(0), phi(R)]");
    }
    if (t <= t_lo) return 0.0;
    if (t >= t_hi) return R;
    double lo = 0.0, hi = R;
    while (hi - lo > 1e-12 * R) {
        const double mid = 0.5 * (lo + hi);
        if (eigenfunction_phi(eig, mid).value < t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

// Determinant of the 2x2 Robin system on the shell, scaled by
// e^{-k (R_out - R_in)} so every factor stays O(1).
double annulus_det(double beta, const AnnulusSpec& s, double alpha, double k) {
    const double xo = k * s.outer_radius;
    const double xi = k * s.inner_radius;
    const double io = bessel_i(beta, xo).scaled_value;
    const double io1 = bessel_i(beta + 1.0, xo).scaled_value;
    const double ko = bessel_k(beta, xo).scaled_value;
    const double ko1 = bessel_k(beta + 1.0, xo).scaled_value;
    const double ii = bessel_i(beta, xi).scaled_value;
    const double ii1 = bessel_i(beta + 1.0, xi).scaled_value;
    const double ki = bessel_k(beta, xi).scaled_value;
    const double ki1 = bessel_k(beta + 1.0, xi).scaled_value;

    const double outer_i = k * io1 + alpha * io;   // row 1, I column (x e^{xo})
    const double outer_k = -k * ko1 + alpha * ko;  // row 1, K column (x e^{-xo})
    const double inner_i = -k * ii1 + alpha * ii;  // row 2, I column (x e^{xi})
    const double inner_k = k * ki1 + alpha * ki;   // row 2, K column (x e^{-xi})

    return outer_i * inner_k -
           outer_k * inner_i * std::exp(-2.0 * (xo - xi));
}

}  // namespace

AnnulusEigen annulus_eigenvalue(const AnnulusSpec& spec, double alpha,
                                double tol) {
    if (spec.dim < 2) {
        throw std::domain_error("annulus dimension must be >= 2");
    }
    if (!(spec.inner_radius > 0.0) ||
        !(spec.inner_radius < spec.outer_radius) ||
        !std::isfinite(spec.outer_radius)) {
        throw std::domain_error("annulus requires 0 < R_in < R_out");
    }
    validate_alpha(alpha);

    const double beta = 0.5 * (spec.dim - 2);
    const double width = spec.outer_radius - spec.inner_radius;
    const double k_max = 10.0 * std::abs(alpha) + 10.0 / width;
    auto f = [&](double k) { return annulus_det(beta, spec, alpha, k); };

    AnnulusEigen out;
    out.shell = spec;
    out.alpha = alpha;

    constexpr int scan_points = 400;
    double lo = 0.0, hi = 0.0;
    double prev_k = k_max / scan_points;
    double prev_f = f(prev_k);
    for (int i = 2; i <= scan_points; ++i) {
        const double k = k_max * i / scan_points;
        const double fk = f(k);
        if ((prev_f < 0.0) != (fk < 0.0)) {
            lo = prev_k;
            hi = k;
            break;
        }
        prev_k = k;
        prev_f = fk;
    }
    if (hi == 0.0) {
        return out;  // found == false: no negative eigenvalue in scan range
    }
    const bool lo_negative = f(lo) < 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0.0) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.found = true;
    out.k = 0.5 * (lo + hi);
    out.lambda = -out.k * out.k;
    out.det_residual = std::abs(f(out.k));
    return out;
}

MonotonicityCheck ball_lambda_monotonicity(int dim, double alpha, double r1,
                                           double r2, double tol) {
    if (!(r1 <= r2)) {
        throw std::domain_error("ball_lambda_monotonicity requires r1 <= r2");
    }
    const double l1 = ball_eigenvalue({dim, r1}, alpha, tol).lambda;
    const double l2 = ball_eigenvalue({dim, r2}, alpha, tol).lambda;
    return {l1, l2, l1 < l2};
}

}  // namespace robin::radial
