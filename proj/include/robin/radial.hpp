#pragma once

// First Robin eigenvalue and eigenfunction on balls B_R in R^n and on
// spherical-shell annuli, for negative boundary parameter alpha. On the ball
// the eigenfunction is phi(r) = r^{-beta} I_beta(k r) with beta = (n-2)/2 and
// lambda = -k^2, where k is the smallest positive root of
//     k I_{beta+1}(k R) + alpha I_beta(k R) = 0.

namespace robin::radial {

struct BallSpec {
    int dim = 2;         // n >= 2
    double radius = 1.0; // R > 0
};

struct RadialEigen {
    BallSpec ball;
    double alpha = 0.0;
    double k = 0.0;              // sqrt(-lambda)
    double lambda = 0.0;         // -k^2 by construction
    double beta = 0.0;           // (dim - 2) / 2
    double root_residual = 0.0;  // |scaled root function| at k
    double bracket_lo = 0.0;     // final bisection bracket
    double bracket_hi = 0.0;
};

/// Smallest positive root of the boundary equation, located by a sign scan
/// over (0, 10|alpha| + 10/R] followed by bisection to width <= tol. The root
/// function is evaluated on exponentially scaled Bessel values, which
/// preserves its sign for arbitrarily large k R.
RadialEigen ball_eigenvalue(const BallSpec& spec, double alpha,
                            double tol = 1e-12);

struct PhiValue {
    double value;
    double derivative;
};

/// phi(r) and phi'(r) = k r^{-beta} I_{beta+1}(k r) for r in [0, R]. At the
/// center the series limits phi(0) = (k/2)^beta / Gamma(beta+1), phi'(0) = 0
/// are used. phi is positive and strictly increasing.
PhiValue eigenfunction_phi(const RadialEigen& eig, double r);

/// Inverse of the radial profile: the r in [0, R] with phi(r) = t, by
/// monotone bisection. t must lie in [phi(0), phi(R)].
double phi_inverse(const RadialEigen& eig, double t);

struct AnnulusSpec {
    int dim = 2;
    double outer_radius = 1.0;
    double inner_radius = 0.5; // 0 < inner < outer
};

struct AnnulusEigen {
    AnnulusSpec shell;
    double alpha = 0.0;
    bool found = false;  // false: no root in the scan range
    double k = 0.0;
    double lambda = 0.0;
    double det_residual = 0.0;
};

/// Radial negative-eigenvalue solutions on the shell are
/// u(r) = r^{-beta} (A I_beta(kr) + B K_beta(kr)); the Robin conditions
/// u'(R_out) + alpha u(R_out) = 0 and -u'(R_in) + alpha u(R_in) = 0 (outer
/// normal on the inner sphere points toward the center) give a 2x2
/// determinant D(k). Returns the smallest k > 0 with D(k) = 0 by scan plus
/// bisection; found == false when the scan sees no sign change.
AnnulusEigen annulus_eigenvalue(const AnnulusSpec& spec, double alpha,
                                double tol = 1e-12);

struct MonotonicityCheck {
    double lambda_small;  // lambda(alpha, B_{r1})
    double lambda_large;  // lambda(alpha, B_{r2})
    bool strictly_increasing;
};

/// Checks lambda(alpha, B_{r1}) < lambda(alpha, B_{r2}) for r1 < r2.
MonotonicityCheck ball_lambda_monotonicity(int dim, double alpha, double r1,
                                           double r2, double tol = 1e-12);

}  // namespace robin::radial
