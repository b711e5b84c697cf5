//! Triangular-lattice identities: the closed-form determinant of the 2x2
//! example, the W1/W2 factorizations, the exact gap, the nonnegative
//! trigonometric polynomial, and the construction solution.
//!
//! The determinant expansion is stated for the lattice convention with
//! diagonal hops (-1,+1), (+1,-1) (the one fixed by the closed-form
//! dispersion), so the angle combinations carry `theta1 - theta2` where the
//! mirrored convention would carry `theta1 + theta2`; the coupling
//! polynomials W1, W2 and everything downstream of them are identical in
//! both conventions.

use super::{sweep_extrema, SweepExtrema, VerifyError};

/// `W1(lambda, eps) = -l^4 - 4 l^3 + 2 e l^3 + 12 e^2 l - 2 e^3 (4 + l) + e^4`.
pub fn w1(lambda: f64, eps: f64) -> f64 {
    -lambda.powi(4) - 4.0 * lambda.powi(3)
        + 2.0 * eps * lambda.powi(3)
        + 12.0 * eps * eps * lambda
        - 2.0 * eps.powi(3) * (4.0 + lambda)
        + eps.powi(4)
}

/// Factored form `(l - e)^2 (e^2 - 8 e - l^2 - 4 l)`.
pub fn w1_factored(lambda: f64, eps: f64) -> f64 {
    (lambda - eps) * (lambda - eps) * (eps * eps - 8.0 * eps - lambda * lambda - 4.0 * lambda)
}

/// `W2 = W1 - 16 e (l - e)`.
pub fn w2(lambda: f64, eps: f64) -> f64 {
    w1(lambda, eps) - 16.0 * eps * (lambda - eps)
}

/// Factored form `(e - l)(e - l - 4)(e^2 - 4 e - l^2)`.
pub fn w2_factored(lambda: f64, eps: f64) -> f64 {
    (eps - lambda) * (eps - lambda - 4.0) * (eps * eps - 4.0 * eps - lambda * lambda)
}

/// `X(theta) = -4 (sin t1 - sin t2 - sin(t1 - t2))^2`, the theta-dependent
/// head of the determinant expansion. Nonpositive everywhere; vanishes at
/// the origin and at (pi, pi).
pub fn x_theta(theta1: f64, theta2: f64) -> f64 {
    let s = theta1.sin() - theta2.sin() - (theta1 - theta2).sin();
    -4.0 * s * s
}

/// Closed form of `det(H_lambda(theta) - (-2 + eps) I)` for the 2x2 example
/// potential at coupling `lambda`.
pub fn tri_det_poly(theta1: f64, theta2: f64, lambda: f64, eps: f64) -> f64 {
    let cos_sum = 3.0 - theta1.cos() - theta2.cos() - (theta1 - theta2).cos();
    x_theta(theta1, theta2) - 4.0 * eps * (lambda - eps) * cos_sum + w1(lambda, eps)
}

/// Exact gap about -2 of the 2x2 example: `(-sqrt(4 + l^2), -2 + l)`.
pub fn tri_gap_exact(lambda: f64) -> Result<(f64, f64), VerifyError> {
    if !(lambda > 0.0 && lambda <= 0.5) {
        return Err(VerifyError::LambdaOutOfRange(lambda));
    }
    Ok((-(4.0 + lambda * lambda).sqrt(), -2.0 + lambda))
}

/// Extrema of
/// `g(theta, a) = 4 (sin t1 + sin t2 - sin(t1 + t2))^2
///              + a (1 + cos t1 + cos t2 + cos(t1 + t2))`,
/// which is nonnegative on the torus for `0 <= a <= 54`.
pub fn trig_poly_nonneg(a: f64, grid_n: usize) -> SweepExtrema {
    assert!((0.0..=54.0).contains(&a), "a must lie in [0, 54]");
    sweep_extrema(
        |t1, t2| {
            let s = t1.sin() + t2.sin() - (t1 + t2).sin();
            4.0 * s * s + a * (1.0 + t1.cos() + t2.cos() + (t1 + t2).cos())
        },
        grid_n,
    )
}

/// The construction solution: `x = arccos((-1 + sqrt(3 + E))/2)`,
/// `y = 2 pi - x` solves
///   cos x + cos y + cos(x - y) = E/2,   sin x + sin y = 0,
/// and for `E != -2` satisfies `cos x + cos y = -1 + sqrt(E + 3) != 0`.
pub fn tri_construction_solution(e: f64) -> Result<(f64, f64), VerifyError> {
    if !(-3.0..=6.0).contains(&e) {
        return Err(VerifyError::EnergyOutOfRange(e, -3.0, 6.0));
    }
    let z = (-1.0 + (3.0 + e).sqrt()) / 2.0;
    let x = z.clamp(-1.0, 1.0).acos();
    Ok((x, 2.0 * std::f64::consts::PI - x))
}
