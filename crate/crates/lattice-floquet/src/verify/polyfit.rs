//! Exact-degree polynomial coefficient extraction.
//!
//! A polynomial of known degree `n` is determined by its values on any
//! `n + 1` nodes; evaluating on scaled roots of unity makes the Vandermonde
//! system a DFT, which is perfectly conditioned. Coefficients of the
//! determinant polynomials here come out accurate to ~1e-10 absolute.

use num_complex::Complex64;

use super::VerifyError;

/// Coefficients `c_0 .. c_degree` of a polynomial with real coefficients,
/// recovered from evaluations at `radius * exp(2 pi i j / (degree + 1))`.
/// The fit is repeated at half the radius; disagreement beyond `stab_tol`
/// (or residual imaginary parts) reports an ill-conditioned fit.
pub fn fit_real_poly(
    f: &dyn Fn(Complex64) -> Complex64,
    degree: usize,
    radius: f64,
    stab_tol: f64,
) -> Result<Vec<f64>, VerifyError> {
    let a = fit_once(f, degree, radius);
    let b = fit_once(f, degree, radius * 0.5);
    let mut out = Vec::with_capacity(degree + 1);
    for (k, (ca, cb)) in a.iter().zip(&b).enumerate() {
        let dev = (ca - cb).norm().max(ca.im.abs());
        if dev > stab_tol {
            return Err(VerifyError::IllConditionedFit {
                coefficient: k,
                deviation: dev,
            });
        }
        out.push(ca.re);
    }
    Ok(out)
}

fn fit_once(f: &dyn Fn(Complex64) -> Complex64, degree: usize, radius: f64) -> Vec<Complex64> {
    let n = degree + 1;
    let values: Vec<Complex64> = (0..n)
        .map(|j| {
            let ang = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            f(radius * Complex64::new(ang.cos(), ang.sin()))
        })
        .collect();
    (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, v) in values.iter().enumerate() {
                let ang = -2.0 * std::f64::consts::PI * (j * k % n) as f64 / n as f64;
                acc += v * Complex64::new(ang.cos(), ang.sin());
            }
            acc / (n as f64 * radius.powi(k as i32))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_known_polynomial() {
        let coeffs = [3.0, -1.0, 0.0, 2.5, 0.0, -0.125];
        let f = |z: Complex64| {
            coeffs
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
        };
        let got = fit_real_poly(&f, 5, 0.5, 1e-8).unwrap();
        for (g, e) in got.iter().zip(coeffs) {
            assert!((g - e).abs() < 1e-12, "{g} vs {e}");
        }
    }

    #[test]
    fn flags_degree_mismatch() {
        // fitting degree 2 to a degree-5 polynomial is unstable across radii
        let f = |z: Complex64| z.powu(5) + z;
        assert!(matches!(
            fit_real_poly(&f, 2, 0.5, 1e-10),
            Err(VerifyError::IllConditionedFit { .. })
        ));
    }
}
