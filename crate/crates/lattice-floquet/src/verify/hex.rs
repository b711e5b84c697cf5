//! Hexagonal 2x2 identities: determinant coefficient formulas around the
//! centers 0 and +-1, nonnegativity of Y0, the squared-operator relation
//! to the triangular lattice, and the linear-gap impossibility check.

use num_complex::Complex64;

use super::polyfit::fit_real_poly;
use super::{sweep_extrema, SweepExtrema, VerifyError};
use crate::bands::{band_edges, spectrum, GridSpec};
use crate::eigen::lu_det;
use crate::floquet::{build_floquet, FloquetPoint};
use crate::lattice::{LatticeKind, Periods};
use crate::potentials::{builtin, PeriodicPotential};

/// Expansion center for the hex 2x2 determinant fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HexCenter {
    /// `det(H_lambda - (1 + s lambda^2) I)`
    PlusOne,
    /// `det(H_lambda - (-1 + s lambda^2) I)`
    MinusOne,
    /// `det(H_lambda - s lambda I)`
    Zero,
}

/// `X_0^+-(theta) = -4 (-sin t1 + sin(t1 - t2) + sin t2)^2`.
pub fn hex_x0(t1: f64, t2: f64) -> f64 {
    let s = -t1.sin() + (t1 - t2).sin() + t2.sin();
    -4.0 * s * s
}

/// `X_4^+-(theta, s) = 8 (s +- 1)(2 s -+ 1)(3 - cos t1 - cos(t1-t2) - cos t2)`.
pub fn hex_x4(t1: f64, t2: f64, s: f64, plus: bool) -> f64 {
    let sign = if plus { 1.0 } else { -1.0 };
    let c = 3.0 - t1.cos() - (t1 - t2).cos() - t2.cos();
    8.0 * (s + sign) * (2.0 * s - sign) * c
}

/// `X_6^+-(theta, s)`.
pub fn hex_x6(t1: f64, t2: f64, s: f64, plus: bool) -> f64 {
    let sign = if plus { 1.0 } else { -1.0 };
    let c = t1.cos() + (t1 - t2).cos() + t2.cos();
    -1.0 - sign * 12.0 * s + 72.0 * s * s - sign * 16.0 * s.powi(3)
        - 4.0 * s * s * (sign * 4.0 * s + 1.0) * c
}

/// `Y_0(theta)`, the lambda^0 coefficient at the zero center.
pub fn hex_y0(t1: f64, t2: f64) -> f64 {
    15.0 + 2.0 * (2.0 * t1).cos() - 4.0 * (t1 - 2.0 * t2).cos() + 2.0 * (2.0 * t1 - 2.0 * t2).cos()
        - 4.0 * (2.0 * t1 - t2).cos()
        + 2.0 * (2.0 * t2).cos()
        - 4.0 * (t1 + t2).cos()
}

/// `Y_2(theta, s) = 2 [5 - 26 s^2 + (2 + 4 s^2)(cos t1 + cos(t1-t2) + cos t2)]`.
pub fn hex_y2(t1: f64, t2: f64, s: f64) -> f64 {
    2.0 * (5.0 - 26.0 * s * s + (2.0 + 4.0 * s * s) * (t1.cos() + (t1 - t2).cos() + t2.cos()))
}

/// `Y_4(theta, s) = (1 - s^2)[-3 - 42 s^2 + 4(2 + s^2)(cos t1 + cos(t1-t2) + cos t2)]`.
pub fn hex_y4(t1: f64, t2: f64, s: f64) -> f64 {
    (1.0 - s * s)
        * (-3.0 - 42.0 * s * s + 4.0 * (2.0 + s * s) * (t1.cos() + (t1 - t2).cos() + t2.cos()))
}

/// Fits `det(H_lambda(theta) - (E0 + s lambda^d) I)` for the hex 2x2
/// example potential as a polynomial in lambda and returns the
/// coefficients; degree 16 for the +-1 centers (d = 2), degree 8 for the
/// zero center (d = 1).
pub fn hex_det_coeffs(
    theta: FloquetPoint,
    s: f64,
    center: HexCenter,
) -> Result<Vec<f64>, VerifyError> {
    assert!(s.abs() <= 1.0, "|s| <= 1 required");
    let q = builtin("hex-2x2").expect("builtin");
    let periods = Periods::new(2, 2);
    let h0 = build_floquet(
        LatticeKind::Hexagonal,
        periods,
        &PeriodicPotential::zero(LatticeKind::Hexagonal, periods),
        theta,
    )?;
    let dim = h0.dim();
    let qv = q.values().to_vec();
    let (e0, d) = match center {
        HexCenter::PlusOne => (1.0, 2u32),
        HexCenter::MinusOne => (-1.0, 2),
        HexCenter::Zero => (0.0, 1),
    };
    let degree = dim * d as usize;
    let f = move |lambda: Complex64| -> Complex64 {
        let shift = e0 + s * lambda.powu(d);
        let mut m: Vec<Complex64> = h0.entries().to_vec();
        for i in 0..dim {
            m[i * dim + i] += lambda * qv[i] - shift;
        }
        lu_det(dim, &mut m)
    };
    // degree 16 needs unit-scale nodes: the k-th coefficient amplifies node
    // roundoff by radius^-k
    let radius = if degree > 9 { 1.0 } else { 0.5 };
    fit_real_poly(&f, degree, radius, 1e-6)
}

/// Grid-plus-polish extrema of `Y_0`; the minimum is 0, attained at
/// `(2 pi / 3, 4 pi / 3)`.
pub fn hex_y0_nonneg(grid_n: usize) -> SweepExtrema {
    sweep_extrema(hex_y0, grid_n)
}

/// Max-norm residual of the blockwise identity
/// `H_hex(theta)^2 = (T(theta) + 3 I) (+) (T(theta) + 3 I)` for the free
/// Laplacians, after permuting sublattice-0 sites ahead of sublattice-1
/// sites; `T` is the triangular Floquet matrix at the same periods and theta.
pub fn hex_square_relation(periods: Periods, theta: FloquetPoint) -> Result<f64, VerifyError> {
    let hh = build_floquet(
        LatticeKind::Hexagonal,
        periods,
        &PeriodicPotential::zero(LatticeKind::Hexagonal, periods),
        theta,
    )?;
    let t = build_floquet(
        LatticeKind::Triangular,
        periods,
        &PeriodicPotential::zero(LatticeKind::Triangular, periods),
        theta,
    )?;
    let n = periods.p1 * periods.p2;
    let dim = 2 * n;

    // square in the interleaved basis
    let mut sq = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                acc += hh.entry(i, k) * hh.entry(k, j);
            }
            sq[i * dim + j] = acc;
        }
    }

    // permutation: cell c, sublattice s sits at interleaved index 2c + s
    // and at block index s*n + c
    let mut residual: f64 = 0.0;
    for bi in 0..dim {
        let (si, ci) = (bi / n, bi % n);
        for bj in 0..dim {
            let (sj, cj) = (bj / n, bj % n);
            let got = sq[(2 * ci + si) * dim + (2 * cj + sj)];
            let want = if si == sj {
                t.entry(ci, cj) + if ci == cj { 3.0 } else { 0.0 }
            } else {
                Complex64::new(0.0, 0.0)
            };
            residual = residual.max((got - want).norm());
        }
    }
    Ok(residual)
}

/// True iff for every tested coupling the spectrum of `Delta_hex + lambda Q`
/// meets `(-1 - c lambda, -1 + c lambda) union (1 - c lambda, 1 + c lambda)`.
/// No (2,2)-periodic potential can open linear-order gaps on both sides of
/// both +-1, so this holds for small lambda.
pub fn hex_linear_gap_impossibility(
    q: &PeriodicPotential,
    c: f64,
    lambdas: &[f64],
    grid: GridSpec,
    merge_tol: f64,
) -> Result<bool, VerifyError> {
    assert!(c > 0.0, "c must be positive");
    let periods = q.periods();
    for &lambda in lambdas {
        let table = band_edges(LatticeKind::Hexagonal, periods, &q.scaled(lambda), grid)?;
        let spec = spectrum(&table, merge_tol);
        let windows = [
            (-1.0 - c * lambda, -1.0 + c * lambda),
            (1.0 - c * lambda, 1.0 + c * lambda),
        ];
        let hit = spec.intervals().iter().any(|&(a, b)| {
            windows.iter().any(|&(lo, hi)| a < hi && b > lo)
        });
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bands::DEFAULT_MERGE_TOL;
    use approx::assert_abs_diff_eq;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn x0_at_reference_points() {
        assert_abs_diff_eq!(hex_x0(PI / 2.0, PI), -16.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hex_x0(0.0, 0.0), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hex_x0(PI, PI), 0.0, epsilon = 1e-12);
        // X0 at (pi/4, 3 pi/4) = -4, used by the impossibility argument
        assert_abs_diff_eq!(hex_x0(PI / 4.0, 3.0 * PI / 4.0), -4.0, epsilon = 1e-12);
    }

    #[test]
    fn pm_one_center_fit_matches_formulas() {
        for (t1, t2) in [(PI / 2.0, PI), (0.7, 1.9), (PI, PI)] {
            for (center, plus) in [(HexCenter::PlusOne, true), (HexCenter::MinusOne, false)] {
                let s = 0.17;
                let c = hex_det_coeffs(FloquetPoint::new(t1, t2), s, center).unwrap();
                assert_eq!(c.len(), 17);
                assert_abs_diff_eq!(c[0], hex_x0(t1, t2), epsilon = 1e-8);
                assert_abs_diff_eq!(c[4], hex_x4(t1, t2, s, plus), epsilon = 1e-8);
                assert_abs_diff_eq!(c[6], hex_x6(t1, t2, s, plus), epsilon = 1e-8);
                for k in [1, 2, 3, 5] {
                    assert_abs_diff_eq!(c[k], 0.0, epsilon = 1e-8);
                }
            }
        }
    }

    #[test]
    fn zero_center_fit_matches_formulas() {
        for (t1, t2) in [(0.0, 0.0), (2.0 * PI / 3.0, 4.0 * PI / 3.0), (0.7, 1.9)] {
            let s = 0.11;
            let c = hex_det_coeffs(FloquetPoint::new(t1, t2), s, HexCenter::Zero).unwrap();
            assert_eq!(c.len(), 9);
            assert_abs_diff_eq!(c[0], hex_y0(t1, t2), epsilon = 1e-9);
            assert_abs_diff_eq!(c[2], hex_y2(t1, t2, s), epsilon = 1e-9);
            assert_abs_diff_eq!(c[4], hex_y4(t1, t2, s), epsilon = 1e-9);
        }
        // reference values: Y0(0,0) = 9, Y0(2pi/3, 4pi/3) = 0, and there
        // Y2 = 4 (1 - 16 s^2)
        assert_abs_diff_eq!(hex_y0(0.0, 0.0), 9.0, epsilon = 1e-12);
        let (a, b) = (2.0 * PI / 3.0, 4.0 * PI / 3.0);
        assert_abs_diff_eq!(hex_y0(a, b), 0.0, epsilon = 1e-12);
        let s = 0.11;
        assert_abs_diff_eq!(hex_y2(a, b, s), 4.0 * (1.0 - 16.0 * s * s), epsilon = 1e-12);
    }

    #[test]
    fn y0_sweep() {
        let sweep = hex_y0_nonneg(512);
        assert!(sweep.min >= -1e-9, "min = {}", sweep.min);
        assert!(sweep.min.abs() <= 1e-9);
        // attained at (2pi/3, 4pi/3) up to symmetry
        let d1 = (sweep.argmin.0 - 2.0 * PI / 3.0).abs();
        let d2 = (sweep.argmin.1 - 4.0 * PI / 3.0).abs();
        let alt1 = (sweep.argmin.0 - 4.0 * PI / 3.0).abs();
        let alt2 = (sweep.argmin.1 - 2.0 * PI / 3.0).abs();
        assert!(
            (d1 < 1e-4 && d2 < 1e-4) || (alt1 < 1e-4 && alt2 < 1e-4),
            "argmin = {:?}",
            sweep.argmin
        );
    }

    #[test]
    fn square_relation_small_periods() {
        for (p1, p2) in [(1, 1), (2, 2), (3, 2), (2, 3)] {
            let r = hex_square_relation(Periods::new(p1, p2), FloquetPoint::new(0.9, 2.3))
                .unwrap();
            assert!(r <= 1e-12, "periods ({p1},{p2}): residual {r:e}");
        }
    }

    #[test]
    fn impossibility_on_builtin_and_zero() {
        let grid = GridSpec::new(32, 32);
        let q = builtin("hex-2x2").unwrap();
        assert!(hex_linear_gap_impossibility(&q, 1.0, &[1e-3], grid, DEFAULT_MERGE_TOL).unwrap());
        let z = PeriodicPotential::zero(LatticeKind::Hexagonal, Periods::new(2, 2));
        assert!(hex_linear_gap_impossibility(&z, 1.0, &[1e-3], grid, DEFAULT_MERGE_TOL).unwrap());
    }
}
