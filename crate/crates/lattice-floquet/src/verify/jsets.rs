//! Perturb-and-count censuses: classify the dispersion indices at a
//! degenerate energy by the sign of the directional derivative.

use crate::floquet::{
    dispersion_sqn, dispersion_sqn_grad, dispersion_tri, dispersion_tri_grad, FloquetIndex,
    FloquetPoint,
};
use crate::lattice::{LatticeKind, Periods};

/// Census of `Lambda_E(theta~)` under the direction `beta`:
/// `J0` collects indices with `beta . grad e_l = 0` (within tolerance),
/// `Jplus`/`Jminus` those moving up/down to first order. Conservation
/// `|J0| + |J+| + |J-| = r` holds by construction; the censused sets are
/// the substance.
#[derive(Debug, Clone)]
pub struct JSetReport {
    pub e: f64,
    pub theta_tilde: FloquetPoint,
    pub beta: [f64; 2],
    pub j0: Vec<FloquetIndex>,
    pub jplus: Vec<FloquetIndex>,
    pub jminus: Vec<FloquetIndex>,
    pub r: usize,
}

/// Enumerates `l` with `|e_l(theta~) - E| <= tol` and classifies each by
/// the sign of `beta . grad e_l(theta~)`, zero-thresholded at `tol`.
/// Only the triangular and EHM lattices have closed-form dispersions.
pub fn j_sets(
    kind: LatticeKind,
    periods: Periods,
    e: f64,
    theta_tilde: FloquetPoint,
    beta: [f64; 2],
    tol: f64,
) -> JSetReport {
    assert!(
        matches!(kind, LatticeKind::Triangular | LatticeKind::Ehm),
        "j_sets is defined for the triangular and EHM dispersions"
    );
    let norm = (beta[0] * beta[0] + beta[1] * beta[1]).sqrt();
    assert!((norm - 1.0).abs() < 1e-9, "beta must be a unit vector");
    assert!(tol > 0.0);

    let (disp, grad): (
        fn(Periods, FloquetPoint, FloquetIndex) -> f64,
        fn(Periods, FloquetPoint, FloquetIndex) -> [f64; 2],
    ) = match kind {
        LatticeKind::Triangular => (dispersion_tri, dispersion_tri_grad),
        _ => (dispersion_sqn, dispersion_sqn_grad),
    };

    let mut report = JSetReport {
        e,
        theta_tilde,
        beta,
        j0: Vec::new(),
        jplus: Vec::new(),
        jminus: Vec::new(),
        r: 0,
    };
    for l1 in 0..periods.p1 {
        for l2 in 0..periods.p2 {
            let l = FloquetIndex { l1, l2 };
            if (disp(periods, theta_tilde, l) - e).abs() > tol {
                continue;
            }
            report.r += 1;
            let g = grad(periods, theta_tilde, l);
            let slope = beta[0] * g[0] + beta[1] * g[1];
            if slope.abs() <= tol {
                report.j0.push(l);
            } else if slope > 0.0 {
                report.jplus.push(l);
            } else {
                report.jminus.push(l);
            }
        }
    }
    report
}

/// The Floquet point used by the EHM census at `E = -1` for periods
/// `(p1, p2)` with `p1` not divisible by 3: `theta~1 = 2 pi k1 / 3`,
/// `theta~2 = (k2 + 1) pi / 4` where `p_j = 3 p_j' + k_j`.
pub fn ehm_census_theta(periods: Periods) -> FloquetPoint {
    let k1 = periods.p1 % 3;
    let k2 = periods.p2 % 3;
    FloquetPoint::new(
        2.0 * std::f64::consts::PI * k1 as f64 / 3.0,
        (k2 + 1) as f64 * std::f64::consts::PI / 4.0,
    )
}

/// Predicted `(|J+|, |J-|)` of the EHM census along `beta = (1, 0)`:
/// `(p2', 2 p2' + k2)` with `p2 = 3 p2' + k2` (and `p2' >= 1` when `k2 = 0`).
pub fn ehm_census_prediction(periods: Periods) -> (usize, usize) {
    let p2p = periods.p2 / 3;
    let k2 = periods.p2 % 3;
    (p2p, 2 * p2p + k2)
}
