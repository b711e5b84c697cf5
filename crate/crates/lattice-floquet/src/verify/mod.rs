//! Executable checks for the quantitative identities: determinant
//! expansions, trigonometric solution sets, exact and estimated gaps,
//! coefficient formulas, and the perturb-and-count censuses.
//!
//! Each check produces a [`CheckResult`]; suites aggregate them into the
//! JSON verification report emitted by the CLI.

use serde::Serialize;
use thiserror::Error;

pub mod ehm;
pub mod hex;
pub mod jsets;
pub mod polyfit;
pub mod suites;
pub mod tri;
pub mod trig;

pub use suites::{run_suite, Suite};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("coefficient fit ill-conditioned at coefficient {coefficient} (deviation {deviation:e}); try smaller lambda nodes")]
    IllConditionedFit { coefficient: usize, deviation: f64 },
    #[error("coupling {0} outside the validated range (0, 0.5]")]
    LambdaOutOfRange(f64),
    #[error("energy {0} outside [{1}, {2}]")]
    EnergyOutOfRange(f64, f64, f64),
    #[error("a solution family was detected where isolated solutions were expected (E = {0})")]
    SolutionFamily(f64),
    #[error(transparent)]
    Floquet(#[from] crate::FloquetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One line of the verification report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub status: CheckStatus,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl CheckResult {
    /// Pass iff `|measured - expected| <= tolerance`.
    pub fn near(check_id: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let status = if (measured - expected).abs() <= tolerance && measured.is_finite() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            check_id: check_id.into(),
            status,
            measured,
            expected,
            tolerance,
        }
    }

    /// Pass iff `measured <= bound`.
    pub fn at_most(check_id: impl Into<String>, measured: f64, bound: f64) -> Self {
        let status = if measured <= bound && measured.is_finite() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            check_id: check_id.into(),
            status,
            measured,
            expected: bound,
            tolerance: 0.0,
        }
    }

    /// Pass iff `measured >= bound`.
    pub fn at_least(check_id: impl Into<String>, measured: f64, bound: f64) -> Self {
        let status = if measured >= bound && measured.is_finite() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        CheckResult {
            check_id: check_id.into(),
            status,
            measured,
            expected: bound,
            tolerance: 0.0,
        }
    }

    pub fn bool(check_id: impl Into<String>, ok: bool) -> Self {
        CheckResult {
            check_id: check_id.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            measured: if ok { 1.0 } else { 0.0 },
            expected: 1.0,
            tolerance: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Extrema of a scalar sweep over the torus.
#[derive(Debug, Clone, Copy)]
pub struct SweepExtrema {
    pub min: f64,
    pub argmin: (f64, f64),
    pub max: f64,
    pub argmax: (f64, f64),
}

/// Grid scan plus pattern-search polish for a smooth scalar on the torus.
pub(crate) fn sweep_extrema(f: impl Fn(f64, f64) -> f64, grid_n: usize) -> SweepExtrema {
    let tau = 2.0 * std::f64::consts::PI;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut argmin = (0.0, 0.0);
    let mut argmax = (0.0, 0.0);
    for i in 0..grid_n {
        for j in 0..grid_n {
            let t1 = tau * i as f64 / grid_n as f64;
            let t2 = tau * j as f64 / grid_n as f64;
            let v = f(t1, t2);
            if v < min {
                min = v;
                argmin = (t1, t2);
            }
            if v > max {
                max = v;
                argmax = (t1, t2);
            }
        }
    }
    let polish = |start: (f64, f64), start_v: f64, sign: f64| -> (f64, (f64, f64)) {
        let mut best = sign * start_v;
        let mut at = start;
        let mut step = tau / grid_n as f64;
        let dirs = [
            (1.0, 0.0),
            (-1.0, 0.0),
            (0.0, 1.0),
            (0.0, -1.0),
            (1.0, 1.0),
            (1.0, -1.0),
            (-1.0, 1.0),
            (-1.0, -1.0),
        ];
        for _ in 0..45 {
            loop {
                let mut improved = false;
                for (d1, d2) in dirs {
                    let cand = (at.0 + step * d1, at.1 + step * d2);
                    let v = sign * f(cand.0, cand.1);
                    if v < best {
                        best = v;
                        at = cand;
                        improved = true;
                    }
                }
                if !improved {
                    break;
                }
            }
            step *= 0.5;
        }
        (sign * best, at)
    };
    let (min, argmin) = polish(argmin, min, 1.0);
    let (max, argmax) = polish(argmax, max, -1.0);
    SweepExtrema {
        min,
        argmin,
        max,
        argmax,
    }
}
