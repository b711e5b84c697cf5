//! Band edges over the Brillouin torus, spectrum assembly, and gap queries.
//!
//! A sweep over an `n1 x n2` grid of Floquet points collects, for each band
//! index `k`, the grid minimum and maximum of the k-th sorted eigenvalue.
//! Each grid extremum is then polished by a derivative-free pattern search
//! on the torus (the band functions are piecewise analytic, and optimizing
//! the sorted eigenvalue directly is robust to crossings near extrema at
//! these tolerances). Bands merge into disjoint closed intervals whose
//! union is the computed spectrum; gap queries run against the merged
//! intervals.

use rayon::prelude::*;

use crate::floquet::{build_floquet, FloquetAssembler, FloquetPoint};
use crate::lattice::{LatticeKind, Periods};
use crate::potentials::PeriodicPotential;
use crate::{eigen, FloquetError};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Torus sampling grid plus refinement targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n1: usize,
    pub n2: usize,
    pub refine_tol: f64,
    pub max_refine_rounds: usize,
}

impl GridSpec {
    pub fn new(n1: usize, n2: usize) -> GridSpec {
        assert!(n1 >= 4 && n2 >= 4, "grid must be at least 4x4");
        GridSpec {
            n1,
            n2,
            refine_tol: 1e-9,
            max_refine_rounds: 40,
        }
    }

    /// Default grid: 64x64 for periods up to (3,3), otherwise the least
    /// multiple of each period at least 64, keeping the resolution in
    /// reduced `x = (theta + 2 pi l)/p` coordinates constant.
    pub fn default_for(periods: Periods) -> GridSpec {
        let scale = |p: usize| -> usize {
            if p <= 3 {
                64
            } else {
                64usize.div_ceil(p) * p
            }
        };
        GridSpec::new(scale(periods.p1), scale(periods.p2))
    }

    pub fn with_refine_tol(mut self, tol: f64) -> GridSpec {
        assert!(tol > 0.0);
        self.refine_tol = tol;
        self
    }
}

/// Range of one band together with the grid points achieving the extrema.
#[derive(Debug, Clone, Copy)]
pub struct BandRecord {
    pub emin: f64,
    pub emax: f64,
    pub argmin: FloquetPoint,
    pub argmax: FloquetPoint,
}

/// Per-band extrema of the sorted eigenvalue functions.
#[derive(Debug, Clone)]
pub struct BandTable {
    pub bands: Vec<BandRecord>,
    pub grid: GridSpec,
}

/// Sorted disjoint closed intervals covering every band.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumIntervals {
    intervals: Vec<(f64, f64)>,
    merge_tol: f64,
}

/// Result of a point query against the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapQuery {
    /// Maximal open interval between two consecutive spectrum components.
    Gap { left: f64, right: f64 },
    /// The energy lies in the computed spectrum (or in a sub-resolution gap).
    Covered,
    /// The energy lies outside the convex hull of the spectrum.
    OutsideHull,
}

/// One detected gap, with the nearest exceptional energy of the lattice.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GapInfo {
    pub left: f64,
    pub right: f64,
    pub nearest_exceptional: Option<f64>,
}

/// Spectrum summary for one coupling constant.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GapReport {
    pub lambda: f64,
    pub components: usize,
    pub gaps: Vec<GapInfo>,
}

pub const DEFAULT_MERGE_TOL: f64 = 1e-7;

fn eig_at(
    kind: LatticeKind,
    periods: Periods,
    q: &PeriodicPotential,
    theta: FloquetPoint,
) -> Result<Vec<f64>, FloquetError> {
    let h = build_floquet(kind, periods, q, theta)?;
    eigen::eigvalsh(&h).map_err(|e| {
        // attach the failing point for diagnostics
        let _ = theta;
        FloquetError::Eigen(e)
    })
}

/// Pattern search for an extremum of the k-th sorted eigenvalue, seeded at
/// a grid extremum. `sign = +1` minimizes, `sign = -1` maximizes. At each
/// step size the search walks greedily (re-stepping along the last
/// successful direction before rescanning the compass); the step halves
/// when no neighbor improves, down through `max_refine_rounds` halvings or
/// until the step drops below `refine_tol`.
fn refine_extremum(
    assembler: &FloquetAssembler,
    k: usize,
    start: FloquetPoint,
    start_value: f64,
    sign: f64,
    grid: GridSpec,
) -> Result<(f64, FloquetPoint), FloquetError> {
    let f = |theta: FloquetPoint| -> Result<f64, FloquetError> {
        Ok(sign * assembler.eigs(theta)?[k])
    };
    let mut best = sign * start_value;
    let mut at = start;
    let mut step = (TAU / grid.n1 as f64).max(TAU / grid.n2 as f64);
    let dirs: [(f64, f64); 8] = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, 1.0),
        (1.0, -1.0),
        (-1.0, 1.0),
        (-1.0, -1.0),
    ];
    for _round in 0..grid.max_refine_rounds {
        'walk: loop {
            for (d1, d2) in dirs {
                let mut cand = FloquetPoint::new(at.theta1 + step * d1, at.theta2 + step * d2);
                let mut v = f(cand)?;
                if v < best {
                    // ride the successful direction to the end of the run
                    while v < best {
                        best = v;
                        at = cand;
                        cand = FloquetPoint::new(at.theta1 + step * d1, at.theta2 + step * d2);
                        v = f(cand)?;
                    }
                    continue 'walk;
                }
            }
            break;
        }
        step *= 0.5;
        // a stalled walk at step h only means the basin is narrower than h;
        // convergence is reached once the step itself is below tolerance
        if step < grid.refine_tol {
            break;
        }
    }
    Ok((sign * best, at))
}

/// Band extrema over the grid, refined. Edges only widen relative to the
/// raw grid scan: `emin <= grid min` and `emax >= grid max`.
pub fn band_edges(
    kind: LatticeKind,
    periods: Periods,
    q: &PeriodicPotential,
    grid: GridSpec,
) -> Result<BandTable, FloquetError> {
    let assembler = FloquetAssembler::new(kind, periods, q)?;
    let p = assembler.dim();

    // grid sweep, parallel over rows; the min/max reduction is independent
    // of evaluation order
    let rows: Result<Vec<Vec<BandRecord>>, FloquetError> = (0..grid.n1)
        .into_par_iter()
        .map(|i| {
            let theta1 = TAU * i as f64 / grid.n1 as f64;
            let mut row = vec![
                BandRecord {
                    emin: f64::INFINITY,
                    emax: f64::NEG_INFINITY,
                    argmin: FloquetPoint::new(0.0, 0.0),
                    argmax: FloquetPoint::new(0.0, 0.0),
                };
                p
            ];
            for j in 0..grid.n2 {
                let theta = FloquetPoint::new(theta1, TAU * j as f64 / grid.n2 as f64);
                let ev = assembler.eigs(theta)?;
                for (k, rec) in row.iter_mut().enumerate() {
                    if ev[k] < rec.emin {
                        rec.emin = ev[k];
                        rec.argmin = theta;
                    }
                    if ev[k] > rec.emax {
                        rec.emax = ev[k];
                        rec.argmax = theta;
                    }
                }
            }
            Ok(row)
        })
        .collect();
    let rows = rows?;
    let mut bands = rows[0].clone();
    for row in &rows[1..] {
        for (rec, cand) in bands.iter_mut().zip(row) {
            if cand.emin < rec.emin {
                rec.emin = cand.emin;
                rec.argmin = cand.argmin;
            }
            if cand.emax > rec.emax {
                rec.emax = cand.emax;
                rec.argmax = cand.argmax;
            }
        }
    }

    // refinement, parallel over band edges
    let refined: Result<Vec<BandRecord>, FloquetError> = bands
        .par_iter()
        .enumerate()
        .map(|(k, rec)| {
            let (emin, argmin) =
                refine_extremum(&assembler, k, rec.argmin, rec.emin, 1.0, grid)?;
            let (emax, argmax) =
                refine_extremum(&assembler, k, rec.argmax, rec.emax, -1.0, grid)?;
            Ok(BandRecord {
                emin,
                emax,
                argmin,
                argmax,
            })
        })
        .collect();

    Ok(BandTable {
        bands: refined?,
        grid,
    })
}

/// Merges band ranges into disjoint closed intervals. Bands closer than
/// `merge_tol` (including touching bands) coalesce.
pub fn spectrum(bands: &BandTable, merge_tol: f64) -> SpectrumIntervals {
    assert!(merge_tol > 0.0, "merge_tol must be positive");
    let mut iv: Vec<(f64, f64)> = bands.bands.iter().map(|b| (b.emin, b.emax)).collect();
    iv.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (a, b) in iv {
        match merged.last_mut() {
            Some(last) if a <= last.1 + merge_tol => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    SpectrumIntervals {
        intervals: merged,
        merge_tol,
    }
}

impl SpectrumIntervals {
    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn merge_tol(&self) -> f64 {
        self.merge_tol
    }

    pub fn components(&self) -> usize {
        self.intervals.len()
    }

    pub fn hull(&self) -> (f64, f64) {
        (
            self.intervals.first().map(|i| i.0).unwrap_or(f64::NAN),
            self.intervals.last().map(|i| i.1).unwrap_or(f64::NAN),
        )
    }

    pub fn covers(&self, e: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= e && e <= b)
    }

    /// Open gaps between consecutive components. A gap counts only when its
    /// width exceeds `2 * merge_tol`; anything narrower is numerical noise.
    pub fn gaps(&self) -> Vec<(f64, f64)> {
        self.intervals
            .windows(2)
            .filter(|w| w[1].0 - w[0].1 > 2.0 * self.merge_tol)
            .map(|w| (w[0].1, w[1].0))
            .collect()
    }

    /// The maximal open gap containing `e`, if `e` falls strictly between
    /// two components.
    pub fn gap_at(&self, e: f64) -> GapQuery {
        let (lo, hi) = self.hull();
        if self.intervals.is_empty() || e < lo || e > hi {
            return GapQuery::OutsideHull;
        }
        for w in self.intervals.windows(2) {
            if w[0].1 < e && e < w[1].0 {
                return if w[1].0 - w[0].1 > 2.0 * self.merge_tol {
                    GapQuery::Gap {
                        left: w[0].1,
                        right: w[1].0,
                    }
                } else {
                    GapQuery::Covered
                };
            }
        }
        GapQuery::Covered
    }
}

/// Spectrum of `Delta + lambda * Q` for each coupling in `lambdas`.
pub fn gap_scan(
    kind: LatticeKind,
    periods: Periods,
    q: &PeriodicPotential,
    lambdas: &[f64],
    grid: GridSpec,
    merge_tol: f64,
) -> Result<Vec<GapReport>, FloquetError> {
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let table = band_edges(kind, periods, &q.scaled(lambda), grid)?;
        let spec = spectrum(&table, merge_tol);
        let gaps = spec
            .gaps()
            .into_iter()
            .map(|(left, right)| {
                let mid = 0.5 * (left + right);
                let nearest = kind
                    .exceptional_energies()
                    .iter()
                    .copied()
                    .min_by(|a, b| {
                        (a - mid).abs().partial_cmp(&(b - mid).abs()).unwrap()
                    });
                GapInfo {
                    left,
                    right,
                    nearest_exceptional: nearest,
                }
            })
            .collect();
        out.push(GapReport {
            lambda,
            components: spec.components(),
            gaps,
        });
    }
    Ok(out)
}

/// Whether `E` sits in the interior of some free band (margin-deep), with
/// the Laplacian viewed `(p1, p2)`-periodically.
pub fn check_interior(
    kind: LatticeKind,
    periods: Periods,
    e: f64,
    margin: f64,
    grid: GridSpec,
) -> Result<bool, FloquetError> {
    assert!(margin > 0.0, "margin must be positive");
    let table = band_edges(kind, periods, &PeriodicPotential::zero(kind, periods), grid)?;
    Ok(table
        .bands
        .iter()
        .any(|b| b.emin + margin <= e && e <= b.emax - margin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{builtin, random_potential, PeriodicPotential};
    use approx::assert_abs_diff_eq;

    fn free_table(kind: LatticeKind, periods: Periods, grid: GridSpec) -> BandTable {
        band_edges(kind, periods, &PeriodicPotential::zero(kind, periods), grid).unwrap()
    }

    #[test]
    fn free_single_cell_edges() {
        let grid = GridSpec::new(64, 64);
        let p11 = Periods::new(1, 1);

        let t = free_table(LatticeKind::Triangular, p11, grid);
        assert_abs_diff_eq!(t.bands[0].emin, -3.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t.bands[0].emax, 6.0, epsilon = 1e-8);

        let t = free_table(LatticeKind::Ehm, p11, grid);
        assert_abs_diff_eq!(t.bands[0].emin, -4.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t.bands[0].emax, 8.0, epsilon = 1e-8);

        let t = free_table(LatticeKind::Square, p11, grid);
        assert_abs_diff_eq!(t.bands[0].emin, -4.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t.bands[0].emax, 4.0, epsilon = 1e-8);

        let t = free_table(LatticeKind::Hexagonal, p11, grid);
        assert_abs_diff_eq!(t.bands[0].emin, -3.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t.bands[0].emax, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t.bands[1].emin, 0.0, epsilon = 1e-8);
        assert_abs_diff_eq!(t.bands[1].emax, 3.0, epsilon = 1e-8);
        // touching bands merge into one component
        let spec = spectrum(&t, DEFAULT_MERGE_TOL);
        assert_eq!(spec.components(), 1);
    }

    #[test]
    fn tri_2x2_two_components_and_gap() {
        let grid = GridSpec::new(64, 64);
        let p22 = Periods::new(2, 2);
        let q = builtin("tri-2x2").unwrap().scaled(0.1);
        let table = band_edges(LatticeKind::Triangular, p22, &q, grid).unwrap();
        let spec = spectrum(&table, DEFAULT_MERGE_TOL);
        assert_eq!(spec.components(), 2);
        match spec.gap_at(-2.0) {
            GapQuery::Gap { left, right } => {
                assert_abs_diff_eq!(left, -(4.0_f64 + 0.01).sqrt(), epsilon = 1e-7);
                assert_abs_diff_eq!(right, -1.9, epsilon = 1e-7);
            }
            other => panic!("expected a gap at -2, got {other:?}"),
        }
        // interior point of a band
        assert_eq!(spec.gap_at(1.0), GapQuery::Covered);
        assert_eq!(spec.gap_at(-50.0), GapQuery::OutsideHull);
    }

    #[test]
    fn hex_z_gap_is_plus_minus_lambda() {
        let grid = GridSpec::new(64, 64);
        let p11 = Periods::new(1, 1);
        let q = builtin("hex-1x1-Z").unwrap().scaled(0.25);
        let table = band_edges(LatticeKind::Hexagonal, p11, &q, grid).unwrap();
        let spec = spectrum(&table, DEFAULT_MERGE_TOL);
        assert_eq!(spec.components(), 2);
        match spec.gap_at(0.0) {
            GapQuery::Gap { left, right } => {
                assert_abs_diff_eq!(left, -0.25, epsilon = 1e-8);
                assert_abs_diff_eq!(right, 0.25, epsilon = 1e-8);
            }
            other => panic!("expected gap, got {other:?}"),
        }
    }

    #[test]
    fn coverage_and_monotone_refinement() {
        let grid = GridSpec::new(16, 16);
        let p22 = Periods::new(2, 2);
        let q = random_potential(LatticeKind::Ehm, p22, 0.3, 5);
        let table = band_edges(LatticeKind::Ehm, p22, &q, grid).unwrap();
        let spec = spectrum(&table, DEFAULT_MERGE_TOL);
        // every sampled eigenvalue is inside the reported intervals
        for i in 0..grid.n1 {
            for j in 0..grid.n2 {
                let theta = FloquetPoint::new(
                    TAU * i as f64 / grid.n1 as f64,
                    TAU * j as f64 / grid.n2 as f64,
                );
                for e in eig_at(LatticeKind::Ehm, p22, &q, theta).unwrap() {
                    assert!(spec.covers(e), "eigenvalue {e} escaped the spectrum");
                }
            }
        }
    }

    #[test]
    fn grid_consistency_on_free_bands() {
        // doubling the grid moves refined edges by less than refine_tol-ish
        let p22 = Periods::new(2, 2);
        let coarse = free_table(LatticeKind::Triangular, p22, GridSpec::new(32, 32));
        let fine = free_table(LatticeKind::Triangular, p22, GridSpec::new(64, 64));
        for (a, b) in coarse.bands.iter().zip(&fine.bands) {
            assert_abs_diff_eq!(a.emin, b.emin, epsilon = 1e-7);
            assert_abs_diff_eq!(a.emax, b.emax, epsilon = 1e-7);
        }
    }

    #[test]
    fn check_interior_examples() {
        let g = GridSpec::default_for(Periods::new(3, 4));
        assert!(
            check_interior(LatticeKind::Triangular, Periods::new(3, 4), 1.7, 1e-4, g).unwrap()
        );
        let g = GridSpec::new(64, 64);
        assert!(
            !check_interior(LatticeKind::Triangular, Periods::new(2, 2), -2.0, 1e-4, g).unwrap()
        );
        let g = GridSpec::new(66, 66);
        assert!(!check_interior(LatticeKind::Ehm, Periods::new(3, 3), -1.0, 1e-4, g).unwrap());
    }

    #[test]
    fn gap_scan_reports() {
        let p22 = Periods::new(2, 2);
        let q = builtin("tri-2x2").unwrap();
        let reports = gap_scan(
            LatticeKind::Triangular,
            p22,
            &q,
            &[0.05, 0.1, 0.2],
            GridSpec::new(64, 64),
            DEFAULT_MERGE_TOL,
        )
        .unwrap();
        for rep in &reports {
            assert_eq!(rep.components, 2);
            assert_eq!(rep.gaps.len(), 1);
            let lam = rep.lambda;
            let width = rep.gaps[0].right - rep.gaps[0].left;
            let expected = lam + ((4.0 + lam * lam).sqrt() - 2.0);
            assert_abs_diff_eq!(width, expected, epsilon = 1e-6);
            assert_eq!(rep.gaps[0].nearest_exceptional, Some(-2.0));
        }
        // lambda = 0: free triangular spectrum is connected
        let free = gap_scan(
            LatticeKind::Triangular,
            p22,
            &q,
            &[0.0],
            GridSpec::new(64, 64),
            DEFAULT_MERGE_TOL,
        )
        .unwrap();
        assert_eq!(free[0].components, 1);
    }
}
