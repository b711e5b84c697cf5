//! Check suites aggregating the quantitative claims into report lines.
//!
//! Each `c*` function covers one acceptance-style claim and returns its
//! report entries; `run_suite` groups them the way the CLI exposes them.
//! Potentials default to the builtin examples; the worked-example checks
//! accept an override so a wrong potential demonstrably fails.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::jsets::{ehm_census_prediction, ehm_census_theta, j_sets};
use super::trig::{solve_trig_system, TrigSolutions, TrigSystemId};
use super::{ehm, hex, tri, CheckResult};
use crate::bands::{band_edges, gap_scan, spectrum, GapQuery, GridSpec, DEFAULT_MERGE_TOL};
use crate::floquet::{
    build_floquet, dispersion_sqn, dispersion_tri, hex_bands_from_tri, sorted_eigs, FloquetIndex,
    FloquetPoint,
};
use crate::lattice::{LatticeKind, Periods};
use crate::potentials::{builtin, random_potential, PeriodicPotential};
use crate::verify::hex::HexCenter;
use crate::eigen;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = 2.0 * PI;

/// Suite names exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Tri,
    Hex,
    Ehm,
    Lemmas,
    Floquet,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "all" => Some(Suite::All),
            "tri" => Some(Suite::Tri),
            "hex" => Some(Suite::Hex),
            "ehm" => Some(Suite::Ehm),
            "lemmas" => Some(Suite::Lemmas),
            "floquet" => Some(Suite::Floquet),
            _ => None,
        }
    }
}

fn example_or(q: Option<&PeriodicPotential>, name: &str) -> PeriodicPotential {
    q.cloned().unwrap_or_else(|| builtin(name).expect("builtin"))
}

/// Criterion 1: free spectra at periods (2,2), grid 64x64, edges to 1e-6.
pub fn c1_free_spectra() -> Vec<CheckResult> {
    let grid = GridSpec::new(64, 64);
    let mut out = Vec::new();
    for kind in [
        LatticeKind::Square,
        LatticeKind::Triangular,
        LatticeKind::Hexagonal,
        LatticeKind::Ehm,
    ] {
        let periods = Periods::new(2, 2);
        let q = PeriodicPotential::zero(kind, periods);
        let (want_lo, want_hi) = kind.free_spectrum();
        match band_edges(kind, periods, &q, grid) {
            Ok(table) => {
                let spec = spectrum(&table, DEFAULT_MERGE_TOL);
                let (lo, hi) = spec.hull();
                out.push(CheckResult::near(
                    format!("free-spectrum/{}/lower", kind.name()),
                    lo,
                    want_lo,
                    1e-6,
                ));
                out.push(CheckResult::near(
                    format!("free-spectrum/{}/upper", kind.name()),
                    hi,
                    want_hi,
                    1e-6,
                ));
                out.push(CheckResult::near(
                    format!("free-spectrum/{}/components", kind.name()),
                    spec.components() as f64,
                    1.0,
                    0.0,
                ));
            }
            Err(_) => out.push(CheckResult::bool(
                format!("free-spectrum/{}", kind.name()),
                false,
            )),
        }
    }
    out
}

/// Criterion 2: eigensolver vs closed-form dispersion, 100 random draws.
pub fn c2_dispersion_oracle() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0D15);
    let mut worst_tri: f64 = 0.0;
    let mut worst_ehm: f64 = 0.0;
    let mut worst_hex: f64 = 0.0;
    for _ in 0..100 {
        let p = Periods::new(rng.gen_range(1..=5), rng.gen_range(1..=7));
        let th = FloquetPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        for (kind, worst) in [
            (LatticeKind::Triangular, &mut worst_tri),
            (LatticeKind::Ehm, &mut worst_ehm),
        ] {
            let ev = sorted_eigs(kind, p, &PeriodicPotential::zero(kind, p), th).unwrap();
            let mut disp: Vec<f64> = (0..p.p1)
                .flat_map(|l1| (0..p.p2).map(move |l2| FloquetIndex { l1, l2 }))
                .map(|l| match kind {
                    LatticeKind::Triangular => dispersion_tri(p, th, l),
                    _ => dispersion_sqn(p, th, l),
                })
                .collect();
            disp.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in ev.iter().zip(&disp) {
                *worst = worst.max((a - b).abs());
            }
        }
        let kind = LatticeKind::Hexagonal;
        let ev = sorted_eigs(kind, p, &PeriodicPotential::zero(kind, p), th).unwrap();
        for (a, b) in ev.iter().zip(hex_bands_from_tri(p, th)) {
            worst_hex = worst_hex.max((a - b).abs());
        }
    }
    vec![
        CheckResult::at_most("dispersion-oracle/triangular", worst_tri, 1e-10),
        CheckResult::at_most("dispersion-oracle/ehm", worst_ehm, 1e-10),
        CheckResult::at_most("dispersion-oracle/hexagonal", worst_hex, 1e-10),
    ]
}

/// Criterion 3: the exact triangular 2x2 gap at lambda in {0.05, 0.1, 0.2}.
pub fn c3_tri_exact_gap(q: Option<&PeriodicPotential>) -> Vec<CheckResult> {
    let q = example_or(q, "tri-2x2");
    let grid = GridSpec::new(64, 64);
    let mut out = Vec::new();
    for lam in [0.05, 0.1, 0.2] {
        match band_edges(LatticeKind::Triangular, Periods::new(2, 2), &q.scaled(lam), grid) {
            Ok(table) => {
                let spec = spectrum(&table, DEFAULT_MERGE_TOL);
                out.push(CheckResult::near(
                    format!("tri-gap/components/lambda={lam}"),
                    spec.components() as f64,
                    2.0,
                    0.0,
                ));
                let (want_l, want_r) = (-(4.0 + lam * lam).sqrt(), -2.0 + lam);
                match spec.gap_at(-2.0) {
                    GapQuery::Gap { left, right } => {
                        out.push(CheckResult::near(
                            format!("tri-gap/left/lambda={lam}"),
                            left,
                            want_l,
                            1e-6,
                        ));
                        out.push(CheckResult::near(
                            format!("tri-gap/right/lambda={lam}"),
                            right,
                            want_r,
                            1e-6,
                        ));
                    }
                    _ => out.push(CheckResult::bool(
                        format!("tri-gap/present/lambda={lam}"),
                        false,
                    )),
                }
            }
            Err(_) => out.push(CheckResult::bool(format!("tri-gap/lambda={lam}"), false)),
        }
    }
    out
}

/// Criterion 4: the hex Z-potential gap is exactly (-lambda, lambda).
pub fn c4_hex_z_gap() -> Vec<CheckResult> {
    let q = builtin("hex-1x1-Z").expect("builtin");
    let grid = GridSpec::new(64, 64);
    let mut out = Vec::new();
    for lam in [0.1, 0.25] {
        let table =
            band_edges(LatticeKind::Hexagonal, Periods::new(1, 1), &q.scaled(lam), grid).unwrap();
        let spec = spectrum(&table, DEFAULT_MERGE_TOL);
        match spec.gap_at(0.0) {
            GapQuery::Gap { left, right } => {
                out.push(CheckResult::near(
                    format!("hex-z/left/lambda={lam}"),
                    left,
                    -lam,
                    1e-8,
                ));
                out.push(CheckResult::near(
                    format!("hex-z/right/lambda={lam}"),
                    right,
                    lam,
                    1e-8,
                ));
            }
            _ => out.push(CheckResult::bool(format!("hex-z/present/lambda={lam}"), false)),
        }
    }
    out
}

/// Criterion 5: hex 2x2 example gap structure at lambda in {0.05, 0.1}.
pub fn c5_hex_2x2_gaps(q: Option<&PeriodicPotential>) -> Vec<CheckResult> {
    let q = example_or(q, "hex-2x2");
    let grid = GridSpec::new(64, 64);
    let mut out = Vec::new();
    for lam in [0.05, 0.1] {
        let table = match band_edges(
            LatticeKind::Hexagonal,
            Periods::new(2, 2),
            &q.scaled(lam),
            grid,
        ) {
            Ok(t) => t,
            Err(_) => {
                out.push(CheckResult::bool(format!("hex-2x2/lambda={lam}"), false));
                continue;
            }
        };
        let spec = spectrum(&table, DEFAULT_MERGE_TOL);
        out.push(CheckResult::near(
            format!("hex-2x2/components/lambda={lam}"),
            spec.components() as f64,
            4.0,
            0.0,
        ));
        // gap at zero: contains (-lam/5, lam/5), contained in (-lam/4, lam/4)
        match spec.gap_at(0.0) {
            GapQuery::Gap { left, right } => {
                let ok = left <= -lam / 5.0
                    && -lam / 4.0 <= left
                    && lam / 5.0 <= right
                    && right <= lam / 4.0;
                out.push(CheckResult::bool(format!("hex-2x2/gap0/lambda={lam}"), ok));
            }
            _ => out.push(CheckResult::bool(format!("hex-2x2/gap0/lambda={lam}"), false)),
        }
        // gaps at +-1: contain the lam^2/20 window, inside the lam^2/2 window
        for e0 in [1.0f64, -1.0] {
            let inner = lam * lam / 20.0;
            let outer = lam * lam / 2.0;
            match spec.gap_at(e0) {
                GapQuery::Gap { left, right } => {
                    let ok = left <= e0 - inner
                        && e0 - outer <= left
                        && e0 + inner <= right
                        && right <= e0 + outer;
                    out.push(CheckResult::bool(
                        format!("hex-2x2/gap{e0:+}/lambda={lam}"),
                        ok,
                    ));
                }
                _ => out.push(CheckResult::bool(
                    format!("hex-2x2/gap{e0:+}/lambda={lam}"),
                    false,
                )),
            }
        }
    }
    out
}

/// Criterion 6: EHM 3x3 example gap at -1 for lambda = 0.1.
pub fn c6_ehm_3x3_gap(q: Option<&PeriodicPotential>) -> Vec<CheckResult> {
    let q = example_or(q, "ehm-3x3");
    let lam = 0.1;
    let grid = GridSpec::new(66, 66);
    let mut out = Vec::new();
    match band_edges(LatticeKind::Ehm, Periods::new(3, 3), &q.scaled(lam), grid) {
        Ok(table) => {
            let spec = spectrum(&table, DEFAULT_MERGE_TOL);
            out.push(CheckResult::near(
                "ehm-3x3/components",
                spec.components() as f64,
                2.0,
                0.0,
            ));
            match spec.gap_at(-1.0) {
                GapQuery::Gap { left, right } => {
                    let ok = left <= -1.0 - lam / 10.0
                        && -1.0 - lam / 4.0 <= left
                        && -1.0 + lam / 10.0 <= right
                        && right <= -1.0 + lam / 4.0;
                    out.push(CheckResult::bool("ehm-3x3/gap-window", ok));
                }
                _ => out.push(CheckResult::bool("ehm-3x3/gap-window", false)),
            }
        }
        Err(_) => out.push(CheckResult::bool("ehm-3x3/bands", false)),
    }
    out
}

const ENSEMBLE_SUP: f64 = 0.01;
const ENSEMBLE_SEEDS: u64 = 25;

fn ensemble_spectra(
    kind: LatticeKind,
    periods: Periods,
    seed_base: u64,
) -> Vec<crate::bands::SpectrumIntervals> {
    let grid = GridSpec::default_for(periods);
    (0..ENSEMBLE_SEEDS)
        .map(|s| {
            let q = random_potential(kind, periods, ENSEMBLE_SUP, seed_base + s);
            let table = band_edges(kind, periods, &q, grid).unwrap();
            spectrum(&table, DEFAULT_MERGE_TOL)
        })
        .collect()
}

/// Criterion 7, triangular part: periods (3,4) give a connected spectrum.
pub fn c7_tri_no_gap() -> Vec<CheckResult> {
    let worst = ensemble_spectra(LatticeKind::Triangular, Periods::new(3, 4), 100)
        .iter()
        .map(|s| s.components())
        .max()
        .unwrap();
    vec![CheckResult::near(
        "no-gap/triangular-(3,4)/max-components",
        worst as f64,
        1.0,
        0.0,
    )]
}

/// Criterion 7, EHM part: periods (4,3) give a connected spectrum.
pub fn c7_ehm_no_gap() -> Vec<CheckResult> {
    let worst = ensemble_spectra(LatticeKind::Ehm, Periods::new(4, 3), 200)
        .iter()
        .map(|s| s.components())
        .max()
        .unwrap();
    vec![CheckResult::near(
        "no-gap/ehm-(4,3)/max-components",
        worst as f64,
        1.0,
        0.0,
    )]
}

/// Criterion 7, hexagonal part: periods (3,2) give at most two components
/// and any gap contains zero.
pub fn c7_hex_no_gap() -> Vec<CheckResult> {
    let specs = ensemble_spectra(LatticeKind::Hexagonal, Periods::new(3, 2), 300);
    let worst = specs.iter().map(|s| s.components()).max().unwrap();
    let all_contain_zero = specs
        .iter()
        .flat_map(|s| s.gaps())
        .all(|(l, r)| l < 0.0 && 0.0 < r);
    vec![
        CheckResult::at_most("no-gap/hexagonal-(3,2)/max-components", worst as f64, 2.0),
        CheckResult::bool("no-gap/hexagonal-(3,2)/gaps-contain-zero", all_contain_zero),
    ]
}

fn localization_worst(kind: LatticeKind, periods: Periods, seed_base: u64) -> f64 {
    // largest distance from a detected gap to the nearest exceptional energy
    ensemble_spectra(kind, periods, seed_base)
        .iter()
        .flat_map(|s| s.gaps())
        .map(|(l, r)| {
            kind.exceptional_energies()
                .iter()
                .map(|&e0| {
                    if l <= e0 && e0 <= r {
                        0.0
                    } else {
                        (e0 - l).abs().min((e0 - r).abs())
                    }
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Criterion 8: gaps of the small random ensembles localize at the
/// exceptional energies, within the sup norm of the potential.
pub fn c8_tri_localization() -> Vec<CheckResult> {
    let worst = localization_worst(LatticeKind::Triangular, Periods::new(2, 2), 400);
    vec![CheckResult::at_most(
        "exceptional/triangular-(2,2)/max-distance",
        worst,
        ENSEMBLE_SUP,
    )]
}

pub fn c8_ehm_localization() -> Vec<CheckResult> {
    let worst = localization_worst(LatticeKind::Ehm, Periods::new(3, 3), 500);
    vec![CheckResult::at_most(
        "exceptional/ehm-(3,3)/max-distance",
        worst,
        ENSEMBLE_SUP,
    )]
}

pub fn c8_hex_localization() -> Vec<CheckResult> {
    let worst = localization_worst(LatticeKind::Hexagonal, Periods::new(2, 2), 600);
    vec![CheckResult::at_most(
        "exceptional/hexagonal-(2,2)/max-distance",
        worst,
        ENSEMBLE_SUP,
    )]
}

/// Criterion 9, triangular part: closed-form determinant vs LU, and the
/// W1/W2 factorizations.
pub fn c9_tri_det(q: Option<&PeriodicPotential>) -> Vec<CheckResult> {
    let q = example_or(q, "tri-2x2");
    let mut rng = ChaCha8Rng::seed_from_u64(0xDE7);
    let mut worst_rel: f64 = 0.0;
    for _ in 0..200 {
        let t1 = rng.gen_range(0.0..TAU);
        let t2 = rng.gen_range(0.0..TAU);
        let lam = rng.gen_range(0.0..0.3);
        let eps = rng.gen_range(-0.3..0.3);
        let closed = tri::tri_det_poly(t1, t2, lam, eps);
        let h = match build_floquet(
            LatticeKind::Triangular,
            Periods::new(2, 2),
            &q.scaled(lam),
            FloquetPoint::new(t1, t2),
        ) {
            Ok(h) => h,
            Err(_) => {
                return vec![CheckResult::bool("tri-det/identity", false)];
            }
        };
        let numeric = h.det_shifted(-2.0 + eps);
        let scale = closed.abs().max(numeric.abs()).max(1.0);
        worst_rel = worst_rel.max((closed - numeric).abs() / scale);
    }
    let mut out = vec![CheckResult::at_most(
        "tri-det/identity-max-rel-error",
        worst_rel,
        1e-9,
    )];

    let mut w1_dev: f64 = 0.0;
    let mut w2_dev: f64 = 0.0;
    for _ in 0..50 {
        let lam = rng.gen_range(-1.0..1.0);
        let eps = rng.gen_range(-1.0..1.0);
        w1_dev = w1_dev.max((tri::w1(lam, eps) - tri::w1_factored(lam, eps)).abs());
        w2_dev = w2_dev.max((tri::w2(lam, eps) - tri::w2_factored(lam, eps)).abs());
    }
    out.push(CheckResult::at_most("tri-det/w1-factorization", w1_dev, 1e-10));
    out.push(CheckResult::at_most("tri-det/w2-factorization", w2_dev, 1e-10));
    out
}

/// Criterion 9, hexagonal part: every printed coefficient formula.
pub fn c9_hex_coeffs() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for (t1, t2) in [(PI / 2.0, PI), (0.7, 1.9), (PI, PI), (1.3, 0.4)] {
        let s = 0.17;
        for (center, plus) in [(HexCenter::PlusOne, true), (HexCenter::MinusOne, false)] {
            match hex::hex_det_coeffs(FloquetPoint::new(t1, t2), s, center) {
                Ok(c) => {
                    worst = worst
                        .max((c[0] - hex::hex_x0(t1, t2)).abs())
                        .max((c[4] - hex::hex_x4(t1, t2, s, plus)).abs())
                        .max((c[6] - hex::hex_x6(t1, t2, s, plus)).abs());
                }
                Err(_) => out.push(CheckResult::bool("hex-coeffs/pm1-fit", false)),
            }
        }
        let s = 0.11;
        match hex::hex_det_coeffs(FloquetPoint::new(t1, t2), s, HexCenter::Zero) {
            Ok(c) => {
                worst = worst
                    .max((c[0] - hex::hex_y0(t1, t2)).abs())
                    .max((c[2] - hex::hex_y2(t1, t2, s)).abs())
                    .max((c[4] - hex::hex_y4(t1, t2, s)).abs());
            }
            Err(_) => out.push(CheckResult::bool("hex-coeffs/zero-fit", false)),
        }
    }
    out.push(CheckResult::at_most(
        "hex-coeffs/max-formula-deviation",
        worst,
        1e-6,
    ));
    // pinned reference values
    out.push(CheckResult::near(
        "hex-coeffs/x0(pi/2,pi)",
        hex::hex_x0(PI / 2.0, PI),
        -16.0,
        1e-12,
    ));
    out.push(CheckResult::near(
        "hex-coeffs/y0(0,0)",
        hex::hex_y0(0.0, 0.0),
        9.0,
        1e-12,
    ));
    let s = 0.11;
    out.push(CheckResult::near(
        "hex-coeffs/y2(2pi/3,4pi/3)",
        hex::hex_y2(2.0 * PI / 3.0, 4.0 * PI / 3.0, s),
        4.0 * (1.0 - 16.0 * s * s),
        1e-12,
    ));
    out
}

/// Criterion 9, EHM part: the degree-9 expansion, the Y6 sum rule, and
/// Y8 = Y9'.
pub fn c9_ehm_coeffs() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for (t1, t2) in [(PI, PI), (PI, 0.0), (0.7, 1.9), (2.1, 5.0)] {
        let s = 0.07;
        match ehm::ehm_det_coeffs(FloquetPoint::new(t1, t2), s) {
            Ok(c) => {
                let x = ehm::ehm_x_formulas(t1, t2, s);
                for k in 0..10 {
                    worst = worst.max((c[k] - x[k]).abs());
                }
            }
            Err(_) => out.push(CheckResult::bool("ehm-coeffs/fit", false)),
        }
    }
    out.push(CheckResult::at_most(
        "ehm-coeffs/max-formula-deviation",
        worst,
        1e-6,
    ));
    out.push(CheckResult::near(
        "ehm-coeffs/x0(pi,pi)",
        ehm::ehm_x_formulas(PI, PI, 0.05)[0],
        4096.0,
        1e-9,
    ));
    let mut sum_y6: f64 = 0.0;
    let mut y89: f64 = 0.0;
    for s in [-0.09, 0.0, 0.04, 0.099] {
        sum_y6 = sum_y6.max((ehm::y61(s) + ehm::y62(s) + ehm::y63(s) + ehm::y64(s)).abs());
        let h = 1e-6;
        y89 = y89.max((ehm::y8(s) - (ehm::y9(s + h) - ehm::y9(s - h)) / (2.0 * h)).abs());
    }
    out.push(CheckResult::at_most("ehm-coeffs/sum-y6", sum_y6, 1e-9));
    out.push(CheckResult::at_most("ehm-coeffs/y8-equals-y9-prime", y89, 1e-6));
    // X6((pi,0), +-1/4) < -85
    out.push(CheckResult::at_most(
        "ehm-coeffs/x6(pi,0;+1/4)",
        ehm::ehm_x_formulas(PI, 0.0, 0.25)[6],
        -85.0,
    ));
    out.push(CheckResult::at_most(
        "ehm-coeffs/x6(pi,0;-1/4)",
        ehm::ehm_x_formulas(PI, 0.0, -0.25)[6],
        -85.0,
    ));
    out
}

fn set_matches(got: &[(f64, f64)], want: &[(f64, f64)], tol: f64) -> bool {
    let dist = |a: (f64, f64), b: (f64, f64)| {
        let comp = |u: f64, v: f64| {
            let d = (u - v).rem_euclid(TAU);
            d.min(TAU - d)
        };
        comp(a.0, b.0).max(comp(a.1, b.1))
    };
    got.len() == want.len() && want.iter().all(|w| got.iter().any(|g| dist(*g, *w) < tol))
}

/// Criterion 10: the lemma solution sets, to 1e-8.
pub fn c10_lemma_solution_sets() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let pts = |id, e| match solve_trig_system(id, e, 512, 1e-6) {
        Ok(TrigSolutions::Points(p)) => Some(p),
        _ => None,
    };

    let got = pts(TrigSystemId::TriGrad, -2.0);
    out.push(CheckResult::bool(
        "lemmas/tri-grad/E=-2",
        got.map_or(false, |g| {
            set_matches(&g, &[(0.0, PI), (PI, 0.0), (PI, PI)], 1e-8)
        }),
    ));
    for e in [-1.0, 1.0, 3.0, 5.0] {
        let got = pts(TrigSystemId::TriGrad, e);
        out.push(CheckResult::bool(
            format!("lemmas/tri-grad/empty/E={e}"),
            got.map_or(false, |g| g.is_empty()),
        ));
    }

    let t = 2.0 * PI / 3.0;
    let u = 4.0 * PI / 3.0;
    let got = pts(TrigSystemId::SqnGrad, 0.0);
    out.push(CheckResult::bool(
        "lemmas/sqn-grad/E=0",
        got.map_or(false, |g| set_matches(&g, &[(PI, PI)], 1e-8)),
    ));
    let got = pts(TrigSystemId::SqnGrad, -1.0);
    out.push(CheckResult::bool(
        "lemmas/sqn-grad/E=-1",
        got.map_or(false, |g| {
            set_matches(&g, &[(t, t), (t, u), (u, t), (u, u)], 1e-8)
        }),
    ));
    for e in [1.0, 3.0] {
        let got = pts(TrigSystemId::SqnGrad, e);
        out.push(CheckResult::bool(
            format!("lemmas/sqn-grad/empty/E={e}"),
            got.map_or(false, |g| g.is_empty()),
        ));
    }

    // construction solutions: residuals at sampled energies
    let mut worst: f64 = 0.0;
    for e in [-2.9, -1.0, 0.5, 2.0, 4.5, 6.0] {
        let (x, y) = tri::tri_construction_solution(e).unwrap();
        let ra = x.cos() + y.cos() + (x - y).cos() - e / 2.0;
        let rb = x.sin() + y.sin();
        worst = worst.max(ra.abs()).max(rb.abs());
    }
    out.push(CheckResult::at_most(
        "lemmas/tri-construction/max-residual",
        worst,
        1e-12,
    ));
    // sqn construction: branch values solve the system
    let mut worst: f64 = 0.0;
    for e in [-3.5, 0.0, 2.0, 7.0] {
        if let Ok(TrigSolutions::Branches(bs)) =
            solve_trig_system(TrigSystemId::SqnConstruction, e, 64, 1e-6)
        {
            for b in bs {
                let y = b.cos_y.acos();
                let r1 =
                    b.x.cos() + y.cos() + (b.x - y).cos() + (b.x + y).cos() - e / 2.0;
                let r2 = b.x.sin() + (b.x - y).sin() + (b.x + y).sin();
                worst = worst.max(r1.abs()).max(r2.abs());
            }
        } else {
            out.push(CheckResult::bool(format!("lemmas/sqn-construction/E={e}"), false));
        }
    }
    out.push(CheckResult::at_most(
        "lemmas/sqn-construction/max-residual",
        worst,
        1e-12,
    ));
    out
}

/// Criterion 11: nonnegativity sweeps.
pub fn c11_nonneg_sweeps() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for a in [0.0, 27.0, 54.0] {
        let sweep = tri::trig_poly_nonneg(a, 512);
        out.push(CheckResult::at_least(
            format!("nonneg/trig-poly/min/a={a}"),
            sweep.min,
            -1e-9,
        ));
        if a == 54.0 {
            out.push(CheckResult::near(
                "nonneg/trig-poly/max/a=54",
                sweep.max,
                216.0,
                1e-8,
            ));
        }
    }
    let sweep = hex::hex_y0_nonneg(512);
    out.push(CheckResult::at_least("nonneg/hex-y0/min", sweep.min, -1e-9));
    out.push(CheckResult::near("nonneg/hex-y0/min-is-zero", sweep.min, 0.0, 1e-9));
    out.push(CheckResult::near(
        "nonneg/hex-y0/value-at-origin",
        hex::hex_y0(0.0, 0.0),
        9.0,
        1e-12,
    ));
    out
}

/// Criterion 12: the squared-hex identity and hex spectral symmetry.
pub fn c12_structural() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5172);
    let mut worst_sq: f64 = 0.0;
    for _ in 0..20 {
        let p = Periods::new(rng.gen_range(1..=3), rng.gen_range(1..=3));
        let th = FloquetPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        worst_sq = worst_sq.max(hex::hex_square_relation(p, th).unwrap());
    }
    let mut worst_sym: f64 = 0.0;
    for _ in 0..20 {
        let p = Periods::new(rng.gen_range(1..=3), rng.gen_range(1..=3));
        let th = FloquetPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        let ev = sorted_eigs(
            LatticeKind::Hexagonal,
            p,
            &PeriodicPotential::zero(LatticeKind::Hexagonal, p),
            th,
        )
        .unwrap();
        for (lo, hi) in ev.iter().zip(ev.iter().rev()) {
            worst_sym = worst_sym.max((lo + hi).abs());
        }
    }
    vec![
        CheckResult::at_most("structural/hex-square-residual", worst_sq, 1e-12),
        CheckResult::at_most("structural/hex-symmetry", worst_sym, 1e-10),
    ]
}

/// Criterion 13: band edges are 1-Lipschitz in the potential.
pub fn c13_lipschitz() -> Vec<CheckResult> {
    let kinds = [
        LatticeKind::Square,
        LatticeKind::Triangular,
        LatticeKind::Hexagonal,
        LatticeKind::Ehm,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x11b);
    let mut worst: f64 = 0.0;
    for pair in 0..50u64 {
        let kind = kinds[(pair % 4) as usize];
        let p = Periods::new(2, 2);
        let qa = random_potential(kind, p, 1.0, 7000 + 2 * pair);
        let qb = random_potential(kind, p, 1.0, 7001 + 2 * pair);
        let dist = qa
            .values()
            .iter()
            .zip(qb.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max);
        for _ in 0..10 {
            let th = FloquetPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            let ea = sorted_eigs(kind, p, &qa, th).unwrap();
            let eb = sorted_eigs(kind, p, &qb, th).unwrap();
            for (a, b) in ea.iter().zip(&eb) {
                worst = worst.max((a - b).abs() - dist);
            }
        }
    }
    vec![CheckResult::at_most(
        "lipschitz/max-excess-over-sup-distance",
        worst,
        1e-10,
    )]
}

/// Criterion 14: J-set conservation and the EHM census.
pub fn c14_jsets() -> Vec<CheckResult> {
    let mut out = Vec::new();
    // conservation over a spread of energies, directions, lattices
    let mut rng = ChaCha8Rng::seed_from_u64(0x14);
    let mut conserved = true;
    for _ in 0..50 {
        let kind = if rng.gen_bool(0.5) {
            LatticeKind::Triangular
        } else {
            LatticeKind::Ehm
        };
        let p = Periods::new(rng.gen_range(1..=5), rng.gen_range(1..=5));
        let th = FloquetPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        let ang: f64 = rng.gen_range(0.0..TAU);
        let e = rng.gen_range(-3.0..6.0);
        let rep = j_sets(kind, p, e, th, [ang.cos(), ang.sin()], 1e-9);
        conserved &= rep.j0.len() + rep.jplus.len() + rep.jminus.len() == rep.r;
    }
    out.push(CheckResult::bool("jsets/conservation", conserved));

    for p1 in [1usize, 2, 4] {
        let p = Periods::new(p1, 3);
        let rep = j_sets(
            LatticeKind::Ehm,
            p,
            -1.0,
            ehm_census_theta(p),
            [1.0, 0.0],
            1e-9,
        );
        let (jp, jm) = ehm_census_prediction(p);
        let ok = rep.r == p.p2
            && rep.j0.is_empty()
            && rep.jplus.len() == jp
            && rep.jminus.len() == jm
            && rep.jplus.len() != rep.jminus.len();
        out.push(CheckResult::bool(format!("jsets/ehm-census/p1={p1}"), ok));
    }
    out
}

/// Criterion 15: the linear-gap impossibility at +-1 for (2,2) hex
/// potentials.
pub fn c15_impossibility(q: Option<&PeriodicPotential>) -> Vec<CheckResult> {
    let grid = GridSpec::new(32, 32);
    let q2 = example_or(q, "hex-2x2");
    let mut out = Vec::new();
    let ok = hex::hex_linear_gap_impossibility(&q2, 1.0, &[1e-3], grid, DEFAULT_MERGE_TOL)
        .unwrap_or(false);
    out.push(CheckResult::bool("impossibility/hex-2x2-example", ok));
    let mut all = true;
    for seed in 0..20 {
        let q = random_potential(LatticeKind::Hexagonal, Periods::new(2, 2), 1.0, 900 + seed);
        all &= hex::hex_linear_gap_impossibility(&q, 1.0, &[1e-3], grid, DEFAULT_MERGE_TOL)
            .unwrap_or(false);
    }
    out.push(CheckResult::bool("impossibility/random-ensemble", all));
    out
}

/// Least-squares slope of `ln(width)` against `ln(lambda)` for the gap
/// tracked at `e0`.
pub fn gap_width_exponent(
    kind: LatticeKind,
    periods: Periods,
    q: &PeriodicPotential,
    e0: f64,
    lambdas: &[f64],
    grid: GridSpec,
) -> Option<f64> {
    let reports = gap_scan(kind, periods, q, lambdas, grid, DEFAULT_MERGE_TOL).ok()?;
    let mut pts = Vec::new();
    for rep in &reports {
        let gap = rep
            .gaps
            .iter()
            .filter(|g| {
                let d = if g.left <= e0 && e0 <= g.right {
                    0.0
                } else {
                    (e0 - g.left).abs().min((e0 - g.right).abs())
                };
                d < 0.5
            })
            .min_by(|a, b| {
                let da = (0.5 * (a.left + a.right) - e0).abs();
                let db = (0.5 * (b.left + b.right) - e0).abs();
                da.partial_cmp(&db).unwrap()
            })?;
        pts.push((rep.lambda.ln(), (gap.right - gap.left).ln()));
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    Some((n * sxy - sx * sy) / (n * sxx - sx * sx))
}

fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

/// Criterion 16, triangular part: the gap at -2 opens linearly.
pub fn c16_tri_exponent() -> Vec<CheckResult> {
    let lambdas = geometric(0.02, 0.2, 7);
    let q = builtin("tri-2x2").expect("builtin");
    let slope = gap_width_exponent(
        LatticeKind::Triangular,
        Periods::new(2, 2),
        &q,
        -2.0,
        &lambdas,
        GridSpec::new(64, 64),
    );
    vec![CheckResult::near(
        "exponent/tri-2x2",
        slope.unwrap_or(f64::NAN),
        1.0,
        0.05,
    )]
}

/// Criterion 16, hexagonal parts: the Z gap opens linearly, the 2x2 gaps
/// at +-1 quadratically.
pub fn c16_hex_exponents() -> Vec<CheckResult> {
    let lambdas = geometric(0.02, 0.2, 7);
    let mut out = Vec::new();
    let q = builtin("hex-1x1-Z").expect("builtin");
    let slope = gap_width_exponent(
        LatticeKind::Hexagonal,
        Periods::new(1, 1),
        &q,
        0.0,
        &lambdas,
        GridSpec::new(64, 64),
    );
    out.push(CheckResult::near(
        "exponent/hex-z",
        slope.unwrap_or(f64::NAN),
        1.0,
        0.05,
    ));

    let q = builtin("hex-2x2").expect("builtin");
    for e0 in [1.0, -1.0] {
        let slope = gap_width_exponent(
            LatticeKind::Hexagonal,
            Periods::new(2, 2),
            &q,
            e0,
            &lambdas,
            GridSpec::new(64, 64),
        );
        out.push(CheckResult::near(
            format!("exponent/hex-2x2/E={e0:+}"),
            slope.unwrap_or(f64::NAN),
            2.0,
            0.1,
        ));
    }
    out
}

/// Extra floquet-suite checks: exact 2-pi periodicity and Hermiticity of
/// built matrices under random inputs.
pub fn floquet_structural() -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF10);
    let mut worst_period: f64 = 0.0;
    for _ in 0..10 {
        let kinds = [
            LatticeKind::Square,
            LatticeKind::Triangular,
            LatticeKind::Hexagonal,
            LatticeKind::Ehm,
        ];
        let kind = kinds[rng.gen_range(0..4)];
        let p = Periods::new(rng.gen_range(1..=4), rng.gen_range(1..=4));
        let q = random_potential(kind, p, 1.0, rng.gen());
        let th = FloquetPoint::new(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        let a = build_floquet(kind, p, &q, th).unwrap();
        let b = build_floquet(kind, p, &q, FloquetPoint::new(th.theta1 + TAU, th.theta2 + TAU))
            .unwrap();
        worst_period = worst_period.max(a.max_diff(&b));
        // eigensolver runs on every built matrix without error
        let _ = eigen::eigvalsh(&a).unwrap();
    }
    vec![CheckResult::at_most(
        "floquet/two-pi-periodicity",
        worst_period,
        1e-13,
    )]
}

/// Runs one suite. `example_override` replaces the worked-example potential
/// of the chosen suite (tri-2x2, hex-2x2, or ehm-3x3); checks then fail if
/// the override does not satisfy the corresponding theorems. For the `all`
/// suite the override applies only where its lattice and periods match.
pub fn run_suite(suite: Suite, example_override: Option<&PeriodicPotential>) -> Vec<CheckResult> {
    let q = example_override;
    match suite {
        Suite::Floquet => {
            let mut out = c1_free_spectra();
            out.extend(c2_dispersion_oracle());
            out.extend(floquet_structural());
            out.extend(c12_structural());
            out.extend(c13_lipschitz());
            out
        }
        Suite::Tri => {
            let mut out = c3_tri_exact_gap(q);
            out.extend(c9_tri_det(q));
            out.extend(c11_nonneg_sweeps());
            out.extend(c7_tri_no_gap());
            out.extend(c8_tri_localization());
            out.extend(c16_tri_exponent());
            out
        }
        Suite::Hex => {
            let mut out = c4_hex_z_gap();
            out.extend(c5_hex_2x2_gaps(q));
            out.extend(c9_hex_coeffs());
            out.extend(c7_hex_no_gap());
            out.extend(c8_hex_localization());
            out.extend(c15_impossibility(q));
            out.extend(c16_hex_exponents());
            out
        }
        Suite::Ehm => {
            let mut out = c6_ehm_3x3_gap(q);
            out.extend(c9_ehm_coeffs());
            out.extend(c7_ehm_no_gap());
            out.extend(c8_ehm_localization());
            out.extend(c14_jsets());
            out
        }
        Suite::Lemmas => c10_lemma_solution_sets(),
        Suite::All => {
            let matching = |kind: LatticeKind, p1: usize, p2: usize| {
                q.filter(|q| q.kind() == kind && q.periods() == Periods::new(p1, p2))
            };
            let mut out = run_suite(Suite::Floquet, None);
            out.extend(run_suite(Suite::Tri, matching(LatticeKind::Triangular, 2, 2)));
            out.extend(run_suite(Suite::Hex, matching(LatticeKind::Hexagonal, 2, 2)));
            out.extend(run_suite(Suite::Ehm, matching(LatticeKind::Ehm, 3, 3)));
            out.extend(run_suite(Suite::Lemmas, None));
            out
        }
    }
}
