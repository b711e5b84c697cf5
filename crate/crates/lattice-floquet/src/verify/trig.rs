//! Trigonometric systems behind the construction and gradient lemmas,
//! solved numerically: seeds from a coarse residual grid, polished by
//! Gauss-Newton with analytic Jacobians, deduplicated on the torus.

use super::VerifyError;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Which system to solve, at a given energy `E`.
///
/// * `TriConstruction`: cos x + cos y + cos(x-y) = E/2, sin x + sin y = 0
/// * `TriGrad`: the above first equation plus the vanishing-gradient pair
///   sin x + sin(x-y) = 0, sin y - sin(x-y) = 0
/// * `SqnConstruction`: cos x + cos y + cos(x-y) + cos(x+y) = E/2,
///   sin x + sin(x-y) + sin(x+y) = 0
/// * `SqnGrad`: the sqn energy equation plus
///   sin x + sin(x-y) + sin(x+y) = 0, sin y - sin(x-y) + sin(x+y) = 0
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigSystemId {
    TriConstruction,
    TriGrad,
    SqnConstruction,
    SqnGrad,
}

/// Solutions of a trig system in `[0, 2 pi)^2`.
#[derive(Debug, Clone, PartialEq)]
pub enum TrigSolutions {
    /// Isolated roots.
    Points(Vec<(f64, f64)>),
    /// Solution branches of the sqn construction system, reported by their
    /// defining constraint values: fixed `x` with the required `cos y`.
    /// Branches whose `cos y` falls outside `[-1, 1]` are omitted.
    Branches(Vec<SqnBranch>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqnBranch {
    pub x: f64,
    pub cos_y: f64,
}

fn residual(id: TrigSystemId, e: f64, x: f64, y: f64) -> Vec<f64> {
    match id {
        TrigSystemId::TriConstruction => vec![
            x.cos() + y.cos() + (x - y).cos() - e / 2.0,
            x.sin() + y.sin(),
        ],
        TrigSystemId::TriGrad => vec![
            x.cos() + y.cos() + (x - y).cos() - e / 2.0,
            x.sin() + (x - y).sin(),
            y.sin() - (x - y).sin(),
        ],
        TrigSystemId::SqnConstruction => vec![
            x.cos() + y.cos() + (x - y).cos() + (x + y).cos() - e / 2.0,
            x.sin() + (x - y).sin() + (x + y).sin(),
        ],
        TrigSystemId::SqnGrad => vec![
            x.cos() + y.cos() + (x - y).cos() + (x + y).cos() - e / 2.0,
            x.sin() + (x - y).sin() + (x + y).sin(),
            y.sin() - (x - y).sin() + (x + y).sin(),
        ],
    }
}

/// Analytic Jacobian rows matching `residual`.
fn jacobian(id: TrigSystemId, x: f64, y: f64) -> Vec<[f64; 2]> {
    match id {
        TrigSystemId::TriConstruction => vec![
            [-x.sin() - (x - y).sin(), -y.sin() + (x - y).sin()],
            [x.cos(), y.cos()],
        ],
        TrigSystemId::TriGrad => vec![
            [-x.sin() - (x - y).sin(), -y.sin() + (x - y).sin()],
            [x.cos() + (x - y).cos(), -(x - y).cos()],
            [(x - y).cos(), y.cos() - (x - y).cos()],
        ],
        TrigSystemId::SqnConstruction => vec![
            [
                -x.sin() - (x - y).sin() - (x + y).sin(),
                -y.sin() + (x - y).sin() - (x + y).sin(),
            ],
            [
                x.cos() + (x - y).cos() + (x + y).cos(),
                -(x - y).cos() + (x + y).cos(),
            ],
        ],
        TrigSystemId::SqnGrad => vec![
            [
                -x.sin() - (x - y).sin() - (x + y).sin(),
                -y.sin() + (x - y).sin() - (x + y).sin(),
            ],
            [
                x.cos() + (x - y).cos() + (x + y).cos(),
                -(x - y).cos() + (x + y).cos(),
            ],
            [
                -(x - y).cos() + (x + y).cos(),
                y.cos() + (x - y).cos() + (x + y).cos(),
            ],
        ],
    }
}

fn norm_sq(id: TrigSystemId, e: f64, x: f64, y: f64) -> f64 {
    residual(id, e, x, y).iter().map(|r| r * r).sum()
}

/// Damped Gauss-Newton from a seed; `None` on divergence or stagnation
/// above tol. The Levenberg term keeps steps finite when the Jacobian is
/// rank-deficient, which happens exactly on solution families — seeds then
/// settle onto nearby family points and the caller sees the root count
/// explode.
fn newton_polish(id: TrigSystemId, e: f64, mut x: f64, mut y: f64) -> Option<(f64, f64)> {
    for _ in 0..60 {
        let f = residual(id, e, x, y);
        let j = jacobian(id, x, y);
        // normal equations (J^T J + mu I) d = J^T f (2x2)
        let mut a = [[0.0; 2]; 2];
        let mut b = [0.0; 2];
        for (row, fi) in j.iter().zip(&f) {
            a[0][0] += row[0] * row[0];
            a[0][1] += row[0] * row[1];
            a[1][1] += row[1] * row[1];
            b[0] += row[0] * fi;
            b[1] += row[1] * fi;
        }
        a[1][0] = a[0][1];
        let mu = 1e-9 * (1.0 + a[0][0] + a[1][1]);
        a[0][0] += mu;
        a[1][1] += mu;
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let dx = (a[1][1] * b[0] - a[0][1] * b[1]) / det;
        let dy = (a[0][0] * b[1] - a[1][0] * b[0]) / det;
        x -= dx;
        y -= dy;
        if !x.is_finite() || !y.is_finite() {
            return None;
        }
        if dx.abs() + dy.abs() < 1e-14 {
            break;
        }
    }
    let fin: f64 = norm_sq(id, e, x, y).sqrt();
    if fin < 1e-11 {
        Some((x.rem_euclid(TAU), y.rem_euclid(TAU)))
    } else {
        None
    }
}

fn torus_dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    let comp = |u: f64, v: f64| {
        let d = (u - v).rem_euclid(TAU);
        d.min(TAU - d)
    };
    comp(a.0, b.0).max(comp(a.1, b.1))
}

/// Solves the system at energy `E`: grid-seeded Newton for isolated roots,
/// or the branch description for the sqn construction system. Divergent
/// seeds are discarded silently; more than `MAX_ISOLATED` distinct roots
/// signals a one-parameter solution family where isolation was expected.
pub fn solve_trig_system(
    id: TrigSystemId,
    e: f64,
    grid_n: usize,
    dedup_tol: f64,
) -> Result<TrigSolutions, VerifyError> {
    if id == TrigSystemId::SqnConstruction {
        // the solution set is the pair of branches x = 0 and x = pi
        // (one-parameter in E), except at E = -1 where whole lines solve it
        if (e + 1.0).abs() < 1e-12 {
            return Err(VerifyError::SolutionFamily(e));
        }
        let mut branches = Vec::new();
        for (x, cos_y) in [(0.0, (e - 2.0) / 6.0), (std::f64::consts::PI, -(e + 2.0) / 2.0)] {
            if cos_y.abs() <= 1.0 {
                // numeric cross-check of the branch before reporting it
                let y = cos_y.acos();
                debug_assert!(norm_sq(id, e, x, y) < 1e-20);
                branches.push(SqnBranch { x, cos_y });
            }
        }
        return Ok(TrigSolutions::Branches(branches));
    }

    const MAX_ISOLATED: usize = 10;
    let mut grid = vec![0.0; grid_n * grid_n];
    for i in 0..grid_n {
        for j in 0..grid_n {
            let x = TAU * i as f64 / grid_n as f64;
            let y = TAU * j as f64 / grid_n as f64;
            grid[i * grid_n + j] = norm_sq(id, e, x, y);
        }
    }
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let v = grid[i * grid_n + j];
            let mut is_local_min = true;
            'nb: for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ni = (i as i64 + di).rem_euclid(grid_n as i64) as usize;
                    let nj = (j as i64 + dj).rem_euclid(grid_n as i64) as usize;
                    if grid[ni * grid_n + nj] < v {
                        is_local_min = false;
                        break 'nb;
                    }
                }
            }
            if !is_local_min {
                continue;
            }
            let x = TAU * i as f64 / grid_n as f64;
            let y = TAU * j as f64 / grid_n as f64;
            if let Some(root) = newton_polish(id, e, x, y) {
                if roots.iter().all(|&r| torus_dist(r, root) > dedup_tol) {
                    roots.push(root);
                    if roots.len() > MAX_ISOLATED {
                        return Err(VerifyError::SolutionFamily(e));
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(TrigSolutions::Points(roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    fn points(sol: TrigSolutions) -> Vec<(f64, f64)> {
        match sol {
            TrigSolutions::Points(p) => p,
            other => panic!("expected points, got {other:?}"),
        }
    }

    fn assert_set_eq(got: &[(f64, f64)], want: &[(f64, f64)], tol: f64) {
        assert_eq!(got.len(), want.len(), "got {got:?}, want {want:?}");
        for w in want {
            assert!(
                got.iter().any(|g| torus_dist(*g, *w) < tol),
                "missing {w:?} in {got:?}"
            );
        }
    }

    #[test]
    fn tri_grad_solution_sets() {
        let got = points(solve_trig_system(TrigSystemId::TriGrad, -2.0, 512, 1e-6).unwrap());
        assert_set_eq(&got, &[(0.0, PI), (PI, 0.0), (PI, PI)], 1e-8);
        for e in [-1.0, 1.0, 3.0, 5.0] {
            let got = points(solve_trig_system(TrigSystemId::TriGrad, e, 512, 1e-6).unwrap());
            assert!(got.is_empty(), "E = {e}: {got:?}");
        }
    }

    #[test]
    fn sqn_grad_solution_sets() {
        let t = 2.0 * PI / 3.0;
        let u = 4.0 * PI / 3.0;
        let got = points(solve_trig_system(TrigSystemId::SqnGrad, -1.0, 512, 1e-6).unwrap());
        assert_set_eq(&got, &[(t, t), (t, u), (u, t), (u, u)], 1e-8);
        let got = points(solve_trig_system(TrigSystemId::SqnGrad, 0.0, 512, 1e-6).unwrap());
        assert_set_eq(&got, &[(PI, PI)], 1e-8);
        for e in [1.0, 3.0] {
            let got = points(solve_trig_system(TrigSystemId::SqnGrad, e, 512, 1e-6).unwrap());
            assert!(got.is_empty(), "E = {e}: {got:?}");
        }
    }

    #[test]
    fn tri_construction_isolated_points() {
        // for E != -2 the solutions lie on y = 2 pi - x with cos x = (-1 +- sqrt(3+E))/2
        let e = 1.0;
        let got = points(solve_trig_system(TrigSystemId::TriConstruction, e, 512, 1e-6).unwrap());
        for (x, y) in &got {
            assert!((x.sin() + y.sin()).abs() < 1e-9);
            assert!((x.cos() + y.cos() + (x - y).cos() - e / 2.0).abs() < 1e-9);
        }
        assert!(got.iter().any(|&(x, _)| (x - PI / 3.0).abs() < 1e-8));
    }

    #[test]
    fn tri_construction_family_at_minus_two() {
        // at E = -2 the lines y = x +- pi solve the system
        assert!(matches!(
            solve_trig_system(TrigSystemId::TriConstruction, -2.0, 256, 1e-6),
            Err(VerifyError::SolutionFamily(_))
        ));
    }

    #[test]
    fn sqn_construction_branches() {
        // E = 0: x = 0 branch has 1 + 2 cos y = 1/3, x = pi branch 1 + 2 cos y = -1
        let sol = solve_trig_system(TrigSystemId::SqnConstruction, 0.0, 64, 1e-6).unwrap();
        match sol {
            TrigSolutions::Branches(b) => {
                assert_eq!(b.len(), 2);
                assert!((b[0].x).abs() < 1e-15 && (b[0].cos_y - (-1.0 / 3.0)).abs() < 1e-12);
                assert!((b[1].x - PI).abs() < 1e-15 && (b[1].cos_y + 1.0).abs() < 1e-12);
                // 1 + 2 cos y = (E+1)/3 and -(E+1) respectively
                assert!((1.0 + 2.0 * b[0].cos_y - 1.0 / 3.0).abs() < 1e-12);
                assert!((1.0 + 2.0 * b[1].cos_y + 1.0).abs() < 1e-12);
            }
            other => panic!("expected branches, got {other:?}"),
        }
        // near the top of the band only the x = 0 branch survives
        let sol = solve_trig_system(TrigSystemId::SqnConstruction, 7.0, 64, 1e-6).unwrap();
        match sol {
            TrigSolutions::Branches(b) => {
                assert_eq!(b.len(), 1);
                assert!((b[0].x).abs() < 1e-15);
            }
            other => panic!("expected branches, got {other:?}"),
        }
        assert!(matches!(
            solve_trig_system(TrigSystemId::SqnConstruction, -1.0, 64, 1e-6),
            Err(VerifyError::SolutionFamily(_))
        ));
    }
}
