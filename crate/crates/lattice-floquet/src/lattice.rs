//! Lattice geometries as edge stencils on a fundamental domain.
//!
//! Each lattice is described by the hopping offsets of one unit cell. The
//! square, triangular, and EHM lattices have one site per cell (`p0 = 1`)
//! and live on `Z^2` directly; the hexagonal lattice has two sublattices
//! (`p0 = 2`), with sublattice 0 at `n b+ + m b-` and sublattice 1 at
//! `a1 + n b+ + m b-`.
//!
//! For a `(p1, p2)`-periodic problem the fundamental domain consists of the
//! `P = p0 * p1 * p2` sites `(l1, l2, sigma)` with `0 <= l1 < p1`,
//! `0 <= l2 < p2`. Reducing a neighbor of a fundamental site back into the
//! domain accrues an integer wrap count `tau` (in units of whole periods),
//! which later controls the Floquet phase `exp(i <tau, theta>)`.

use serde::{Deserialize, Serialize};

/// The four lattice geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Square,
    Triangular,
    Hexagonal,
    /// Square lattice with next-nearest-neighbor (diagonal) hops added.
    Ehm,
}

impl LatticeKind {
    /// Number of sites per unit cell.
    pub fn sublattice_count(self) -> usize {
        match self {
            LatticeKind::Hexagonal => 2,
            _ => 1,
        }
    }

    /// Number of neighbors of every vertex.
    pub fn degree(self) -> usize {
        match self {
            LatticeKind::Square => 4,
            LatticeKind::Triangular => 6,
            LatticeKind::Hexagonal => 3,
            LatticeKind::Ehm => 8,
        }
    }

    /// Generator vectors in Cartesian coordinates. For the hexagonal lattice
    /// these are `b+` and `b-`; for the others, `a1` and `a2`. Only used for
    /// documentation and plot output, never in the Floquet construction.
    pub fn generators(self) -> [[f64; 2]; 2] {
        let h = 3.0_f64.sqrt() / 2.0;
        match self {
            LatticeKind::Square | LatticeKind::Ehm => [[1.0, 0.0], [0.0, 1.0]],
            LatticeKind::Triangular => [[1.0, 0.0], [0.5, h]],
            LatticeKind::Hexagonal => [[1.5, h], [1.5, -h]],
        }
    }

    /// Energies at which a gap may open under an infinitesimally small
    /// periodic perturbation.
    pub fn exceptional_energies(self) -> &'static [f64] {
        match self {
            LatticeKind::Square => &[0.0],
            LatticeKind::Triangular => &[-2.0],
            LatticeKind::Hexagonal => &[-1.0, 0.0, 1.0],
            LatticeKind::Ehm => &[-1.0],
        }
    }

    /// Endpoints of the free spectrum `sigma(Delta)`.
    pub fn free_spectrum(self) -> (f64, f64) {
        match self {
            LatticeKind::Square => (-4.0, 4.0),
            LatticeKind::Triangular => (-3.0, 6.0),
            LatticeKind::Hexagonal => (-3.0, 3.0),
            LatticeKind::Ehm => (-4.0, 8.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Square => "square",
            LatticeKind::Triangular => "triangular",
            LatticeKind::Hexagonal => "hexagonal",
            LatticeKind::Ehm => "ehm",
        }
    }

    pub fn parse(s: &str) -> Option<LatticeKind> {
        match s {
            "square" => Some(LatticeKind::Square),
            "triangular" => Some(LatticeKind::Triangular),
            "hexagonal" => Some(LatticeKind::Hexagonal),
            "ehm" => Some(LatticeKind::Ehm),
            _ => None,
        }
    }

    /// Directed edge stencil: `(from_sublattice, to_sublattice, (dn, dm))`.
    /// Offsets are in lattice coordinates of the generator pair.
    pub fn stencil(self) -> &'static [StencilEdge] {
        match self {
            LatticeKind::Square => &SQUARE_STENCIL,
            LatticeKind::Triangular => &TRIANGULAR_STENCIL,
            LatticeKind::Hexagonal => &HEXAGONAL_STENCIL,
            LatticeKind::Ehm => &EHM_STENCIL,
        }
    }
}

/// One directed hop of the stencil, unit weight throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StencilEdge {
    pub from_sublattice: usize,
    pub to_sublattice: usize,
    pub offset: (i64, i64),
    pub weight_is_one: (),
}

const fn edge(from: usize, to: usize, dn: i64, dm: i64) -> StencilEdge {
    StencilEdge {
        from_sublattice: from,
        to_sublattice: to,
        offset: (dn, dm),
        weight_is_one: (),
    }
}

const SQUARE_STENCIL: [StencilEdge; 4] = [
    edge(0, 0, 1, 0),
    edge(0, 0, -1, 0),
    edge(0, 0, 0, 1),
    edge(0, 0, 0, -1),
];

// [Delta_tri psi]_{n,m} = [Delta_sq psi]_{n,m} + psi_{n-1,m+1} + psi_{n+1,m-1}
const TRIANGULAR_STENCIL: [StencilEdge; 6] = [
    edge(0, 0, 1, 0),
    edge(0, 0, -1, 0),
    edge(0, 0, 0, 1),
    edge(0, 0, 0, -1),
    edge(0, 0, -1, 1),
    edge(0, 0, 1, -1),
];

// Sublattice 0 at n b+ + m b- couples to sublattice 1 at (n,m), (n,m-1), (n-1,m).
const HEXAGONAL_STENCIL: [StencilEdge; 6] = [
    edge(0, 1, 0, 0),
    edge(0, 1, 0, -1),
    edge(0, 1, -1, 0),
    edge(1, 0, 0, 0),
    edge(1, 0, 0, 1),
    edge(1, 0, 1, 0),
];

const EHM_STENCIL: [StencilEdge; 8] = [
    edge(0, 0, 1, 0),
    edge(0, 0, -1, 0),
    edge(0, 0, 0, 1),
    edge(0, 0, 0, -1),
    edge(0, 0, 1, 1),
    edge(0, 0, -1, -1),
    edge(0, 0, -1, 1),
    edge(0, 0, 1, -1),
];

/// Periods `(p1, p2)` of the potential, bound to a lattice kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Periods {
    pub p1: usize,
    pub p2: usize,
}

impl Periods {
    pub fn new(p1: usize, p2: usize) -> Periods {
        assert!(p1 >= 1 && p2 >= 1, "periods must be positive");
        Periods { p1, p2 }
    }

    /// Fundamental domain size `P = p0 * p1 * p2`.
    pub fn site_count(self, kind: LatticeKind) -> usize {
        kind.sublattice_count() * self.p1 * self.p2
    }
}

/// A site of the fundamental domain.
///
/// The linear index of `(l1, l2, sigma)` is `p0 * (l2 * p1 + l1) + sigma`,
/// which makes the orderings used in the worked 2x2 and 3x3 examples come
/// out directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FundamentalSite {
    pub l1: usize,
    pub l2: usize,
    pub sublattice: usize,
}

impl FundamentalSite {
    pub fn linear_index(self, kind: LatticeKind, periods: Periods) -> usize {
        debug_assert!(self.l1 < periods.p1 && self.l2 < periods.p2);
        debug_assert!(self.sublattice < kind.sublattice_count());
        kind.sublattice_count() * (self.l2 * periods.p1 + self.l1) + self.sublattice
    }

    pub fn from_linear_index(index: usize, kind: LatticeKind, periods: Periods) -> FundamentalSite {
        let p0 = kind.sublattice_count();
        let cell = index / p0;
        FundamentalSite {
            l1: cell % periods.p1,
            l2: cell / periods.p1,
            sublattice: index % p0,
        }
    }
}

/// All `P` fundamental sites in linear-index order.
pub fn fundamental_sites(kind: LatticeKind, periods: Periods) -> Vec<FundamentalSite> {
    let p0 = kind.sublattice_count();
    let mut sites = Vec::with_capacity(periods.site_count(kind));
    for l2 in 0..periods.p2 {
        for l1 in 0..periods.p1 {
            for sublattice in 0..p0 {
                sites.push(FundamentalSite { l1, l2, sublattice });
            }
        }
    }
    sites
}

/// Euclidean-style floor division and remainder: `n = q * p + r` with `0 <= r < p`.
fn reduce(n: i64, p: usize) -> (usize, i64) {
    let p = p as i64;
    let r = n.rem_euclid(p);
    let q = (n - r) / p;
    (r as usize, q)
}

/// Neighbors of a fundamental site, reduced to fundamental representatives.
///
/// Returns one entry per incident edge of the infinite graph: the reduced
/// target site together with the wrap count `tau` in `Z^2`, so that the
/// actual neighbor sits at `target + tau1 * p1 * a1 + tau2 * p2 * a2`.
/// The list length always equals the lattice degree; distinct edges to
/// translates of the same site appear as separate entries.
pub fn neighbor_list(
    kind: LatticeKind,
    periods: Periods,
    site: FundamentalSite,
) -> Vec<(FundamentalSite, (i64, i64))> {
    let mut out = Vec::with_capacity(kind.degree());
    for e in kind.stencil() {
        if e.from_sublattice != site.sublattice {
            continue;
        }
        let n = site.l1 as i64 + e.offset.0;
        let m = site.l2 as i64 + e.offset.1;
        let (l1, t1) = reduce(n, periods.p1);
        let (l2, t2) = reduce(m, periods.p2);
        out.push((
            FundamentalSite {
                l1,
                l2,
                sublattice: e.to_sublattice,
            },
            (t1, t2),
        ));
    }
    out
}
