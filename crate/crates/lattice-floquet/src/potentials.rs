//! Builtin example potentials, seeded random potentials, and file I/O.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{LatticeKind, Periods};

/// Real potential on the `P` fundamental sites, in linear-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicPotential {
    kind: LatticeKind,
    periods: Periods,
    values: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum PotentialError {
    #[error("unknown builtin potential {0:?}; valid names: tri-2x2, hex-1x1-Z, hex-2x2, ehm-3x3")]
    UnknownBuiltin(String),
    #[error("field `values`: expected {expected} values for {lattice} with periods ({p1},{p2}), got {got}")]
    WrongValueCount {
        lattice: &'static str,
        p1: usize,
        p2: usize,
        expected: usize,
        got: usize,
    },
    #[error("field `values`: entry {index} is not finite")]
    NonFinite { index: usize },
    #[error("field `periods`: periods must be positive, got ({0},{1})")]
    BadPeriods(usize, usize),
    #[error("field `lattice`: unknown lattice {0:?}")]
    BadLattice(String),
    #[error("potential is bound to {bound} with periods ({bp1},{bp2}), not {wanted} with periods ({wp1},{wp2})")]
    BindingMismatch {
        bound: &'static str,
        bp1: usize,
        bp2: usize,
        wanted: &'static str,
        wp1: usize,
        wp2: usize,
    },
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl PeriodicPotential {
    pub fn new(
        kind: LatticeKind,
        periods: Periods,
        values: Vec<f64>,
    ) -> Result<PeriodicPotential, PotentialError> {
        let expected = periods.site_count(kind);
        if values.len() != expected {
            return Err(PotentialError::WrongValueCount {
                lattice: kind.name(),
                p1: periods.p1,
                p2: periods.p2,
                expected,
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(PotentialError::NonFinite { index });
        }
        Ok(PeriodicPotential {
            kind,
            periods,
            values,
        })
    }

    pub fn zero(kind: LatticeKind, periods: Periods) -> PeriodicPotential {
        PeriodicPotential {
            kind,
            periods,
            values: vec![0.0; periods.site_count(kind)],
        }
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn periods(&self) -> Periods {
        self.periods
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// The potential `lambda * Q`.
    pub fn scaled(&self, lambda: f64) -> PeriodicPotential {
        PeriodicPotential {
            kind: self.kind,
            periods: self.periods,
            values: self.values.iter().map(|v| lambda * v).collect(),
        }
    }

    pub fn check_binding(&self, kind: LatticeKind, periods: Periods) -> Result<(), PotentialError> {
        if self.kind != kind || self.periods != periods {
            return Err(PotentialError::BindingMismatch {
                bound: self.kind.name(),
                bp1: self.periods.p1,
                bp2: self.periods.p2,
                wanted: kind.name(),
                wp1: periods.p1,
                wp2: periods.p2,
            });
        }
        Ok(())
    }
}

/// `r = sqrt(4 - sqrt(15))`, the parameter of the EHM 3x3 example potential.
/// Computed at full double precision; the gap verification is sensitive to
/// the exact algebraic value.
pub fn ehm_r() -> f64 {
    (4.0 - 15.0_f64.sqrt()).sqrt()
}

/// The four example potentials used by the worked gap theorems.
pub fn builtin(name: &str) -> Result<PeriodicPotential, PotentialError> {
    match name {
        // Q_{n,m} = (-1)^{mn} on the 2x2 cell
        "tri-2x2" => PeriodicPotential::new(
            LatticeKind::Triangular,
            Periods::new(2, 2),
            vec![1.0, 1.0, 1.0, -1.0],
        ),
        // the sublattice sign Z = diag(1, -1)
        "hex-1x1-Z" => PeriodicPotential::new(
            LatticeKind::Hexagonal,
            Periods::new(1, 1),
            vec![1.0, -1.0],
        ),
        "hex-2x2" => PeriodicPotential::new(
            LatticeKind::Hexagonal,
            Periods::new(2, 2),
            vec![1.0, -1.0, 1.0, 2.0, -2.0, -1.0, 1.0, -1.0],
        ),
        "ehm-3x3" => {
            let r = ehm_r();
            PeriodicPotential::new(
                LatticeKind::Ehm,
                Periods::new(3, 3),
                vec![
                    -r - 1.0 / r + 2.0,
                    -r,
                    -r + 1.0 / r - 2.0,
                    -1.0 / r,
                    0.0,
                    1.0 / r,
                    r - 1.0 / r - 2.0,
                    r,
                    r + 1.0 / r + 2.0,
                ],
            )
        }
        other => Err(PotentialError::UnknownBuiltin(other.to_string())),
    }
}

pub const BUILTIN_NAMES: [&str; 4] = ["tri-2x2", "hex-1x1-Z", "hex-2x2", "ehm-3x3"];

/// I.i.d. uniform values in `[-sup_norm, sup_norm]`, reproducible from the seed.
pub fn random_potential(
    kind: LatticeKind,
    periods: Periods,
    sup_norm: f64,
    seed: u64,
) -> PeriodicPotential {
    assert!(sup_norm >= 0.0, "sup_norm must be nonnegative");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..periods.site_count(kind))
        .map(|_| {
            if sup_norm == 0.0 {
                0.0
            } else {
                rng.gen_range(-sup_norm..=sup_norm)
            }
        })
        .collect();
    PeriodicPotential {
        kind,
        periods,
        values,
    }
}

#[derive(Serialize, Deserialize)]
struct PotentialFile {
    lattice: String,
    periods: [usize; 2],
    values: Vec<f64>,
}

/// Reads a potential from the JSON schema
/// `{"lattice": ..., "periods": [p1, p2], "values": [...]}`.
pub fn load(path: impl AsRef<Path>) -> Result<PeriodicPotential, PotentialError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| PotentialError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: PotentialFile =
        serde_json::from_str(&text).map_err(|source| PotentialError::Parse {
            path: path.display().to_string(),
            source,
        })?;
    let kind = LatticeKind::parse(&file.lattice)
        .ok_or_else(|| PotentialError::BadLattice(file.lattice.clone()))?;
    if file.periods[0] == 0 || file.periods[1] == 0 {
        return Err(PotentialError::BadPeriods(file.periods[0], file.periods[1]));
    }
    PeriodicPotential::new(kind, Periods::new(file.periods[0], file.periods[1]), file.values)
}

/// Writes the JSON schema; `load` of the result is the identity for finite
/// doubles.
pub fn save(potential: &PeriodicPotential, path: impl AsRef<Path>) -> Result<(), PotentialError> {
    let path = path.as_ref();
    let file = PotentialFile {
        lattice: potential.kind.name().to_string(),
        periods: [potential.periods.p1, potential.periods.p2],
        values: potential.values.clone(),
    };
    let text = serde_json::to_string_pretty(&file).expect("schema serializes");
    std::fs::write(path, text).map_err(|source| PotentialError::Io {
        path: path.display().to_string(),
        source,
    })
}
