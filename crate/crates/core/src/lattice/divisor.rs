use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CurvePoint, Lattice};

/// A finite formal sum `sum n_p [p]` of points of the curve.
///
/// Entries at the same point are merged and zero multiplicities dropped.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Divisor {
    entries: Vec<(CurvePoint, i64)>,
}

/// Divisor JSON entry: `{"point": [s, t], "mult": n}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorEntryJson {
    pub point: [f64; 2],
    pub mult: i64,
}

impl Divisor {
    pub fn new() -> Self {
        Divisor::default()
    }

    pub fn add_point(&mut self, lattice: &Lattice, z: Complex64, mult: i64) {
        if mult == 0 {
            return;
        }
        let p = lattice.reduce(z);
        if let Some(i) = self.entries.iter().position(|(q, _)| lattice.same_point(q.z, p.z)) {
            self.entries[i].1 += mult;
            if self.entries[i].1 == 0 {
                self.entries.swap_remove(i);
            }
        } else {
            self.entries.push((p, mult));
        }
    }

    pub fn from_json(lattice: &Lattice, entries: &[DivisorEntryJson]) -> Self {
        let mut d = Divisor::new();
        for e in entries {
            d.add_point(lattice, lattice.point(e.point[0], e.point[1]), e.mult);
        }
        d
    }

    pub fn entries(&self) -> &[(CurvePoint, i64)] {
        &self.entries
    }

    /// Multiplicity at `z` (zero if absent).
    pub fn mult_at(&self, lattice: &Lattice, z: Complex64) -> i64 {
        self.entries.iter().find(|(q, _)| lattice.same_point(q.z, z)).map_or(0, |e| e.1)
    }

    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Image of the divisor under the summation map to the curve.
    pub fn group_sum(&self, lattice: &Lattice) -> CurvePoint {
        let z = self.entries.iter().fold(Complex64::new(0.0, 0.0), |acc, (p, n)| acc + p.z * *n as f64);
        lattice.reduce(z)
    }
}

/// Whether the line bundle of `d` is trivial: degree zero and the points
/// sum to zero on the curve.
pub fn line_bundle_trivial(lattice: &Lattice, d: &Divisor) -> bool {
    d.degree() == 0 && lattice.same_point(d.group_sum(lattice).z, Complex64::new(0.0, 0.0))
}
