//! Open covers of the curve adapted to a finite set of special points.
//!
//! Every special point `a` gets a disc of radius `D/4`, where `D` is the
//! smaller of the minimal distance between special points and the shortest
//! lattice vector. An ordinary point `b` gets the disc of radius
//! `min(r_o, dist(b, S)/2)` with `r_o = D/10`, so that it never contains a
//! special point and meets at most one special disc.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{CurvePoint, Lattice};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpenDisc {
    pub center: Complex64,
    pub radius: f64,
}

#[derive(Clone, Debug)]
pub struct AdaptedCover {
    lattice: Lattice,
    special: Vec<(CurvePoint, OpenDisc)>,
    ordinary_radius: f64,
}

#[derive(Clone, Debug)]
pub struct CoverCheck {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    pub checks: Vec<CoverCheck>,
    pub probes: usize,
}

impl CoverReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl AdaptedCover {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn special_discs(&self) -> &[(CurvePoint, OpenDisc)] {
        &self.special
    }

    pub fn ordinary_radius(&self) -> f64 {
        self.ordinary_radius
    }

    pub fn special_index(&self, z: Complex64) -> Option<usize> {
        self.special.iter().position(|(p, _)| self.lattice.same_point(p.z, z))
    }

    /// Distance from `z` to the special set in the quotient.
    pub fn distance_to_special(&self, z: Complex64) -> f64 {
        self.special.iter().map(|(p, _)| self.lattice.distance(p.z, z)).fold(f64::INFINITY, f64::min)
    }

    /// The disc `U_b` attached to `b`.
    pub fn disc_at(&self, b: Complex64) -> OpenDisc {
        if let Some(i) = self.special_index(b) {
            let d = self.special[i].1;
            return OpenDisc { center: b, radius: d.radius };
        }
        let r = self.ordinary_radius.min(0.5 * self.distance_to_special(b));
        OpenDisc { center: b, radius: r }
    }
}

pub fn build_adapted_cover(lattice: &Lattice, special: &[CurvePoint]) -> Result<AdaptedCover> {
    let mut d = lattice.min_length();
    for (i, a) in special.iter().enumerate() {
        for b in &special[i + 1..] {
            let dist = lattice.distance(a.z, b.z);
            if dist < 1e-9 * lattice.min_length() {
                return Err(Error::DuplicateSpecialPoint(b.s, b.t));
            }
            d = d.min(dist);
        }
    }
    let special = special
        .iter()
        .map(|p| (*p, OpenDisc { center: p.z, radius: d / 4.0 }))
        .collect();
    Ok(AdaptedCover { lattice: lattice.clone(), special, ordinary_radius: d / 10.0 })
}

fn probe_points(cover: &AdaptedCover) -> Vec<Complex64> {
    let l = &cover.lattice;
    let mut probes = Vec::new();
    let grid = 24;
    for i in 0..grid {
        for j in 0..grid {
            probes.push(l.point((i as f64 + 0.37) / grid as f64, (j as f64 + 0.61) / grid as f64));
        }
    }
    // rings just outside each special disc, where violations would show
    for (p, disc) in &cover.special {
        for f in [1.0, 1.05, 1.5, 2.0, 3.0] {
            for k in 0..16 {
                let phi = 2.0 * PI * (k as f64 + 0.25) / 16.0;
                probes.push(p.z + Complex64::from_polar(disc.radius * f, phi));
            }
        }
    }
    // midpoints between nearby special points
    for (i, (a, _)) in cover.special.iter().enumerate() {
        for (b, _) in &cover.special[i + 1..] {
            let diff = b.z - a.z;
            let (j, k) = l.closest_vector(diff);
            probes.push(a.z + (diff - l.vector(j, k)) * 0.5);
        }
    }
    probes.retain(|b| cover.special_index(*b).is_none());
    probes
}

/// Checks the five conditions of an adapted cover: every disc contains its
/// center; a special point lies in no other disc; special discs are
/// pairwise disjoint; an ordinary disc meets at most one special disc;
/// every disc is small (radius below half the shortest period). Ordinary
/// discs are tested on a grid of probe centers plus rings around each
/// special disc.
pub fn verify_adapted(cover: &AdaptedCover) -> CoverReport {
    let l = &cover.lattice;
    let probes = probe_points(cover);
    let ordinary: Vec<OpenDisc> = probes.iter().map(|b| cover.disc_at(*b)).collect();
    let mut checks = Vec::new();

    let bad_center = cover.special.iter().filter(|(_, d)| !(d.radius > 0.0)).count()
        + ordinary.iter().filter(|d| !(d.radius > 0.0)).count();
    checks.push(CoverCheck {
        name: "center-in-disc",
        pass: bad_center == 0,
        detail: format!("{bad_center} discs with nonpositive radius"),
    });

    let mut bad = 0usize;
    for (i, (a, _)) in cover.special.iter().enumerate() {
        for (j, (_, db)) in cover.special.iter().enumerate() {
            if i != j && l.distance(a.z, db.center) < db.radius {
                bad += 1;
            }
        }
        for db in &ordinary {
            if l.distance(a.z, db.center) < db.radius {
                bad += 1;
            }
        }
    }
    checks.push(CoverCheck {
        name: "special-not-in-other-disc",
        pass: bad == 0,
        detail: format!("{bad} violations"),
    });

    let mut overlaps = 0usize;
    for (i, (_, da)) in cover.special.iter().enumerate() {
        for (_, db) in &cover.special[i + 1..] {
            if l.distance(da.center, db.center) < da.radius + db.radius {
                overlaps += 1;
            }
        }
    }
    checks.push(CoverCheck {
        name: "special-discs-disjoint",
        pass: overlaps == 0,
        detail: format!("{overlaps} overlapping pairs"),
    });

    let mut multi = 0usize;
    for db in &ordinary {
        let hits = cover
            .special
            .iter()
            .filter(|(_, da)| l.distance(da.center, db.center) < da.radius + db.radius)
            .count();
        if hits > 1 {
            multi += 1;
        }
    }
    checks.push(CoverCheck {
        name: "ordinary-meets-one-special",
        pass: multi == 0,
        detail: format!("{multi} of {} probe discs meet several special discs", ordinary.len()),
    });

    let half = 0.5 * l.min_length();
    let too_big = cover.special.iter().filter(|(_, d)| d.radius >= half).count()
        + usize::from(cover.ordinary_radius >= half);
    checks.push(CoverCheck {
        name: "discs-small",
        pass: too_big == 0,
        detail: format!("{too_big} radii at or above half the shortest period {half:.6}"),
    });

    CoverReport { checks, probes: probes.len() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_torsion_at_square_lattice() {
        let l = Lattice::witten(Complex64::new(0.0, 1.0)).unwrap();
        let special = l.torsion_points(2).unwrap();
        let cover = build_adapted_cover(&l, &special).unwrap();
        let pair = l.distance(special[0].z, special[1].z).min(l.distance(special[0].z, special[3].z));
        let r = cover.special_discs()[0].1.radius;
        assert!(r < 0.5 * pair);
        assert!(cover.ordinary_radius() < 0.25 * pair);
        assert!(verify_adapted(&cover).pass());
    }

    #[test]
    fn empty_special_set() {
        let l = Lattice::witten(Complex64::new(0.3, 0.8)).unwrap();
        let cover = build_adapted_cover(&l, &[]).unwrap();
        assert!(verify_adapted(&cover).pass());
    }

    #[test]
    fn duplicate_special_points_rejected() {
        let l = Lattice::witten(Complex64::new(0.0, 1.0)).unwrap();
        let p = l.curve_point(0.5, 0.0);
        let q = l.reduce(l.point(1.5, 1.0));
        assert!(build_adapted_cover(&l, &[p, q]).is_err());
    }

    #[test]
    fn oversized_disc_is_caught() {
        let l = Lattice::witten(Complex64::new(0.0, 1.0)).unwrap();
        let special = l.torsion_points(3).unwrap();
        let mut cover = build_adapted_cover(&l, &special).unwrap();
        for (_, d) in cover.special.iter_mut() {
            d.radius *= 2.5;
        }
        let report = verify_adapted(&cover);
        assert!(!report.pass());
        assert!(!report.checks[2].pass);
    }
}
